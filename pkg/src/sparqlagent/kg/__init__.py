from .terms import (
    EndpointConfig,
    EntityExcerpt,
    Iri,
    RdfTerm,
    SparqlResultSet,
)
from .client import (
    HarvestError,
    MalformedResults,
    QuerySyntaxError,
    QueryTimeout,
    SparqlClientError,
    TransportError,
    execute_sparql_query,
    fetch_outgoing_edges,
    fetch_property_examples,
)
from .harvest import harvest_entities, harvest_schema

__all__ = [
    "EndpointConfig",
    "EntityExcerpt",
    "HarvestError",
    "Iri",
    "MalformedResults",
    "QuerySyntaxError",
    "QueryTimeout",
    "RdfTerm",
    "SparqlClientError",
    "SparqlResultSet",
    "TransportError",
    "execute_sparql_query",
    "fetch_outgoing_edges",
    "fetch_property_examples",
    "harvest_entities",
    "harvest_schema",
]
