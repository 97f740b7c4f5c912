"""SPARQL 1.1 protocol client and the fixed inspection queries.

Every endpoint interaction resolves to exactly one of: a parsed result, a
:class:`QuerySyntaxError` (endpoint rejected the query text), a
:class:`QueryTimeout`, a :class:`TransportError` (unreachable endpoint or
HTTP 5xx), or :class:`MalformedResults` (response body that is not valid
SPARQL results JSON). The errors carry the endpoint's message so callers
can surface it to the agent as an observation instead of crashing the run.
"""

from __future__ import annotations

import json
from typing import Iterator

import requests

from .terms import EndpointConfig, EntityExcerpt, Iri, RdfTerm, SparqlResultSet

RESULTS_JSON = "application/sparql-results+json"

_session = requests.Session()
_session.headers["Accept"] = RESULTS_JSON


class SparqlClientError(Exception):
    """Base class for endpoint interaction failures."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class QuerySyntaxError(SparqlClientError):
    """The endpoint reported the query as syntactically invalid (HTTP 400)."""


class QueryTimeout(SparqlClientError):
    """The request exceeded the configured timeout."""


class TransportError(SparqlClientError):
    """Endpoint unreachable, or an HTTP status other than 200/400."""


class MalformedResults(SparqlClientError):
    """HTTP 200 with a body that does not parse as SPARQL results JSON."""


class HarvestError(SparqlClientError):
    """A schema/entity harvest aborted; ``documents_harvested`` is progress so far."""

    def __init__(self, message: str, documents_harvested: int, cause: SparqlClientError):
        super().__init__(message)
        self.documents_harvested = documents_harvested
        self.cause = cause


def execute_sparql_query(endpoint: EndpointConfig, query: str) -> SparqlResultSet:
    """Execute ``query`` and return parsed results.

    SELECT rows are capped at ``endpoint.max_rows`` (``truncated`` set when
    the endpoint returned more); ASK yields a boolean result set. The query
    text is passed through untouched: the endpoint is the validator, and
    its rejection comes back as :class:`QuerySyntaxError`.
    """
    if not query or not query.strip():
        raise ValueError("query must be a non-empty string")
    payload = _request(endpoint, query)
    return _parse_results(payload, max_rows=endpoint.max_rows)


def fetch_outgoing_edges(endpoint: EndpointConfig, entity: Iri) -> EntityExcerpt:
    """All (predicate, object) pairs with ``entity`` as subject.

    Edges are sorted by predicate IRI then object lexical form, and capped
    at ``endpoint.max_excerpt_edges``. An entity with no outgoing edges
    yields an empty excerpt, not an error.
    """
    query = f"SELECT ?p ?o WHERE {{ {entity.n3()} ?p ?o }}"
    # Fetch one row beyond the cap so truncation is detectable.
    probe = EndpointConfig(
        query_url=endpoint.query_url,
        request_timeout=endpoint.request_timeout,
        max_rows=endpoint.max_excerpt_edges + 1,
        max_excerpt_edges=endpoint.max_excerpt_edges,
    )
    result = execute_sparql_query(probe, query)
    edges = []
    for row in result.rows or ():
        if "p" not in row or "o" not in row:
            continue
        edges.append((row["p"].as_iri(), row["o"]))
    edges.sort(key=lambda e: (e[0].value, e[1].lexical))
    truncated = len(edges) > endpoint.max_excerpt_edges
    return EntityExcerpt(
        subject=entity,
        edges=tuple(edges[: endpoint.max_excerpt_edges]),
        truncated=truncated,
    )


def fetch_property_examples(
    endpoint: EndpointConfig, property_iri: Iri
) -> list[tuple[RdfTerm, RdfTerm]]:
    """Up to 5 (subject, object) usage examples of the given predicate."""
    query = f"SELECT ?s ?o WHERE {{ ?s {property_iri.n3()} ?o }} LIMIT 5"
    result = execute_sparql_query(endpoint, query)
    pairs = []
    for row in result.rows or ():
        if "s" in row and "o" in row:
            pairs.append((row["s"], row["o"]))
    return pairs


def _request(endpoint: EndpointConfig, query: str) -> dict:
    try:
        response = _session.post(
            endpoint.query_url,
            data={"query": query},
            headers={"Accept": RESULTS_JSON},
            timeout=endpoint.request_timeout,
        )
    except requests.Timeout as exc:
        raise QueryTimeout(f"endpoint did not answer within {endpoint.request_timeout}s") from exc
    except requests.RequestException as exc:
        raise TransportError(f"endpoint unreachable: {exc}") from exc

    if response.status_code == 400:
        raise QuerySyntaxError(_clip(response.text) or "endpoint rejected the query")
    if response.status_code != 200:
        raise TransportError(
            f"endpoint returned HTTP {response.status_code}: {_clip(response.text)}"
        )
    try:
        payload = response.json()
    except (json.JSONDecodeError, ValueError) as exc:
        raise MalformedResults(f"response is not valid JSON: {_clip(response.text)}") from exc
    if not isinstance(payload, dict):
        raise MalformedResults("response JSON is not an object")
    return payload


def _parse_results(payload: dict, max_rows: int) -> SparqlResultSet:
    if "boolean" in payload:
        if not isinstance(payload["boolean"], bool):
            raise MalformedResults("ASK result 'boolean' is not a boolean")
        return SparqlResultSet(boolean=payload["boolean"])

    results = payload.get("results")
    if not isinstance(results, dict) or not isinstance(results.get("bindings"), list):
        raise MalformedResults("response lacks both 'boolean' and 'results.bindings'")

    head = payload.get("head") or {}
    variables = list(head.get("vars") or [])
    rows: list[dict[str, RdfTerm]] = []
    for binding in results["bindings"]:
        if not isinstance(binding, dict):
            raise MalformedResults("binding entry is not an object")
        row: dict[str, RdfTerm] = {}
        for name, term in binding.items():
            row[name] = _parse_term(term)
            if name not in variables:
                variables.append(name)  # tolerate endpoints under-declaring head vars
        rows.append(row)

    total = len(rows)
    truncated = total > max_rows
    return SparqlResultSet(
        variables=tuple(variables),
        rows=tuple(rows[:max_rows]),
        truncated=truncated,
        original_row_count=total if truncated else None,
    )


def _parse_term(term: object) -> RdfTerm:
    if not isinstance(term, dict) or "type" not in term or "value" not in term:
        raise MalformedResults(f"malformed term binding: {term!r}")
    kind = term["type"]
    value = term["value"]
    if not isinstance(value, str):
        raise MalformedResults(f"term value is not a string: {term!r}")
    try:
        if kind == "uri":
            return RdfTerm.iri(value)
        if kind == "bnode":
            return RdfTerm("blank", value)
        if kind in ("literal", "typed-literal"):
            language = term.get("xml:lang")
            datatype = term.get("datatype")
            return RdfTerm.literal(value, language=language, datatype=datatype)
    except ValueError as exc:
        raise MalformedResults(f"invalid term in results: {exc}") from exc
    raise MalformedResults(f"unknown term type: {kind!r}")


def _clip(text: str, limit: int = 500) -> str:
    text = (text or "").strip()
    return text if len(text) <= limit else text[:limit] + "…"


def paged_select(
    endpoint: EndpointConfig,
    query_template: str,
    page_size: int | None = None,
) -> Iterator[dict[str, RdfTerm]]:
    """Yield rows of a SELECT query in ORDER BY pages.

    ``query_template`` must contain ``{limit}`` and ``{offset}`` slots and an
    ORDER BY clause so pagination is stable. Used by the harvesters so
    large graphs never require one unbounded result set.
    """
    size = page_size or endpoint.max_rows
    offset = 0
    page_endpoint = EndpointConfig(
        query_url=endpoint.query_url,
        request_timeout=endpoint.request_timeout,
        max_rows=size + 1,
        max_excerpt_edges=endpoint.max_excerpt_edges,
    )
    while True:
        query = query_template.format(limit=size, offset=offset)
        result = execute_sparql_query(page_endpoint, query)
        rows = result.rows or ()
        yield from rows
        if len(rows) < size:
            return
        offset += size
