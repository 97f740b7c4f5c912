"""Harvesting of schema entities and labeled instances from an endpoint.

The harvesters issue only small, widely supported query shapes (one- and
two-pattern basic graph patterns with ORDER BY pagination) and join the
streams client side, so they run against any SPARQL 1.1 endpoint without
vendor extensions or named-graph assumptions.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from ..grounding.types import SchemaDocument, SchemaKind
from .client import HarvestError, SparqlClientError, paged_select
from .terms import EndpointConfig, Iri, RdfTerm

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
RDFS_DOMAIN = "http://www.w3.org/2000/01/rdf-schema#domain"
RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#range"
OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"
OWL_DATATYPE_PROPERTY = "http://www.w3.org/2002/07/owl#DatatypeProperty"

_KIND_CLASSES = (
    (SchemaKind.CLASS, OWL_CLASS),
    (SchemaKind.OBJECT_PROPERTY, OWL_OBJECT_PROPERTY),
    (SchemaKind.DATATYPE_PROPERTY, OWL_DATATYPE_PROPERTY),
)


def harvest_schema(endpoint: EndpointConfig) -> list[SchemaDocument]:
    """One document per declared class / object property / datatype property.

    Labels and comments are attached when present; properties additionally
    get rdfs:domain / rdfs:range when declared. Entities carrying neither
    label nor comment are kept and indexed under the IRI's local name so
    schema vocabulary never silently disappears from the search index.
    """
    documents: list[SchemaDocument] = []
    for kind, class_iri in _KIND_CLASSES:
        try:
            members = _members_of(endpoint, class_iri)
            labels = _values_for(endpoint, class_iri, RDFS_LABEL)
            comments = _values_for(endpoint, class_iri, RDFS_COMMENT)
            if kind is SchemaKind.CLASS:
                domains: dict[str, list[RdfTerm]] = {}
                ranges: dict[str, list[RdfTerm]] = {}
            else:
                domains = _values_for(endpoint, class_iri, RDFS_DOMAIN)
                ranges = _values_for(endpoint, class_iri, RDFS_RANGE)
        except SparqlClientError as exc:
            raise HarvestError(
                f"schema harvest aborted while reading {kind.value} entities: {exc.message}",
                documents_harvested=len(documents),
                cause=exc,
            ) from exc

        for iri_value in members:
            iri = Iri(iri_value)
            label = _pick_text(labels.get(iri_value))
            comment = _pick_text(comments.get(iri_value))
            documents.append(
                SchemaDocument.create(
                    iri=iri,
                    kind=kind,
                    label=label if label is not None else iri.local_name,
                    comment=comment,
                    domain=_pick_iri(domains.get(iri_value)),
                    range=_pick_iri(ranges.get(iri_value)),
                )
            )
    return documents


def harvest_entities(
    endpoint: EndpointConfig,
    language_filter: str | None = None,
) -> Iterator[tuple[Iri, str, str | None]]:
    """Stream (iri, label, comment) for every labeled non-schema instance.

    One tuple is yielded per matching label: an instance labeled in several
    languages appears once per language. With ``language_filter`` set, only
    labels carrying that tag (or no tag at all) pass. Comments are matched
    to the label's language where possible. Instances without any label are
    not yielded; an index entry needs a name.
    """
    try:
        schema_iris: set[str] = set()
        for _, class_iri in _KIND_CLASSES:
            schema_iris.update(_members_of(endpoint, class_iri))

        labels = _stream_predicate(endpoint, RDFS_LABEL)
        comments = _stream_predicate(endpoint, RDFS_COMMENT)
        for subject, label_terms, comment_terms in _merge_by_subject(labels, comments):
            if subject in schema_iris:
                continue
            for label in label_terms:
                if label.kind != "literal" or not label.lexical:
                    continue
                if language_filter is not None and label.language not in (None, language_filter):
                    continue
                comment = _comment_for_language(comment_terms, label.language)
                yield Iri(subject), label.lexical, comment
    except SparqlClientError as exc:
        raise HarvestError(
            f"entity harvest aborted: {exc.message}",
            documents_harvested=0,
            cause=exc,
        ) from exc


def _members_of(endpoint: EndpointConfig, class_iri: str) -> list[str]:
    template = (
        f"SELECT ?s WHERE {{ ?s <{RDF_TYPE}> <{class_iri}> }} "
        "ORDER BY ?s LIMIT {limit} OFFSET {offset}"
    )
    members = []
    for row in paged_select(endpoint, template):
        term = row.get("s")
        if term is not None and term.kind == "iri":
            members.append(term.lexical)
    return members


def _values_for(
    endpoint: EndpointConfig, class_iri: str, predicate: str
) -> dict[str, list[RdfTerm]]:
    template = (
        f"SELECT ?s ?o WHERE {{ ?s <{RDF_TYPE}> <{class_iri}> . ?s <{predicate}> ?o }} "
        "ORDER BY ?s ?o LIMIT {limit} OFFSET {offset}"
    )
    values: dict[str, list[RdfTerm]] = {}
    for row in paged_select(endpoint, template):
        subject, obj = row.get("s"), row.get("o")
        if subject is None or obj is None or subject.kind != "iri":
            continue
        values.setdefault(subject.lexical, []).append(obj)
    return values


def _stream_predicate(
    endpoint: EndpointConfig, predicate: str
) -> Iterator[tuple[str, RdfTerm]]:
    template = (
        f"SELECT ?s ?o WHERE {{ ?s <{predicate}> ?o }} "
        "ORDER BY ?s ?o LIMIT {limit} OFFSET {offset}"
    )
    for row in paged_select(endpoint, template):
        subject, obj = row.get("s"), row.get("o")
        if subject is None or obj is None or subject.kind != "iri":
            continue
        yield subject.lexical, obj


def _merge_by_subject(
    labels: Iterator[tuple[str, RdfTerm]],
    comments: Iterator[tuple[str, RdfTerm]],
) -> Iterator[tuple[str, list[RdfTerm], list[RdfTerm]]]:
    """Merge-join two subject-ordered streams, grouping rows per subject.

    Both inputs come from ORDER BY ?s queries against the same endpoint, so
    one linear pass suffices and memory stays bounded by the largest single
    subject group.
    """
    comment_iter = _grouped(comments)
    pending: tuple[str, list[RdfTerm]] | None = next(comment_iter, None)
    for subject, label_terms in _grouped(labels):
        while pending is not None and pending[0] < subject:
            pending = next(comment_iter, None)
        comment_terms = pending[1] if pending is not None and pending[0] == subject else []
        yield subject, label_terms, comment_terms


def _grouped(stream: Iterator[tuple[str, RdfTerm]]) -> Iterator[tuple[str, list[RdfTerm]]]:
    current: str | None = None
    bucket: list[RdfTerm] = []
    for subject, term in stream:
        if subject != current:
            if current is not None:
                yield current, bucket
            current, bucket = subject, []
        bucket.append(term)
    if current is not None:
        yield current, bucket


def _language_priority(language: str | None) -> tuple[int, str]:
    # English first (the embedding default), then untagged, then the rest.
    if language == "en":
        return (0, "")
    if language is None:
        return (1, "")
    return (2, language)


def _pick_text(terms: Iterable[RdfTerm] | None) -> str | None:
    candidates = [t for t in terms or () if t.kind == "literal" and t.lexical]
    if not candidates:
        return None
    best = min(candidates, key=lambda t: (_language_priority(t.language), t.lexical))
    return best.lexical


def _pick_iri(terms: Iterable[RdfTerm] | None) -> Iri | None:
    candidates = sorted(t.lexical for t in terms or () if t.kind == "iri")
    return Iri(candidates[0]) if candidates else None


def _comment_for_language(comments: list[RdfTerm], language: str | None) -> str | None:
    literals = [t for t in comments if t.kind == "literal" and t.lexical]
    same = sorted(t.lexical for t in literals if t.language == language)
    if same:
        return same[0]
    untagged = sorted(t.lexical for t in literals if t.language is None)
    if untagged:
        return untagged[0]
    return None
