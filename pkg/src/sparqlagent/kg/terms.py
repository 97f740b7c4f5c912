"""RDF terms and SPARQL protocol result containers."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI, stored without surrounding angle brackets."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI must be non-empty")
        if self.value.startswith("<") or self.value.endswith(">"):
            raise ValueError(f"IRI must be stored without angle brackets: {self.value!r}")
        if not _SCHEME_RE.match(self.value):
            raise ValueError(f"IRI must be absolute (scheme missing): {self.value!r}")

    @property
    def local_name(self) -> str:
        """Substring after the last '#' or '/' (the whole IRI if neither occurs)."""
        for sep in ("#", "/"):
            if sep in self.value:
                return self.value.rsplit(sep, 1)[1]
        return self.value

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RdfTerm:
    """A single RDF term as delivered by the SPARQL protocol.

    ``kind`` is one of ``"iri"``, ``"literal"`` or ``"blank"``. Language tag
    and datatype are mutually exclusive and only literals may carry either.
    """

    kind: str
    lexical: str
    language: str | None = None
    datatype: Iri | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("iri", "literal", "blank"):
            raise ValueError(f"unknown term kind: {self.kind!r}")
        if self.language is not None and self.datatype is not None:
            raise ValueError("language tag and datatype are mutually exclusive")
        if self.kind != "literal" and (self.language or self.datatype):
            raise ValueError(f"{self.kind} terms carry no language tag or datatype")

    @classmethod
    def iri(cls, value: str | Iri) -> "RdfTerm":
        return cls("iri", value.value if isinstance(value, Iri) else value)

    @classmethod
    def literal(
        cls,
        lexical: str,
        language: str | None = None,
        datatype: str | Iri | None = None,
    ) -> "RdfTerm":
        if isinstance(datatype, str):
            datatype = Iri(datatype)
        return cls("literal", lexical, language, datatype)

    def as_iri(self) -> Iri:
        if self.kind != "iri":
            raise ValueError(f"not an IRI term: {self!r}")
        return Iri(self.lexical)

    def n3(self) -> str:
        """Render in N-Triples style, suitable for pasting into a query."""
        if self.kind == "iri":
            return f"<{self.lexical}>"
        if self.kind == "blank":
            return f"_:{self.lexical}"
        escaped = self.lexical.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        if self.language:
            return f'"{escaped}"@{self.language}'
        if self.datatype:
            return f'"{escaped}"^^<{self.datatype.value}>'
        return f'"{escaped}"'


@dataclass(frozen=True)
class SparqlResultSet:
    """Parsed SPARQL protocol results.

    Exactly one of ``rows``/``boolean`` is populated: SELECT queries yield
    ``rows`` (possibly empty), ASK queries yield ``boolean``. ``truncated``
    marks row lists capped at the client's row limit, with the row count
    the endpoint actually returned in ``original_row_count``.
    """

    variables: tuple[str, ...] = ()
    rows: tuple[dict[str, RdfTerm], ...] | None = None
    boolean: bool | None = None
    truncated: bool = False
    original_row_count: int | None = None

    def __post_init__(self) -> None:
        if (self.rows is None) == (self.boolean is None):
            raise ValueError("exactly one of rows/boolean must be populated")
        if self.rows is not None:
            known = set(self.variables)
            for row in self.rows:
                unknown = set(row) - known
                if unknown:
                    raise ValueError(f"row binds undeclared variables: {sorted(unknown)}")

    @property
    def row_count(self) -> int:
        return len(self.rows) if self.rows is not None else 0


@dataclass(frozen=True)
class EntityExcerpt:
    """Outgoing edges of one entity: (predicate, object) pairs, subject fixed."""

    subject: Iri
    edges: tuple[tuple[Iri, RdfTerm], ...]
    truncated: bool = False


@dataclass(frozen=True)
class EndpointConfig:
    """Connection settings for one SPARQL endpoint.

    ``request_timeout`` must stay below the service's total per-question
    budget (600 s) so a single hung request cannot eat the whole budget.
    """

    query_url: str
    request_timeout: float = 60.0
    max_rows: int = 100
    max_excerpt_edges: int = 100

    TOTAL_BUDGET_CEILING: float = field(default=600.0, init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.query_url:
            raise ValueError("query_url must be set")
        if not 0 < self.request_timeout < self.TOTAL_BUDGET_CEILING:
            raise ValueError(
                f"request_timeout must be in (0, {self.TOTAL_BUDGET_CEILING}) s,"
                f" got {self.request_timeout}"
            )
        if self.max_rows < 1 or self.max_excerpt_edges < 1:
            raise ValueError("row and edge caps must be at least 1")
