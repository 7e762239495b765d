"""Catalog of forbidden 3-graphs and dense-ordering certificates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .hypergraph import ThreeGraph, Triple

# Edge lists are 1-indexed; 'a', 'b', 'c' stand for vertices 10, 11, 12.
_PRIOR = [
    ("K4-", "123 124 134"),
    ("C5-", "123 124 135 245"),
    ("C5+", "126 236 346 456 516"),
    ("L2", "123 124 125 136 456"),
    ("L3", "123 124 135 256 346"),
    ("L4", "123 124 156 256 345"),
    ("L5", "123 124 135 146 356"),
    ("L6", "123 124 145 346 356"),
    ("P7-", "123 145 167 246 257 347"),
]
_EXTENDED = [
    ("L7", "123 124 125 136 137 458 678"),
    ("L8", "123 124 125 136 137 468 579 289"),
    ("L9", "123 124 125 136 237 469 578 189"),
    ("L10", "123 124 125 126 137 138 239 58a 47b 69c abc"),
]
MAX_CATALOG_VERTICES = 12

_DIGITS = {str(d): d for d in range(1, 10)} | {"a": 10, "b": 11, "c": 12}


def _parse_edge_list(spec: str) -> ThreeGraph:
    triples = [tuple(_DIGITS[ch] for ch in word) for word in spec.split()]
    n = max(max(t) for t in triples)
    return ThreeGraph.from_one_indexed(n, triples)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: ThreeGraph
    source: str  # "prior": imported result; "extended": checked by the embedder
    verifiable: bool


@dataclass(frozen=True)
class DenseCertificate:
    """Vertex ordering plus the designated edges of a dense 3-graph.

    ``prefix_edges[k]`` is the edge closed by ``ordering[k + 2]`` (the edges
    e_3 .. e_{r-1}); ``final_edges`` are the two edges through the last vertex.
    All vertices are 0-indexed.
    """

    ordering: tuple[int, ...]
    prefix_edges: tuple[Triple, ...]
    final_edges: tuple[Triple, Triple]

    @property
    def r(self) -> int:
        return len(self.ordering)

    def relabel(self, perm) -> DenseCertificate:
        def t(e):
            return tuple(sorted(perm[x] for x in e))

        return DenseCertificate(
            tuple(perm[v] for v in self.ordering),
            tuple(t(e) for e in self.prefix_edges),
            (t(self.final_edges[0]), t(self.final_edges[1])),
        )


@lru_cache(maxsize=None)
def catalog() -> tuple[CatalogEntry, ...]:
    entries = []
    for source, table in (("prior", _PRIOR), ("extended", _EXTENDED)):
        for name, spec in table:
            g = _parse_edge_list(spec)
            entries.append(CatalogEntry(name, g, source, find_dense_ordering(g) is not None))
    return tuple(entries)


def catalog_entry(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name.lower() == name.lower():
            return e
    known = ", ".join(e.name for e in catalog())
    raise KeyError(f"unknown catalog entry {name!r} (known: {known})")


def family() -> list[ThreeGraph]:
    """The forbidden family as a list of graphs, in catalog order."""
    return [e.graph for e in catalog()]


def check_certificate(H: ThreeGraph, cert: DenseCertificate) -> bool:
    r = H.n
    if sorted(cert.ordering) != list(range(r)):
        raise ValueError(f"ordering {cert.ordering} is not a permutation of 0..{r - 1}")
    if r < 4 or len(cert.prefix_edges) != r - 3:
        return False
    pos = {v: i for i, v in enumerate(cert.ordering)}
    for i in range(2, r - 1):
        v = cert.ordering[i]
        closing = [e for e in H.edges if v in e and all(pos[x] <= i for x in e)]
        if len(closing) != 1 or closing[0] != tuple(sorted(cert.prefix_edges[i - 2])):
            return False
    last = cert.ordering[-1]
    through_last = sorted(e for e in H.edges if last in e)
    finals = sorted(tuple(sorted(e)) for e in cert.final_edges)
    return through_last == finals and finals[0] != finals[1]


def find_dense_ordering(H: ThreeGraph, final: Optional[int] = None) -> Optional[DenseCertificate]:
    """Search for a dense ordering; candidates are tried in ascending vertex order.

    ``final`` pins the last vertex of the ordering.
    """
    r = H.n
    if r < 4 or H.num_edges != r - 1:
        return None
    deg = H.degrees
    finals = [final] if final is not None else range(r)
    for last in finals:
        if deg[last] != 2:
            continue
        rest = [v for v in range(r) if v != last]
        edges_without_last = [e for e in H.edges if last not in e]
        found = _extend_prefix(rest, edges_without_last, r - 1)
        if found is not None:
            prefix, prefix_edges = found
            fin = sorted(e for e in H.edges if last in e)
            return DenseCertificate(tuple(prefix) + (last,), tuple(prefix_edges), (fin[0], fin[1]))
    return None


def _extend_prefix(vertices, edges, size):
    incident: dict[int, list[Triple]] = {v: [] for v in vertices}
    for e in edges:
        for x in e:
            incident[x].append(e)
    order: list[int] = []
    placed: set[int] = set()
    closed: list[Triple] = []

    def rec() -> bool:
        if len(order) == size:
            return True
        for v in vertices:
            if v in placed:
                continue
            if len(order) >= 2:
                closing = [e for e in incident[v] if all(x in placed or x == v for x in e)]
                if len(closing) != 1:
                    continue
                closed.append(closing[0])
            order.append(v)
            placed.add(v)
            if rec():
                return True
            order.pop()
            placed.discard(v)
            if len(order) >= 2:
                closed.pop()
        return False

    return (order, closed) if rec() else None


def brute_force_dense(H: ThreeGraph) -> bool:
    """Whether any of the r! orderings is dense (reference for small r)."""
    r = H.n
    if r < 4:
        return False
    for perm in permutations(range(r)):
        pos = {v: i for i, v in enumerate(perm)}
        ok = True
        for i in range(2, r - 1):
            v = perm[i]
            if sum(1 for e in H.edges if v in e and all(pos[x] <= i for x in e)) != 1:
                ok = False
                break
        if ok and sum(1 for e in H.edges if perm[-1] in e) == 2:
            return True
    return False


def format_certificate(cert: DenseCertificate) -> str:
    def fmt(e):
        return " ".join(str(x + 1) for x in e)

    r = cert.r
    lines = ["ordering: " + " ".join(str(v + 1) for v in cert.ordering)]
    for i, e in enumerate(cert.prefix_edges, start=3):
        lines.append(f"e_{i}: {fmt(e)}")
    lines.append(f"e_{r}: {fmt(cert.final_edges[0])}")
    lines.append(f"e_{r}': {fmt(cert.final_edges[1])}")
    return "\n".join(lines) + "\n"


def certificate_for_ordering(H: ThreeGraph, ordering) -> DenseCertificate:
    """Build the certificate implied by a given ordering (0-indexed).

    Raises ``ValueError`` when the ordering is not dense for ``H``.
    """
    ordering = tuple(ordering)
    if sorted(ordering) != list(range(H.n)):
        raise ValueError(f"ordering {ordering} is not a permutation of 0..{H.n - 1}")
    pos = {v: i for i, v in enumerate(ordering)}
    prefix = []
    for i in range(2, H.n - 1):
        v = ordering[i]
        closing = [e for e in H.edges if v in e and all(pos[x] <= i for x in e)]
        if len(closing) != 1:
            raise ValueError(f"vertex {v + 1} closes {len(closing)} edges in its prefix")
        prefix.append(closing[0])
    fin = sorted(e for e in H.edges if ordering[-1] in e)
    if len(fin) != 2:
        raise ValueError(f"last vertex {ordering[-1] + 1} lies in {len(fin)} edges, need 2")
    cert = DenseCertificate(ordering, tuple(prefix), (fin[0], fin[1]))
    if not check_certificate(H, cert):
        raise ValueError("ordering does not give a dense certificate")
    return cert
