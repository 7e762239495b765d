"""3-uniform hypergraphs: storage, linkgraphs, containment and vertex cloning.

Vertices are ``0..n-1`` internally. The text format on disk is 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Optional

Triple = tuple[int, int, int]
Pair = tuple[int, int]


def triple_rank(t: Triple, n: int) -> int:
    """Lexicographic rank of a sorted triple among all C(n, 3) triples."""
    i, j, k = t
    # triples starting below i, then below j (given i), then below k (given i, j)
    before_i = comb(n, 3) - comb(n - i, 3)
    before_j = comb(n - i - 1, 2) - comb(n - j, 2)
    return before_i + before_j + (k - j - 1)


def all_triples(n: int) -> list[Triple]:
    return list(combinations(range(n), 3))


@dataclass(frozen=True)
class ThreeGraph:
    """A 3-graph on vertices ``0..n-1`` with a canonical set of sorted triples."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(int(x) for x in e))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"edge {e!r} is not a triple of distinct vertices")
            if t[0] < 0 or t[2] >= self.n:
                raise ValueError(f"edge {e!r} out of range for n={self.n}")
            canon.add(t)
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> ThreeGraph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_one_indexed(cls, n: int, edges: Iterable[Iterable[int]]) -> ThreeGraph:
        return cls(n, frozenset(tuple(v - 1 for v in e) for e in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, triple) -> bool:
        return tuple(sorted(triple)) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Triple]:
        return sorted(self.edges)

    @cached_property
    def mask(self) -> int:
        """Bitset of edges keyed by :func:`triple_rank`."""
        m = 0
        for e in self.edges:
            m |= 1 << triple_rank(e, self.n)
        return m

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for x in e:
                deg[x] += 1
        return tuple(deg)

    @cached_property
    def _pair_index(self) -> dict[Pair, frozenset]:
        idx: dict[Pair, set] = {}
        for i, j, k in self.edges:
            idx.setdefault((i, j), set()).add(k)
            idx.setdefault((i, k), set()).add(j)
            idx.setdefault((j, k), set()).add(i)
        return {p: frozenset(s) for p, s in idx.items()}

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def induced(self, vertices: Iterable[int]) -> ThreeGraph:
        """Subgraph induced on ``vertices``, relabelled to 0..k-1 in ascending order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        return ThreeGraph(
            len(vs),
            frozenset(
                (pos[a], pos[b], pos[c])
                for a, b, c in self.edges
                if a in pos and b in pos and c in pos
            ),
        )

    def relabel(self, perm: dict[int, int] | list[int]) -> ThreeGraph:
        """Apply the vertex bijection ``v -> perm[v]``."""
        return ThreeGraph(self.n, frozenset(tuple(sorted(perm[x] for x in e)) for e in self.edges))

    def add_edges(self, edges: Iterable[Iterable[int]]) -> ThreeGraph:
        return ThreeGraph(self.n, self.edges | frozenset(tuple(sorted(e)) for e in edges))


@dataclass(frozen=True)
class LinkGraph:
    center: int
    pairs: frozenset

    def __len__(self) -> int:
        return len(self.pairs)


def neighborhood(G: ThreeGraph, a: int, b: int) -> frozenset:
    """Vertices ``c`` with ``{a, b, c}`` an edge of ``G``."""
    G._check_vertex(a)
    G._check_vertex(b)
    if a == b:
        raise ValueError("neighborhood needs two distinct vertices")
    return G._pair_index.get((min(a, b), max(a, b)), frozenset())


def link(
    G: ThreeGraph,
    v: int,
    restrict_a: Optional[Iterable[int]] = None,
    restrict_b: Optional[Iterable[int]] = None,
) -> LinkGraph:
    """Linkgraph of ``v``, optionally restricted to ``A`` or to the bipartite ``A x B``.

    With two sets a pair qualifies when one endpoint can be assigned to ``A`` and
    the other to ``B``; each unordered pair is counted once.
    """
    G._check_vertex(v)
    if restrict_b is not None and restrict_a is None:
        raise ValueError("restrict_b requires restrict_a")
    A = None if restrict_a is None else set(restrict_a)
    B = None if restrict_b is None else set(restrict_b)
    pairs = set()
    for e in G.edges:
        if v not in e:
            continue
        x, y = (u for u in e if u != v)
        if A is None:
            pairs.add((x, y))
        elif B is None:
            if x in A and y in A:
                pairs.add((x, y))
        elif (x in A and y in B) or (x in B and y in A):
            pairs.add((x, y))
    return LinkGraph(v, frozenset(pairs))


def _search_order(H: ThreeGraph) -> list[int]:
    """Descending degree, preferring vertices that close edges with the prefix."""
    remaining = set(range(H.n))
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        def key(x: int):
            closes = sum(1 for e in H.edges if x in e and all(y in placed or y == x for y in e))
            touches = sum(1 for e in H.edges if x in e and any(y in placed for y in e))
            return (-closes, -touches, -H.degrees[x], x)

        x = min(remaining, key=key)
        order.append(x)
        placed.add(x)
        remaining.remove(x)
    return order


def find_embedding(G: ThreeGraph, H: ThreeGraph) -> Optional[dict[int, int]]:
    """An injective map ``V(H) -> V(G)`` sending edges to edges, or ``None``.

    Containment is not induced: extra edges in ``G`` are allowed.
    """
    if H.n > G.n:
        return None
    if H.num_edges > G.num_edges:
        return None
    if H.num_edges == 0:
        return {x: x for x in range(H.n)}

    order = _search_order(H)
    pos = {x: i for i, x in enumerate(order)}
    # edges of H checked when their last vertex (in search order) is placed
    closing: list[list[tuple[int, int]]] = [[] for _ in order]
    for e in H.edges:
        last = max(e, key=pos.__getitem__)
        others = tuple(y for y in e if y != last)
        closing[pos[last]].append(others)
    hdeg = H.degrees
    gdeg = G.degrees
    gpairs = G._pair_index
    gverts = [v for v in range(G.n)]

    phi: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i: int):
        x = order[i]
        if closing[i]:
            a, b = closing[i][0]
            pa, pb = phi[a], phi[b]
            return sorted(gpairs.get((min(pa, pb), max(pa, pb)), ()))
        return gverts

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        need = hdeg[x]
        for c in candidates(i):
            if c in used or gdeg[c] < need:
                continue
            ok = True
            for a, b in closing[i]:
                pa, pb = phi[a], phi[b]
                if c not in gpairs.get((min(pa, pb), max(pa, pb)), ()):
                    ok = False
                    break
            if not ok:
                continue
            phi[x] = c
            used.add(c)
            if extend(i + 1):
                return True
            del phi[x]
            used.discard(c)
        return False

    return dict(phi) if extend(0) else None


def contains_subgraph(G: ThreeGraph, H: ThreeGraph) -> bool:
    return find_embedding(G, H) is not None


def is_family_free(G: ThreeGraph, family: Iterable[ThreeGraph]) -> bool:
    return not any(contains_subgraph(G, H) for H in family)


def clone_vertex(G: ThreeGraph, u: int, v: int) -> ThreeGraph:
    """Delete ``u`` and add a twin ``w`` of ``v``; ``w`` takes over the index of ``u``.

    The twin receives every edge ``{w, a, b}`` with ``{a, b, v}`` an edge and
    ``u`` not in ``{a, b}``; no edge contains both ``w`` and ``v``.
    """
    G._check_vertex(u)
    G._check_vertex(v)
    if u == v:
        raise ValueError("clone_vertex needs u != v")
    w = u
    kept = {e for e in G.edges if u not in e}
    for a, b in link(G, v).pairs:
        if u in (a, b):
            continue
        kept.add(tuple(sorted((w, a, b))))
    return ThreeGraph(G.n, frozenset(kept))


# -- text format -------------------------------------------------------------


class FormatError(ValueError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


def format_hypergraph(G: ThreeGraph) -> str:
    lines = [f"{G.n} {G.num_edges}"]
    lines += [f"{i + 1} {j + 1} {k + 1}" for i, j, k in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, path: str | None = None) -> ThreeGraph:
    header = None
    edges: list[Triple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"expected integers, got {line!r}", lineno, path) from None
        if header is None:
            if len(nums) != 2 or min(nums) < 0:
                raise FormatError("header must be 'n m'", lineno, path)
            header = (nums[0], nums[1], lineno)
            continue
        if len(nums) != 3:
            raise FormatError("edge line must have three vertices", lineno, path)
        n = header[0]
        if not all(1 <= x <= n for x in nums) or len(set(nums)) != 3:
            raise FormatError(f"bad edge {line!r} for n={n}", lineno, path)
        edges.append(tuple(sorted(x - 1 for x in nums)))
    if header is None:
        raise FormatError("missing header line", None, path)
    n, m, hline = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}", hline, path)
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge", None, path)
    return ThreeGraph(n, frozenset(edges))


def read_hypergraph(path: str | Path) -> ThreeGraph:
    p = Path(path)
    return parse_hypergraph(p.read_text(), str(p))


def write_hypergraph(G: ThreeGraph, path: str | Path) -> None:
    Path(path).write_text(format_hypergraph(G))
