"""Extremal constructions: the h(n) recursion, S(n), and point configurations."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .geometry import EQUILATERAL, PointSet, TriangleShape
from .hypergraph import ThreeGraph

log = logging.getLogger(__name__)

DEFAULT_RATIO = 0.005
MAX_RATIO = 0.2
CACHE_MAGIC = "# simtri h-cache v1"


# -- h(n) ----------------------------------------------------------------------


class HSequence:
    """Memoized ``h(n) = max{abc + h(a) + h(b) + h(c) : a + b + c = n}``.

    Splits are reported as ``a >= b >= c``; among optimal splits the
    lexicographically largest wins. The trivial split ``(n, 0, 0)`` refers
    back to ``h(n)`` itself and is skipped.

    Candidate splits are pruned with ``h(m) <= m**3 / 24``: on the simplex
    ``x1 + x2 + x3 = 1`` one has ``x1 x2 x3 + (x1^3 + x2^3 + x3^3)/24
    = 1/24 - (e2 - 9 e3)/8`` and ``e2 >= 9 e3`` by AM-HM, so the bound
    propagates by induction. For a fixed largest part ``a`` the bound
    ``24abc + a^3 + b^3 + c^3`` grows with ``bc``, so only ``b`` close to
    ``(n - a) / 2`` survives.
    """

    def __init__(self) -> None:
        self.values: dict[int, int] = {0: 0, 1: 0, 2: 0}
        self.best_split: dict[int, tuple[int, int, int]] = {0: (0, 0, 0), 1: (1, 0, 0), 2: (1, 1, 0)}

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n not in self.values:
            self._compute(n)
        return self.values[n]

    def split(self, n: int) -> tuple[int, int, int]:
        self.value(n)
        return self.best_split[n]

    def _candidates(self, n: int, lb24: int):
        a = np.arange((n + 2) // 3, n, dtype=np.int64)
        m = n - a
        b = (m + 1) // 2
        c = m - b
        ub = 24 * a * b * c + a**3 + b**3 + c**3
        for ai in a[ub >= lb24].tolist():
            mi = n - ai
            bi = (mi + 1) // 2
            while bi <= min(ai, mi):
                ci = mi - bi
                if 24 * ai * bi * ci + ai**3 + bi**3 + ci**3 < lb24:
                    break
                yield ai, bi, ci
                bi += 1

    def _compute(self, n: int) -> None:
        bal = balanced_split(n)
        best = bal[0] * bal[1] * bal[2] + sum(self.value(x) for x in bal)
        best_split = bal
        for a, b, c in self._candidates(n, 24 * best):
            val = a * b * c + self.value(a) + self.value(b) + self.value(c)
            if val > best or (val == best and (a, b, c) > best_split):
                best, best_split = val, (a, b, c)
        self.values[n] = best
        self.best_split[n] = best_split

    # -- cache file ------------------------------------------------------------

    def save(self, path: str | Path, upto: Optional[int] = None) -> None:
        keys = sorted(self.values) if upto is None else range(upto + 1)
        lines = [CACHE_MAGIC]
        for n in keys:
            a, b, c = self.split(n)
            lines.append(f"{n} {self.value(n)} {a} {b} {c}")
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> HSequence:
        """Read a cache file; a malformed file is ignored with a warning."""
        seq = cls()
        try:
            lines = Path(path).read_text().splitlines()
            if not lines or lines[0].strip() != CACHE_MAGIC:
                raise ValueError("missing magic header")
            values, splits = {}, {}
            for line in lines[1:]:
                if not line.strip():
                    continue
                n, h, a, b, c = (int(x) for x in line.split())
                if a + b + c != n or not a >= b >= c >= 0:
                    raise ValueError(f"bad split on line {line!r}")
                values[n], splits[n] = h, (a, b, c)
        except (OSError, ValueError) as exc:
            log.warning("ignoring h-sequence cache %s: %s", path, exc)
            return seq
        seq.values.update(values)
        seq.best_split.update(splits)
        return seq


def balanced_split(n: int) -> tuple[int, int, int]:
    """``a >= b >= c`` with ``a + b + c = n`` and ``a - c <= 1``."""
    a = -(-n // 3)
    c = n // 3
    return a, n - a - c, c


def balanced_parts(n: int, k: int) -> list[int]:
    """``n`` split into ``k`` nonincreasing parts differing by at most one."""
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


_DEFAULT_H = HSequence()


def h_value(n: int) -> int:
    return _DEFAULT_H.value(n)


def best_split(n: int) -> tuple[int, int, int]:
    return _DEFAULT_H.split(n)


def h_power_of_three(k: int) -> int:
    return (27**k - 3**k) // 24


# -- S(n) ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def s_edge_count(n: int) -> int:
    """Edge count of S(n) without building it."""
    if n < 3:
        return 0
    a, b, c = balanced_split(n)
    return a * b * c + s_edge_count(a) + s_edge_count(b) + s_edge_count(c)


def _s_blocks(n: int, offset: int, out: list) -> None:
    if n < 3:
        return
    a, b, c = balanced_split(n)
    out.append((offset, a, b, c))
    _s_blocks(a, offset, out)
    _s_blocks(b, offset + a, out)
    _s_blocks(c, offset + a + b, out)


def build_S(n: int) -> ThreeGraph:
    """Recursive balanced 3-partite 3-graph; copies occupy contiguous index blocks."""
    blocks: list = []
    _s_blocks(n, 0, blocks)
    edges = set()
    for off, a, b, c in blocks:
        A = range(off, off + a)
        B = range(off + a, off + a + b)
        C = range(off + a + b, off + a + b + c)
        edges.update((x, y, z) for x in A for y in B for z in C)
    return ThreeGraph(n, frozenset(edges))


# -- point constructions ---------------------------------------------------------


class InfeasibleError(ValueError):
    """The requested shape cannot be realized by the construction."""


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str  # "planar-iterated" | "disphenoid" | "regular-simplex"
    shape: TriangleShape = EQUILATERAL
    ratio: float = DEFAULT_RATIO
    depth: Optional[int] = None
    sides: Optional[tuple[float, float, float]] = None

    def __post_init__(self) -> None:
        if self.kind not in ("planar-iterated", "disphenoid", "regular-simplex"):
            raise ValueError(f"unknown construction kind {self.kind!r}")
        if not 0 < self.ratio <= MAX_RATIO:
            raise ValueError(f"ratio must lie in (0, {MAX_RATIO}], got {self.ratio}")
        if self.depth is not None and self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.kind == "regular-simplex" and not self.shape.is_equilateral:
            raise ValueError("regular-simplex construction needs the equilateral shape")
        if self.kind == "disphenoid":
            shape = TriangleShape.from_sides(*self.sides) if self.sides else self.shape
            if not shape.is_acute:
                raise InfeasibleError("disphenoid construction needs a strictly acute shape")


def _place(n: int, vertices: np.ndarray, sizes, ratio: float, scale: float,
           center: np.ndarray, depth: Optional[int], out: list) -> None:
    if n == 1:
        out.append(center)
        return
    if depth == 0:
        raise ValueError("recursion depth exhausted before groups became singletons")
    k = len(vertices)
    parts = sizes(n)
    centroid = vertices.mean(axis=0)
    for j, m in enumerate(parts):
        if m == 0:
            continue
        sub_center = center + scale * (vertices[j % k] - centroid)
        _place(m, vertices, sizes, ratio, scale * ratio, sub_center, None if depth is None else depth - 1, out)


def build_planar_construction(n: int, spec: ConstructionSpec) -> PointSet:
    """Three balanced groups near the vertices of ``T``, recursively, shrinking by ``ratio``.

    Vertex order matches :func:`build_S`, so the similarity graph should
    contain ``S(n)`` under the identity map.
    """
    if spec.kind != "planar-iterated":
        raise ValueError(f"expected a planar-iterated spec, got {spec.kind!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    V = spec.shape.unit_vertices()
    out: list = []
    if n == 0:
        return PointSet(2, np.zeros((0, 2)))
    _place(n, V, balanced_split, spec.ratio, 1.0, V.mean(axis=0), spec.depth, out)
    P = PointSet(2, np.array(out))
    return P


def make_disphenoid(sides: Sequence[float]) -> np.ndarray:
    """Tetrahedron whose four faces all have side lengths ``sides``.

    Built from an axis-aligned box with edge lengths ``p, q, r``.
    """
    a, b, c = (float(x) for x in sides)
    if min(a, b, c) <= 0:
        raise InfeasibleError("side lengths must be positive")
    p2 = (b * b + c * c - a * a) / 2
    q2 = (a * a + c * c - b * b) / 2
    r2 = (a * a + b * b - c * c) / 2
    if min(p2, q2, r2) <= 0:
        raise InfeasibleError(f"sides {(a, b, c)} are not strictly acute")
    p, q, r = math.sqrt(p2), math.sqrt(q2), math.sqrt(r2)
    return np.array([[0.0, 0.0, 0.0], [p, q, 0.0], [p, 0.0, r], [0.0, q, r]])


def regular_simplex(d: int) -> np.ndarray:
    """``d + 1`` points in R^d with all pairwise distances 1."""
    if d < 1:
        raise ValueError("dimension must be positive")
    E = np.eye(d)
    last = np.full(d, (1 - math.sqrt(d + 1)) / d)
    V = np.vstack([E, last]) / math.sqrt(2)
    return V


def _shape_sides(shape: TriangleShape) -> tuple[float, float, float]:
    return tuple(math.sin(x) for x in shape.angles)


def build_simplex_construction(n: int, d: int, spec: ConstructionSpec) -> PointSet:
    """Iterated ``d + 1`` balanced groups at simplex (or disphenoid) vertices in R^d."""
    if d < 3:
        raise ValueError(f"simplex constructions need d >= 3, got {d}")
    if spec.kind == "regular-simplex":
        V = regular_simplex(d)
    elif spec.kind == "disphenoid":
        if d != 3:
            raise ValueError("the disphenoid construction lives in R^3")
        sides = spec.sides or _shape_sides(spec.shape)
        V = make_disphenoid(sides)
        V = V / max(sides)
    else:
        raise ValueError(f"expected a simplex or disphenoid spec, got {spec.kind!r}")
    if n == 0:
        return PointSet(d, np.zeros((0, d)))
    out: list = []
    _place(n, V, lambda m: balanced_parts(m, d + 1), spec.ratio, 1.0, V.mean(axis=0), spec.depth, out)
    return PointSet(d, np.array(out))


def simplex_spec_for(d: int, shape: TriangleShape = EQUILATERAL, ratio: float = DEFAULT_RATIO) -> ConstructionSpec:
    """The construction kind the dimension calls for."""
    if d == 3 and not shape.is_equilateral:
        return ConstructionSpec("disphenoid", shape, ratio)
    return ConstructionSpec("regular-simplex", shape, ratio)


def _power_exponent(n: int, base: int) -> Optional[int]:
    k, m = 0, n
    while m > 1 and m % base == 0:
        m //= base
        k += 1
    return k if m == 1 else None


def expected_simplex_count(n: int, d: int) -> Fraction:
    """Exact triangle count of the iterated ``(d+1)``-group construction for ``n = (d+1)^k``."""
    base = d + 1
    k = _power_exponent(n, base)
    if k is None:
        raise ValueError(f"n={n} is not a power of {base}")
    total = Fraction(0)
    for i in range(1, k + 1):
        total += Fraction(n, base**i) ** 3 * math.comb(base, 3) * base ** (i - 1)
    return total


def simplex_density_limit(d: int) -> Fraction:
    """Limit of ``expected_simplex_count(n, d) / n^3``: ``(d - 1) / (6 (d + 2))``."""
    return Fraction(d - 1, 6 * (d + 2))


def iterated_pattern_edges(n: int, k: int) -> set:
    """Edges of the iterated ``k``-part blow-up matching the construction's numbering.

    For ``k == 3`` this is ``S(n)``.
    """
    edges: set = set()

    def rec(m: int, off: int) -> None:
        if m < 3:
            return
        parts = balanced_split(m) if k == 3 else balanced_parts(m, k)
        starts = np.cumsum([0] + list(parts))
        blocks = [range(off + starts[i], off + starts[i + 1]) for i in range(len(parts))]
        for X, Y, Z in combinations(blocks, 3):
            edges.update((x, y, z) for x in X for y in Y for z in Z)
        for i, p in enumerate(parts):
            rec(p, off + int(starts[i]))

    rec(n, 0)
    return {tuple(int(v) for v in e) for e in edges}
