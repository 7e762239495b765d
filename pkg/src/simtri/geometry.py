"""Triangle shapes, eps-similarity, and similarity 3-graphs of point sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .hypergraph import FormatError, ThreeGraph

ANGLE_SUM_TOL = 1e-12
DEGENERATE_ANGLE = 1e-12


@dataclass(frozen=True)
class TriangleShape:
    """Sorted angle triple in radians."""

    angles: tuple[float, float, float]

    def __post_init__(self) -> None:
        a = tuple(sorted(float(x) for x in self.angles))
        if len(a) != 3:
            raise ValueError("a triangle shape needs three angles")
        if a[0] <= 0:
            raise ValueError(f"angles must be positive, got {a}")
        if abs(sum(a) - math.pi) > ANGLE_SUM_TOL:
            raise ValueError(f"angles must sum to pi, got {sum(a)!r}")
        object.__setattr__(self, "angles", a)

    @classmethod
    def from_degrees(cls, a: float, b: float, c: float) -> TriangleShape:
        rad = [math.radians(x) for x in (a, b, c)]
        # absorb rounding of the degree conversion into the largest angle
        rad.sort()
        rad[2] = math.pi - rad[0] - rad[1]
        return cls(tuple(rad))

    @classmethod
    def from_sides(cls, a: float, b: float, c: float) -> TriangleShape:
        shape = _angles_from_sides(a, b, c)
        if shape is None:
            raise ValueError(f"sides {(a, b, c)} do not form a triangle")
        return shape

    @property
    def degrees(self) -> tuple[float, float, float]:
        return tuple(math.degrees(x) for x in self.angles)

    @property
    def is_equilateral(self) -> bool:
        return all(abs(x - math.pi / 3) < 1e-9 for x in self.angles)

    @property
    def is_acute(self) -> bool:
        return self.angles[2] < math.pi / 2

    def unit_vertices(self) -> np.ndarray:
        """Planar vertices with the longest side from (0,0) to (1,0), centroid not moved."""
        alpha, beta, _ = self.angles
        # longest side opposite gamma; place alpha at the origin, beta at (1, 0)
        c = 1.0
        b = math.sin(beta) / math.sin(math.pi - alpha - beta) * c
        apex = (b * math.cos(alpha), b * math.sin(alpha))
        return np.array([[0.0, 0.0], [1.0, 0.0], apex])


EQUILATERAL = TriangleShape((math.pi / 3, math.pi / 3, math.pi - 2 * math.pi / 3))


def _angles_from_sides(a: float, b: float, c: float) -> Optional[TriangleShape]:
    s = sorted((a, b, c))
    if s[0] <= 0:
        return None
    lo, mid, hi = s
    # angles at the two ends of the longest side are acute and well conditioned
    cos_opp_lo = (mid * mid + hi * hi - lo * lo) / (2 * mid * hi)
    cos_opp_mid = (lo * lo + hi * hi - mid * mid) / (2 * lo * hi)
    alpha = math.acos(min(1.0, max(-1.0, cos_opp_lo)))
    beta = math.acos(min(1.0, max(-1.0, cos_opp_mid)))
    gamma = math.pi - alpha - beta
    if min(alpha, beta, gamma) < DEGENERATE_ANGLE:
        return None
    return TriangleShape((alpha, beta, gamma))


def triangle_angles(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> Optional[TriangleShape]:
    """Angle triple of the triangle ``pqr``; ``None`` for coincident or collinear points."""
    p, q, r = (np.asarray(x, dtype=float) for x in (p, q, r))
    if not (p.shape == q.shape == r.shape) or p.ndim != 1:
        raise ValueError(f"dimension mismatch: {p.shape}, {q.shape}, {r.shape}")
    a = float(np.linalg.norm(q - r))
    b = float(np.linalg.norm(p - r))
    c = float(np.linalg.norm(p - q))
    if a == 0 or b == 0 or c == 0:
        return None
    return _angles_from_sides(a, b, c)


def side_lengths(p, q, r) -> tuple[float, float, float]:
    p, q, r = (np.asarray(x, dtype=float) for x in (p, q, r))
    return tuple(sorted(float(np.linalg.norm(u - v)) for u, v in ((q, r), (p, r), (p, q))))


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")


def is_eps_similar(t1: TriangleShape, t2: TriangleShape, eps: float) -> bool:
    _check_eps(eps)
    return all(abs(x - y) < eps for x, y in zip(t1.angles, t2.angles))


def is_eps_isomorphic(sides1: Sequence[float], sides2: Sequence[float], eps: float) -> bool:
    _check_eps(eps)
    s1, s2 = sorted(sides1), sorted(sides2)
    if len(s1) != 3 or len(s2) != 3:
        raise ValueError("side triples need three entries")
    if min(s1) <= 0 or min(s2) <= 0:
        raise ValueError("side lengths must be positive")
    return all(abs(x - y) < eps for x, y in zip(s1, s2))


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: np.ndarray = field(compare=False)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            pts = pts.reshape(-1, self.dim)
        if self.dim < 2:
            raise ValueError(f"dimension must be at least 2, got {self.dim}")
        if pts.shape[1] != self.dim:
            raise ValueError(f"points have dimension {pts.shape[1]}, expected {self.dim}")
        if len(np.unique(pts, axis=0)) != len(pts):
            raise ValueError("point set contains duplicate points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> PointSet:
        arr = np.asarray(list(points), dtype=float)
        return cls(arr.shape[1], arr)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.dim == other.dim
            and np.array_equal(self.points, other.points)
        )

    __hash__ = None


@dataclass(frozen=True)
class SimilarityGraph(ThreeGraph):
    """A 3-graph built from points, remembering the shape and eps used."""

    shape: Optional[TriangleShape] = field(default=None, compare=False)
    eps: Optional[float] = field(default=None, compare=False)


def _triple_index(n: int) -> np.ndarray:
    if n < 3:
        return np.zeros((0, 3), dtype=np.intp)
    return np.array(list(combinations(range(n), 3)), dtype=np.intp)


def _sorted_sides(pts: np.ndarray, idx: np.ndarray) -> np.ndarray:
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(-1))
    i, j, k = idx[:, 0], idx[:, 1], idx[:, 2]
    sides = np.stack([dist[j, k], dist[i, k], dist[i, j]], axis=1)
    sides.sort(axis=1)
    return sides


def _triple_angles(pts: np.ndarray, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sorted angles per triple and a mask of non-degenerate triples."""
    s = _sorted_sides(pts, idx)
    lo, mid, hi = s[:, 0], s[:, 1], s[:, 2]
    ok = lo > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        c_lo = (mid * mid + hi * hi - lo * lo) / (2 * mid * hi)
        c_mid = (lo * lo + hi * hi - mid * mid) / (2 * lo * hi)
    alpha = np.arccos(np.clip(np.nan_to_num(c_lo, nan=1.0), -1.0, 1.0))
    beta = np.arccos(np.clip(np.nan_to_num(c_mid, nan=1.0), -1.0, 1.0))
    gamma = math.pi - alpha - beta
    ang = np.stack([alpha, beta, gamma], axis=1)
    ang.sort(axis=1)
    ok &= ang[:, 0] >= DEGENERATE_ANGLE
    return ang, ok


def build_similarity_graph(P: PointSet, T: TriangleShape, eps: float) -> SimilarityGraph:
    _check_eps(eps)
    idx = _triple_index(len(P))
    ang, ok = _triple_angles(P.points, idx)
    target = np.array(T.angles)
    hit = ok & (np.abs(ang - target) < eps).all(axis=1)
    edges = frozenset(tuple(int(x) for x in t) for t in idx[hit])
    return SimilarityGraph(len(P), edges, shape=T, eps=eps)


def count_similar(P: PointSet, T: TriangleShape, eps: float) -> int:
    return build_similarity_graph(P, T, eps).num_edges


def count_isomorphic(P: PointSet, sides: Sequence[float], eps: float) -> int:
    _check_eps(eps)
    target = np.array(sorted(sides), dtype=float)
    if target.shape != (3,) or target[0] <= 0:
        raise ValueError("sides must be three positive lengths")
    idx = _triple_index(len(P))
    s = _sorted_sides(P.points, idx)
    return int(((np.abs(s - target) < eps).all(axis=1)).sum())


# -- point-set text format -------------------------------------------------------


def format_points(P: PointSet) -> str:
    lines = [f"dim {P.dim}"]
    lines += [" ".join(repr(float(x)) for x in row) for row in P.points]
    return "\n".join(lines) + "\n"


def parse_points(text: str, path: str | None = None) -> PointSet:
    dim = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("dim"):
            if dim is not None or rows:
                raise FormatError("'dim' header must come first", lineno, path)
            parts = line.split(" ")
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("header must be 'dim d'", lineno, path)
            dim = int(parts[1])
            continue
        try:
            row = [float(x) for x in line.split(" ")]
        except ValueError:
            raise FormatError(f"bad coordinate line {line!r}", lineno, path) from None
        if not all(math.isfinite(x) for x in row):
            raise FormatError("non-finite coordinate", lineno, path)
        if dim is None:
            dim = len(row)
        if len(row) != dim:
            raise FormatError(f"expected {dim} coordinates, got {len(row)}", lineno, path)
        rows.append(row)
    if dim is None:
        raise FormatError("empty point file", None, path)
    try:
        return PointSet(dim, np.array(rows, dtype=float).reshape(-1, dim))
    except ValueError as exc:
        raise FormatError(str(exc), None, path) from None


def read_points(path: str | Path) -> PointSet:
    p = Path(path)
    return parse_points(p.read_text(), str(p))


def write_points(P: PointSet, path: str | Path) -> None:
    Path(path).write_text(format_points(P))
