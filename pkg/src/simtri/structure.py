"""Partition diagnostics and the closed-form checks behind the stability argument."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Real

import numpy as np

from .hypergraph import ThreeGraph, neighborhood

MIN_PART = Fraction(26, 100)
MAX_LEFTOVER = Fraction(12, 1000)
FLAG_ALGEBRA_BOUND = Fraction(24406, 100000)


class NoEdgeError(ValueError):
    pass


def objective(a1: Real, a2: Real, a3: Real) -> Real:
    """``a1 a2 + a1 a3 + a2 a3 - (a1^2 + a2^2 + a3^2) / 4``; exact for Fractions."""
    quarter = Fraction(1, 4) if all(isinstance(x, (int, Fraction)) for x in (a1, a2, a3)) else 0.25
    return a1 * a2 + a1 * a3 + a2 * a3 - quarter * (a1 * a1 + a2 * a2 + a3 * a3)


@dataclass
class PartitionReport:
    edge: tuple[int, int, int]
    parts: tuple[frozenset, frozenset, frozenset]
    leftover: frozenset
    fractions: tuple[Fraction, Fraction, Fraction]
    objective: Fraction
    disjoint: bool
    min_size_ok: bool
    leftover_ok: bool
    base: tuple[int, ...] = ()

    @property
    def all_flags(self) -> bool:
        return self.disjoint and self.min_size_ok and self.leftover_ok

    def to_dict(self) -> dict:
        return {
            "edge": [v + 1 for v in self.edge],
            "base": [v + 1 for v in self.base],
            "parts": [sorted(v + 1 for v in p) for p in self.parts],
            "leftover": sorted(v + 1 for v in self.leftover),
            "fractions": [str(f) for f in self.fractions],
            "objective": str(self.objective),
            "disjoint": self.disjoint,
            "min_size_ok": self.min_size_ok,
            "leftover_ok": self.leftover_ok,
        }


def _report(n: int, edge, parts, base=()) -> PartitionReport:
    union = frozenset().union(*parts)
    leftover = frozenset(range(n)) - union
    fr = tuple(Fraction(len(p), n) for p in parts)
    disjoint = sum(len(p) for p in parts) == len(union)
    return PartitionReport(
        edge=tuple(edge),
        parts=tuple(parts),
        leftover=leftover,
        fractions=fr,
        objective=objective(*fr),
        disjoint=disjoint,
        min_size_ok=min(fr) >= MIN_PART,
        leftover_ok=Fraction(len(leftover), n) <= MAX_LEFTOVER,
        base=tuple(base),
    )


def best_edge_partition(G: ThreeGraph) -> PartitionReport:
    """Edge whose three pair-neighborhoods maximize the partition objective.

    For the edge ``x1 x2 x3`` the parts are ``N(x2,x3)``, ``N(x1,x3)``,
    ``N(x1,x2)``. Overlapping parts clear the ``disjoint`` flag but the
    objective is still computed from the part sizes. Ties go to the
    lexicographically first edge.
    """
    if G.num_edges == 0:
        raise NoEdgeError("graph has no edges")
    best = None
    for x1, x2, x3 in G.sorted_edges():
        parts = (neighborhood(G, x2, x3), neighborhood(G, x1, x3), neighborhood(G, x1, x2))
        rep = _report(G.n, (x1, x2, x3), parts)
        if best is None or rep.objective > best.objective:
            best = rep
    return best


def best_t221_partition(G: ThreeGraph) -> PartitionReport:
    """Same scan over copies of T_{2,2,1}; intended for small graphs.

    A copy has vertices ``x1, x1', x2, x2', x3`` and the four edges
    ``x1 x2 x3, x1 x2' x3, x1' x2 x3, x1' x2' x3``.
    """
    best = None
    for x3 in range(G.n):
        linked = {}
        for e in G.edges:
            if x3 in e:
                a, b = (v for v in e if v != x3)
                linked.setdefault(a, set()).add(b)
                linked.setdefault(b, set()).add(a)
        verts = sorted(linked)
        for x1, x1p in combinations(verts, 2):
            common = sorted(linked[x1] & linked[x1p])
            for x2, x2p in combinations(common, 2):
                for (p, pp), (q, qp) in (((x1, x1p), (x2, x2p)), ((x2, x2p), (x1, x1p))):
                    A1 = neighborhood(G, q, x3) & neighborhood(G, qp, x3)
                    A2 = neighborhood(G, p, x3) & neighborhood(G, pp, x3)
                    A3 = (neighborhood(G, p, q) & neighborhood(G, pp, q)
                          & neighborhood(G, p, qp) & neighborhood(G, pp, qp))
                    rep = _report(G.n, tuple(sorted((p, q, x3))), (A1, A2, A3), (p, pp, q, qp, x3))
                    if best is None or rep.objective > best.objective:
                        best = rep
    if best is None:
        raise NoEdgeError("graph has no copy of T_{2,2,1}")
    return best


# -- closed-form checks ------------------------------------------------------------


@dataclass
class ConstantCheck:
    name: str
    computed: Fraction
    claimed: Fraction
    below_bound: bool

    @property
    def matches(self) -> bool:
        return self.computed == self.claimed


@dataclass
class BoundChecks:
    checks: list[ConstantCheck] = field(default_factory=list)
    argmax: Fraction = Fraction(0)

    @property
    def passed(self) -> bool:
        return all(c.matches and c.below_bound for c in self.checks)


def quadratic_bound_checks() -> BoundChecks:
    """Exact evaluation of the two one-variable quadratics that cap the objective.

    With ``a2 = a3 = (s - a1)/2`` the objective becomes
    ``-(9/8) a1^2 + (3s/4) a1 + s^2/8``.
    """
    def quad(s: Fraction, a: Fraction) -> Fraction:
        return -Fraction(9, 8) * a * a + Fraction(3, 4) * s * a + s * s / 8

    s_full = Fraction(1)
    at_min_part = quad(s_full, MIN_PART)

    s_short = 1 - MAX_LEFTOVER  # 0.988
    lin, const = Fraction(3, 4) * s_short, s_short * s_short / 8
    assert (lin, const) == (Fraction(741, 1000), Fraction(122018, 10**6))
    argmax = lin / (2 * Fraction(9, 8))
    at_argmax = quad(s_short, argmax)

    return BoundChecks(
        checks=[
            ConstantCheck("value at a1 = 0.26", at_min_part, Fraction(24325, 100000),
                          at_min_part < FLAG_ALGEBRA_BOUND),
            ConstantCheck("maximum with a1+a2+a3 = 0.988", at_argmax, Fraction(61009, 250000),
                          at_argmax < FLAG_ALGEBRA_BOUND),
        ],
        argmax=argmax,
    )


def g(x1, x2, x3):
    return x1 * x2 * x3 + (x1**3 + x2**3 + x3**3) / 24


@dataclass
class GMaximum:
    argmax: tuple[float, float, float]
    value: float
    stage_values: list[float]


def maximize_g(lo: float = 0.26, hi: float = 0.48) -> GMaximum:
    """Grid search of ``g`` on ``{x in [lo, hi]^3 : x1 + x2 + x3 = 1}``, then refinement.

    Steps go 1e-3, 1e-4, ..., 1e-7; each stage searches a window around the
    previous best and keeps the previous best as a candidate.
    """
    def best_on(x1s, x2s, prev=None):
        X1, X2 = np.meshgrid(x1s, x2s, indexing="ij")
        X3 = 1.0 - X1 - X2
        ok = (X1 >= lo) & (X1 <= hi) & (X2 >= lo) & (X2 <= hi) & (X3 >= lo - 1e-15) & (X3 <= hi + 1e-15)
        vals = np.where(ok, g(X1, X2, X3), -np.inf)
        k = np.unravel_index(np.argmax(vals), vals.shape)
        cand = (float(X1[k]), float(X2[k]), float(X3[k])), float(vals[k])
        if prev is not None and prev[1] >= cand[1]:
            return prev
        return cand

    step = 1e-3
    grid = np.round(np.arange(lo, hi + step / 2, step), 12)
    cur = best_on(grid, grid)
    stages = [cur[1]]
    for _ in range(4):
        step /= 10
        offs = np.arange(-20, 21) * step
        x1s = np.clip(cur[0][0] + offs, lo, hi)
        x2s = np.clip(cur[0][1] + offs, lo, hi)
        cur = best_on(x1s, x2s, cur)
        stages.append(cur[1])
    return GMaximum(cur[0], cur[1], stages)
