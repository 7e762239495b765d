"""Exact enumeration of equilateral plane embeddings of dense 3-graphs.

Points live in the Eisenstein integers ``a + b*w`` with ``w = exp(i*pi/3)``,
so every equilateral completion of a lattice segment is again a lattice
point and all comparisons are integer equalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .catalog import DenseCertificate, MAX_CATALOG_VERTICES, check_certificate
from .hypergraph import ThreeGraph


class EisensteinPoint(NamedTuple):
    """``a + b*w`` where ``w**2 == w - 1``."""

    a: int
    b: int

    def __add__(self, other):
        return EisensteinPoint(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return EisensteinPoint(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return EisensteinPoint(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinPoint(self.a * other, self.b * other)
        a, b = self
        c, d = other
        return EisensteinPoint(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conjugate(self) -> EisensteinPoint:
        return EisensteinPoint(self.a + self.b, -self.b)

    def norm(self) -> int:
        a, b = self
        return a * a + a * b + b * b

    def to_complex(self) -> complex:
        return complex(self.a + 0.5 * self.b, self.b * 3**0.5 / 2)

    def __repr__(self) -> str:
        return f"E({self.a}, {self.b})"


ZERO = EisensteinPoint(0, 0)
ONE = EisensteinPoint(1, 0)
OMEGA = EisensteinPoint(0, 1)
OMEGA_BAR = EisensteinPoint(1, -1)  # 1 - w


def apexes(u: EisensteinPoint, v: EisensteinPoint) -> tuple[EisensteinPoint, EisensteinPoint]:
    """The two points completing ``u, v`` to an equilateral triangle.

    The first rotates ``v - u`` by +60 degrees about ``u``, the second by -60.
    """
    d = v - u
    return u + d * OMEGA, u + d * OMEGA_BAR


def is_equilateral(x: EisensteinPoint, y: EisensteinPoint, z: EisensteinPoint) -> bool:
    """Equal squared side lengths; three coincident points count as equilateral."""
    n1 = (x - y).norm()
    return n1 == (y - z).norm() == (z - x).norm()


@dataclass
class Realization:
    bits: str  # one character per vertex v_3 .. v_r, '0' = first apex
    points: tuple[EisensteinPoint, EisensteinPoint, EisensteinPoint]

    def to_dict(self) -> dict:
        return {"bits": self.bits, "points": [list(p) for p in self.points]}


@dataclass
class EmbeddingReport:
    verified: bool
    configurations_checked: int
    realizations: list[Realization] = field(default_factory=list)
    collisions: int = 0
    ordering: tuple[int, ...] = ()
    checked_edge: tuple[int, int, int] = ()

    def to_dict(self) -> dict:
        return {
            "verified": self.verified,
            "configurations_checked": self.configurations_checked,
            "realizations": [r.to_dict() for r in self.realizations],
            "collisions": self.collisions,
            "ordering": [v + 1 for v in self.ordering],
            "checked_edge": [v + 1 for v in self.checked_edge],
        }


def verify_forbidden(H: ThreeGraph, cert: DenseCertificate) -> EmbeddingReport:
    """Try all 2^(r-2) embeddings dictated by the certificate.

    ``v_1 -> 0`` and ``v_2 -> 1``; each later vertex is placed at one of the
    two apexes over the other two vertices of its designated edge (base taken
    in ordering order). The report is verified when no configuration makes
    the second final edge equilateral.
    """
    r = H.n
    if r > MAX_CATALOG_VERTICES:
        raise OverflowError(f"{r} vertices exceeds the catalog bound {MAX_CATALOG_VERTICES}")
    if not check_certificate(H, cert):
        raise ValueError("certificate is not valid for this graph")

    order = cert.ordering
    pos = {v: i for i, v in enumerate(order)}
    steps = list(cert.prefix_edges) + [cert.final_edges[0]]
    bases = []
    for i, e in enumerate(steps, start=2):
        v = order[i]
        x, y = sorted((u for u in e if u != v), key=pos.__getitem__)
        bases.append((v, x, y))
    target = cert.final_edges[1]

    points: dict[int, EisensteinPoint] = {order[0]: ZERO, order[1]: ONE}
    bits: list[str] = []
    realizations: list[Realization] = []
    collisions = 0
    checked = 0

    def rec(k: int) -> None:
        nonlocal collisions, checked
        if k == len(bases):
            checked += 1
            if len(set(points.values())) < r:
                collisions += 1
            p = tuple(points[v] for v in target)
            if is_equilateral(*p):
                realizations.append(Realization("".join(bits), p))
            return
        v, x, y = bases[k]
        for bit, apex in enumerate(apexes(points[x], points[y])):
            points[v] = apex
            bits.append(str(bit))
            rec(k + 1)
            bits.pop()
        del points[v]

    rec(0)
    realizations.sort(key=lambda z: z.bits)
    return EmbeddingReport(
        verified=not realizations,
        configurations_checked=checked,
        realizations=realizations,
        collisions=collisions,
        ordering=tuple(order),
        checked_edge=tuple(target),
    )


def format_report(name: str, report: EmbeddingReport) -> str:
    status = "verified" if report.verified else "NOT verified"
    lines = [
        f"{name}: {status}, {report.configurations_checked} configurations",
        "ordering: " + " ".join(str(v + 1) for v in report.ordering),
        "checked edge: " + " ".join(str(v + 1) for v in report.checked_edge),
        f"collisions: {report.collisions}",
    ]
    for z in report.realizations:
        pts = ", ".join(f"{p.a}{p.b:+d}w" for p in z.points)
        lines.append(f"realization {z.bits}: {pts}")
    return "\n".join(lines) + "\n"
