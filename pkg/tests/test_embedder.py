import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simtri.catalog import DenseCertificate, catalog_entry, certificate_for_ordering, find_dense_ordering
from simtri.embedder import (
    OMEGA,
    OMEGA_BAR,
    ONE,
    ZERO,
    EisensteinPoint,
    apexes,
    format_report,
    is_equilateral,
    verify_forbidden,
)
from simtri.hypergraph import ThreeGraph
from simtri.reproduce import HEX_CONTROL

points = st.builds(EisensteinPoint, st.integers(-50, 50), st.integers(-50, 50))


def test_omega_squared():
    assert OMEGA * OMEGA == OMEGA - ONE
    assert OMEGA * OMEGA_BAR == ONE
    assert OMEGA.to_complex() == pytest.approx(complex(0.5, 3**0.5 / 2))


def test_unit_apexes():
    assert apexes(ZERO, ONE) == (EisensteinPoint(0, 1), EisensteinPoint(1, -1))


def test_degenerate_apexes():
    assert apexes(ZERO, ZERO) == (ZERO, ZERO)


def test_apex_norms():
    u, v = EisensteinPoint(1, 0), EisensteinPoint(0, 1)
    # 1 and w are neighbouring lattice points, so the squared side is 1
    assert abs(u.to_complex() - v.to_complex()) ** 2 == pytest.approx(1.0)
    for p in apexes(u, v):
        assert (p - u).norm() == (p - v).norm() == (u - v).norm() == 1
    u, v = ZERO, OMEGA + ONE
    for p in apexes(u, v):
        assert (p - u).norm() == (p - v).norm() == (u - v).norm() == 3


@given(points, points)
def test_norm_matches_complex_modulus(x, y):
    assert (x - y).norm() == pytest.approx(abs(x.to_complex() - y.to_complex()) ** 2)


@given(points, points)
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conjugate().norm() == x.norm()


@given(points, points)
def test_apexes_swap_with_endpoints(u, v):
    a, b = apexes(u, v)
    assert set(apexes(v, u)) == {a, b}
    assert is_equilateral(u, v, a) and is_equilateral(u, v, b)
    assert a + b == u + v  # reflection through the midpoint of uv


@given(points, points, points, points)
def test_equilateral_is_translation_and_rotation_invariant(x, y, z, t):
    assert is_equilateral(x, y, z) == is_equilateral(x + t, y + t, z + t)
    assert is_equilateral(x, y, z) == is_equilateral(x * OMEGA, y * OMEGA, z * OMEGA)


def test_is_equilateral_examples():
    assert is_equilateral(ZERO, ONE, OMEGA)
    assert not is_equilateral(ZERO, ONE, EisensteinPoint(2, 0))
    assert not is_equilateral(ZERO, OMEGA, OMEGA_BAR)
    assert is_equilateral(ZERO, ZERO, ZERO)


@pytest.mark.parametrize("name, configs", [("K4-", 4), ("C5-", 8), ("L7", 64), ("L8", 128), ("L9", 128), ("L10", 1024)])
def test_catalog_members_verified(name, configs):
    H = catalog_entry(name).graph
    rep = verify_forbidden(H, find_dense_ordering(H))
    assert rep.verified
    assert rep.configurations_checked == configs == 2 ** (H.n - 2)
    assert rep.realizations == []


def test_hex_control_realized():
    rep = verify_forbidden(HEX_CONTROL, find_dense_ordering(HEX_CONTROL))
    assert not rep.verified
    assert all(is_equilateral(*z.points) for z in rep.realizations)
    sides = {(z.points[0] - z.points[1]).norm() for z in rep.realizations}
    assert 3 in sides
    assert rep.realizations == sorted(rep.realizations, key=lambda z: z.bits)


def test_k4_minus_given_ordering():
    H = catalog_entry("K4-").graph
    rep = verify_forbidden(H, certificate_for_ordering(H, [0, 1, 2, 3]))
    assert rep.verified and rep.configurations_checked == 4


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["K4-", "C5-", "C5+", "L2", "L3", "L4", "L5", "L6", "L7"]), st.permutations(range(8)))
def test_verification_invariant_under_relabelling(name, perm):
    H = catalog_entry(name).graph
    perm = [p for p in perm if p < H.n]
    cert = find_dense_ordering(H)
    rep = verify_forbidden(H.relabel(perm), cert.relabel(perm))
    assert rep.verified == verify_forbidden(H, cert).verified
    assert rep.configurations_checked == 2 ** (H.n - 2)


def test_hex_sixth_roots_realization():
    # centre at the origin, neighbours at consecutive sixth roots of unity
    roots = [ONE]
    for _ in range(5):
        roots.append(roots[-1] * OMEGA)
    pts = [ZERO] + roots[:5]
    for e in HEX_CONTROL.edges:
        assert is_equilateral(*(pts[v] for v in e))


def test_invalid_certificate_raises():
    H = catalog_entry("K4-").graph
    bad = DenseCertificate((3, 2, 1, 0), ((1, 2, 3),), ((0, 1, 3), (0, 2, 3)))
    with pytest.raises(ValueError):
        verify_forbidden(H, bad)


def test_oversized_graph_raises():
    edges = [(0, 1, v) for v in range(2, 13)] + [(2, 3, 12)]
    H = ThreeGraph.from_edges(13, edges)
    with pytest.raises(OverflowError):
        verify_forbidden(H, DenseCertificate(tuple(range(13)), (), ((0, 1, 12), (2, 3, 12))))


def test_report_text():
    H = catalog_entry("L10").graph
    text = format_report("L10", verify_forbidden(H, find_dense_ordering(H)))
    assert text.splitlines()[0] == "L10: verified, 1024 configurations"
