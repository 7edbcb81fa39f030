"""B2 self-link certificates (diagonal order 5, the computed relation set)."""

import pytest

from linkdyn.ncalg import (
    check_local_confluence,
    enumerate_basis,
    is_central,
    is_skew_primitive,
)
from linkdyn.ncalg.presentations import (
    b2_selflink,
    b2_v_element,
    b2_w_element,
    cyclic_group_spec,
    free_group_spec,
)

SPEC = free_group_spec(((2, 1), (2, 1)))


def P_upper():
    return b2_selflink("upper")


def test_spec_example_x2x1():
    P = P_upper()
    z, x1, x2 = (P.gen_index(n) for n in ("z", "x1", "x2"))
    assert P.rules[(x2, x1)] == P.word_el((x1, x2), P.ring.q(2)) + P.word_el((z,))


def test_delta_z_and_u_match_figure():
    P = P_upper()
    u, z, x1, x2 = (P.gen_index(n) for n in ("u", "z", "x1", "x2"))
    ring = P.ring
    g1 = SPEC.vec({1: 1})
    g1g2 = SPEC.vec({1: 1, 2: 1})
    g1g2g2 = SPEC.vec({1: 1, 2: 2})
    one_m = lambda e: ring.one() - ring.q(e)
    dz = P.coproducts[z]
    assert dz.terms == {
        (((), g1g2), ((z,), P.zero_grp())): ring.one(),
        (((z,), P.zero_grp()), ((), P.zero_grp())): ring.one(),
        (((x2,), g1), ((x1,), P.zero_grp())): one_m(3),
    }
    du = P.coproducts[u]
    assert du.terms == {
        (((), g1g2g2), ((u,), P.zero_grp())): ring.one(),
        (((u,), P.zero_grp()), ((), P.zero_grp())): ring.one(),
        (((x2, x2), g1), ((x1,), P.zero_grp())): one_m(3) * one_m(4),
        (((x2,), g1g2), ((z,), P.zero_grp())): one_m(3).q_shift(1),
    }


def test_confluence_all_variants():
    for variant in ("upper", "ambient", "full"):
        P = b2_selflink(variant)
        assert check_local_confluence(P) == [], variant


def test_x_fifth_powers_skew_primitive():
    P = P_upper()
    for i in (1, 2):
        xi = P.gen_index(f"x{i}")
        ok, resid = is_skew_primitive(P.word_el((xi,) * 5), SPEC.vec({i: 5}), P)
        assert ok, resid


def test_v_skew_primitive_and_central():
    P = b2_selflink("ambient")
    v = b2_v_element(P, SPEC)
    ok, resid = is_skew_primitive(v, SPEC.vec({1: 5, 2: 5}), P)
    assert ok, resid
    ok, wit = is_central(v, P)
    assert ok, wit


def test_w_skew_primitive_and_central():
    P = b2_selflink("ambient")
    w = b2_w_element(P, SPEC)
    ok, resid = is_skew_primitive(w, SPEC.vec({1: 5, 2: 10}), P)
    assert ok, resid
    ok, wit = is_central(w, P)
    assert ok, wit


def test_w_counterterm_is_rigid():
    # perturbing the v-coefficient of w breaks skew-primitivity: the
    # counterterm structure is forced, not an artifact of the checker
    from linkdyn.ncalg.presentations import _cpow, _ring_poly, b2_v_element

    P = b2_selflink("ambient")
    c = _cpow(_ring_poly(P.ring, (1, -1)), 5)
    bad = b2_w_element(P, SPEC) + b2_v_element(P, SPEC).scale(c)
    ok, resid = is_skew_primitive(bad, SPEC.vec({1: 5, 2: 10}), P)
    assert not ok and not resid.is_zero()


def test_z5_u5_centrality_pattern():
    P = b2_selflink("ambient")
    z, u, x1, x2 = (P.gen_index(n) for n in ("z", "u", "x1", "x2"))
    z5 = P.word_el((z,) * 5)
    ok, wit = is_central(z5, P)
    assert not ok and wit == "x2"
    for xn, expected in (("x1", True), ("x2", False)):
        x = P.gen(xn)
        assert ((x * z5) - (z5 * x)).normal_form().is_zero() is expected
    u5 = P.word_el((u,) * 5)
    for xn, expected in (("x1", False), ("x2", True)):
        x = P.gen(xn)
        assert ((x * u5) - (u5 * x)).normal_form().is_zero() is expected


def test_basis_count_z20():
    spec20 = cyclic_group_spec(20, (2, 1))
    P = b2_selflink("full", spec=spec20)
    count, _ = enumerate_basis(P, {"u": 5, "z": 5, "x1": 5, "x2": 5})
    assert count == 5**4 * 20 == 12500
