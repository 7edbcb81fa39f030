import pytest

from linkdyn.diagram import ComponentType
from linkdyn.errors import InvalidDatumError, NotAdmissibleError
from linkdyn.ncalg import (
    LinkingDatum,
    an_pbw_presentation,
    build_root_vectors_an,
    check_local_confluence,
    crucial_commutation_residual,
    is_central,
    presentation_U,
    u_recursion,
    validate_linking_datum,
)
from linkdyn.ncalg.coeffs import CoeffRing
from linkdyn.ncalg.presentations import a2_selflink, ad_power_sum, free_group_spec

A2_Z9 = LinkingDatum(
    cartan=((2, -1), (-1, 2)),
    links=frozenset(),
    grp_names=("g",), grp_orders=(9,),
    g_images=((1,), (1,)),
    chi=((1, 1),),
    p=3,
    params=("gam12", "gam23", "gam13"),
)

E3 = ((1, -1, 0), (0, 1, -1), (0, 0, 1))
A3_Z9 = LinkingDatum(
    cartan=((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    links=frozenset(),
    grp_names=("h1", "h2", "h3"), grp_orders=(9, 9, 9),
    g_images=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    chi=((1, 2, 0), (0, 1, 2), (0, 0, 1)),
    p=3,
    params=tuple(f"g{i}{j}" for i in range(1, 4) for j in range(i + 1, 5)),
)


def linked_a1a1_datum(ring_params=("lam21",)):
    # two A1 components linked; chi rows are forced by chi_1 chi_2 = 1
    return LinkingDatum(
        cartan=((2, 0), (0, 2)),
        links=frozenset({frozenset({1, 2})}),
        grp_names=("g1", "g2"), grp_orders=(0, 0),
        g_images=((1, 0), (0, 1)),
        chi=((1, 4), (1, 4)),
        p=5,
        params=ring_params,
    )


def test_validate_linked_datum_and_lambda_antisymmetry():
    datum = linked_a1a1_datum()
    ring = CoeffRing(datum.params, datum.p)
    lam21 = ring.param("lam21")
    lam12 = -(lam21.q_shift(datum.b_exponent(1, 2)))  # -chi_2(g_1) lam21
    object.__setattr__(datum, "lam", {(2, 1): lam21, (1, 2): lam12})
    assert validate_linking_datum(datum) == []
    # breaking antisymmetry is reported
    object.__setattr__(datum, "lam", {(2, 1): lam21, (1, 2): lam21})
    assert any("lambda" in msg for msg in validate_linking_datum(datum))


def test_validate_rejects_nonlinkable_lambda():
    datum = A2_Z9
    ring = CoeffRing(datum.params, datum.p)
    object.__setattr__(datum, "lam", {(1, 2): ring.param("gam12")})
    bad = validate_linking_datum(datum)
    assert any("not linkable" in msg for msg in bad)
    object.__setattr__(datum, "lam", None)


def test_presentation_U_links_rule():
    datum = linked_a1a1_datum()
    ring = CoeffRing(datum.params, datum.p)
    lam21 = ring.param("lam21")
    lam12 = -(lam21.q_shift(datum.b_exponent(1, 2)))
    object.__setattr__(datum, "lam", {(2, 1): lam21, (1, 2): lam12})
    P = presentation_U(datum)
    # x2 x1 -> chi_1(g_2) x1 x2 + lam21 (1 - g2 g1) ... oriented from (2,1)
    x1, x2 = P.gen_index("x1"), P.gen_index("x2")
    rule = P.rules[(x2, x1)]
    rel = (P.word_el((x2, x1)) - rule)
    # the relation x2x1 - chi(g2)x1x2 - lam21(1-g2g1) must vanish against it
    chk = (P.word_el((x2, x1)) - P.word_el((x1, x2), ring.q(datum.b_exponent(2, 1)))
           - (P.one() - P.grp_el({"g1": 1, "g2": 1})).scale(lam21))
    assert chk.normal_form().is_zero()
    assert check_local_confluence(P) == []
    object.__setattr__(datum, "lam", None)


def test_presentation_U_serre_rhs_zero_when_lambda_zero():
    P = presentation_U(A2_Z9)
    for lhs, rhs in P.rules.items():
        assert all(word for (word, g) in rhs.terms), "no group-algebra terms at lambda=0"


def test_a2_selflink_datum_reproduces_displayed_serre():
    # the displayed relations x1 z - q^2 z x1 = lam12 (1 - g1^2 g2) (and the
    # x2 analogue) are the quantum Serre relations of the datum; both must
    # normalize to zero in the shipped A2 presentation
    P = a2_selflink("upper")
    spec = free_group_spec(((1, 1), (1, 1)))
    ring = P.ring
    for (i, j, lam) in ((1, 2, "lam12"), (2, 1, "lam21")):
        rel = ad_power_sum(P, i, j, 2, 1, 1)
        rhs = (P.one() - P.grp_el(spec.vec({i: 2, j: 1}))).scale(ring.param(lam))
        assert (rel - rhs).normal_form().is_zero(), (i, j)


def test_u_recursion_gamma_zero():
    P = presentation_U(A2_Z9)
    out = u_recursion(A2_Z9, {}, 3, P)
    assert all(e.is_zero() for e in out.values())


def test_u_recursion_single_and_unfold():
    P = presentation_U(A2_Z9)
    ring = P.ring
    gam = {(1, 2): ring.param("gam12"), (2, 3): ring.param("gam23"),
           (1, 3): ring.param("gam13")}
    out = u_recursion(A2_Z9, gam, 3, P)
    # u12 = gam12 (1 - h12)
    expect = (P.one() - P.grp_el({"g": 3})).scale(ring.param("gam12"))
    assert out[(1, 2)] == expect.normal_form()
    # u13 = gam13 (1 - h13) + C * gam12 * u23 with C = (1-q^-1)^3 B^3
    c = (ring.one() - ring.q(2))
    c = c * c * c  # (1 - q^-1)^3, q^-1 = q^2 mod Phi_3
    c = c.q_shift(3 * 3)  # B^{2,3}_{1,2} = q^{E_21}; binom(3,2) = 3
    expect13 = ((P.one() - P.grp_el({"g": 6})).scale(ring.param("gam13"))
                + out[(2, 3)].scale(c * ring.param("gam12")))
    assert out[(1, 3)] == expect13.normal_form()


def test_u_recursion_admissibility():
    # over (Z/3)^1 every h is trivial, so nonzero gamma is inadmissible
    datum = LinkingDatum(
        cartan=((2, -1), (-1, 2)),
        links=frozenset(),
        grp_names=("g",), grp_orders=(3,),
        g_images=((1,), (1,)),
        chi=((1, 1),),
        p=3,
        params=("gam12",),
    )
    P = presentation_U(datum)
    with pytest.raises(NotAdmissibleError):
        u_recursion(datum, {(1, 2): P.ring.param("gam12")}, 3, P)


def test_u_recursion_centrality_a2_a3():
    for datum in (A2_Z9, A3_Z9):
        P = presentation_U(datum)
        ring = P.ring
        n = datum.theta
        gam = {(i, j): ring.param(f"g{i}{j}" if datum is A3_Z9 else f"gam{i}{j}")
               for i in range(1, n + 1) for j in range(i + 1, n + 2)}
        out = u_recursion(datum, gam, 3, P)
        assert len(out) == n * (n + 1) // 2
        for key, e in out.items():
            ok, wit = is_central(e, P)
            assert ok, (datum.theta, key, wit)


# -- A_n PBW presentations -------------------------------------------------

E2 = ((1, -1), (0, 1))


def test_an_pbw_confluent():
    for n, E in ((2, E2), (3, E3)):
        P = an_pbw_presentation(n, E, 5)
        assert len(P.rules) == len(P.gens) * (len(P.gens) - 1) // 2
        assert check_local_confluence(P) == []


def test_root_vectors_normalize_to_generators():
    P = an_pbw_presentation(3, E3, 5)
    rv = build_root_vectors_an(3, E3, 5)
    for (i, j), e in rv.items():
        # re-express the free-algebra root vector inside the PBW presentation
        mapped = P.el({})
        for (word, grp), c in e.terms.items():
            new = tuple(P.gen_index(f"e{k + 1}{k + 2}") for k in word)
            mapped = mapped + P.word_el(new, c)
        nf = mapped.normal_form()
        assert nf == P.gen(f"e{i}{j}"), (i, j, nf)


def test_crucial_commutation_rule():
    for n, E, N in ((2, E2, 5), (3, E3, 5), (2, ((1, 6), (0, 1)), 7)):
        P = an_pbw_presentation(n, E, N)
        intervals = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 2)]
        for iv1 in intervals:
            for iv2 in intervals:
                r = crucial_commutation_residual(P, E, n, N, iv1, iv2)
                assert r.is_zero(), (n, iv1, iv2)


def test_root_vector_counts_match_positive_roots():
    for n in range(1, 6):
        E = tuple(tuple(1 if i == j else (-1 if j == i + 1 else 0) for j in range(n))
                  for i in range(n))
        rv = build_root_vectors_an(n, E, 5)
        assert len(rv) == ComponentType("A", n).positive_root_count()


def test_an_pbw_rejects_bad_exponents():
    from linkdyn.errors import ValidationError
    with pytest.raises(ValidationError):
        an_pbw_presentation(2, ((1, 1), (1, 1)), 5)  # not A_2 Cartan type
