import json
from fractions import Fraction

import pytest

from cubic_k3 import linalg as la
from cubic_k3.lattice import (
    DegenerateLatticeError,
    FiniteQuadraticForm,
    Lattice,
    LatticeError,
    Sublattice,
    UndecidedError,
    a2,
    direct_sum,
    disc_group_form,
    discriminant,
    e8,
    enumerate_even_overlattices,
    finite_form_isomorphic,
    hyperbolic_plane,
    invariants_compare,
    orthogonal_complement,
    rescale,
    saturate,
    saturation_index,
    z,
)
from cubic_k3.hassett import cond_star2
from cubic_k3.periods import build_setup, build_v, cubic_lattice, mukai_lattice

U = hyperbolic_plane()
E8M = rescale(e8(), -1)


def q_value_multiset(f):
    return sorted(f.q(x) for x in f.elements())


# -- construction ----------------------------------------------------------


def test_direct_sum_u_u():
    l = direct_sum(U, U)
    assert l.rank == 4 and l.det == 1


def test_direct_sum_mukai():
    lam = direct_sum(E8M, E8M, U, U, U)
    mukai = direct_sum(lam, U)
    assert mukai.rank == 24
    assert mukai.signature == (4, 20, 0)
    assert mukai.gram == mukai_lattice().gram


def test_direct_sum_eq4():
    l = direct_sum(E8M, E8M, U, U, rescale(a2(), -1))
    assert l.rank == 22
    assert l.signature == (2, 20, 0)
    assert disc_group_form(l).order == 3


def test_rescale():
    assert rescale(U, 5).gram == ((0, 5), (5, 0))
    assert rescale(a2(), -1).gram == ((-2, 1), (1, -2))
    assert rescale(a2(), 1) == a2()
    with pytest.raises(LatticeError):
        rescale(U, 0)


def test_discriminant():
    assert discriminant(a2()) == 3
    d = 14
    assert discriminant(Lattice(((-3, -1), (-1, -(d + 1) // 3)))) == 14
    assert discriminant(E8M) == 1
    with pytest.raises(DegenerateLatticeError):
        discriminant(Lattice(((0, 0), (0, 1))))


def test_lattice_rejects_asymmetric():
    with pytest.raises(ValueError):
        Lattice(((1, 2), (3, 4)))


def test_json_round_trip():
    for l in (a2(), E8M, mukai_lattice(), Lattice(((10**30, 1), (1, -(10**30))), "big")):
        text = json.dumps(l.to_json())
        assert Lattice.from_json(json.loads(text)) == l
        assert json.dumps(Lattice.from_json(json.loads(text)).to_json()) == text
    s = Sublattice(a2(), ((2, 0),))
    assert Sublattice.from_json(json.loads(json.dumps(s.to_json()))) == s


# -- complements and saturation --------------------------------------------


def test_complement_of_a2_in_mukai():
    s = build_setup()
    c = orthogonal_complement(s.a2_sublattice).lattice()
    assert c.rank == 22
    assert c.signature == (2, 20, 0)
    assert discriminant(c) == 3
    assert c.is_even


def test_complement_of_h():
    s = build_setup()
    c = orthogonal_complement(Sublattice(cubic_lattice(), (s.h,))).lattice()
    assert c.rank == 22 and c.signature == (2, 20, 0)
    assert discriminant(c) == 3 and c.is_even


def test_complement_isotropic_line():
    c = orthogonal_complement(Sublattice(U, ((1, 0),)))
    assert c.basis == ((1, 0),)
    assert c.gram == ((0,),)


def test_saturate_examples():
    s = Sublattice(a2(), ((2, 0),))
    assert saturate(s).basis == ((1, 0),)
    assert saturation_index(s) == 2
    setup = build_setup()
    for d, idx in ((14, 3), (12, 1)):
        v = setup.perp_to_mukai(build_v(d))
        sub = Sublattice(setup.mukai, (setup.lam1, setup.lam2, v))
        assert saturation_index(sub) == idx


def test_saturate_idempotent():
    s = Sublattice(a2(), ((2, 4), (0, 6)))
    once = saturate(s)
    assert saturate(once) == once


def test_random_sublattices_of_a2perp(rng):
    g = build_setup().a2_perp
    n = g.rank
    checked = 0
    while checked < 100:
        k = rng.randint(1, 4)
        basis = [[rng.randint(-3, 3) if rng.random() < 0.3 else 0 for _ in range(n)] for _ in range(k)]
        basis = [r for r in basis if any(r)]
        if not basis or la.rank(basis) < len(basis):
            continue
        s = Sublattice(g, basis)
        if s.lattice().det == 0:
            continue
        sat = saturate(s)
        idx = saturation_index(s)
        assert discriminant(s.lattice()) == discriminant(sat.lattice()) * idx * idx
        checked += 1


def test_complement_is_saturated(rng):
    g = build_setup().a2_perp
    for _ in range(20):
        basis = [[rng.randint(-2, 2) for _ in range(g.rank)] for _ in range(rng.randint(1, 3))]
        if la.rank(basis) < len(basis):
            continue
        c = orthogonal_complement(Sublattice(g, basis))
        assert saturate(c).basis == la.hnf(c.basis)[0][: c.rank]


# -- discriminant forms ----------------------------------------------------


def test_disc_group_a2():
    f = disc_group_form(a2())
    assert f.invariant_factors == (3,)
    assert f.q_values[0][0] == Fraction(2, 3)
    assert str(f) == "Z/3, q=[2/3]"


def test_disc_group_a2_negative():
    f = disc_group_form(rescale(a2(), -1))
    assert f.invariant_factors == (3,)
    assert f.q_values[0][0] == Fraction(4, 3)


def test_disc_group_u5():
    f = disc_group_form(rescale(U, 5))
    assert f.invariant_factors == (5, 5)
    assert f.q_values[0][0] == 0 and f.q_values[1][1] == 0
    assert {f.q_values[0][1], f.q_values[1][0]} == {Fraction(1, 5)}


def test_disc_group_rejects_degenerate():
    with pytest.raises(DegenerateLatticeError):
        disc_group_form(Lattice(((0,),)))


def test_fqf_consistency():
    # q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2
    for l in (a2(), rescale(U, 6), direct_sum(a2(), z(-42)), z(10)):
        f = disc_group_form(l)
        assert f.order == discriminant(l)
        for x in f.elements():
            for y in f.elements():
                diff = f.q(f.add(x, y)) - f.q(x) - f.q(y) - 2 * f.b(x, y)
                assert diff.denominator == 1 and diff % 2 == 0


def test_finite_form_isomorphic_examples():
    f = FiniteQuadraticForm((3,), ((Fraction(2, 3),),))
    g = FiniteQuadraticForm((3,), ((Fraction(4, 3),),))
    assert finite_form_isomorphic(f, f)
    assert not finite_form_isomorphic(f, g)


def test_finite_form_bound():
    f = disc_group_form(z(20002))
    with pytest.raises(UndecidedError):
        finite_form_isomorphic(f, f)


def test_finite_form_isomorphic_generator_change():
    # Z/5 with q = 2/5 and q = 8/5 = 2*4/5 are related by x -> 2x
    f = FiniteQuadraticForm((5,), ((Fraction(2, 5),),))
    g = FiniteQuadraticForm((5,), ((Fraction(8, 5),),))
    assert finite_form_isomorphic(f, g)


@pytest.mark.parametrize("d, expected", [(42, True), (78, True), (12, False), (18, False), (24, False)])
def test_a2_twist_vs_hyperbolic_disc_forms(d, expected):
    """A2(-1) + Z(d/3) versus U + Z(-d) for d = 0 (6).

    For d = 24 the 2-parts are Z/8 with q = 1/8 and 13/8, so the forms differ
    even though 24 satisfies (**'); an independent q-value count agrees.
    """
    left = disc_group_form(direct_sum(rescale(a2(), -1), z(d // 3)))
    right = disc_group_form(direct_sum(U, z(-d)))
    assert finite_form_isomorphic(left, right) is expected
    assert (q_value_multiset(left) == q_value_multiset(right)) is expected


def test_a2_twist_vs_hyperbolic_tracks_star2():
    for d in range(12, 301, 6):
        left = disc_group_form(direct_sum(rescale(a2(), -1), z(d // 3)))
        right = disc_group_form(direct_sum(U, z(-d)))
        assert finite_form_isomorphic(left, right) == cond_star2(d), d


def test_disc_form_of_complement_is_negated():
    s = build_setup()
    fa = disc_group_form(a2())
    fc = disc_group_form(orthogonal_complement(s.a2_sublattice).lattice())
    assert finite_form_isomorphic(fa, fc.negated())
    assert not finite_form_isomorphic(fa, fc)


# -- overlattices ----------------------------------------------------------


def test_overlattices_unimodular():
    out = enumerate_even_overlattices(E8M, 10)
    assert len(out) == 1 and out[0].index == 1


def test_overlattices_a1a1():
    out = enumerate_even_overlattices(Lattice(((2, 0), (0, 2))), 4)
    assert [o.index for o in out] == [1]


def test_overlattices_u3_plus():
    # U(2) has isotropic (Z/2)^2 subgroups <e/2> and <f/2>, giving U in both cases
    out = enumerate_even_overlattices(rescale(U, 2), 4)
    assert sorted(o.index for o in out) == [1, 2, 2]
    for o in out:
        assert o.lattice.is_even
        assert discriminant(o.lattice) * o.index**2 == 4


def test_overlattices_d14():
    base = direct_sum(a2(), z(-42))
    out = enumerate_even_overlattices(base, 9)
    proper = [o for o in out if o.index > 1]
    assert all(o.index == 3 for o in proper)
    for o in out:
        assert all(x % 2 == 0 for x in (o.lattice.gram[i][i] for i in range(o.lattice.rank)))
        assert discriminant(o.lattice) * o.index**2 == discriminant(base)
    # v -> -v, the A2 swap and -1 on A2 identify the raw glue choices
    autos = [
        ((1, 0, 0), (0, 1, 0), (0, 0, -1)),
        ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
        ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
    ]
    merged = [o for o in enumerate_even_overlattices(base, 9, autos) if o.index > 1]
    assert len(merged) == 1
    assert discriminant(merged[0].lattice) == 14


def test_overlattice_rejects_odd():
    with pytest.raises(LatticeError):
        enumerate_even_overlattices(z(3), 3)


def test_overlattice_rejects_bad_automorphism():
    with pytest.raises(LatticeError):
        enumerate_even_overlattices(a2(), 3, [((1, 1), (0, 1))])


# -- invariants ------------------------------------------------------------


def test_invariants_compare_examples():
    s = build_setup()
    hperp = orthogonal_complement(Sublattice(cubic_lattice(), (s.h,))).lattice()
    assert str(invariants_compare(s.a2_perp, hperp)) == "match"
    assert str(invariants_compare(U, rescale(U, 2))) == "differ(disc)"
    assert str(invariants_compare(U, a2())) == "differ(signature)"
    assert str(invariants_compare(a2(), z(1))) == "differ(rank)"


def test_invariants_compare_v_perp_d42():
    s = build_setup()
    vperp = orthogonal_complement(Sublattice(s.a2_perp, (build_v(42),))).lattice()
    model = direct_sum(E8M, E8M, U, U, z(-42))
    assert invariants_compare(vperp, model).match


def test_invariants_compare_parity():
    assert str(invariants_compare(z(1), z(-1))) == "differ(signature)"
    assert str(invariants_compare(Lattice(((1, 0), (0, -1))), U)) == "differ(parity)"
