import random
from fractions import Fraction

from bsing.polyring import Polynomial, VarContext, parse_polynomial
from bsing.standard_basis import (
    INFINITE,
    LocalOrder,
    jet_dimension_oracle,
    jet_membership_oracle,
    leading_term,
    mora_normal_form,
    quotient_basis,
    staircase_quotient,
    standard_basis,
)

XY = VarContext(("x", "y"), 0)


def poly(s: str, ctx=XY) -> Polynomial:
    return parse_polynomial(s, ctx)


def random_poly(rng, ctx=XY, max_deg=4, terms=4):
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = tuple(rng.randint(0, max_deg) for _ in range(ctx.arity))
        out[m] = Fraction(rng.randint(-5, 5))
    return Polynomial(ctx, out)


class TestLocalOrder:
    def test_one_is_largest(self):
        order = LocalOrder()
        assert order.key((0, 0)) < order.key((1, 0))
        assert order.key((0, 0)) < order.key((0, 5))

    def test_revlex_tie_break_prefers_x(self):
        # same degree: x beats y, so LT(x + y) = x
        order = LocalOrder()
        assert order.key((1, 0)) < order.key((0, 1))
        assert leading_term(poly("x+y"), order) == ((1, 0), 1)

    def test_weighted_degree_dominates(self):
        order = LocalOrder((Fraction(1), Fraction(1, 3)))
        # wdeg(y^2) = 2/3 < 1 = wdeg(x): y^2 is the larger monomial
        assert order.key((0, 2)) < order.key((1, 0))


class TestMoraNormalForm:
    def test_direct_division(self):
        r, cofs, unit = mora_normal_form(poly("x^2"), [poly("x")])
        assert (str(r), [str(c) for c in cofs], str(unit)) == ("0", ["x"], "1")

    def test_nondivisible_stays(self):
        # LT(x + y) = x does not divide y, so y is already reduced
        r, cofs, unit = mora_normal_form(poly("y"), [poly("x+y")])
        assert (r, cofs[0].is_zero(), str(unit)) == (poly("y"), True, "1")

    def test_reduction_across_the_tie(self):
        # the mirror image: x reduces by x + y leaving -y
        r, cofs, unit = mora_normal_form(poly("x"), [poly("x+y")])
        assert (str(r), str(cofs[0]), str(unit)) == ("-y", "1", "1")

    def test_unit_remainder(self):
        r, cofs, unit = mora_normal_form(poly("1"), [poly("x"), poly("y")])
        assert str(r) == "1" and all(c.is_zero() for c in cofs)

    def test_unit_tracking_in_local_ring(self):
        # naive division of x by x - x^2 loops; Mora yields unit 1 - x
        r, cofs, unit = mora_normal_form(poly("x"), [poly("x - x^2")])
        assert r.is_zero()
        assert str(unit) == "1 - x"
        assert str(cofs[0]) == "1"

    def test_division_identity_random(self):
        rng = random.Random(17)
        checked = 0
        for _ in range(60):
            p = random_poly(rng)
            gens = [g for g in (random_poly(rng) for _ in range(2)) if not g.is_zero()]
            if p.is_zero() or not gens:
                continue
            r, cofs, unit = mora_normal_form(p, gens)
            lhs = unit * p
            for c, g in zip(cofs, gens):
                lhs = lhs - c * g
            assert lhs == r
            assert unit.constant_term() != 0
            checked += 1
        assert checked >= 40

    def test_idempotence(self):
        rng = random.Random(19)
        for _ in range(20):
            p = random_poly(rng)
            gens = [g for g in (random_poly(rng) for _ in range(2)) if not g.is_zero()]
            if p.is_zero() or not gens:
                continue
            r, _, _ = mora_normal_form(p, gens)
            if r.is_zero():
                continue
            r2, cofs2, unit2 = mora_normal_form(r, gens)
            assert r2 == r and str(unit2) == "1"
            assert all(c.is_zero() for c in cofs2)


class TestStandardBasis:
    def test_f4_ordinary_jacobian(self):
        sb = standard_basis([poly("2*x"), poly("3*y^2")])
        assert sb.leading_monomials == ((1, 0), (0, 2))

    def test_ck_jacobian_completion(self):
        # x*y and x + 3*y^2 force the new element y^3
        sb = standard_basis([poly("x*y"), poly("x + 3*y^2")])
        assert sb.leading_monomials == ((1, 0), (0, 3))

    def test_unit_ideal(self):
        sb = standard_basis([poly("1")])
        assert quotient_basis(sb).dimension == 0

    def test_unit_ideal_with_tail(self):
        sb = standard_basis([poly("3 + y + x^2*y^4")])
        assert quotient_basis(sb).dimension == 0

    def test_inputs_reduce_to_zero(self):
        gens = [poly("x*y"), poly("x + 3*y^2")]
        sb = standard_basis(gens)
        for g in gens:
            assert sb.contains(g)

    def test_representation_tracking(self):
        gens = [poly("x*y"), poly("x + 3*y^2")]
        sb = standard_basis(gens, track_representations=True)
        assert sb.representations is not None
        for g, rep in zip(sb.generators, sb.representations):
            acc = Polynomial.zero(XY)
            for c, src in zip(rep, gens):
                acc = acc + c * src
            assert acc == g


class TestQuotientBasis:
    def test_f4_boundary_staircase(self):
        sb = standard_basis([poly("x^2"), poly("y^2")])
        alg = quotient_basis(sb)
        assert alg.basis_monomials == ((0, 0), (1, 0), (0, 1), (1, 1))
        assert alg.dimension == 4

    def test_small_staircase(self):
        alg = quotient_basis(standard_basis([poly("x"), poly("y^2")]))
        assert alg.basis_monomials == ((0, 0), (0, 1))
        assert alg.dimension == 2

    def test_infinite_marker(self):
        alg = quotient_basis(standard_basis([poly("x")]))
        assert alg.dimension == INFINITE
        assert not alg.is_finite


class TestStaircaseQuotient:
    def test_certified_cap_agrees_with_uncapped(self):
        gens = [poly("x^3 - y^4"), poly("x*y^2 + x^4")]
        sb_fast, alg_fast = staircase_quotient(gens)
        sb_slow = standard_basis(gens)
        assert sorted(alg_fast.basis_monomials) == sorted(
            quotient_basis(sb_slow).basis_monomials
        )

    def test_non_isolated_falls_back(self):
        sb, alg = staircase_quotient([poly("x^2")])
        assert alg.dimension == INFINITE


class TestJetOracle:
    def test_f4_cross_check(self):
        assert jet_dimension_oracle([poly("x^2"), poly("y^2")]) == 4

    def test_ak_boundary_jacobian(self):
        # J = (x, (k+1) y^k) for the germ x + y^(k+1): dimension k
        for k in (1, 3, 5):
            assert jet_dimension_oracle([poly("x"), poly(f"y^{k}").scale(k + 1)]) == k

    def test_infinite(self):
        assert jet_dimension_oracle([poly("x")], 10) == INFINITE

    def test_membership_consistency(self):
        rng = random.Random(31)
        checked = 0
        while checked < 25:
            gens = [g for g in (random_poly(rng, terms=3) for _ in range(2)) if not g.is_zero()]
            if not gens:
                continue
            sb, alg = staircase_quotient(gens)
            if not alg.is_finite:
                continue
            p = random_poly(rng)
            if p.is_zero():
                continue
            assert sb.contains(p) == jet_membership_oracle(p, gens, 18)
            checked += 1

    def test_dimension_agreement_on_random_ideals(self):
        rng = random.Random(37)
        checked = 0
        while checked < 50:
            ngens = rng.randint(2, 3)
            gens = [g for g in (random_poly(rng, terms=3) for _ in range(ngens)) if not g.is_zero()]
            if not gens:
                continue
            dim = jet_dimension_oracle(gens, 14)
            if dim == INFINITE or dim > 30:
                continue
            _, alg = staircase_quotient(gens)
            assert alg.dimension == dim, [str(g) for g in gens]
            checked += 1
