import math
from fractions import Fraction as F

import pytest

from sodlab.linalg import mat_vec, vec
from sodlab.linprog import InputError
from sodlab.rootdata import (RootDatum, build_group, coroot_pairing,
                             full_levi, invariant_subspace, is_dominant, levi,
                             make_dominant, pairing, star_dominate,
                             weyl_elements)

SP4 = build_group("Sp(4)")
SL2 = build_group("SL(2)")
GL2 = build_group("GL(2)")
T3 = build_group("Torus(3)")


class TestBuildGroup:
    def test_sp4_rho(self):
        assert SP4.rho_bar == vec([2, 1])

    def test_torus_is_flat(self):
        assert T3.roots == () and T3.rho_bar == vec([0, 0, 0])

    def test_sl2_normalization(self):
        assert len(SL2.positive_roots) == 1
        a = SL2.positive_roots[0]
        assert coroot_pairing(SL2, a, SL2.rho_bar) == 1

    def test_unknown_tag(self):
        with pytest.raises(InputError):
            build_group("E(8)")

    def test_product(self):
        p = build_group("Product(SL(2),Torus(1))")
        assert p.rank == 3
        assert p.quotient_pairs == ((vec([1, 1, 0]), 1),)

    def test_weyl_orders(self):
        assert len(weyl_elements(build_group("GL(3)"))) == math.factorial(3)
        assert len(weyl_elements(build_group("SL(3)"))) == math.factorial(3)
        assert len(weyl_elements(SP4)) == 2 ** 2 * 2
        assert len(weyl_elements(build_group("Sp(6)"))) == 2 ** 3 * 6
        assert len(weyl_elements(build_group("GL(4)"))) == 24


class TestPairing:
    def test_literal(self):
        assert pairing(vec([-1, 0]), vec([2, 3])) == -2

    def test_zero(self):
        assert pairing(vec([0, 0]), vec([5, 7])) == 0

    def test_bilinear(self):
        lam = vec([F(1, 2), -2])
        a, b = vec([1, 3]), vec([-2, 5])
        assert pairing(lam, vec([x + y for x, y in zip(a, b)])) == \
            pairing(lam, a) + pairing(lam, b)


class TestDominance:
    def test_sl2(self):
        assert is_dominant(SL2, vec([3, 0]))
        assert not is_dominant(SL2, vec([-1, 0]))

    def test_torus_everything(self):
        assert is_dominant(T3, vec([-5, 2, 9]))

    def test_levi_restricted(self):
        lv = levi(SP4, vec([-1, -1]))
        # only the root pair through (1, -1) survives; dominance ignores 2L_i
        assert is_dominant(SP4, vec([1, -1]), lv)
        assert not is_dominant(SP4, vec([-1, 1]), lv)
        assert not is_dominant(SP4, vec([1, -1]))


class TestStarDominate:
    def test_sl2_reflection(self):
        chi_plus, sign, _ = star_dominate(SL2, vec([-2, 0]))
        assert chi_plus == vec([0, 0]) and sign == -1

    def test_wall_undefined(self):
        assert star_dominate(SL2, vec([-1, 0])) is None

    def test_already_dominant(self):
        chi_plus, sign, word = star_dominate(SL2, vec([5, 0]))
        assert chi_plus == vec([5, 0]) and sign == 1 and word == ()

    def test_orbit_independence(self):
        for chi in [vec([2, -1]), vec([-3, 1]), vec([0, 2])]:
            out = star_dominate(SP4, chi)
            if out is None:
                continue
            plus = out[0]
            for m, _, _ in weyl_elements(SP4):
                shifted = mat_vec(m, vec([x + r for x, r in zip(chi, SP4.rho_bar)]))
                again = star_dominate(
                    SP4, vec([x - r for x, r in zip(shifted, SP4.rho_bar)]))
                assert again is not None and again[0] == plus

    def test_outputs_dominant(self):
        for chi in [vec([-4, 0]), vec([3, -2]), vec([-1, -3])]:
            out = star_dominate(SP4, chi)
            if out is not None:
                assert is_dominant(SP4, out[0])


class TestMakeDominant:
    def test_sl2(self):
        dom, _ = make_dominant(SL2, vec([-4, 0]))
        assert dom == vec([4, 0])

    def test_sp4_sorted_absolute(self):
        dom, _ = make_dominant(SP4, vec([-1, 2]))
        assert dom == vec([2, 1])

    def test_identity_on_dominant(self):
        dom, word = make_dominant(SP4, vec([3, 1]))
        assert dom == vec([3, 1]) and word == ()


class TestLevi:
    def test_zero_gives_full(self):
        lv = full_levi(SP4)
        assert set(lv.phi_lambda) == set(SP4.roots)
        assert lv.rho_bar_lambda == SP4.rho_bar

    def test_sp4_diagonal(self):
        lv = levi(SP4, vec([-1, -1]))
        assert set(lv.phi_lambda) == {vec([1, -1]), vec([-1, 1])}
        assert lv.rho_bar_lambda == vec([F(1, 2), F(-1, 2)])

    def test_torus_always_empty(self):
        assert levi(T3, vec([1, -5, 2])).phi_lambda == ()

    def test_rho_difference_invariant_under_levi_weyl(self):
        # rho_bar_lambda itself moves under its own reflections; the
        # Levi-invariant quantity is the difference with the full half-sum.
        lv = levi(SP4, vec([-1, -1]))
        diff = vec([a - b for a, b in zip(lv.rho_bar_lambda, SP4.rho_bar)])
        for g in lv.weyl_generators:
            assert mat_vec(g, diff) == diff

    def test_coweight_constraint_enforced(self):
        with pytest.raises(InputError):
            levi(SL2, vec([1, 0]))  # not sum-zero


class TestInvariantSubspace:
    def test_gl(self):
        assert invariant_subspace(build_group("GL(3)")) == [vec([1, 1, 1])]

    def test_sp(self):
        assert invariant_subspace(SP4) == []

    def test_torus_full(self):
        assert len(invariant_subspace(T3)) == 3

    def test_sl_quotient_kills_determinant(self):
        assert invariant_subspace(SL2) == []

    def test_vectors_fixed_by_generators(self):
        for tag in ("GL(2)", "GL(3)", "Torus(2)"):
            datum = build_group(tag)
            for v in invariant_subspace(datum):
                for g in datum.weyl_generators:
                    assert mat_vec(g, v) == v


class TestFormRescaling:
    """Downstream quantities must not depend on the scale of the invariant
    form; rebuilding Sp(4) with a tripled form must change nothing."""

    def _scaled_sp4(self):
        tripled = tuple(tuple(3 * x for x in row) for row in SP4.gram)
        return RootDatum(
            label=SP4.label, rank=SP4.rank, roots=SP4.roots,
            positive_roots=SP4.positive_roots, simple_roots=SP4.simple_roots,
            gram=tripled, weyl_generators=SP4.weyl_generators,
            rho_bar=SP4.rho_bar, quotient_pairs=SP4.quotient_pairs)

    def test_dominance_and_star(self):
        scaled = self._scaled_sp4()
        for chi in [vec([2, 1]), vec([-1, 2]), vec([0, -3]), vec([1, 1])]:
            assert is_dominant(scaled, chi) == is_dominant(SP4, chi)
            assert star_dominate(scaled, chi) == star_dominate(SP4, chi)

    def test_characters(self):
        from sodlab.characters import irr_character, weyl_dim

        scaled = self._scaled_sp4()
        assert weyl_dim(scaled, vec([2, 1])) == weyl_dim(SP4, vec([2, 1]))
        assert irr_character(scaled, vec([1, 1])).entries == \
            irr_character(SP4, vec([1, 1])).entries
