import random
from fractions import Fraction as F

import pytest

from oracles import (grid_strict_search, random_bounded_program,
                     vertex_forced, vertex_optimize)
from sodlab.linprog import (BoxedLinearProgram, InputError, LpBuilder,
                            enumerate_lattice, forced_tight, lp_optimize,
                            strict_feasible, strict_point)


def box_program(bounds, eqs=(), objective=None, opens=()):
    b = LpBuilder()
    cols = []
    for i, (lo, hi) in enumerate(bounds):
        lo_open = ("lower", i) in opens
        hi_open = ("upper", i) in opens
        cols.append(b.add_var(lower=lo, upper=hi,
                              lower_open=lo_open, upper_open=hi_open))
    for coeffs, rhs in eqs:
        b.add_eq({cols[j]: c for j, c in coeffs.items()}, rhs)
    return b.build(None if objective is None
                   else {cols[j]: c for j, c in objective.items()})


class TestOptimize:
    def test_box_maximum(self):
        res = lp_optimize(box_program([(-1, 2)], objective={0: 1}), "max")
        assert (res.status, res.value, res.attained) == ("optimal", 2, True)

    def test_min_radius_two_coefficients(self):
        # min r with a1 - a2 = 3, a in [-r, 0]^2: frozen from the vertex
        # oracle on the literal three-variable system.
        b = LpBuilder()
        a1 = b.add_var(upper=0)
        a2 = b.add_var(upper=0)
        r = b.add_var(lower=0)
        b.add_eq({a1: 1, a2: -1}, 3)
        b.add_ge({a1: 1, r: 1}, 0)
        b.add_ge({a2: 1, r: 1}, 0)
        res = lp_optimize(b.build({r: 1}), "min")
        assert (res.status, res.value) == ("optimal", 3)

    def test_unbounded_above(self):
        b = LpBuilder()
        x = b.add_var(lower=0)
        assert lp_optimize(b.build({x: 1}), "max").status == "unbounded"

    def test_open_bound_not_attained(self):
        res = lp_optimize(
            box_program([(-1, 2)], objective={0: 1}, opens=[("upper", 0)]),
            "max")
        assert res.status == "optimal" and res.value == 2
        assert res.attained is False

    def test_requires_objective(self):
        with pytest.raises(InputError):
            lp_optimize(box_program([(0, 1)]), "max")

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            BoxedLinearProgram(((F(1), F(2)),), (F(0),), (None,), (None,),
                               (False,), (False,))


class TestForcedTight:
    def test_forced_pair(self):
        p = box_program([(-2, 0), (-2, 0)], eqs=[({0: 1, 1: -1}, 2)])
        rep = forced_tight(p)
        assert rep.feasible
        assert rep.lower_forced == (False, True)
        assert rep.upper_forced == (True, False)

    def test_nothing_forced(self):
        p = box_program([(-2, 0), (-2, 0)], eqs=[({0: 1, 1: -1}, 1)])
        rep = forced_tight(p)
        assert rep.feasible
        assert rep.lower_forced == (False, False)
        assert rep.upper_forced == (False, False)

    def test_infeasible(self):
        p = box_program([(0, 1)], eqs=[({0: 1}, 5)])
        assert forced_tight(p).feasible is False


class TestStrict:
    def test_open_interval(self):
        p = box_program([(0, 1)], opens=[("lower", 0), ("upper", 0)])
        assert strict_feasible(p) is True

    def test_pinned_to_boundary(self):
        p = box_program([(0, 1)], eqs=[({0: 1}, 0)],
                        opens=[("lower", 0), ("upper", 0)])
        assert strict_feasible(p) is False

    def test_diagonal_witness(self):
        p = box_program([(-2, 0), (-2, 0)], eqs=[({0: 1, 1: -1}, 1)],
                        opens=[("lower", 0), ("upper", 0),
                               ("lower", 1), ("upper", 1)])
        assert strict_feasible(p) is True
        w = strict_point(p)
        assert w[0] - w[1] == 1
        assert -2 < w[0] < 0 and -2 < w[1] < 0


class TestEnumerateLattice:
    def test_interval(self):
        pts = enumerate_lattice(lambda v: True, [(F(-5, 2), F(1, 2))])
        assert pts == [(-2,), (-1,), (0,)]

    def test_wider_interval(self):
        pts = enumerate_lattice(lambda v: True, [(F(-7, 2), F(3, 2))])
        assert pts == [(-3,), (-2,), (-1,), (0,), (1,)]

    def test_coset(self):
        class OddCoset:
            def contains(self, v):
                return (v[0] - 1) % 2 == 0

        pts = enumerate_lattice(lambda v: True, [(F(0), F(5))], OddCoset())
        assert pts == [(1,), (3,), (5,)]

    def test_requires_finite_box(self):
        with pytest.raises(InputError):
            enumerate_lattice(lambda v: True, [(None, F(1))])

    def test_sorted_and_unique(self):
        pts = enumerate_lattice(lambda v: True,
                                [(F(-1), F(1)), (F(-1), F(1))])
        assert pts == sorted(pts) and len(pts) == len(set(pts)) == 9


class TestRandomizedAgainstOracles:
    def test_optimum_matches_vertex_enumeration(self):
        rng = random.Random(101)
        for _ in range(40):
            p = random_bounded_program(rng, nvars=rng.randint(2, 5))
            for sense in ("min", "max"):
                res = lp_optimize(p, sense)
                status, value = vertex_optimize(p, sense)
                assert res.status == status
                if status == "optimal":
                    assert res.value == value

    def test_forced_matches_vertex_enumeration(self):
        rng = random.Random(202)
        for _ in range(25):
            p = random_bounded_program(rng, nvars=rng.randint(2, 4))
            feas, lf, uf = vertex_forced(p)
            rep = forced_tight(p)
            assert rep.feasible == feas
            if feas:
                assert rep.lower_forced == lf
                assert rep.upper_forced == uf

    def test_forced_equals_bound_optimization(self):
        rng = random.Random(303)
        for _ in range(20):
            p = random_bounded_program(rng, nvars=3)
            rep = forced_tight(p)
            if not rep.feasible:
                continue
            for j in range(p.nvars):
                obj = {k: F(0) for k in range(p.nvars)}
                obj[j] = F(1)
                top = lp_optimize(p.with_objective(
                    tuple(obj[k] for k in range(p.nvars))), "max")
                assert rep.lower_forced[j] == (top.value == p.lower[j])

    def test_strict_grid_consistency(self):
        rng = random.Random(404)
        for _ in range(30):
            b = LpBuilder()
            n = rng.randint(2, 3)
            for _ in range(n):
                lo = F(rng.randint(-4, 0), rng.choice([1, 2]))
                hi = lo + F(rng.randint(0, 6), 2)
                b.add_var(lower=lo, upper=hi,
                          lower_open=rng.random() < 0.5,
                          upper_open=rng.random() < 0.5)
            b.add_eq({j: F(rng.randint(-2, 2)) for j in range(n)},
                     F(rng.randint(-3, 3), 2))
            p = b.build()
            found = grid_strict_search(p, max_den=16)
            if found is not None:
                assert strict_feasible(p)
            w = strict_point(p)
            assert (w is not None) == strict_feasible(p)
            if w is not None:
                for row, rhs in zip(p.eq_rows, p.eq_rhs):
                    assert sum(c * x for c, x in zip(row, w)) == rhs
                for j in range(n):
                    if p.lower_open[j]:
                        assert w[j] > p.lower[j]
                    if p.upper_open[j]:
                        assert w[j] < p.upper[j]
