"""Weight-multiset analysis of a representation.

A representation is recorded purely by its torus weight multiset.  The
expanded weight list fixes index identity for the sign partitions used across
the whole pipeline: entries are sorted by weight (lexicographically) with
input order breaking ties, once, at construction.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (Mat, Vec, ZERO, ONE, is_integral, is_zero_vec, mat_vec,
                     nullspace, primitive, solve, vadd, vdot, vneg, vscale,
                     vec, zero_vec)
from .linprog import InputError, LpBuilder, feasible_point
from .rootdata import RootDatum, full_levi, pairing


@dataclass(frozen=True)
class RepSpec:
    """Weight multiset of a representation of a catalog group."""

    datum: RootDatum
    weights: tuple[tuple[Vec, int], ...]
    expanded: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.expanded)

    def value_classes(self) -> list[tuple[Vec, list[int]]]:
        """Distinct weight values with their expanded index lists."""
        groups: dict[Vec, list[int]] = {}
        for i, w in enumerate(self.expanded):
            groups.setdefault(w, []).append(i)
        return sorted(groups.items())


def rep_spec(datum: RootDatum, weights) -> RepSpec:
    """Build a RepSpec from (weight, multiplicity) pairs."""
    pairs = []
    for w, m in weights:
        w = datum.normalize_weight(vec(w))
        if len(w) != datum.rank:
            raise InputError("weight has wrong dimension")
        if not is_integral(w):
            raise InputError(f"weight {w} is not a lattice element")
        m = int(m)
        if m < 1:
            raise InputError("multiplicities must be >= 1")
        pairs.append((w, m))
    expanded = []
    for w, m in pairs:
        expanded.extend([w] * m)
    expanded.sort()  # stable: ties keep input order
    return RepSpec(datum, tuple(pairs), tuple(expanded))


@dataclass(frozen=True)
class SignPartition:
    """Indices of the expanded weight list split by the sign of the pairing
    with a one-parameter subgroup."""

    t_plus: tuple[int, ...]
    t_zero: tuple[int, ...]
    t_minus: tuple[int, ...]


def weight_signs(rep: RepSpec, lam: Vec) -> SignPartition:
    plus, zero, minus = [], [], []
    for i, w in enumerate(rep.expanded):
        s = pairing(lam, w)
        (plus if s > 0 else minus if s < 0 else zero).append(i)
    return SignPartition(tuple(plus), tuple(zero), tuple(minus))


# ---------------------------------------------------------------------------
# Stability and destabilizers.
# ---------------------------------------------------------------------------

def _annihilator_directions(rep: RepSpec) -> list[Vec]:
    """Basis of {sigma in Y(T)_R : <sigma, beta_i> = 0 for all i}."""
    rows = [list(w) for w, _ in rep.weights]
    rows += [list(c) for c in rep.datum.central_directions]
    return nullspace(rows, rep.datum.rank)


def _destabilizer_lp_feasible(rep: RepSpec) -> bool:
    """Whether some sigma has all pairings <= 0 with total pairing < 0."""
    b = LpBuilder()
    n = rep.datum.rank
    sig = [b.add_var() for _ in range(n)]
    for c in rep.datum.central_directions:
        b.add_eq({sig[k]: c[k] for k in range(n)}, 0)
    total: Counter = Counter()
    for w, m in rep.weights:
        b.add_le({sig[k]: w[k] for k in range(n)}, 0)
        for k in range(n):
            total[sig[k]] += m * w[k]
    b.add_eq(dict(total), -1)
    return feasible_point(b.build()) is not None


def has_t_stable_point(rep: RepSpec) -> bool:
    """True iff no nonzero one-parameter subgroup pairs nonpositively with
    every weight, i.e. the weights positively span the whole space."""
    if rep.datum.rank == len(rep.datum.quotient_pairs) == 0 and not rep.weights:
        return True
    if _annihilator_directions(rep):
        return False
    return not _destabilizer_lp_feasible(rep)


@dataclass(frozen=True)
class DestabilizerReport:
    """Outcome of the destabilizer search.

    ``sigma`` is a canonical nonzero subgroup with all pairings <= 0 (absent
    when a torus-stable point exists); ``nu`` is its Weyl average.  When nu is
    nonzero a central attracting subgroup exists; when nu vanishes a nontrivial
    connected subgroup acts trivially on the relevant directions.  Both facts
    can hold at once, so the sigma-annihilates-everything flag is reported
    separately rather than folded into the case tag.
    """

    sigma: Vec | None
    nu: Vec
    case: str  # "HasStablePoint" | "TrivialActingSubgroup" | "CentralAttractor"
    sigma_annihilates_all: bool


_DESTAB_SEARCH_CAP = 64


def find_destabilizer(rep: RepSpec) -> DestabilizerReport:
    datum = rep.datum
    n = datum.rank
    if has_t_stable_point(rep):
        return DestabilizerReport(None, zero_vec(n), "HasStablePoint", False)
    values = [w for w, _ in rep.weights]
    sigma = _lex_minimal_integral(
        n,
        lambda s: (not is_zero_vec(s)
                   and datum.coweight_ok(s)
                   and all(vdot(s, w) <= 0 for w in values)))
    proj = full_levi(datum).invariant_projector()
    nu = mat_vec(proj, sigma)
    case = "CentralAttractor" if not is_zero_vec(nu) else "TrivialActingSubgroup"
    annihilates = all(vdot(sigma, w) == 0 for w in values)
    return DestabilizerReport(sigma, nu, case, annihilates)


def _lex_minimal_integral(n: int, ok) -> Vec:
    """First integral vector, by growing sup-norm then lexicographic order,
    satisfying the predicate.  The caller guarantees one exists."""
    if n == 0:
        raise InputError("no nonzero vector exists in rank 0")
    for bound in range(1, _DESTAB_SEARCH_CAP + 1):
        for cand in itertools.product(range(-bound, bound + 1), repeat=n):
            v = tuple(Fraction(c) for c in cand)
            if ok(v):
                return v
    raise InputError("integral search cap exceeded")


# ---------------------------------------------------------------------------
# Quasi-symmetry and coinvariants.
# ---------------------------------------------------------------------------

def is_quasi_symmetric(rep: RepSpec) -> bool:
    """Whether the weight sum along every line through the origin vanishes."""
    lines: dict[Vec, Vec] = {}
    for w, m in rep.weights:
        if is_zero_vec(w):
            continue
        key = primitive(w)
        acc = lines.get(key, zero_vec(rep.datum.rank))
        lines[key] = vadd(acc, vscale(Fraction(m), w))
    return all(is_zero_vec(s) for s in lines.values())


def coinvariant_rep(rep: RepSpec, lam: Vec) -> RepSpec:
    """Restriction of the weight multiset to the lam-neutral weights (the
    coinvariants for the one-parameter action, as a Levi representation)."""
    kept = [(w, m) for w, m in rep.weights if pairing(lam, w) == 0]
    return RepSpec(rep.datum, tuple(kept),
                   tuple(w for w in rep.expanded if pairing(lam, w) == 0))


# ---------------------------------------------------------------------------
# Lattice coset twists.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistData:
    """A coset of a finite-index sublattice of the weight lattice.

    ``sublattice_basis`` holds the generating vectors (one per row); the coset
    is offset + span_Z(basis).  Membership reduces to an exact integral solve.
    """

    sublattice_basis: Mat
    coset_offset: Vec

    def __post_init__(self):
        n = len(self.coset_offset)
        if len(self.sublattice_basis) != n:
            raise InputError("sublattice basis must be square (finite index)")
        for row in self.sublattice_basis:
            if len(row) != n or not is_integral(row):
                raise InputError("sublattice basis must be integral")
        if not is_integral(self.coset_offset):
            raise InputError("coset offset must be integral")
        from .linalg import rank as mat_rank
        if mat_rank([list(r) for r in self.sublattice_basis]) != n:
            raise InputError("sublattice basis must have full rank")

    def contains(self, chi: Vec) -> bool:
        target = vec(chi)
        diff = tuple(t - o for t, o in zip(target, self.coset_offset, strict=True))
        n = len(diff)
        if n == 0:
            return True
        rows = [[self.sublattice_basis[j][i] for j in range(n)] for i in range(n)]
        x = solve(rows, diff)
        return x is not None and is_integral(x)


def trivial_twist(rank: int) -> TwistData:
    basis = tuple(tuple(ONE if i == j else ZERO for j in range(rank))
                  for i in range(rank))
    return TwistData(basis, zero_vec(rank))


def twist_member(t: TwistData, chi: Vec) -> bool:
    chi = vec(chi)
    if not is_integral(chi):
        raise InputError("twist membership is defined for lattice weights")
    return t.contains(chi)


# ---------------------------------------------------------------------------
# Standard constructions (used by presets and the CLI config).
# ---------------------------------------------------------------------------

def defining_weights(datum: RootDatum) -> list[Vec]:
    """Weights of the defining representation of a simple catalog factor."""
    label = datum.label
    n = datum.rank
    if label.startswith(("GL", "SL")):
        return [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    if label.startswith("Sp"):
        units = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        return units + [vneg(u) for u in units]
    raise InputError(f"no defining representation for {label}")


def sym_power_weight_counts(base: list[Vec], d: int) -> Counter:
    """Weight multiset of the d-th symmetric power of a weight list."""
    counts: Counter = Counter()
    if d == 0:
        counts[zero_vec(len(base[0]) if base else 0)] = 1
        return counts
    for combo in itertools.combinations_with_replacement(range(len(base)), d):
        total = base[combo[0]]
        for k in combo[1:]:
            total = vadd(total, base[k])
        counts[total] += 1
    return counts


def construct_rep(datum: RootDatum, pieces) -> RepSpec:
    """Assemble a representation from construction pieces.

    Each piece is one of
      ("weights", [(weight, mult), ...])
      ("vector_power", h)          h copies of the defining representation
      ("sym_power", d)             d-th symmetric power of the defining rep
      ("dual_vector_power", h)     h copies of the dual defining rep
      ("trivial", c)               c copies of the trivial character
    """
    counts: Counter = Counter()
    for piece in pieces:
        kind, arg = piece
        if kind == "weights":
            for w, m in arg:
                counts[datum.normalize_weight(vec(w))] += int(m)
        elif kind == "vector_power":
            for w in defining_weights(datum):
                counts[datum.normalize_weight(w)] += int(arg)
        elif kind == "dual_vector_power":
            for w in defining_weights(datum):
                counts[datum.normalize_weight(vneg(w))] += int(arg)
        elif kind == "sym_power":
            for w, m in sym_power_weight_counts(defining_weights(datum), int(arg)).items():
                counts[datum.normalize_weight(w)] += m
        elif kind == "trivial":
            counts[zero_vec(datum.rank)] += int(arg)
        else:
            raise InputError(f"unknown construction piece {kind!r}")
    pairs = sorted(counts.items())
    return rep_spec(datum, pairs)
