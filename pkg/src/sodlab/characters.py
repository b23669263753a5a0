"""Exact character arithmetic for catalog groups and their Levis.

Irreducible weight multiplicities come from the Freudenthal recursion over
the (Levi-)root system; symmetric powers from a degree-tracking dynamic
program over the weight multiset; multiplicities of an irreducible inside a
Weyl-symmetric character from the alternating sum over the Weyl group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, ZERO, mat_vec, solve, vadd, vdot, vscale, vsub, vec, zero_vec
from .linprog import InputError
from .reps import RepSpec
from .rootdata import LeviDatum, RootDatum, full_levi, is_dominant


@dataclass(frozen=True)
class CharacterTable:
    """Finite weight-multiplicity table, keys in canonical section form."""

    datum: RootDatum
    entries: tuple[tuple[Vec, int], ...]

    def mult(self, w: Vec) -> int:
        return dict(self.entries).get(self.datum.normalize_weight(vec(w)), 0)

    def as_dict(self) -> dict[Vec, int]:
        return dict(self.entries)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)


def _table(datum: RootDatum, d: dict[Vec, int]) -> CharacterTable:
    return CharacterTable(datum, tuple(sorted((w, m) for w, m in d.items() if m)))


@dataclass(frozen=True)
class GradedDims:
    """Dimension per degree, degrees strictly increasing."""

    entries: tuple[tuple[int, int], ...]

    def dims(self) -> list[int]:
        return [m for _, m in self.entries]


def _form(datum: RootDatum, a: Vec, b: Vec) -> Fraction:
    return vdot(a, mat_vec(datum.gram, b))


def weyl_dim(datum: RootDatum, chi: Vec, levi: LeviDatum | None = None) -> int:
    """Dimension of the irreducible with the given highest weight."""
    lv = levi or full_levi(datum)
    chi = datum.normalize_weight(vec(chi))
    if not is_dominant(datum, chi, lv):
        raise InputError(f"{chi} is not dominant for the Levi")
    rho = lv.rho_bar_lambda
    num = Fraction(1)
    den = Fraction(1)
    for a in lv.phi_lambda_plus:
        num *= _form(datum, vadd(chi, rho), a)
        den *= _form(datum, rho, a)
    value = num / den
    if value.denominator != 1:
        raise InputError("Weyl dimension came out non-integral")
    return int(value)


def _simple_coeff_bounds(datum: RootDatum, lv: LeviDatum, chi: Vec) -> list[int]:
    """Coefficient box: dominant mu <= chi satisfy chi - mu = sum c_i alpha_i
    with 0 <= c_i <= coefficients of chi - (lowest weight)."""
    lowest = chi
    for m, _, _ in lv.weyl_elements():
        img = mat_vec(m, chi)
        if _height(datum, lv, vsub(chi, img)) > _height(datum, lv, vsub(chi, lowest)):
            lowest = img
    simples = lv.simple_roots
    if not simples:
        return []
    rows = [[s[k] for s in simples] for k in range(datum.rank)]
    target = vsub(chi, lowest)
    coeffs = solve(rows, list(target))
    if coeffs is None:
        raise InputError("orbit difference not in the Levi root lattice")
    return [max(0, math.ceil(c)) for c in coeffs]


def _height(datum: RootDatum, lv: LeviDatum, v: Vec) -> Fraction:
    # any positive functional on the positive span works for ordering
    return vdot(v, vadd(lv.rho_bar_lambda, lv.rho_bar_lambda)) if lv.phi_lambda_plus else ZERO


def irr_character(datum: RootDatum, chi: Vec,
                  levi: LeviDatum | None = None) -> CharacterTable:
    """Weight multiplicities of the irreducible with highest weight chi,
    via the Freudenthal recursion over the (Levi-)root system."""
    lv = levi or full_levi(datum)
    chi = datum.normalize_weight(vec(chi))
    if not is_dominant(datum, chi, lv):
        raise InputError(f"{chi} is not dominant for the Levi")
    if not lv.phi_lambda_plus:
        return _table(datum, {chi: 1})
    rho = lv.rho_bar_lambda
    top = _form(datum, vadd(chi, rho), vadd(chi, rho))
    bounds = _simple_coeff_bounds(datum, lv, chi)
    simples = lv.simple_roots
    # All weights stay inside chi's coset of the root lattice; the stored
    # form is only coset-consistent, so no section normalization here.
    dominants: list[Vec] = []
    seen: set[Vec] = set()
    for combo in itertools.product(*(range(b + 1) for b in bounds)):
        mu = chi
        for c, a in zip(combo, simples):
            if c:
                mu = vsub(mu, vscale(Fraction(c), a))
        if mu not in seen and is_dominant(datum, mu, lv):
            seen.add(mu)
            dominants.append(mu)
    dominants.sort(key=lambda mu: -_height(datum, lv, mu))  # chi first
    mults: dict[Vec, int] = {}

    def lookup(nu: Vec) -> int:
        for w, _, _ in lv.weyl_elements():
            img = mat_vec(w, nu)
            if is_dominant(datum, img, lv):
                return mults.get(img, 0)
        return 0

    for mu in dominants:
        if mu == dominants[0]:
            mults[mu] = 1
            continue
        denom = top - _form(datum, vadd(mu, rho), vadd(mu, rho))
        if denom == 0:  # impossible for dominant mu strictly below chi
            raise InputError("Freudenthal denominator vanished")
        rhs = ZERO
        for a in lv.phi_lambda_plus:
            k = 1
            while True:
                nu = vadd(mu, vscale(Fraction(k), a))
                m = lookup(nu)
                if m == 0 and _form(datum, vadd(nu, rho), vadd(nu, rho)) > top:
                    break
                rhs += m * _form(datum, nu, a)
                k += 1
        val = 2 * rhs / denom
        if val.denominator != 1:
            raise InputError("Freudenthal recursion produced a non-integer")
        if val:
            mults[mu] = int(val)
    full: dict[Vec, int] = {}
    for mu, m in mults.items():
        if m <= 0:
            continue
        for w, _, _ in lv.weyl_elements():
            full[datum.normalize_weight(mat_vec(w, mu))] = m
    return _table(datum, full)


def sym_power_character(rep: RepSpec, d: int) -> CharacterTable:
    """Weight table of the d-th symmetric power of the weight multiset."""
    datum = rep.datum
    if d < 0:
        raise InputError("symmetric power degree must be >= 0")
    layers: list[dict[Vec, int]] = [dict() for _ in range(d + 1)]
    layers[0][zero_vec(datum.rank)] = 1
    for w, m in rep.weights:
        nxt: list[dict[Vec, int]] = [dict() for _ in range(d + 1)]
        for j in range(d + 1):
            for wt, cnt in layers[j].items():
                for k in range(d - j + 1):
                    c = cnt * math.comb(k + m - 1, m - 1)
                    key = vadd(wt, vscale(Fraction(k), w)) if k else wt
                    nxt[j + k][key] = nxt[j + k].get(key, 0) + c
        layers = nxt
    return _table(datum, layers[d])


def multiplicity_in(datum: RootDatum, table: dict[Vec, int], mu: Vec,
                    lv: LeviDatum) -> int:
    """Multiplicity of the irreducible V(mu) inside a Weyl-symmetric
    character, by the alternating Weyl sum."""
    rho = lv.rho_bar_lambda
    total = 0
    for w, _, det in lv.weyl_elements():
        key = datum.normalize_weight(vsub(mat_vec(w, vadd(mu, rho)), rho))
        total += det * table.get(key, 0)
    return total


def hom_block_dims(datum: RootDatum, mu: Vec, mu_prime: Vec, coinv: RepSpec,
                   levi: LeviDatum | None = None, up_to: int = 6) -> GradedDims:
    """Graded dimensions of Hom(V(mu), V(mu') tensor Sym^d of the neutral
    weights), for d = 0..up_to."""
    lv = levi or full_levi(datum)
    mu = datum.normalize_weight(vec(mu))
    mu_prime = datum.normalize_weight(vec(mu_prime))
    for m in (mu, mu_prime):
        if not is_dominant(datum, m, lv):
            raise InputError(f"{m} is not dominant for the Levi")
    ch_prime = irr_character(datum, mu_prime, lv).as_dict()
    out = []
    for d in range(up_to + 1):
        sym = sym_power_character(coinv, d).as_dict()
        prod: dict[Vec, int] = {}
        for w1, m1 in ch_prime.items():
            for w2, m2 in sym.items():
                key = datum.normalize_weight(vadd(w1, w2))
                prod[key] = prod.get(key, 0) + m1 * m2
        dim = multiplicity_in(datum, prod, mu, lv)
        if dim < 0:
            raise InputError("negative multiplicity: character data corrupt")
        out.append((d, dim))
    return GradedDims(tuple(out))
