"""Scaled weight zonotopes, their half-open variants and face data.

A query set is shift + r * Z where Z is generated by a weight list with
coefficients in [-1, 0] (closed), ]-1, 0] (half-open, the default coefficient
set of the windows) or ]-1, 0[ (relative interior).  Generators that are
equal get collapsed to one coefficient with scaled bounds, which is exact:
a sum of m copies of a (half-)open interval is the m-fold scaled interval,
and pinning the combined coefficient at a bound is equivalent to pinning all
copies.  Index sets in face signatures always refer to the expanded list.

For SL blocks the ambient coordinates carry redundant directions; those are
passed as ``central`` vectors and enter every membership system as free
variables, so all sets are effectively computed in the character quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (Vec, ZERO, ONE, frac, in_span, is_zero_vec, primitive,
                     vdot, vec, vscale, vsub, zero_vec)
from .linprog import (InputError, LpBuilder, feasible_point,
                      forced_tight, lp_optimize, strict_feasible)
from .rootdata import LeviDatum, RootDatum, full_levi

Central = tuple[Vec, ...]

CLOSED = "closed"
HALF_OPEN = "half_open"
REL_INT = "rel_int"
_VARIANTS = (CLOSED, HALF_OPEN, REL_INT)


@dataclass(frozen=True)
class ZonotopeQuery:
    generators: tuple[Vec, ...]
    radius: Fraction
    shift: Vec
    variant: str
    central: Central = ()

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}")
        if self.radius <= 0:
            raise InputError("zonotope radius must be positive")


@dataclass(frozen=True)
class FaceSignature:
    """Scale and forced-coefficient pattern of the face whose relative
    interior contains a point.  The trivial signature (r = 0, empty sets) is
    the convention for the point coinciding with the shift."""

    r: Fraction
    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]
    s_zero: tuple[int, ...]
    trivial: bool

    def __post_init__(self):
        if self.trivial:
            if self.r != 0 or self.s_plus or self.s_minus or self.s_zero:
                raise InputError("malformed trivial signature")
        elif not self.s_plus or self.r <= 0:
            raise InputError("nontrivial signature needs r > 0 and forced generators")


@dataclass(frozen=True)
class EpsShift:
    epsilon: Vec
    mode: str  # "plus" | "plus_minus"

    def __post_init__(self):
        if self.mode not in ("plus", "plus_minus"):
            raise InputError(f"unknown eps mode {self.mode!r}")


def _classes(generators) -> list[tuple[Vec, list[int]]]:
    groups: dict[Vec, list[int]] = {}
    for i, g in enumerate(generators):
        groups.setdefault(tuple(g), []).append(i)
    return sorted(groups.items())


def _coefficient_program(generators, radius, shift, p, variant, central,
                         builder: LpBuilder | None = None):
    """LP whose feasibility is membership of p in shift + radius * variant."""
    b = builder or LpBuilder()
    classes = _classes(generators)
    cols = []
    for v, idx in classes:
        m = len(idx)
        lo = -frac(radius) * m
        if variant == CLOSED:
            cols.append(b.add_var(lower=lo, upper=0))
        elif variant == HALF_OPEN:
            cols.append(b.add_var(lower=lo, upper=0, lower_open=True))
        else:
            cols.append(b.add_var(lower=lo, upper=0, lower_open=True, upper_open=True))
    tcols = [b.add_var() for _ in central]
    n = len(p)
    target = vsub(vec(p), vec(shift))
    for k in range(n):
        row = {}
        for (v, _), col in zip(classes, cols):
            if v[k] != 0:
                row[col] = v[k]
        for c, col in zip(central, tcols):
            if c[k] != 0:
                row[col] = c[k]
        b.add_eq(row, target[k])
    return b, classes, cols, tcols


def member(q: ZonotopeQuery, p: Vec) -> bool:
    """Exact membership of p in shift + r * (variant of the zonotope)."""
    b, _, _, _ = _coefficient_program(
        q.generators, q.radius, q.shift, p, q.variant, q.central)
    prog = b.build()
    if q.variant == CLOSED:
        return feasible_point(prog) is not None
    return strict_feasible(prog)


def min_radius(generators, shift, p, central: Central = ()) -> Fraction | None:
    """Least r >= 0 with p in shift + r * (closed zonotope); None when p is
    not reachable at any radius."""
    b = LpBuilder()
    classes = _classes(generators)
    cols = [b.add_var(upper=0) for _ in classes]
    rcol = b.add_var(lower=0)
    tcols = [b.add_var() for _ in central]
    target = vsub(vec(p), vec(shift))
    for k in range(len(p)):
        row = {}
        for (v, _), col in zip(classes, cols):
            if v[k] != 0:
                row[col] = v[k]
        for c, col in zip(central, tcols):
            if c[k] != 0:
                row[col] = c[k]
        b.add_eq(row, target[k])
    for (v, idx), col in zip(classes, cols):
        b.add_ge({col: ONE, rcol: Fraction(len(idx))}, 0)  # c_v >= -m r
    res = lp_optimize(b.build({rcol: ONE}), "min")
    return res.value if res.status == "optimal" else None


def face_signature_at(generators, shift, p, central: Central = ()) -> FaceSignature:
    """The unique minimal (r, S+, S-, S0): r is the minimal radius and the
    sets collect coefficients pinned at -r resp. 0 in every representation
    of p at that radius."""
    r = min_radius(generators, shift, p, central)
    if r is None:
        raise InputError("point lies outside the span of the generators")
    if r == 0:
        return FaceSignature(ZERO, (), (), (), True)
    b, classes, cols, _ = _coefficient_program(
        generators, r, shift, p, CLOSED, central)
    report = forced_tight(b.build())
    if not report.feasible:  # unreachable: r came from a feasible program
        raise InputError("radius minimization produced an infeasible system")
    plus: list[int] = []
    minus: list[int] = []
    zero: list[int] = []
    for (v, idx), col in zip(classes, cols):
        if report.lower_forced[col]:
            plus.extend(idx)
        elif report.upper_forced[col]:
            minus.extend(idx)
        else:
            zero.extend(idx)
    return FaceSignature(r, tuple(sorted(plus)), tuple(sorted(minus)),
                         tuple(sorted(zero)), False)


def signature_classes(sig: FaceSignature, generators):
    """Map each distinct generator value to its sign set ('+', '-', '0'),
    checking that the signature is value-symmetric."""
    plus, minus = set(sig.s_plus), set(sig.s_minus)
    out = []
    for v, idx in _classes(generators):
        marks = {"+" if i in plus else "-" if i in minus else "0" for i in idx}
        if len(marks) != 1:
            raise InputError("signature splits a class of equal generators")
        out.append((v, idx, marks.pop()))
    return out


def supporting_lambda(sig: FaceSignature, datum: RootDatum, generators) -> Vec:
    """Canonical antidominant one-parameter subgroup whose pairing signs with
    the generators reproduce the signature; zero for the trivial signature."""
    if sig.trivial:
        return zero_vec(datum.rank)
    classes = signature_classes(sig, generators)
    n = datum.rank
    b = LpBuilder()
    lam = [b.add_var() for _ in range(n)]

    def lincomb(v):
        return {lam[k]: v[k] for k in range(n) if v[k] != 0}

    for c in datum.central_directions:
        b.add_eq(lincomb(c), 0)
    for v, _, mark in classes:
        if mark == "+":
            b.add_ge(lincomb(v), 1)
        elif mark == "-":
            b.add_le(lincomb(v), -1)
        else:
            b.add_eq(lincomb(v), 0)
    for a in datum.positive_roots:
        b.add_le(lincomb(a), 0)
    witness = feasible_point(b.build())
    if witness is None:
        raise InputError(
            "no antidominant one-parameter subgroup realizes this face")

    def ok(cand: Vec) -> bool:
        if not datum.coweight_ok(cand):
            return False
        for v, _, mark in classes:
            s = vdot(cand, v)
            if mark == "+" and not s > 0:
                return False
            if mark == "-" and not s < 0:
                return False
            if mark == "0" and s != 0:
                return False
        return all(vdot(cand, a) <= 0 for a in datum.positive_roots)

    return _lex_minimal_integral(n, ok)


_SEARCH_CAP = 64


def _lex_minimal_integral(n: int, ok) -> Vec:
    for bound in range(1, _SEARCH_CAP + 1):
        for cand in itertools.product(range(-bound, bound + 1), repeat=n):
            v = tuple(Fraction(c) for c in cand)
            if ok(v):
                return v
    raise InputError("integral canonicalization cap exceeded")


# ---------------------------------------------------------------------------
# Epsilon-shifted membership.
# ---------------------------------------------------------------------------

def _eps_direction_ok(generators, r, shift, eps_vec, p, central) -> bool:
    """Whether p is in the union over t > 0 of Delta intersect (t eps + Delta),
    for Delta = shift + r * closed zonotope, given that p is in Delta."""
    b = LpBuilder()
    classes = _classes(generators)
    cols = [b.add_var(lower=-frac(r) * len(idx), upper=0) for _, idx in classes]
    tcols = [b.add_var() for _ in central]
    tcol = b.add_var(lower=0)
    target = vsub(vec(p), vec(shift))
    for k in range(len(p)):
        row = {}
        for (v, _), col in zip(classes, cols):
            if v[k] != 0:
                row[col] = v[k]
        for c, col in zip(central, tcols):
            if c[k] != 0:
                row[col] = c[k]
        if eps_vec[k] != 0:
            row[tcol] = eps_vec[k]
        b.add_eq(row, target[k])
    res = lp_optimize(b.build({tcol: ONE}), "max")
    if res.status == "unbounded":
        return True
    return res.status == "optimal" and res.value > 0


def member_eps(generators, r, shift, e: EpsShift, p, central: Central = ()) -> bool:
    """Membership in the eps-shifted region: the part of the closed set that
    can be pushed along eps (and along -eps in plus_minus mode) while staying
    inside."""
    span_gens = list(generators) + list(central)
    if not in_span(span_gens, vec(e.epsilon)):
        raise InputError("epsilon is not parallel to the zonotope")
    closed = ZonotopeQuery(tuple(generators), frac(r), vec(shift), CLOSED, central)
    if not member(closed, p):
        return False
    if not _eps_direction_ok(generators, r, shift, vec(e.epsilon), p, central):
        return False
    if e.mode == "plus_minus":
        return _eps_direction_ok(
            generators, r, shift, vscale(Fraction(-1), vec(e.epsilon)), p, central)
    return True


# ---------------------------------------------------------------------------
# Faces as realizable sign patterns, and genericity of epsilon.
# ---------------------------------------------------------------------------

def _line_data(generators):
    """Distinct generator lines with the orientation of each generator."""
    lines: list[Vec] = []
    index: dict[Vec, int] = {}
    orient: list[tuple[int, int]] = []  # (line index, +-1) per generator
    for g in generators:
        key = primitive(vec(g))
        if is_zero_vec(key):
            continue
        if key not in index:
            index[key] = len(lines)
            lines.append(key)
        # sign of g against the primitive representative
        k = next(i for i in range(len(key)) if key[i] != 0)
        orient.append((index[key], 1 if g[k] > 0 else -1))
    return lines, orient


def realizable_face_patterns(generators, central: Central = ()):
    """All realizable sign patterns of proper faces of the closed zonotope.

    Yields (pattern, zero_generators): pattern maps each distinct generator
    line to a sign in {+1, 0, -1} realizable by some functional lam in the
    coweight space, and zero_generators lists the generators annihilated by
    lam (the direction span of the face).  The all-zero pattern is the whole
    zonotope, not a proper face, and is skipped.
    """
    gens = [vec(g) for g in generators]
    lines, orient = _line_data(gens)
    nonzero_gens = [g for g in gens if not is_zero_vec(g)]
    out = []
    for pattern in itertools.product((1, 0, -1), repeat=len(lines)):
        if all(s == 0 for s in pattern):
            continue
        if not _pattern_realizable(lines, pattern, central):
            continue
        zero_gens = [g for g, (li, _) in zip(nonzero_gens, orient)
                     if pattern[li] == 0]
        # generators equal to zero lie in every face direction space
        zero_gens += [g for g in gens if is_zero_vec(g)]
        out.append((pattern, zero_gens))
    return out


def _pattern_realizable(lines, pattern, central) -> bool:
    dim = len(lines[0]) if lines else len(central[0]) if central else 0
    b = LpBuilder()
    lam = [b.add_var() for _ in range(dim)]

    def lincomb(v):
        return {lam[k]: v[k] for k in range(dim) if v[k] != 0}

    for c in central:
        b.add_eq(lincomb(c), 0)
    for line, s in zip(lines, pattern):
        if s > 0:
            b.add_ge(lincomb(line), 1)
        elif s < 0:
            b.add_le(lincomb(line), -1)
        else:
            b.add_eq(lincomb(line), 0)
    return feasible_point(b.build()) is not None


def _weyl_source(source: RootDatum | LeviDatum) -> LeviDatum:
    return full_levi(source) if isinstance(source, RootDatum) else source


def _eps_preconditions(eps: Vec, source: LeviDatum, generators, central):
    if not source.is_invariant(eps):
        raise InputError("epsilon is not Weyl-invariant")
    if not in_span(list(generators) + list(central), eps):
        raise InputError("epsilon is not parallel to the zonotope")


def is_weakly_generic(eps, source: RootDatum | LeviDatum, generators,
                      central: Central = ()) -> bool:
    """Whether eps avoids every face direction space that fails to contain
    the whole invariant subspace (within the span of the zonotope)."""
    eps = vec(eps)
    src = _weyl_source(source)
    _eps_preconditions(eps, src, generators, central)
    inv = _invariants_in_span(src, generators, central)
    if not inv:
        return True  # every face direction space trivially qualifies
    for _, zero_gens in realizable_face_patterns(generators, central):
        dspan = zero_gens + list(central)
        if in_span(dspan, eps) and not all(in_span(dspan, v) for v in inv):
            return False
    return True


def is_generic(eps, source: RootDatum | LeviDatum, generators,
               central: Central = ()) -> bool:
    """Whether eps is parallel to the zonotope but to none of its proper
    faces."""
    eps = vec(eps)
    src = _weyl_source(source)
    _eps_preconditions(eps, src, generators, central)
    for _, zero_gens in realizable_face_patterns(generators, central):
        if in_span(zero_gens + list(central), eps):
            return False
    return True


def _invariants_in_span(src: LeviDatum, generators, central) -> list[Vec]:
    """Basis of (invariant subspace) intersect (span of the zonotope), both
    taken in ambient coordinates together with the quotient directions."""
    from .linalg import subspace_intersection

    dim = len(central[0]) if central else (
        len(generators[0]) if generators else src.datum.rank)
    inv_amb = list(src.invariant_vectors()) + list(central)
    span_amb = [vec(g) for g in generators] + list(central)
    inter = subspace_intersection(inv_amb, span_amb, dim)
    central_list = list(central)
    return [v for v in inter if not in_span(central_list, v)]
