"""Ordered decomposition components, NCCR certification, presets.

The infinite ordered decomposition is truncated to the cells discovered in a
dominant-weight search box, optionally capped by a maximal radius; the tail
component (index 0) absorbs everything below the retention threshold and its
window is the unit relative-interior window in standard mode, or the
half-size epsilon window in quasi-symmetric mode.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, ZERO, ONE, frac, in_span, is_zero_vec, vadd, \
    vscale, vsub, vec, zero_vec
from .linprog import InputError, enumerate_lattice
from .characters import weyl_dim
from .partition import (HALF_OPEN_MODE, STANDARD, PartitionCell,
                        PreconditionError, ShiftProfile, cell_members,
                        partition_region, window_box)
from .reps import (RepSpec, TwistData, coinvariant_rep, construct_rep,
                   is_quasi_symmetric, rep_spec, weight_signs)
from .rootdata import LeviDatum, RootDatum, build_group, full_levi, \
    is_dominant, levi, pairing
from .zonotope import (CLOSED, HALF_OPEN, REL_INT, EpsShift, FaceSignature,
                       ZonotopeQuery, is_generic, is_weakly_generic, member,
                       member_eps, realizable_face_patterns)


@dataclass(frozen=True)
class SodComponent:
    index: int
    signature: FaceSignature
    lam: Vec
    levi_label: str
    nu: Vec
    window_kind: tuple  # ("rel_int_scaled", r) or ("half_size_eps", eps)
    window: tuple[Vec, ...]
    u_summands: tuple[tuple[Vec, int], ...]
    coinvariants: RepSpec
    algebra: str
    is_d0: bool


@dataclass(frozen=True)
class SodResult:
    components: tuple[SodComponent, ...]
    absorbed: tuple[PartitionCell, ...]   # cells folded into the tail window
    frontier: tuple[PartitionCell, ...]   # cells beyond r_max, not emitted
    epsilon: Vec
    threshold: str
    box_radius: int
    r_max: Fraction | None


def pick_epsilon(rep: RepSpec, lv: LeviDatum, generators) -> Vec:
    """Default epsilon: zero when no invariant direction is parallel to the
    window zonotope, else the sum of a basis of the parallel invariants."""
    from .zonotope import _invariants_in_span

    central = rep.datum.central_directions
    inv = _invariants_in_span(lv, generators, central)
    if not inv:
        return zero_vec(rep.datum.rank)
    total = zero_vec(rep.datum.rank)
    for v in inv:
        total = vadd(total, v)
    return total


def _component_from_cell(rep: RepSpec, cell: PartitionCell, index: int,
                         profile: ShiftProfile,
                         twist: TwistData | None = None) -> SodComponent:
    datum = rep.datum
    lv = levi(datum, cell.lam)
    if not lv.is_invariant(cell.nu_levi):
        raise InputError("window shift is not Levi-invariant")
    window = tuple(cell_members(rep, cell, profile, twist=twist))
    summands = tuple((mu, weyl_dim(datum, mu, lv)) for mu in window)
    coinv = coinvariant_rep(rep, cell.lam)
    label = lv.label()
    algebra = f"(End(U) ⊗ Sym W_λ)^{{{label}}}"
    return SodComponent(
        index=index, signature=cell.signature, lam=cell.lam, levi_label=label,
        nu=cell.nu_levi, window_kind=("rel_int_scaled", cell.signature.r),
        window=window, u_summands=summands, coinvariants=coinv,
        algebra=algebra, is_d0=False)


def _tail_window(rep: RepSpec, profile: ShiftProfile, eps: Vec,
                 twist: TwistData | None = None) -> tuple[Vec, ...]:
    """Window of the tail component: the unit relative-interior window in
    standard mode, the half-size epsilon window in quasi-symmetric mode."""
    datum = rep.datum
    gens = rep.expanded
    shift = vsub(profile.nu_global, datum.rho_bar)
    central = datum.central_directions
    if profile.threshold == STANDARD:
        r = ONE
        box = window_box(datum, gens, r, shift)
        query = ZonotopeQuery(gens, r, shift, REL_INT, central)

        def predicate(p: Vec) -> bool:
            return is_dominant(datum, p) and member(query, p)
    else:
        r = Fraction(1, 2)
        box = window_box(datum, gens, r, shift)
        shift_e = EpsShift(eps, "plus")

        def predicate(p: Vec) -> bool:
            return (is_dominant(datum, p)
                    and member_eps(gens, r, shift, shift_e, p, central))
    return tuple(enumerate_lattice(predicate, box, coset=twist))


def _tail_component(rep: RepSpec, profile: ShiftProfile, eps: Vec,
                    twist: TwistData | None = None,
                    index: int = 0) -> SodComponent:
    datum = rep.datum
    lv = full_levi(datum)
    window = _tail_window(rep, profile, eps, twist=twist)
    summands = tuple((mu, weyl_dim(datum, mu, lv)) for mu in window)
    trivial_sig = FaceSignature(ZERO, (), (), (), True)
    if profile.threshold == STANDARD:
        kind = ("rel_int_scaled", ONE)
    else:
        kind = ("half_size_eps", eps)
    return SodComponent(
        index=index, signature=trivial_sig, lam=zero_vec(datum.rank),
        levi_label=datum.label, nu=profile.nu_global, window_kind=kind,
        window=window, u_summands=summands, coinvariants=rep,
        algebra=f"(End(U) ⊗ Sym W)^{{{datum.label}}}", is_d0=True)


def enumerate_sod(rep: RepSpec, profile: ShiftProfile,
                  r_max: Fraction | None = None, box_radius: int = 6,
                  epsilon: Vec | None = None,
                  twist: TwistData | None = None) -> SodResult:
    """Ordered decomposition data over a dominant search box.

    Components appear in strictly descending order of the cell key, the tail
    component last with the largest index (zero); kept cells have radius at
    least the profile threshold and at most r_max.
    """
    datum = rep.datum
    if profile.threshold == HALF_OPEN_MODE and not is_quasi_symmetric(rep):
        raise PreconditionError(
            "half-open threshold requires a quasi-symmetric weight multiset")
    cells = partition_region(rep, profile, box_radius)  # raises without T-stable point
    eps = vec(epsilon) if epsilon is not None \
        else pick_epsilon(rep, full_levi(datum), rep.expanded)
    kept, absorbed, frontier = [], [], []
    for cell in cells:
        if not profile.keeps(cell.signature.r):
            absorbed.append(cell)
        elif r_max is not None and cell.signature.r > r_max:
            frontier.append(cell)
        else:
            kept.append(cell)
    kept.sort(key=lambda c: c.key, reverse=True)
    components = [
        _component_from_cell(rep, cell, index=-(len(kept) - i),
                             profile=profile, twist=twist)
        for i, cell in enumerate(kept)]
    components.append(_tail_component(rep, profile, eps, twist=twist))
    return SodResult(tuple(components), tuple(absorbed), tuple(frontier),
                     eps, profile.threshold, box_radius,
                     None if r_max is None else frac(r_max))


# ---------------------------------------------------------------------------
# NCCR certification.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NccrCertificate:
    quasi_symmetric: bool
    epsilon: Vec
    eps_status: str        # "Generic" | "WeaklyGeneric" | "Fails"
    window_nonempty: bool
    window: tuple[Vec, ...]
    prazno_empty: bool
    prazno_points: tuple[Vec, ...]
    genericity: str        # "CheckedToricRule" | "UserAsserted" | "Unknown"
    verdict: str           # "TwistedNCCR" | "FiniteGlobalDimOnly" | "Unknown"
    prazno_mode: str       # "set" | "minkowski"


def _toric_two_per_side(coinv: RepSpec) -> bool:
    """Every line carrying a nonzero neutral weight has at least two weights
    (with multiplicity) on each of its sides."""
    from .linalg import primitive

    sides: dict[Vec, list[int]] = {}
    for w, m in coinv.weights:
        if is_zero_vec(w):
            continue
        key = primitive(w)
        pos, neg = sides.get(key, [0, 0])
        k = next(i for i in range(len(key)) if key[i] != 0)
        if w[k] > 0:
            pos += m
        else:
            neg += m
        sides[key] = [pos, neg]
    return all(pos >= 2 and neg >= 2 for pos, neg in sides.values())


def _zonotope_vertices(generators, central) -> list[Vec]:
    """Vertex set of the closed unit-coefficient zonotope (coefficients of
    positively paired generators pinned at -1, negatively paired at 0)."""
    from .linalg import primitive

    gens = [vec(g) for g in generators]
    dim = len(gens[0]) if gens else 0
    lines = []
    for g in gens:
        if is_zero_vec(g):
            continue
        key = primitive(g)
        if key not in lines:
            lines.append(key)
    vertices = set()
    for pattern, zero_gens in realizable_face_patterns(generators, central):
        if any(not is_zero_vec(g) for g in zero_gens):
            continue  # not a vertex
        v = zero_vec(dim)
        for g in gens:
            if is_zero_vec(g):
                continue
            key = primitive(g)
            k = next(i for i in range(dim) if key[i] != 0)
            orient = 1 if g[k] > 0 else -1
            if pattern[lines.index(key)] * orient > 0:
                v = vsub(v, g)
        vertices.add(v)
    return sorted(vertices)


def certify_nccr(rep: RepSpec, lam: Vec, nu: Vec, eps: Vec,
                 twist: TwistData | None = None,
                 genericity_assertion: bool | None = None,
                 prazno_mode: str = "set") -> NccrCertificate:
    """Certify the crepancy conditions of the half-size window at lam.

    Checks quasi-symmetry of the weight multiset, (weak) genericity of
    epsilon for the neutral zonotope, nonemptiness of the half-size epsilon
    window, and emptiness of the shifted boundary window; the genericity of
    the neutral representation is decided by the toric rule when the Levi has
    no roots and is otherwise taken from the caller's assertion.
    """
    if prazno_mode not in ("set", "minkowski"):
        raise InputError(f"unknown prazno mode {prazno_mode!r}")
    datum = rep.datum
    lam = vec(lam)
    nu = vec(nu)
    eps = vec(eps)
    lv = levi(datum, lam)
    if not lv.is_invariant(nu):
        raise InputError("nu is not invariant under the Levi Weyl group")
    if not lv.is_invariant(eps):
        raise InputError("epsilon is not invariant under the Levi Weyl group")
    central = datum.central_directions
    signs = weight_signs(rep, lam)
    gens = tuple(rep.expanded[i] for i in signs.t_zero)
    if not in_span(list(gens) + list(central), eps):
        raise InputError("epsilon is not parallel to the neutral zonotope")
    quasi = is_quasi_symmetric(rep)
    if is_generic(eps, lv, gens, central):
        eps_status = "Generic"
    elif is_weakly_generic(eps, lv, gens, central):
        eps_status = "WeaklyGeneric"
    else:
        eps_status = "Fails"
    shift = vsub(nu, lv.rho_bar_lambda)
    half = Fraction(1, 2)
    box = window_box(datum, gens, half, shift) if gens else \
        [(shift[k], shift[k]) for k in range(datum.rank)]
    plus_shift = EpsShift(eps, "plus")
    pm_shift = EpsShift(eps, "plus_minus")

    def in_half_eps(p: Vec) -> bool:
        return member_eps(gens, half, shift, plus_shift, p, central)

    window = tuple(enumerate_lattice(
        lambda p: is_dominant(datum, p, lv) and in_half_eps(p), box, coset=twist))

    half_open_query = ZonotopeQuery(gens, half, shift, HALF_OPEN, central) \
        if gens else None

    def in_half_open(p: Vec) -> bool:
        if half_open_query is None:
            return datum.normalize_weight(vsub(p, shift)) == zero_vec(datum.rank)
        return member(half_open_query, p)

    if prazno_mode == "set":
        def in_boundary(p: Vec) -> bool:
            if not is_dominant(datum, p, lv):
                return False
            return (member_eps(gens, half, shift, pm_shift, p, central)
                    and not in_half_open(p))
    else:
        vertices = _zonotope_vertices(gens, central)
        closed = ZonotopeQuery(gens, ONE, zero_vec(datum.rank), CLOSED, central) \
            if gens else None

        def in_boundary(p: Vec) -> bool:
            if not is_dominant(datum, p, lv):
                return False
            doubled = vscale(Fraction(2), vsub(p, shift))
            for v in vertices:
                target = vadd(doubled, v)
                if closed is None:
                    if datum.normalize_weight(target) != zero_vec(datum.rank):
                        return False
                elif not member(closed, target):
                    return False
            return True

    prazno_points = tuple(enumerate_lattice(in_boundary, box, coset=twist))
    prazno_empty = not prazno_points

    coinv = coinvariant_rep(rep, lam)
    if not lv.phi_lambda_plus and not any(
            pairing(lam, a) == 0 for a in datum.roots):
        genericity = "CheckedToricRule" if _toric_two_per_side(coinv) else "Unknown"
    elif genericity_assertion:
        genericity = "UserAsserted"
    else:
        genericity = "Unknown"

    if (quasi and eps_status in ("Generic", "WeaklyGeneric")
            and window and prazno_empty and genericity != "Unknown"):
        verdict = "TwistedNCCR"
    elif quasi:
        verdict = "FiniteGlobalDimOnly"
    else:
        verdict = "Unknown"
    return NccrCertificate(
        quasi_symmetric=quasi, epsilon=eps, eps_status=eps_status,
        window_nonempty=bool(window), window=window,
        prazno_empty=prazno_empty, prazno_points=prazno_points,
        genericity=genericity, verdict=verdict, prazno_mode=prazno_mode)


# ---------------------------------------------------------------------------
# Preset families.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    family: str
    datum: RootDatum
    rep: RepSpec
    recommended_eps: Vec
    expected: dict


def _sl2_part_sum(n: int) -> int:
    """Sum of the positive weight magnitudes of the n-th symmetric power of
    the defining two-dimensional representation."""
    if n % 2:
        return (n + 1) ** 2 // 4
    return n * (n + 2) // 4


_SL2_CASE_A = [(1,), (2,), (1, 1), (1, 2), (2, 2), (3,), (4,)]


def preset(family: str, **params) -> Preset:
    """Exact weight data plus the expected classification for the worked
    example families."""
    family = family.lower()
    if family == "pfaffian":
        n, h = int(params["n"]), int(params["h"])
        if not 2 * n < h:
            raise InputError("pfaffian preset needs 2n < h")
        datum = build_group(f"Sp({2 * n})")
        rep = construct_rep(datum, [("vector_power", h)])
        expected = {"family": "pfaffian", "n": n, "h": h,
                    "prazno_empty": h % 2 == 1,
                    "verdict": "TwistedNCCR" if h % 2 == 1 else "FiniteGlobalDimOnly"}
        return Preset("pfaffian", datum, rep, zero_vec(n), expected)
    if family == "determinantal":
        n, h = int(params["n"]), int(params["h"])
        if not n < h:
            raise InputError("determinantal preset needs n < h")
        datum = build_group(f"GL({n})")
        rep = construct_rep(datum, [("vector_power", h), ("dual_vector_power", h)])
        eps = (ONE,) * n
        expected = {"family": "determinantal", "n": n, "h": h,
                    "prazno_empty": True, "verdict": "TwistedNCCR"}
        return Preset("determinantal", datum, rep, eps, expected)
    if family == "sl2":
        degrees = [int(d) for d in params["degrees"]]
        if any(d < 0 for d in degrees):
            raise InputError("sl2 preset degrees must be >= 0")
        datum = build_group("SL(2)")
        pieces = [("sym_power", d) if d > 0 else ("trivial", 1) for d in degrees]
        rep = construct_rep(datum, pieces)
        c = sum(1 for d in degrees if d == 0)
        s = sum(_sl2_part_sum(d) for d in degrees)
        nonzero = tuple(sorted(d for d in degrees if d > 0))
        if not nonzero or list(nonzero) in [list(t) for t in _SL2_CASE_A]:
            case = "A"
        elif s % 2 == 1:
            case = "B"
        else:
            case = "unclassified"
        expected = {"family": "sl2", "degrees": degrees, "c": c, "s": s,
                    "case": case,
                    "half_window_size": (s - 1) // 2 if s % 2 == 1 else None}
        return Preset("sl2", datum, rep, zero_vec(2), expected)
    if family == "toric":
        weights = params.get("weights") or [((1,), 2), ((-1,), 2)]
        rank = len(vec(weights[0][0]))
        datum = build_group(f"Torus({rank})")
        rep = rep_spec(datum, weights)
        eps = _toric_recommended_eps(datum, rep)
        expected = {"family": "toric",
                    "two_per_side": _toric_two_per_side(rep),
                    "verdict": "TwistedNCCR" if _toric_two_per_side(rep)
                    and is_quasi_symmetric(rep) else "Unknown"}
        return Preset("toric", datum, rep, eps, expected)
    raise InputError(f"unknown preset family {family!r}")


def _toric_recommended_eps(datum: RootDatum, rep: RepSpec) -> Vec:
    """A small integral generic direction, or zero when none exists."""
    n = datum.rank
    gens = rep.expanded
    for bound in range(1, 4):
        for cand in itertools.product(range(-bound, bound + 1), repeat=n):
            v = tuple(Fraction(c) for c in cand)
            if is_zero_vec(v) or not in_span(list(gens), v):
                continue
            if is_generic(v, datum, gens):
                return v
    return zero_vec(n)


# ---------------------------------------------------------------------------
# Nested one-parameter subgroups.
# ---------------------------------------------------------------------------

def refine_lambda_combination(rep: RepSpec, lam_outer: Vec, lam_inner: Vec) -> Vec:
    """Integral antidominant combination a (lam_outer + b lam_inner), with b
    halved until the pairing signs refine the nested computation: the outer
    sign where nonzero, the inner sign on the outer-neutral weights."""
    datum = rep.datum
    lam_outer = vec(lam_outer)
    lam_inner = vec(lam_inner)
    if any(pairing(lam_outer, a) > 0 for a in datum.positive_roots):
        raise InputError("outer subgroup is not antidominant")
    lv = levi(datum, lam_outer)
    if any(pairing(lam_inner, a) > 0 for a in lv.phi_lambda_plus):
        raise InputError("inner subgroup is not antidominant for the Levi")
    b = ONE
    for _ in range(40):
        cand = vadd(lam_outer, vscale(b, lam_inner))
        if _signs_refine(rep, cand, lam_outer, lam_inner) and \
                all(pairing(cand, a) <= 0 for a in datum.positive_roots):
            from math import lcm

            scale = lcm(*(x.denominator for x in cand)) if cand else 1
            return vscale(Fraction(scale), cand)
        b = b / 2
    raise InputError("sign verification did not stabilize")


def _signs_refine(rep: RepSpec, cand: Vec, outer: Vec, inner: Vec) -> bool:
    def sgn(x) -> int:
        return (x > 0) - (x < 0)

    for w in rep.expanded:
        want = sgn(pairing(outer, w)) or sgn(pairing(inner, w))
        if sgn(pairing(cand, w)) != want:
            return False
    return True
