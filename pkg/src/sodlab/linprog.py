"""Exact rational linear programming and lattice point enumeration.

The solver is a dense two-phase primal simplex over ``Fraction`` with Bland's
rule, so it terminates on every input and never rounds.  Problems are stated
as equality rows plus per-variable bounds; each finite bound may be marked
open, which matters for strict feasibility (membership in half-open boxes)
but is ignored by the closed relaxation that the simplex solves.

Strictness is decided by slack maximization: a point satisfying every open
bound strictly exists iff each open bound individually admits positive slack
over the closed region, because averaging witnesses keeps all slacks positive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import Vec, ZERO, ONE, frac, vdot

Bound = Fraction | None


class InputError(ValueError):
    """Malformed problem data (dimension mismatch, open infinite bound...)."""


@dataclass(frozen=True)
class BoxedLinearProgram:
    """Equality system A x = b with per-variable (possibly open) bounds."""

    eq_rows: tuple[Vec, ...]
    eq_rhs: Vec
    lower: tuple[Bound, ...]
    upper: tuple[Bound, ...]
    lower_open: tuple[bool, ...]
    upper_open: tuple[bool, ...]
    objective: Vec | None = None

    def __post_init__(self):
        n = self.nvars
        if len(self.eq_rows) != len(self.eq_rhs):
            raise InputError("row/rhs count mismatch")
        for row in self.eq_rows:
            if len(row) != n:
                raise InputError("equality row has wrong width")
        for name in ("upper", "lower_open", "upper_open"):
            if len(getattr(self, name)) != n:
                raise InputError(f"{name} has wrong length")
        if self.objective is not None and len(self.objective) != n:
            raise InputError("objective has wrong length")
        for lo, op in zip(self.lower, self.lower_open):
            if op and lo is None:
                raise InputError("open bound requires a finite bound")
        for up, op in zip(self.upper, self.upper_open):
            if op and up is None:
                raise InputError("open bound requires a finite bound")

    @property
    def nvars(self) -> int:
        return len(self.lower)

    def with_objective(self, obj: Sequence[Fraction]) -> "BoxedLinearProgram":
        return BoxedLinearProgram(
            self.eq_rows, self.eq_rhs, self.lower, self.upper,
            self.lower_open, self.upper_open, tuple(obj))

    def with_extra_eq(self, row: Sequence[Fraction], rhs: Fraction) -> "BoxedLinearProgram":
        return BoxedLinearProgram(
            self.eq_rows + (tuple(row),), self.eq_rhs + (rhs,),
            self.lower, self.upper, self.lower_open, self.upper_open,
            self.objective)

    def with_bounds(self, j: int, lower: Bound, upper: Bound) -> "BoxedLinearProgram":
        lo = list(self.lower)
        up = list(self.upper)
        lo[j], up[j] = lower, upper
        return BoxedLinearProgram(
            self.eq_rows, self.eq_rhs, tuple(lo), tuple(up),
            self.lower_open, self.upper_open, self.objective)


@dataclass(frozen=True)
class TightnessReport:
    """Per-variable flags: is the variable pinned at a bound in every feasible
    point of the closed relaxation?  Flags are meaningless when infeasible."""

    feasible: bool
    lower_forced: tuple[bool, ...]
    upper_forced: tuple[bool, ...]


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None
    witness: Vec | None
    attained: bool


# ---------------------------------------------------------------------------
# Core simplex on standard form: max c.x  s.t.  A x = b, x >= 0.
# ---------------------------------------------------------------------------

def _simplex_iterate(tab, rhs, basis, cost):
    """Run Bland-rule pivots in place.  Returns "optimal" or "unbounded"."""
    m = len(tab)
    ncols = len(cost)
    while True:
        # Reduced costs, recomputed each round; cheap at the sizes we solve.
        zrow = [-cost[j] for j in range(ncols)]
        for i in range(m):
            cb = cost[basis[i]]
            if cb != 0:
                row = tab[i]
                for j in range(ncols):
                    if row[j] != 0:
                        zrow[j] += cb * row[j]
        enter = -1
        for j in range(ncols):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, rhs, basis, leave, enter)


def _pivot(tab, rhs, basis, r, c):
    pv = tab[r][c]
    tab[r] = [x / pv for x in tab[r]]
    rhs[r] = rhs[r] / pv
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
            rhs[i] = rhs[i] - f * rhs[r]
    basis[r] = c


def _solve_standard(rows, rhs_in, obj):
    """max obj.x s.t. rows x = rhs, x >= 0.  -> (status, x, value)."""
    m = len(rows)
    n = len(obj)
    tab = []
    rhs = []
    for i in range(m):
        row = list(rows[i])
        b = rhs_in[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        tab.append(row + [ONE if k == i else ZERO for k in range(m)])
        rhs.append(b)
    basis = [n + i for i in range(m)]
    phase1 = [ZERO] * n + [-ONE] * m
    _simplex_iterate(tab, rhs, basis, phase1)
    art_total = sum((rhs[i] for i in range(m) if basis[i] >= n), ZERO)
    if art_total != 0:
        return "infeasible", None, None
    # Drive leftover zero-value artificials out of the basis.
    drop = []
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if tab[i][j] != 0), None)
            if piv is None:
                drop.append(i)  # redundant equality row
            else:
                _pivot(tab, rhs, basis, i, piv)
    for i in sorted(drop, reverse=True):
        del tab[i], rhs[i], basis[i]
    tab = [row[:n] for row in tab]
    status = _simplex_iterate(tab, rhs, basis, list(obj))
    if status == "unbounded":
        return "unbounded", None, None
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        x[bi] = rhs[i]
    value = sum((obj[j] * x[j] for j in range(n) if x[j] != 0), ZERO)
    return "optimal", tuple(x), value


# ---------------------------------------------------------------------------
# Bounded-variable wrapper.
# ---------------------------------------------------------------------------

def _to_standard(prog: BoxedLinearProgram):
    """Rewrite bounded variables as nonnegative ones.

    Returns (rows, rhs, ncols, decode) where decode maps a standard-form point
    back to original coordinates, or None when a bound pair is contradictory.
    """
    n = prog.nvars
    terms: list[list[tuple[int, int]]] = []  # var -> [(col, sign)]
    offsets: list[Fraction] = []
    ncols = 0
    extra: list[tuple[int, Fraction]] = []  # (col of y, range u-l) rows
    for j in range(n):
        lo, up = prog.lower[j], prog.upper[j]
        if lo is not None and up is not None:
            if up < lo:
                return None
            terms.append([(ncols, 1)])
            offsets.append(lo)
            extra.append((ncols, up - lo))
            ncols += 1
        elif lo is not None:
            terms.append([(ncols, 1)])
            offsets.append(lo)
            ncols += 1
        elif up is not None:
            terms.append([(ncols, -1)])
            offsets.append(up)
            ncols += 1
        else:
            terms.append([(ncols, 1), (ncols + 1, -1)])
            offsets.append(ZERO)
            ncols += 2
    slack0 = ncols
    ncols += len(extra)
    rows = []
    rhs = []
    for row, b in zip(prog.eq_rows, prog.eq_rhs):
        out = [ZERO] * ncols
        shift = ZERO
        for j in range(n):
            cj = row[j]
            if cj == 0:
                continue
            shift += cj * offsets[j]
            for col, sg in terms[j]:
                out[col] += cj if sg > 0 else -cj
        rows.append(out)
        rhs.append(b - shift)
    for k, (ycol, width) in enumerate(extra):
        out = [ZERO] * ncols
        out[ycol] = ONE
        out[slack0 + k] = ONE
        rows.append(out)
        rhs.append(width)

    def decode(x: Sequence[Fraction]) -> Vec:
        pt = []
        for j in range(n):
            v = offsets[j]
            for col, sg in terms[j]:
                v += x[col] if sg > 0 else -x[col]
            pt.append(v)
        return tuple(pt)

    def encode_obj(coeffs: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * ncols
        for j in range(n):
            cj = coeffs[j]
            if cj == 0:
                continue
            for col, sg in terms[j]:
                out[col] += cj if sg > 0 else -cj
        return out

    return rows, rhs, ncols, decode, encode_obj


def _optimize_closed(prog: BoxedLinearProgram, coeffs: Sequence[Fraction],
                     maximize: bool):
    """(status, value, witness) for the closed relaxation."""
    std = _to_standard(prog)
    if std is None:
        return "infeasible", None, None
    rows, rhs, ncols, decode, encode_obj = std
    obj = encode_obj(coeffs if maximize else [-c for c in coeffs])
    status, x, _ = _solve_standard(rows, rhs, obj)
    if status != "optimal":
        return status, None, None
    witness = decode(x)
    value = vdot(tuple(coeffs), witness)
    return "optimal", value, witness


def feasible_point(prog: BoxedLinearProgram) -> Vec | None:
    """A point of the closed relaxation, or None."""
    status, _, witness = _optimize_closed(prog, [ZERO] * prog.nvars, True)
    return witness if status == "optimal" else None


def lp_optimize(prog: BoxedLinearProgram, sense: str) -> LpResult:
    """Exact optimum of the closed relaxation.

    ``attained`` is False only when some open bound is active at *every*
    optimal point, i.e. the optimum is not attained by the half-open set.
    """
    if prog.objective is None:
        raise InputError("lp_optimize requires an objective")
    if sense not in ("min", "max"):
        raise InputError(f"unknown sense {sense!r}")
    status, value, witness = _optimize_closed(
        prog, prog.objective, maximize=(sense == "max"))
    if status != "optimal":
        return LpResult(status, None, None, False)
    attained = True
    open_bounds = [(j, "lower") for j in range(prog.nvars) if prog.lower_open[j]]
    open_bounds += [(j, "upper") for j in range(prog.nvars) if prog.upper_open[j]]
    if open_bounds:
        face = prog.with_extra_eq(prog.objective, value)
        for j, side in open_bounds:
            bound = prog.lower[j] if side == "lower" else prog.upper[j]
            if side == "lower" and witness[j] > bound:
                continue
            if side == "upper" and witness[j] < bound:
                continue
            slack = _max_bound_slack(face, j, side)
            if slack == 0:
                attained = False
                break
    return LpResult("optimal", value, witness, attained)


def _max_bound_slack(prog: BoxedLinearProgram, j: int, side: str) -> Fraction:
    """max of (x_j - lower_j) resp. (upper_j - x_j), capped at 1.

    The cap keeps the problem bounded; only positivity of the slack matters.
    Assumes prog is feasible; a capped problem that turns infeasible means
    every feasible point clears the cap, i.e. the slack exceeds 1.
    """
    lo, up = prog.lower[j], prog.upper[j]
    obj = [ZERO] * prog.nvars
    obj[j] = ONE
    if side == "lower":
        capped = prog.with_bounds(
            j, lo, up if up is not None and up <= lo + 1 else lo + 1)
        status, value, _ = _optimize_closed(capped, obj, maximize=True)
        return value - lo if status == "optimal" else ONE
    capped = prog.with_bounds(
        j, lo if lo is not None and lo >= up - 1 else up - 1, up)
    status, value, _ = _optimize_closed(capped, obj, maximize=False)
    return up - value if status == "optimal" else ONE


def strict_point(prog: BoxedLinearProgram) -> Vec | None:
    """A point satisfying the equalities, all closed bounds, and every open
    bound strictly; None when no such point exists."""
    base = feasible_point(prog)
    if base is None:
        return None
    witnesses = [base]
    for j in range(prog.nvars):
        for side, is_open in (("lower", prog.lower_open[j]),
                              ("upper", prog.upper_open[j])):
            if not is_open:
                continue
            bound = prog.lower[j] if side == "lower" else prog.upper[j]
            slack = _max_bound_slack(prog, j, side)
            if slack == 0:
                return None
            # Recover a witness realizing the slack for the averaging step.
            step = min(slack, ONE)
            pinned = (prog.with_bounds(j, bound + step, prog.upper[j])
                      if side == "lower"
                      else prog.with_bounds(j, prog.lower[j], bound - step))
            w = feasible_point(pinned)
            if w is None:  # unreachable: the slack level set is nonempty
                return None
            witnesses.append(w)
    k = Fraction(1, len(witnesses))
    avg = tuple(sum((w[i] for w in witnesses), ZERO) * k
                for i in range(prog.nvars))
    for j in range(prog.nvars):
        if prog.lower_open[j] and not avg[j] > prog.lower[j]:
            return None
        if prog.upper_open[j] and not avg[j] < prog.upper[j]:
            return None
    return avg


def strict_feasible(prog: BoxedLinearProgram) -> bool:
    return strict_point(prog) is not None


def forced_tight(prog: BoxedLinearProgram) -> TightnessReport:
    """Which variables sit at a bound in every feasible point."""
    n = prog.nvars
    if feasible_point(prog) is None:
        return TightnessReport(False, (False,) * n, (False,) * n)
    lower_forced = []
    upper_forced = []
    for j in range(n):
        obj = [ZERO] * n
        obj[j] = ONE
        lo, up = prog.lower[j], prog.upper[j]
        if lo is None:
            lower_forced.append(False)
        else:
            status, value, _ = _optimize_closed(prog, obj, maximize=True)
            lower_forced.append(status == "optimal" and value == lo)
        if up is None:
            upper_forced.append(False)
        else:
            status, value, _ = _optimize_closed(prog, obj, maximize=False)
            upper_forced.append(status == "optimal" and value == up)
    return TightnessReport(True, tuple(lower_forced), tuple(upper_forced))


# ---------------------------------------------------------------------------
# Incremental problem builder.
# ---------------------------------------------------------------------------

class LpBuilder:
    """Assemble a BoxedLinearProgram from sparse rows and typed variables.

    Inequalities are turned into equalities with fresh slack variables, so
    downstream code can state constraints in the natural direction.
    """

    def __init__(self):
        self._lower: list[Bound] = []
        self._upper: list[Bound] = []
        self._lopen: list[bool] = []
        self._uopen: list[bool] = []
        self._rows: list[dict[int, Fraction]] = []
        self._rhs: list[Fraction] = []

    @property
    def nvars(self) -> int:
        return len(self._lower)

    def add_var(self, lower: Bound = None, upper: Bound = None,
                lower_open: bool = False, upper_open: bool = False) -> int:
        self._lower.append(None if lower is None else frac(lower))
        self._upper.append(None if upper is None else frac(upper))
        self._lopen.append(lower_open)
        self._uopen.append(upper_open)
        return len(self._lower) - 1

    def add_eq(self, coeffs: dict[int, Fraction], rhs) -> None:
        self._rows.append({j: frac(c) for j, c in coeffs.items() if c != 0})
        self._rhs.append(frac(rhs))

    def add_le(self, coeffs: dict[int, Fraction], rhs) -> None:
        s = self.add_var(lower=0)
        row = dict(coeffs)
        row[s] = ONE
        self.add_eq(row, rhs)

    def add_ge(self, coeffs: dict[int, Fraction], rhs) -> None:
        s = self.add_var(lower=0)
        row = {j: -frac(c) for j, c in coeffs.items()}
        row[s] = ONE
        self.add_eq(row, -frac(rhs))

    def build(self, objective: dict[int, Fraction] | None = None) -> BoxedLinearProgram:
        n = self.nvars
        rows = tuple(tuple(r.get(j, ZERO) for j in range(n)) for r in self._rows)
        obj = None
        if objective is not None:
            obj = tuple(frac(objective.get(j, ZERO)) for j in range(n))
        return BoxedLinearProgram(
            rows, tuple(self._rhs), tuple(self._lower), tuple(self._upper),
            tuple(self._lopen), tuple(self._uopen), obj)


# ---------------------------------------------------------------------------
# Lattice points.
# ---------------------------------------------------------------------------

def enumerate_lattice(predicate: Callable[[Vec], bool],
                      box: Sequence[tuple[Fraction, Fraction]],
                      coset=None) -> list[Vec]:
    """Integer points (optionally restricted to a sublattice coset) inside a
    finite coordinate box that pass ``predicate``, in lexicographic order.

    ``coset`` is any object exposing ``contains(point) -> bool``.
    """
    ranges = []
    for lo, hi in box:
        if lo is None or hi is None:
            raise InputError("enumerate_lattice needs a finite bounding box")
        lo_i = math.ceil(lo)
        hi_i = math.floor(hi)
        ranges.append([Fraction(k) for k in range(lo_i, hi_i + 1)])
    out: list[Vec] = []
    for point in itertools.product(*ranges):
        if coset is not None and not coset.contains(point):
            continue
        if predicate(point):
            out.append(point)
    return out
