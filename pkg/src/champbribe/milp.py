"""Exact rational LP/MILP engine with formal-logarithm cost handling.

Everything here is exact: tableaux hold rationals (gmpy2.mpq when available,
`fractions.Fraction` otherwise), and logarithmic quantities are never
evaluated numerically.  A coefficient ``log q`` is carried as `FormalLog(q)`;
linear combinations of formal logs (`LogSum`) are ordered by comparing the
corresponding rational products exactly, so every pivoting and bounding
decision that involves logarithms reduces to big-integer arithmetic.

Formal logs are allowed in objectives, where only *comparisons* of log
combinations are ever needed.  They are rejected inside LP constraint rows:
pivoting on an irrational entry would leave the rational field, so no exact
vertex could be reported.  `solve_milp` does accept one structured exception,
a ``>=`` row whose coefficients are formal logs on integer columns only
(the shape produced by the probability-threshold model).  Such a row is
replaced by a certified rational outer approximation for the relaxations and
re-checked exactly (as a rational product inequality) whenever a candidate
incumbent has integral values; if the approximation ever admits a spurious
candidate, its precision is doubled and the search restarts.

Simplex uses Bland's rule throughout (termination over speed), and
branch-and-bound is depth-first with deterministic branching: lowest
fractional integer column first, floor branch first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import CapExceededError, ModelError, SolverError

try:
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _rat = Fraction

_ZERO = _rat(0)
_ONE = _rat(1)

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = (LE, EQ, GE)


def _to_fraction(x) -> Fraction:
    """Fraction with plain-int internals (gmpy2 values convert via int)."""
    if type(x) is Fraction:
        return x
    if hasattr(x, "numerator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


# -- formal logarithms --------------------------------------------------------


@dataclass(frozen=True)
class FormalLog:
    """The value log(argument) for a positive rational argument, unevaluated."""

    argument: Fraction

    def __post_init__(self) -> None:
        arg = Fraction(self.argument)
        if arg <= 0:
            raise ModelError(f"formal log argument must be positive, got {arg}")
        object.__setattr__(self, "argument", arg)

    def __repr__(self) -> str:
        return f"log({self.argument})"


class LogSum:
    """Exact linear combination sum(coeff * log(arg)) of formal logarithms.

    Comparisons reduce to exact rational product comparisons: after clearing
    denominators, sum(m_i * log(q_i)) >= 0 holds iff the product of q_i**m_i
    over positive m_i is at least the product over negative m_i.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Fraction, Fraction] | None = None):
        clean: dict[Fraction, Fraction] = {}
        if terms:
            for arg, coeff in terms.items():
                if arg == 1 or coeff == 0:
                    continue
                clean[_to_fraction(arg)] = _to_fraction(coeff)
        self.terms = clean

    @classmethod
    def zero(cls) -> "LogSum":
        return cls()

    @classmethod
    def of(cls, argument: Fraction, coeff: Fraction | int = 1) -> "LogSum":
        return cls({Fraction(argument): Fraction(coeff)})

    def is_zero(self) -> bool:
        return self.sign() == 0

    def __add__(self, other: "LogSum") -> "LogSum":
        merged = dict(self.terms)
        for arg, coeff in other.terms.items():
            merged[arg] = merged.get(arg, Fraction(0)) + coeff
        return LogSum(merged)

    def __sub__(self, other: "LogSum") -> "LogSum":
        merged = dict(self.terms)
        for arg, coeff in other.terms.items():
            merged[arg] = merged.get(arg, Fraction(0)) - coeff
        return LogSum(merged)

    def __neg__(self) -> "LogSum":
        return LogSum({a: -c for a, c in self.terms.items()})

    def scaled(self, factor) -> "LogSum":
        f = _to_fraction(factor)
        if f == 0:
            return LogSum()
        return LogSum({a: c * f for a, c in self.terms.items()})

    def sign(self) -> int:
        """Exact sign of the represented real number."""
        if not self.terms:
            return 0
        denom_lcm = 1
        for coeff in self.terms.values():
            denom_lcm = denom_lcm * coeff.denominator // _gcd(denom_lcm, coeff.denominator)
        up = Fraction(1)
        down = Fraction(1)
        for arg, coeff in self.terms.items():
            m = int(coeff * denom_lcm)
            if m > 0:
                up *= arg**m
            elif m < 0:
                down *= arg**-m
        if up > down:
            return 1
        if up < down:
            return -1
        return 0

    def compare(self, other: "LogSum") -> int:
        return (self - other).sign()

    def __repr__(self) -> str:
        if not self.terms:
            return "LogSum(0)"
        parts = [f"{c}*log({a})" for a, c in sorted(self.terms.items())]
        return "LogSum(" + " + ".join(parts) + ")"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def ln_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds lo <= ln(q) <= hi with width below 2**-bits.

    Uses ln(x) = 2*atanh((x-1)/(x+1)) with exact partial sums and a geometric
    tail bound, after reducing the argument to [1, 2) by powers of two.
    """
    q = Fraction(q)
    if q <= 0:
        raise ModelError(f"ln_bounds requires a positive argument, got {q}")
    if q == 1:
        return Fraction(0), Fraction(0)
    if q < 1:
        lo, hi = ln_bounds(1 / q, bits)
        return -hi, -lo
    # q > 1: find k with q / 2**k in [1, 2)
    k = q.numerator.bit_length() - q.denominator.bit_length()
    if Fraction(2) ** k > q:
        k -= 1
    if q / Fraction(2) ** (k + 1) >= 1:
        k += 1
    r = q / Fraction(2) ** k
    assert 1 <= r < 2
    lo, hi = _atanh_ln_bounds(r, bits + max(k.bit_length(), 1) + 2)
    if k:
        lo2, hi2 = _atanh_ln_bounds(Fraction(2), bits + k.bit_length() + 2)
        lo, hi = lo + k * lo2, hi + k * hi2
    return lo, hi


def _atanh_ln_bounds(r: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bounds for ln(r), 1 <= r <= 2, via the atanh series."""
    if r == 1:
        return Fraction(0), Fraction(0)
    z = (r - 1) / (r + 1)  # in (0, 1/3]
    z2 = z * z
    tol = Fraction(1, 2**bits)
    total = Fraction(0)
    power = z
    i = 0
    while True:
        total += power / (2 * i + 1)
        power *= z2
        i += 1
        tail = power / ((2 * i + 1) * (1 - z2))
        if 2 * tail < tol:
            lo = 2 * total
            return lo, lo + 2 * tail


# -- model types ---------------------------------------------------------------


@dataclass(frozen=True)
class MilpVariable:
    """A nonnegative variable; lower bound is fixed at 0."""

    name: str
    is_integer: bool = False
    upper: Fraction | int | None = None


@dataclass(frozen=True)
class MilpRow:
    coeffs: tuple
    relation: str
    rhs: object

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.relation not in _RELATIONS:
            raise ModelError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class MilpObjective:
    coeffs: tuple
    sense: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.sense not in ("max", "min"):
            raise ModelError(f"objective sense must be 'max' or 'min', got {self.sense!r}")


@dataclass(frozen=True)
class MilpModel:
    variables: tuple[MilpVariable, ...]
    rows: tuple[MilpRow, ...]
    objective: MilpObjective

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "rows", tuple(self.rows))
        n = len(self.variables)
        for i, row in enumerate(self.rows):
            if len(row.coeffs) != n:
                raise ModelError(f"row {i} has {len(row.coeffs)} coefficients for {n} variables")
        if len(self.objective.coeffs) != n:
            raise ModelError("objective length does not match variable count")

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def integer_columns(self) -> list[int]:
        return [j for j, v in enumerate(self.variables) if v.is_integer]

    def fractional_columns(self) -> list[int]:
        return [j for j, v in enumerate(self.variables) if not v.is_integer]

    def dump(self) -> str:
        """Plain-text LP-style listing (rationals as num/den, logs as log(num/den))."""

        def fmt(c) -> str:
            return repr(c) if isinstance(c, FormalLog) else str(Fraction(c))

        def terms(coeffs) -> str:
            parts = [
                f"{fmt(c)} {v.name}"
                for c, v in zip(coeffs, self.variables)
                if isinstance(c, FormalLog) or c != 0
            ]
            return " + ".join(parts) if parts else "0"

        lines = [f"{self.objective.sense} {terms(self.objective.coeffs)}", "s.t."]
        for row in self.rows:
            lines.append(f"  {terms(row.coeffs)} {row.relation} {fmt(row.rhs)}")
        for v in self.variables:
            bound = f"0 <= {v.name}" + (f" <= {Fraction(v.upper)}" if v.upper is not None else "")
            lines.append(f"  {bound}" + ("  integer" if v.is_integer else ""))
        return "\n".join(lines)


OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass(frozen=True)
class MilpSolution:
    status: str
    assignment: tuple[Fraction, ...] | None = None
    objective_value: object = None

    def __getitem__(self, j: int) -> Fraction:
        if self.assignment is None:
            raise SolverError(f"no assignment available (status {self.status})")
        return self.assignment[j]


# -- exact simplex -------------------------------------------------------------


def _is_log(c) -> bool:
    return isinstance(c, FormalLog)


def _objective_mode(coeffs: Sequence) -> str:
    """'log' when any coefficient is a FormalLog (then all others must be 0)."""
    if any(_is_log(c) for c in coeffs):
        for c in coeffs:
            if not _is_log(c) and c != 0:
                raise ModelError(
                    "objective mixes nonzero rational and formal-log coefficients"
                )
        return "log"
    return "rational"


class _Tableau:
    """Dense simplex tableau over exact rationals with Bland's rule."""

    def __init__(self, rows, num_structural: int):
        # rows: list of (coeffs list[_rat] over structural cols, relation, rhs _rat)
        self.n = num_structural
        norm = []
        for coeffs, rel, rhs in rows:
            coeffs = list(coeffs)
            if rhs < 0:
                coeffs = [-c for c in coeffs]
                rhs = -rhs
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            norm.append((coeffs, rel, rhs))
        num_slack = sum(1 for _, rel, _ in norm if rel != EQ)
        num_art = sum(1 for _, rel, _ in norm if rel != LE)
        total = self.n + num_slack + num_art
        self.art_start = self.n + num_slack
        self.total = total
        self.body: list[list] = []
        self.rhs: list = []
        self.basis: list[int] = []
        s = self.n
        a = self.art_start
        for coeffs, rel, rhs in norm:
            row = [_rat(c) for c in coeffs] + [_ZERO] * (total - self.n)
            if rel == LE:
                row[s] = _ONE
                self.basis.append(s)
                s += 1
            elif rel == GE:
                row[s] = -_ONE
                s += 1
                row[a] = _ONE
                self.basis.append(a)
                a += 1
            else:
                row[a] = _ONE
                self.basis.append(a)
                a += 1
            self.body.append(row)
            self.rhs.append(_rat(rhs))

    def _pivot(self, i: int, j: int, cost, zbox) -> None:
        body, rhs = self.body, self.rhs
        piv = body[i][j]
        if piv != 1:
            inv = _ONE / piv
            body[i] = [x * inv for x in body[i]]
            rhs[i] *= inv
        row_i = body[i]
        for k in range(len(body)):
            if k == i:
                continue
            f = body[k][j]
            if f:
                body[k] = [x - f * y for x, y in zip(body[k], row_i)]
                rhs[k] -= f * rhs[i]
        cf = cost[j]
        nonzero = cf.sign() != 0 if isinstance(cf, LogSum) else cf != 0
        if nonzero:
            if isinstance(cf, LogSum):
                for l in range(self.total):
                    if row_i[l]:
                        cost[l] = cost[l] - cf.scaled(row_i[l])
                zbox[0] = zbox[0] + cf.scaled(rhs[i])
            else:
                for l in range(self.total):
                    if row_i[l]:
                        cost[l] -= cf * row_i[l]
                zbox[0] += cf * rhs[i]
        self.basis[i] = j

    def run(self, cost, zbox, allowed: int) -> str:
        """Maximize; `cost` holds reduced costs over columns < allowed."""
        body, rhs = self.body, self.rhs
        while True:
            enter = -1
            for j in range(allowed):
                c = cost[j]
                positive = c.sign() > 0 if isinstance(c, LogSum) else c > 0
                if positive:
                    enter = j
                    break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for i in range(len(body)):
                a = body[i][enter]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED
            self._pivot(leave, enter, cost, zbox)


def _reduced_costs(tab: _Tableau, raw_cost: list, log_mode: bool):
    """Reduced costs and objective for the current basis (identity columns)."""
    cost = list(raw_cost)
    zbox = [LogSum.zero() if log_mode else _ZERO]
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        nonzero = cb.sign() != 0 if isinstance(cb, LogSum) else cb != 0
        if not nonzero:
            continue
        row = tab.body[i]
        if isinstance(cb, LogSum):
            for l in range(tab.total):
                if row[l]:
                    cost[l] = cost[l] - cb.scaled(row[l])
            zbox[0] = zbox[0] + cb.scaled(tab.rhs[i])
        else:
            for l in range(tab.total):
                if row[l]:
                    cost[l] -= cb * row[l]
            zbox[0] += cb * tab.rhs[i]
    return cost, zbox


def _simplex(rows, objective, sense: str, num_vars: int):
    """Two-phase exact simplex.

    rows: (rational coeff list, relation, rational rhs) triples.
    objective: list of Fraction (rational mode) or LogSum (log mode).
    Returns (status, assignment tuple of Fraction or None).
    """
    log_mode = objective and isinstance(objective[0], LogSum)
    if num_vars == 0:
        for coeffs, rel, rhs in rows:
            ok = {LE: 0 <= rhs, GE: 0 >= rhs, EQ: rhs == 0}[rel]
            if not ok:
                return INFEASIBLE, None
        return OPTIMAL, ()

    tab = _Tableau(rows, num_vars)

    if tab.art_start < tab.total:
        # Phase 1: maximize -sum(artificials).
        cost = [_ZERO] * tab.total
        zbox = [_ZERO]
        for i, b in enumerate(tab.basis):
            if b >= tab.art_start:
                row = tab.body[i]
                for l in range(tab.art_start):
                    cost[l] += row[l]
                zbox[0] -= tab.rhs[i]
        status = tab.run(cost, zbox, tab.art_start)
        if status != OPTIMAL or zbox[0] != 0:
            return INFEASIBLE, None
        # Drive leftover artificials out of the basis (or drop redundant rows).
        for i in range(len(tab.body) - 1, -1, -1):
            if tab.basis[i] < tab.art_start:
                continue
            pivot_col = next(
                (l for l in range(tab.art_start) if tab.body[i][l] != 0), None
            )
            if pivot_col is None:
                del tab.body[i], tab.rhs[i], tab.basis[i]
            else:
                tab._pivot(i, pivot_col, cost, zbox)
        # Artificial columns stay but are barred from entering below.

    if log_mode:
        raw = [objective[j] if j < num_vars else LogSum.zero() for j in range(tab.total)]
    else:
        raw = [_rat(objective[j]) if j < num_vars else _ZERO for j in range(tab.total)]
    cost, zbox = _reduced_costs(tab, raw, log_mode)
    status = tab.run(cost, zbox, tab.art_start)
    if status == UNBOUNDED:
        return UNBOUNDED, None
    values = [Fraction(0)] * num_vars
    for i, b in enumerate(tab.basis):
        if b < num_vars:
            values[b] = _to_fraction(tab.rhs[i])
    return OPTIMAL, tuple(values)


def _model_lp_rows(model: MilpModel, extra_rows=()):
    """Model rows plus upper-bound rows, as rational triples for the simplex."""
    rows = []
    for row in model.rows:
        if any(_is_log(c) for c in row.coeffs) or _is_log(row.rhs):
            raise ModelError("constraint rows with formal-log coefficients are not LP-solvable")
        rows.append(([Fraction(c) for c in row.coeffs], row.relation, Fraction(row.rhs)))
    n = model.num_variables
    for j, v in enumerate(model.variables):
        if v.upper is not None:
            coeffs = [Fraction(0)] * n
            coeffs[j] = Fraction(1)
            rows.append((coeffs, LE, Fraction(v.upper)))
    rows.extend(extra_rows)
    return rows


def _objective_vector(model: MilpModel, negate: bool = False):
    mode = _objective_mode(model.objective.coeffs)
    if mode == "log":
        vec = [
            LogSum.of(c.argument) if _is_log(c) else LogSum.zero()
            for c in model.objective.coeffs
        ]
        if negate:
            vec = [-c for c in vec]
    else:
        vec = [Fraction(c) for c in model.objective.coeffs]
        if negate:
            vec = [-c for c in vec]
    return vec, mode


def _objective_value(model: MilpModel, assignment: Sequence[Fraction]):
    mode = _objective_mode(model.objective.coeffs)
    if mode == "log":
        total = LogSum.zero()
        for c, x in zip(model.objective.coeffs, assignment):
            if _is_log(c) and x:
                total = total + LogSum.of(c.argument, x)
        return total
    return sum(
        (Fraction(c) * x for c, x in zip(model.objective.coeffs, assignment)),
        Fraction(0),
    )


def solve_lp_exact(model: MilpModel) -> MilpSolution:
    """Optimal vertex of the LP relaxation (integrality flags ignored).

    Exact two-phase simplex with Bland's anti-cycling rule.  Objectives may
    carry formal-log coefficients; constraint rows must be rational.
    """
    rows = _model_lp_rows(model)
    objective, mode = _objective_vector(model, negate=model.objective.sense == "min")
    status, assignment = _simplex(rows, objective, "max", model.num_variables)
    if status != OPTIMAL:
        return MilpSolution(status)
    return MilpSolution(OPTIMAL, assignment, _objective_value(model, assignment))


# -- branch and bound ----------------------------------------------------------


class _NeedsMorePrecision(Exception):
    pass


def _split_log_rows(model: MilpModel):
    """Separate structured formal-log rows from plain rational rows."""
    log_rows = []
    plain = []
    int_cols = set(model.integer_columns())
    for idx, row in enumerate(model.rows):
        has_log = any(_is_log(c) for c in row.coeffs) or _is_log(row.rhs)
        if not has_log:
            plain.append(row)
            continue
        if row.relation != GE or not _is_log(row.rhs):
            raise ModelError("formal-log rows must be '>=' with a formal-log right-hand side")
        support = []
        for j, c in enumerate(row.coeffs):
            if _is_log(c):
                support.append((j, c.argument))
            elif c != 0:
                raise ModelError("formal-log rows cannot mix rational coefficients")
        if any(j not in int_cols for j, _ in support):
            raise ModelError("formal-log rows may involve integer columns only")
        log_rows.append((support, row.rhs.argument))
    return plain, log_rows


def _approx_log_row(support, rhs_arg: Fraction, bits: int, n: int):
    """Rational outer approximation of sum(x_j * ln q_j) >= ln(rhs_arg)."""
    coeffs = [Fraction(0)] * n
    for j, arg in support:
        coeffs[j] = ln_bounds(arg, bits)[1]
    rhs = ln_bounds(rhs_arg, bits)[0]
    return coeffs, GE, rhs


def _log_row_satisfied(support, rhs_arg: Fraction, assignment) -> bool:
    product = Fraction(1)
    for j, arg in support:
        e = assignment[j]
        if e.denominator != 1:
            raise SolverError("exact log check requires integral values")
        product *= arg ** int(e)
    return product >= rhs_arg


def solve_milp(model: MilpModel, *, start_bits: int = 128, max_rounds: int = 24) -> MilpSolution:
    """Exact branch-and-bound over LP relaxations.

    Integer variables must carry finite upper bounds.  Branching is
    deterministic: depth-first, lowest fractional integer column first,
    floor branch first.  An unbounded relaxation is reported as unbounded.
    """
    for v in model.variables:
        if v.is_integer and v.upper is None:
            raise ModelError(f"integer variable {v.name} needs a finite upper bound")
    plain_rows, log_rows = _split_log_rows(model)
    base_model = MilpModel(model.variables, tuple(plain_rows), model.objective)
    bits = start_bits
    for _ in range(max_rounds):
        try:
            return _branch_and_bound(model, base_model, log_rows, bits)
        except _NeedsMorePrecision:
            bits *= 2
    raise SolverError("log-row approximation failed to converge")


def _branch_and_bound(model, base_model, log_rows, bits: int) -> MilpSolution:
    n = model.num_variables
    negate = model.objective.sense == "min"
    objective, mode = _objective_vector(base_model, negate=negate)
    approx = [_approx_log_row(sup, rhs, bits, n) for sup, rhs in log_rows]
    base_rows = _model_lp_rows(base_model, extra_rows=approx)
    int_cols = model.integer_columns()

    def better(a, b) -> bool:
        if isinstance(a, LogSum):
            return a.compare(b) > 0
        return a > b

    incumbent = None
    incumbent_val = None
    stack: list[tuple] = [()]
    while stack:
        bound_rows = stack.pop()
        rows = base_rows + [r for r in bound_rows]
        status, assignment = _simplex(rows, objective, "max", n)
        if status == INFEASIBLE:
            continue
        if status == UNBOUNDED:
            return MilpSolution(UNBOUNDED)
        if mode == "log":
            node_val = LogSum.zero()
            for c, x in zip(objective, assignment):
                if x:
                    node_val = node_val + c.scaled(x)
        else:
            node_val = sum((c * x for c, x in zip(objective, assignment)), Fraction(0))
        if incumbent_val is not None and not better(node_val, incumbent_val):
            continue
        frac_col = next((j for j in int_cols if assignment[j].denominator != 1), None)
        if frac_col is not None:
            v = assignment[frac_col] // 1
            lo = [Fraction(0)] * n
            lo[frac_col] = Fraction(1)
            hi = list(lo)
            stack.append(bound_rows + ((hi, GE, Fraction(v + 1)),))
            stack.append(bound_rows + ((lo, LE, Fraction(v)),))
            continue
        if not all(_log_row_satisfied(sup, rhs, assignment) for sup, rhs in log_rows):
            raise _NeedsMorePrecision
        incumbent = assignment
        incumbent_val = node_val
    if incumbent is None:
        return MilpSolution(INFEASIBLE)
    return MilpSolution(OPTIMAL, incumbent, _objective_value(model, incumbent))


# -- total unimodularity -------------------------------------------------------


def is_totally_unimodular(matrix: Sequence[Sequence], cap: int = 12) -> bool:
    """True iff every square submatrix has determinant in {-1, 0, 1}.

    Decided via the Ghouila-Houri row-signing criterion, which is equivalent
    to the subdeterminant definition; the dimension cap keeps the exponential
    sweep at desk scale.
    """
    rows = [list(r) for r in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m > cap or n > cap:
        raise CapExceededError(f"matrix {m}x{n} exceeds the {cap}x{cap} cap")
    if any(len(r) != n for r in rows):
        raise ModelError("ragged matrix")
    entries = [[int(x) if Fraction(x) in (-1, 0, 1) else None for x in r] for r in rows]
    if any(x is None for r in entries for x in r):
        return False
    for size in range(1, m + 1):
        for subset in itertools.combinations(range(m), size):
            if not _has_equitable_signing([entries[i] for i in subset], n):
                return False
    return True


def _has_equitable_signing(rows: list[list[int]], n: int) -> bool:
    """Is there a +/-1 signing of `rows` with all column sums in {-1, 0, 1}?"""
    m = len(rows)
    suffix = [[0] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for j in range(n):
            suffix[i][j] = suffix[i + 1][j] + abs(rows[i][j])

    cur = [0] * n

    def feasible(i: int) -> bool:
        if i == m:
            return all(-1 <= s <= 1 for s in cur)
        for sign in (1, -1) if i else (1,):  # first row sign fixed by symmetry
            ok = True
            for j in range(n):
                if rows[i][j]:
                    cur[j] += sign * rows[i][j]
                    if abs(cur[j]) > 1 + suffix[i + 1][j]:
                        ok = False
            if ok and feasible(i + 1):
                return True
            for j in range(n):
                if rows[i][j]:
                    cur[j] -= sign * rows[i][j]
            if not ok:
                continue
        return False

    return feasible(0)


# -- integral rounding (all-integer optimum from a mixed one) -------------------


def integralize_solution(model: MilpModel, mixed: MilpSolution) -> MilpSolution:
    """Round a mixed optimum to an all-integer one of equal objective value.

    Requires integral values on the integer columns, a totally unimodular
    fractional-column submatrix (caller-asserted), integral residual
    right-hand sides, and the row convention that all rows touching
    fractional columns form the tail block of the model.  Re-solves the
    restricted LP over the fractional columns to a vertex, which is then
    integral, and splices it back in.
    """
    if mixed.status != OPTIMAL or mixed.assignment is None:
        raise SolverError("integralize_solution requires an optimal mixed solution")
    frac_cols = model.fractional_columns()
    int_cols = model.integer_columns()
    touching = [
        i
        for i, row in enumerate(model.rows)
        if any(_is_log(row.coeffs[j]) or row.coeffs[j] != 0 for j in frac_cols)
    ]
    if touching and touching != list(range(len(model.rows) - len(touching), len(model.rows))):
        raise ModelError("rows touching fractional columns must form the tail block")

    sub_vars = tuple(model.variables[j] for j in frac_cols)
    sub_rows = []
    for i in touching:
        row = model.rows[i]
        residual = Fraction(row.rhs)
        for j in int_cols:
            c = row.coeffs[j]
            if c != 0:
                residual -= Fraction(c) * mixed.assignment[j]
        sub_rows.append(MilpRow(tuple(row.coeffs[j] for j in frac_cols), row.relation, residual))
    sub_obj = MilpObjective(
        tuple(model.objective.coeffs[j] for j in frac_cols), model.objective.sense
    )
    restricted = MilpModel(sub_vars, tuple(sub_rows), sub_obj)
    sub = solve_lp_exact(restricted)
    if sub.status != OPTIMAL:
        raise SolverError(f"restricted LP is {sub.status}; integralize preconditions violated")

    merged = list(mixed.assignment)
    for pos, j in enumerate(frac_cols):
        merged[j] = sub.assignment[pos]
    merged_t = tuple(merged)
    return MilpSolution(OPTIMAL, merged_t, _objective_value(model, merged_t))
