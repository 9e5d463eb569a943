"""CBCCT solvers: exhaustive oracle, budget DP, and two MILP-based routes.

All four return a `SolveResult` whose witness (when present) costs at most
the budget and evaluates exactly to the reported probability.  Every player
selects exactly one entry of its bribe vector; if even the cheapest entries
exceed the budget there is no plan at all, which every solver reports as a
"no" with no witness.

The MILP routes group challengers by (probability profile, bribe-value set):
under monotone vectors two players sharing both have identical vectors, so a
solution only needs to say how many players of each group are bribed with
each value.  The bribe-value model maximizes the formal-log win probability
under the budget; the probability-value model minimizes the budget needed to
reach the threshold.  In both, the constraint block over the per-group
counting variables is an interval-free 0-1 matrix with exactly two ones per
column (one in each row family), hence totally unimodular, which is what
makes `milp.integralize_solution` applicable for witness extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from . import dp
from .core import (
    BribePlan,
    BribeVector,
    CbcctInstance,
    evaluate_plan,
    normalize_instance,
)
from .errors import CapExceededError, ModelError, SolverError
from .milp import (
    FormalLog,
    INFEASIBLE,
    MilpModel,
    MilpObjective,
    MilpRow,
    MilpVariable,
    OPTIMAL,
    integralize_solution,
    solve_milp,
)

ProbabilityProfile = tuple[Fraction, ...]
BribeValueSet = tuple[int, ...]


@dataclass(frozen=True)
class SolveResult:
    best_probability: Fraction | None
    witness: BribePlan | None
    decision: bool
    algorithm: str


def probability_profile(v: BribeVector) -> ProbabilityProfile:
    """The set of probability values of a vector, as a sorted tuple."""
    return tuple(sorted(set(v.probabilities())))


def bribe_value_set(v: BribeVector) -> BribeValueSet:
    return tuple(sorted(set(v.bribe_values())))


def _min_cost(inst: CbcctInstance) -> int:
    return sum(v.entries[0].bribe for v in inst.bribe_vectors)


def _first_entries_plan(inst: CbcctInstance) -> BribePlan:
    return BribePlan((1,) * inst.num_challengers)


def _result(inst: CbcctInstance, plan: BribePlan | None, algorithm: str) -> SolveResult:
    if plan is None:
        return SolveResult(None, None, False, algorithm)
    _, prob = evaluate_plan(inst, plan)
    return SolveResult(prob, plan, prob >= inst.threshold, algorithm)


def solve_bruteforce(inst: CbcctInstance, plan_cap: int = 10**7) -> SolveResult:
    """Enumerate every plan; ties go to the lexicographically smallest one."""
    total = 1
    for v in inst.bribe_vectors:
        total *= len(v)
    if total > plan_cap:
        raise CapExceededError(f"{total} plans exceed the brute-force cap of {plan_cap}")
    best: Fraction | None = None
    best_plan: BribePlan | None = None
    for choices in iter_product(*(range(1, len(v) + 1) for v in inst.bribe_vectors)):
        plan = BribePlan(choices)
        cost, prob = evaluate_plan(inst, plan)
        if cost <= inst.budget and (best is None or prob > best):
            best = prob
            best_plan = plan
    if best is None:
        return SolveResult(None, None, False, "brute")
    return SolveResult(best, best_plan, best >= inst.threshold, "brute")


def solve_dp(
    inst: CbcctInstance, cell_cap: int = 10**8, backend: str | None = None
) -> SolveResult:
    """Budget DP; exact agreement with `solve_bruteforce` including witnesses."""
    sweep = dp.budget_sweep(inst, cell_cap=cell_cap, backend=backend)
    best = sweep.best_at()
    if best is None:
        return SolveResult(None, None, False, "dp")
    return SolveResult(best, sweep.witness(), best >= inst.threshold, "dp")


# -- grouping for the FPT models -------------------------------------------------


@dataclass(frozen=True)
class VariableMap:
    """Column bookkeeping for the FPT models.

    int_cols maps each counting variable's key to its column; frac_cols does
    the same for the per-group variables.  group_players lists the challenger
    indices (input order) of each (profile, value-set) group.
    """

    int_cols: dict
    frac_cols: dict
    group_players: dict
    num_int: int

    def group_count(self, key) -> int:
        return len(self.group_players[key])


def _grouping(inst: CbcctInstance):
    """Realized value sets, profiles, and (profile, value set) groups."""
    value_sets: list[BribeValueSet] = []
    groups: dict[tuple[ProbabilityProfile, BribeValueSet], list[int]] = {}
    for idx, v in enumerate(inst.bribe_vectors):
        if not v.monotone:
            raise ModelError(f"challenger {idx + 1} has a non-monotone bribe vector")
        vs = bribe_value_set(v)
        prof = probability_profile(v)
        if vs not in value_sets:
            value_sets.append(vs)
        groups.setdefault((prof, vs), []).append(idx)
    value_sets.sort()
    return value_sets, dict(sorted(groups.items()))


def profile_probability(
    profile: ProbabilityProfile, value: int, value_set: BribeValueSet
) -> Fraction:
    """p(P, v', V'): the probability bought with `value` in a (P, V') group.

    Monotone vectors align sorted bribe values with sorted probabilities.
    """
    return profile[value_set.index(value)]


def profile_value(
    prob: Fraction, profile: ProbabilityProfile, value_set: BribeValueSet
) -> int:
    """v(p, P, V'): the unique bribe value that buys `prob` in a (P, V') group."""
    return value_set[profile.index(prob)]


def _check_positive_probabilities(inst: CbcctInstance) -> None:
    for idx, v in enumerate(inst.bribe_vectors):
        if any(e.losing_probability == 0 for e in v.entries):
            raise ModelError(
                f"challenger {idx + 1} has a zero probability entry; "
                "log-domain models need positive probabilities"
            )


def build_bribe_value_milp(inst: CbcctInstance) -> tuple[MilpModel, VariableMap]:
    """FPT model parameterized by the number of distinct bribe values.

    Integer variables count bribes per (value, value set); per-group variables
    split them by probability profile.  The objective is the formal-log win
    probability.  Only realized (value set, profile) combinations generate
    variables.  Rows are ordered so that everything touching the per-group
    columns forms the tail block: budget row, then the linking rows, then the
    group-size rows.
    """
    _check_positive_probabilities(inst)
    value_sets, groups = _grouping(inst)
    n = inst.num_challengers

    variables: list[MilpVariable] = []
    int_cols: dict = {}
    for vs in value_sets:
        for value in vs:
            int_cols[(value, vs)] = len(variables)
            variables.append(
                MilpVariable(f"x[{value},{set(vs)}]", is_integer=True, upper=n)
            )
    frac_cols: dict = {}
    for (prof, vs), players in groups.items():
        for value in vs:
            frac_cols[(prof, value, vs)] = len(variables)
            variables.append(MilpVariable(f"y[{set(prof)},{value},{set(vs)}]"))
    total = len(variables)

    rows: list[MilpRow] = []
    budget_coeffs = [Fraction(0)] * total
    for (value, vs), col in int_cols.items():
        budget_coeffs[col] = Fraction(value)
    rows.append(MilpRow(tuple(budget_coeffs), "<=", Fraction(inst.budget)))
    for (value, vs), col in int_cols.items():
        coeffs = [Fraction(0)] * total
        coeffs[col] = Fraction(-1)
        for (prof2, vs2) in groups:
            if vs2 == vs:
                coeffs[frac_cols[(prof2, value, vs)]] = Fraction(1)
        rows.append(MilpRow(tuple(coeffs), "==", Fraction(0)))
    for (prof, vs), players in groups.items():
        coeffs = [Fraction(0)] * total
        for value in vs:
            coeffs[frac_cols[(prof, value, vs)]] = Fraction(1)
        rows.append(MilpRow(tuple(coeffs), "==", Fraction(len(players))))

    objective = [Fraction(0)] * total
    for (prof, value, vs), col in frac_cols.items():
        objective[col] = FormalLog(profile_probability(prof, value, vs))
    model = MilpModel(tuple(variables), tuple(rows), MilpObjective(tuple(objective), "max"))
    return model, VariableMap(int_cols, frac_cols, {k: v for k, v in groups.items()}, len(int_cols))


def build_prob_value_milp(inst: CbcctInstance) -> tuple[MilpModel, VariableMap]:
    """FPT model parameterized by the number of distinct probability values.

    Budget and threshold swap roles relative to `build_bribe_value_milp`: the
    objective minimizes the spent budget and one formal-log row demands that
    the win probability reach the threshold.  Same tail-block row ordering.
    """
    _check_positive_probabilities(inst)
    if inst.threshold == 0:
        raise ModelError("threshold 0 is trivially satisfiable; no model to build")
    value_sets, groups = _grouping(inst)
    n = inst.num_challengers

    profiles: list[ProbabilityProfile] = sorted({prof for prof, _ in groups})
    variables: list[MilpVariable] = []
    int_cols: dict = {}
    for prof in profiles:
        for prob in prof:
            int_cols[(prob, prof)] = len(variables)
            variables.append(
                MilpVariable(f"x[{prob},{set(prof)}]", is_integer=True, upper=n)
            )
    frac_cols: dict = {}
    for (prof, vs), players in groups.items():
        for prob in prof:
            frac_cols[(prob, prof, vs)] = len(variables)
            variables.append(MilpVariable(f"y[{prob},{set(prof)},{set(vs)}]"))
    total = len(variables)

    rows: list[MilpRow] = []
    log_coeffs: list = [Fraction(0)] * total
    for (prob, prof), col in int_cols.items():
        log_coeffs[col] = FormalLog(prob)
    rows.append(MilpRow(tuple(log_coeffs), ">=", FormalLog(inst.threshold)))
    for (prob, prof), col in int_cols.items():
        coeffs = [Fraction(0)] * total
        coeffs[col] = Fraction(-1)
        for (prof2, vs2) in groups:
            if prof2 == prof:
                coeffs[frac_cols[(prob, prof, vs2)]] = Fraction(1)
        rows.append(MilpRow(tuple(coeffs), "==", Fraction(0)))
    for (prof, vs), players in groups.items():
        coeffs = [Fraction(0)] * total
        for prob in prof:
            coeffs[frac_cols[(prob, prof, vs)]] = Fraction(1)
        rows.append(MilpRow(tuple(coeffs), "==", Fraction(len(players))))

    objective = [Fraction(0)] * total
    for (prob, prof, vs), col in frac_cols.items():
        objective[col] = Fraction(profile_value(prob, prof, vs))
    model = MilpModel(tuple(variables), tuple(rows), MilpObjective(tuple(objective), "min"))
    return model, VariableMap(int_cols, frac_cols, {k: v for k, v in groups.items()}, len(int_cols))


# -- witness extraction -----------------------------------------------------------


def _drop_zero_entries(inst: CbcctInstance) -> CbcctInstance | None:
    """Instance restricted to positive-probability entries; None if a vector empties."""
    vectors = []
    for v in inst.bribe_vectors:
        kept = tuple(e for e in v.entries if e.losing_probability > 0)
        if not kept:
            return None
        vectors.append(BribeVector(kept))
    return CbcctInstance(tuple(vectors), inst.budget, inst.threshold)


def _plan_from_group_counts(
    original: CbcctInstance,
    solved: CbcctInstance,
    vmap: VariableMap,
    bribes_per_group,
) -> BribePlan:
    """Assemble a plan from per-group bribe multisets.

    Within a group, ascending bribe values are assigned to players in input
    order (group members are interchangeable).  Entry indices are then looked
    up in the original vectors by bribe value, which is unique per vector.
    """
    choices = [0] * original.num_challengers
    for key, players in vmap.group_players.items():
        bribes = bribes_per_group[key]
        assert len(bribes) == len(players)
        for player, value in zip(players, sorted(bribes)):
            vec = original.bribe_vectors[player]
            solved_vec = solved.bribe_vectors[player]
            prob = next(
                e.losing_probability for e in solved_vec.entries if e.bribe == value
            )
            choices[player] = next(
                j
                for j, e in enumerate(vec.entries, start=1)
                if e.bribe == value and e.losing_probability == prob
            )
    return BribePlan(tuple(choices))


def solve_fpt_bribe_values(inst: CbcctInstance) -> SolveResult:
    """MILP route whose integer-variable count depends on distinct bribe values."""
    algorithm = "fpt-bribes"
    if inst.num_challengers == 0:
        return _result(inst, BribePlan(()), algorithm)
    if _min_cost(inst) > inst.budget:
        return SolveResult(None, None, False, algorithm)
    normalized = normalize_instance(inst)
    restricted = _drop_zero_entries(normalized)
    if restricted is None:
        # Some challenger only offers probability 0: every plan wins with 0.
        return _result(inst, _first_entries_plan(inst), algorithm)
    model, vmap = build_bribe_value_milp(restricted)
    solution = solve_milp(model)
    if solution.status == INFEASIBLE:
        # No all-positive plan fits the budget, so every feasible plan has a
        # zero-probability entry and the optimum is 0.
        return _result(inst, _first_entries_plan(inst), algorithm)
    if solution.status != OPTIMAL:
        raise SolverError(f"bribe-value MILP ended with status {solution.status}")
    integral = integralize_solution(model, solution)
    bribes_per_group = {
        key: [
            value
            for (prof, value, vs), col in vmap.frac_cols.items()
            if (prof, vs) == key
            for _ in range(int(integral.assignment[col]))
        ]
        for key in vmap.group_players
    }
    plan = _plan_from_group_counts(inst, restricted, vmap, bribes_per_group)
    return _result(inst, plan, algorithm)


def solve_fpt_prob_values(inst: CbcctInstance) -> SolveResult:
    """MILP route whose integer-variable count depends on distinct probabilities.

    Minimizes the budget needed to reach the threshold; the decision compares
    that minimum against the available budget.  On a yes, the witness is the
    extracted cheapest plan (its probability, which is at least the
    threshold, is reported); on a no, no probability is reported.
    """
    algorithm = "fpt-probs"
    if inst.num_challengers == 0:
        return _result(inst, BribePlan(()), algorithm)
    if _min_cost(inst) > inst.budget:
        return SolveResult(None, None, False, algorithm)
    if inst.threshold == 0:
        return _result(inst, _first_entries_plan(inst), algorithm)
    normalized = normalize_instance(inst)
    restricted = _drop_zero_entries(normalized)
    if restricted is None:
        return SolveResult(None, None, False, algorithm)
    model, vmap = build_prob_value_milp(restricted)
    solution = solve_milp(model)
    if solution.status == INFEASIBLE:
        return SolveResult(None, None, False, algorithm)
    if solution.status != OPTIMAL:
        raise SolverError(f"probability-value MILP ended with status {solution.status}")
    if solution.objective_value > inst.budget:
        return SolveResult(None, None, False, algorithm)
    integral = integralize_solution(model, solution)
    bribes_per_group = {
        key: [
            profile_value(prob, prof, vs)
            for (prob, prof, vs), col in vmap.frac_cols.items()
            if (prof, vs) == key
            for _ in range(int(integral.assignment[col]))
        ]
        for key in vmap.group_players
    }
    plan = _plan_from_group_counts(inst, restricted, vmap, bribes_per_group)
    return _result(inst, plan, algorithm)
