"""Instance transformers linking small k-sum to cup-tournament bribery.

The chain is

    small k-sum --shift--> shifted k-sum --> product knapsack
    multicolored product knapsack --> challenge-the-champ bribery --> cup

Each transformer is a pure function from a source instance to a target
instance, paired here with `verify_reduction`, which runs brute-force oracles
on both sides and reports whether the decisions agree.  The equivalence
argument behind the k-sum chain assumes sizable instances (k >= 4, shifted
target >= 4); desk-scale instances below those sizes are still transformed
and checked empirically, and `chain_preconditions_met` tells a verifier which
regime an instance is in.

Profits stay exact rationals end to end; no integer rescaling is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import BribeEntry, BribePlan, BribeVector, CbcctInstance
from .cup import CupInstance, Pair
from .errors import ReductionError
from .knapsack import MpkInstance, PkpInstance, PkpItem, SmallKSumInstance


def shift_ksum(inst: SmallKSumInstance) -> SmallKSumInstance:
    """Shift every number by 2n^2k + n^(k^2) so a zero sum becomes sum T = k*shift.

    Input must be unshifted with target 0 and numbers within [-n^2k, n^2k];
    the shifted numbers then land in [n^2k + n^(k^2), 3n^2k + n^(k^2)].
    """
    if inst.shifted:
        raise ReductionError("instance is already shifted")
    if inst.target != 0:
        raise ReductionError("shift applies to zero-target instances only")
    n = len(inst.numbers)
    k = inst.k
    bound = n ** (2 * k)
    if any(abs(s) > bound for s in inst.numbers):
        raise ReductionError(f"numbers must lie in [-{bound}, {bound}]")
    shift = 2 * n ** (2 * k) + n ** (k * k)
    shifted = tuple(s + shift for s in inst.numbers)
    lo, hi = n ** (2 * k) + n ** (k * k), 3 * n ** (2 * k) + n ** (k * k)
    assert all(lo <= s <= hi for s in shifted)
    return SmallKSumInstance(shifted, k, target=k * shift, shifted=True)


def ksum_to_pkp(inst: SmallKSumInstance) -> PkpInstance:
    """Shifted k-sum to product knapsack: item i gets weight s'_i and profit
    (1 - s'_i/T^2)^(-1); capacity T and target (1 - 1/T + 1/(2T^2))^(-1)."""
    if not inst.shifted:
        raise ReductionError("ksum_to_pkp expects a shifted instance (apply shift_ksum)")
    t = inst.target
    if t <= 0:
        raise ReductionError(f"shifted target must be positive, got {t}")
    t_sq = t * t
    items = []
    for s in inst.numbers:
        if not 0 < s < t_sq:
            raise ReductionError(f"shifted number {s} outside (0, T^2)")
        items.append(PkpItem(s, Fraction(t_sq, t_sq - s)))
    target = 1 / (1 - Fraction(1, t) + Fraction(1, 2 * t_sq))
    return PkpInstance(tuple(items), t, target)


def chain_preconditions_met(inst: SmallKSumInstance) -> bool:
    """Whether the k-sum chain's size assumptions (k >= 4 and T >= 4) hold."""
    if inst.shifted:
        return inst.k >= 4 and inst.target >= 4
    n, k = len(inst.numbers), inst.k
    return k >= 4 and k * (2 * n ** (2 * k) + n ** (k * k)) >= 4


def mpk_to_cbcct(inst: MpkInstance) -> CbcctInstance:
    """One challenger per color class; items become (weight, profit) entries.

    Profits must lie in (0, 1] so they are valid losing probabilities, and
    the target must lie in [0, 1] to be a valid threshold.  Within a class,
    items sharing a weight collapse to the most profitable one (the others
    are dominated); an exact duplicate (weight, profit) pair is rejected.
    """
    if inst.target > 1:
        raise ReductionError(f"target {inst.target} exceeds 1; not a probability threshold")
    vectors = []
    for ci, cls in enumerate(inst.classes):
        by_weight: dict[int, list[Fraction]] = {}
        for idx in cls:
            item = inst.items[idx]
            if item.profit > 1:
                raise ReductionError(
                    f"item {idx} has profit {item.profit} outside (0, 1]"
                )
            by_weight.setdefault(item.weight, []).append(item.profit)
        entries = []
        for weight in sorted(by_weight):
            profits = by_weight[weight]
            if len(profits) != len(set(profits)):
                raise ReductionError(
                    f"class {ci} has items with equal weight {weight} and equal profit"
                )
            entries.append(BribeEntry(weight, max(profits)))
        vectors.append(BribeVector(tuple(entries)))
    return CbcctInstance(tuple(vectors), inst.capacity, inst.target)


def cbcct_to_cup(inst: CbcctInstance) -> CupInstance:
    """Embed an m-challenger instance into a 2**m-leaf cup.

    The favorite sits at leaf position 1 and main player i at position
    2**(i-1) + 1 (1-based), so with dummies losing to main players with
    probability 1 the favorite meets main player i exactly in round i.  The
    (main i vs favorite) vectors are the original bribe vectors; every other
    stored vector is a single zero-price entry.  Budget and threshold carry
    over unchanged.
    """
    m = inst.num_challengers
    if m < 1:
        raise ReductionError("cup construction needs at least one challenger")
    n = 1 << m
    half = Fraction(1, 2)
    # Player indices: 0 = favorite, 1..m = main players, rest dummies.
    seeding = [-1] * n
    seeding[0] = 0
    for i in range(1, m + 1):
        seeding[1 << (i - 1)] = i  # leaf position 2**(i-1) + 1, 1-based
    next_dummy = m + 1
    for pos in range(n):
        if seeding[pos] < 0:
            seeding[pos] = next_dummy
            next_dummy += 1

    def single(p: Fraction) -> BribeVector:
        return BribeVector((BribeEntry(0, p),))

    pairwise: dict[Pair, BribeVector] = {}
    for i in range(1, m + 1):
        pairwise[(i, 0)] = inst.bribe_vectors[i - 1]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            pairwise[(i, j)] = single(half)
    # Dummies interact only inside the subtree of "their" main player.
    for i in range(1, m + 1):
        lo, hi = 1 << (i - 1), 1 << i
        subtree = [seeding[pos] for pos in range(lo, hi)]
        dummies = [p for p in subtree if p > m]
        for d in dummies:
            pairwise[(d, i)] = single(Fraction(1))
        for a in range(len(dummies)):
            for b in range(a + 1, len(dummies)):
                pairwise[(dummies[a], dummies[b])] = single(half)
    return CupInstance(n, 0, tuple(seeding), pairwise, inst.budget, inst.threshold)


def cup_choices_from_plan(plan: BribePlan) -> dict[Pair, int]:
    """Translate a source plan into bribe choices on the cup image."""
    return {(i, 0): j for i, j in enumerate(plan.choices, start=1)}


@dataclass(frozen=True)
class ReductionReport:
    source_decision: bool
    target_decision: bool
    source_witness: object
    target_witness: object

    @property
    def equivalent(self) -> bool:
        return self.source_decision == self.target_decision


def verify_reduction(
    source,
    target,
    source_oracle: Callable,
    target_oracle: Callable,
) -> ReductionReport:
    """Run brute-force oracles on both sides of a reduction.

    Oracles return anything with a boolean `decision` attribute (all solver
    results here do) or a (decision, witness) pair.
    """

    def run(oracle, inst):
        out = oracle(inst)
        if hasattr(out, "decision"):
            return bool(out.decision), getattr(out, "witness", None)
        decision, witness = out
        return bool(decision), witness

    s_dec, s_wit = run(source_oracle, source)
    t_dec, t_wit = run(target_oracle, target)
    return ReductionReport(s_dec, t_dec, s_wit, t_wit)
