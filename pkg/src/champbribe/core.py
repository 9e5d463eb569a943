"""Domain types for challenge-the-champ bribery.

A tournament instance consists of one bribe vector per challenger, a budget,
and a win-probability threshold for the champ.  Each bribe vector lists
(price, losing probability) pairs with strictly increasing prices; a vector is
*monotone* when the losing probabilities are strictly increasing as well.
`normalize_bribe_vector` turns any vector into an equivalent monotone one by
deleting entries that cost more but buy no higher losing probability.

The champ itself carries no data: its win probability under a plan is simply
the product of the chosen losing probabilities of the challengers, since it
must beat every one of them.  Plans index entries 1-based, matching the
vector-entry numbering used throughout.

All types are immutable after construction and every operation is a pure
function, so shared instances are safe to use concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import InstanceError, PlanError
from .rational import check_probability, format_rational, parse_rational


@dataclass(frozen=True)
class BribeEntry:
    """One purchasable outcome: pay `bribe`, the player loses with `losing_probability`."""

    bribe: int
    losing_probability: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.bribe, int) or isinstance(self.bribe, bool) or self.bribe < 0:
            raise InstanceError(f"bribe must be a natural number, got {self.bribe!r}")
        object.__setattr__(self, "losing_probability", Fraction(self.losing_probability))
        check_probability(self.losing_probability, "losing probability")


@dataclass(frozen=True)
class BribeVector:
    """A challenger's menu of bribes, ordered by strictly increasing price."""

    entries: tuple[BribeEntry, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InstanceError("bribe vector must be nonempty")
        for a, b in zip(entries, entries[1:]):
            if a.bribe >= b.bribe:
                raise InstanceError(
                    f"bribes must be strictly increasing, got {a.bribe} before {b.bribe}"
                )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def canonical_first_zero(self) -> bool:
        """True when the first entry has price 0 (the no-bribe baseline)."""
        return self.entries[0].bribe == 0

    @property
    def monotone(self) -> bool:
        """True when losing probabilities are strictly increasing with price."""
        return all(
            a.losing_probability < b.losing_probability
            for a, b in zip(self.entries, self.entries[1:])
        )

    def bribe_values(self) -> tuple[int, ...]:
        return tuple(e.bribe for e in self.entries)

    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(e.losing_probability for e in self.entries)


def vector(pairs: Iterable[tuple[int, Fraction | int | str]]) -> BribeVector:
    """Convenience constructor from (bribe, probability) pairs."""
    return BribeVector(
        tuple(BribeEntry(b, p if isinstance(p, Fraction) else parse_rational(p)) for b, p in pairs)
    )


@dataclass(frozen=True)
class CbcctInstance:
    """Challenge-the-champ bribery instance: challengers, budget, threshold."""

    bribe_vectors: tuple[BribeVector, ...]
    budget: int
    threshold: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "bribe_vectors", tuple(self.bribe_vectors))
        if not isinstance(self.budget, int) or isinstance(self.budget, bool) or self.budget < 0:
            raise InstanceError(f"budget must be a natural number, got {self.budget!r}")
        object.__setattr__(self, "threshold", Fraction(self.threshold))
        check_probability(self.threshold, "threshold")

    @property
    def num_challengers(self) -> int:
        return len(self.bribe_vectors)


@dataclass(frozen=True)
class BribePlan:
    """One chosen entry index per challenger, 1-based."""

    choices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "choices", tuple(self.choices))


class PlanEvaluation(NamedTuple):
    cost: int
    win_probability: Fraction


def evaluate_plan(inst: CbcctInstance, plan: BribePlan) -> PlanEvaluation:
    """Total cost and champ win probability of a plan (empty product is 1)."""
    if len(plan.choices) != inst.num_challengers:
        raise PlanError(
            f"plan has {len(plan.choices)} choices for {inst.num_challengers} challengers"
        )
    cost = 0
    prob = Fraction(1)
    for i, (v, j) in enumerate(zip(inst.bribe_vectors, plan.choices)):
        if not 1 <= j <= len(v):
            raise PlanError(f"choice {j} out of range 1..{len(v)} for challenger {i + 1}")
        entry = v.entries[j - 1]
        cost += entry.bribe
        prob *= entry.losing_probability
    return PlanEvaluation(cost, prob)


def normalize_bribe_vector(v: BribeVector) -> BribeVector:
    """Equivalent monotone vector.

    Repeatedly deletes the entry after position j whenever its probability
    does not strictly exceed the one at j: that later entry costs more and
    buys no better losing probability, so for every budget the best
    purchasable probability is unchanged.  Idempotent.
    """
    kept: list[BribeEntry] = []
    for entry in v.entries:
        if kept and kept[-1].losing_probability >= entry.losing_probability:
            continue
        kept.append(entry)
    if len(kept) == len(v.entries):
        return v
    return BribeVector(tuple(kept))


def normalize_instance(inst: CbcctInstance) -> CbcctInstance:
    """Apply `normalize_bribe_vector` to every challenger."""
    vectors = tuple(normalize_bribe_vector(v) for v in inst.bribe_vectors)
    if vectors == inst.bribe_vectors:
        return inst
    return CbcctInstance(vectors, inst.budget, inst.threshold)


def best_purchasable(v: BribeVector, budget: int) -> Fraction | None:
    """Max losing probability buyable from a single entry costing <= budget.

    Enumeration oracle used to verify normalization; None when no entry is
    affordable.
    """
    affordable = [e.losing_probability for e in v.entries if e.bribe <= budget]
    return max(affordable) if affordable else None


# -- JSON schema -------------------------------------------------------------
#
# {"players": [{"entries": [{"bribe": nat, "p": "num/den"}, ...]}, ...],
#  "budget": nat, "threshold": "num/den"}


def instance_to_dict(inst: CbcctInstance) -> dict:
    return {
        "players": [
            {
                "entries": [
                    {"bribe": e.bribe, "p": format_rational(e.losing_probability)}
                    for e in v.entries
                ]
            }
            for v in inst.bribe_vectors
        ],
        "budget": inst.budget,
        "threshold": format_rational(inst.threshold),
    }


def instance_from_dict(data: dict) -> CbcctInstance:
    try:
        players = data["players"]
        budget = data["budget"]
        threshold = data["threshold"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing instance field: {exc}") from exc
    vectors = []
    for p in players:
        try:
            raw_entries = p["entries"]
        except (KeyError, TypeError) as exc:
            raise InstanceError("player record must contain 'entries'") from exc
        entries = tuple(
            BribeEntry(e["bribe"], parse_rational(e["p"])) for e in raw_entries
        )
        vectors.append(BribeVector(entries))
    if not isinstance(budget, int):
        raise InstanceError(f"budget must be an integer, got {budget!r}")
    return CbcctInstance(tuple(vectors), budget, parse_rational(threshold))
