"""The reduction chain and its equivalence verifiers."""

from fractions import Fraction

import pytest

from champbribe import (
    BribePlan,
    CbcctInstance,
    MpkInstance,
    PkpItem,
    ReductionError,
    SmallKSumInstance,
    cbcct_to_cup,
    cup_win_probability,
    evaluate_plan,
    ksum_to_pkp,
    mpk_to_cbcct,
    shift_ksum,
    solve_bruteforce,
    solve_cup_bruteforce,
    solve_mpk_bruteforce,
    solve_pkp_bruteforce,
    solve_small_ksum_bruteforce,
    verify_reduction,
)
from champbribe.core import vector
from champbribe.cup import bracket_distribution
from champbribe.reductions import chain_preconditions_met, cup_choices_from_plan


def F(*args):
    return Fraction(*args)


class TestShiftKsum:
    def test_worked_example(self):
        out = shift_ksum(SmallKSumInstance((-1, 1, 2), 2))
        assert out.numbers == (242, 244, 245)
        assert out.target == 486 and out.shifted

    def test_single_number(self):
        out = shift_ksum(SmallKSumInstance((0,), 1))
        assert out.numbers == (3,) and out.target == 3

    def test_decision_preserved(self):
        for numbers, k in [((-1, 1, 2), 2), ((1, 2, 4), 2), ((-2, -1, 3), 3)]:
            src = SmallKSumInstance(numbers, k)
            dst = shift_ksum(src)
            assert (
                solve_small_ksum_bruteforce(src).decision
                == solve_small_ksum_bruteforce(dst).decision
            )

    def test_rejects_already_shifted(self):
        with pytest.raises(ReductionError):
            shift_ksum(shift_ksum(SmallKSumInstance((0,), 1)))

    def test_rejects_nonzero_target(self):
        with pytest.raises(ReductionError):
            shift_ksum(SmallKSumInstance((0, 1), 1, target=1))


class TestKsumToPkp:
    def test_profit_formula(self):
        pkp = ksum_to_pkp(shift_ksum(SmallKSumInstance((-1, 1, 2), 2)))
        assert pkp.items[0].weight == 242
        assert pkp.items[0].profit == F(236196, 235954)  # T^2/(T^2 - 242), T = 486
        assert pkp.capacity == 486
        assert pkp.target == F(472392, 471421)  # (1 - 1/T + 1/(2T^2))^-1

    def test_requires_shifted(self):
        with pytest.raises(ReductionError):
            ksum_to_pkp(SmallKSumInstance((-1, 1, 2), 2))

    def test_at_most_k_items_fit(self):
        src = shift_ksum(SmallKSumInstance((-3, 0, 1, 2, -1), 2))
        pkp = ksum_to_pkp(src)
        weights = sorted(item.weight for item in pkp.items)
        assert sum(weights[: src.k + 1]) > pkp.capacity

    def test_decision_preserved_on_samples(self):
        for numbers, k in [((-1, 1, 2), 2), ((1, 2, 4), 2), ((0, 0), 2), ((-2, 1, 1), 3)]:
            src = SmallKSumInstance(numbers, k)
            shifted = shift_ksum(src)
            report = verify_reduction(
                shifted,
                ksum_to_pkp(shifted),
                solve_small_ksum_bruteforce,
                solve_pkp_bruteforce,
            )
            assert report.equivalent

    def test_preconditions_flag(self):
        assert not chain_preconditions_met(SmallKSumInstance((-1, 1, 2), 2))
        big = SmallKSumInstance(tuple([0] * 5), 4)
        assert chain_preconditions_met(big)


class TestMpkToCbcct:
    def _example(self, target="1/3"):
        items = (
            PkpItem(1, F(1, 2)),
            PkpItem(3, F(3, 4)),
            PkpItem(0, F(1, 3)),
            PkpItem(2, F(2, 3)),
        )
        return MpkInstance(items, ((0, 1), (2, 3)), 3, F(target))

    def test_worked_example(self):
        out = mpk_to_cbcct(self._example())
        assert out.bribe_vectors[0] == vector([(1, "1/2"), (3, "3/4")])
        assert out.bribe_vectors[1] == vector([(0, "1/3"), (2, "2/3")])
        assert out.budget == 3 and out.threshold == F(1, 3)
        report = verify_reduction(
            self._example(), out, solve_mpk_bruteforce, solve_bruteforce
        )
        assert report.equivalent and report.source_decision

    def test_no_instance_preserved(self):
        report = verify_reduction(
            self._example("1/2"),
            mpk_to_cbcct(self._example("1/2")),
            solve_mpk_bruteforce,
            solve_bruteforce,
        )
        assert report.equivalent and not report.source_decision

    def test_single_free_item(self):
        inst = MpkInstance((PkpItem(0, F(1)),), ((0,),), 1, F(1))
        out = mpk_to_cbcct(inst)
        assert solve_bruteforce(out).decision

    def test_duplicate_weight_keeps_max_profit(self):
        inst = MpkInstance(
            (PkpItem(1, F(1, 2)), PkpItem(1, F(3, 4))), ((0, 1),), 2, F(1, 2)
        )
        out = mpk_to_cbcct(inst)
        assert out.bribe_vectors[0] == vector([(1, "3/4")])

    def test_exact_duplicate_rejected(self):
        inst = MpkInstance(
            (PkpItem(1, F(1, 2)), PkpItem(1, F(1, 2))), ((0, 1),), 2, F(1, 2)
        )
        with pytest.raises(ReductionError):
            mpk_to_cbcct(inst)

    def test_profit_above_one_rejected(self):
        inst = MpkInstance((PkpItem(1, F(3, 2)),), ((0,),), 2, F(1, 2))
        with pytest.raises(ReductionError):
            mpk_to_cbcct(inst)

    def test_target_above_one_rejected(self):
        inst = MpkInstance((PkpItem(1, F(1, 2)),), ((0,),), 2, F(3, 2))
        with pytest.raises(ReductionError):
            mpk_to_cbcct(inst)

    def test_infeasible_maps_to_infeasible(self):
        inst = MpkInstance((PkpItem(5, F(1, 2)),), ((0,),), 3, F(1, 4))
        out = mpk_to_cbcct(inst)
        report = verify_reduction(inst, out, solve_mpk_bruteforce, solve_bruteforce)
        assert report.equivalent and not report.source_decision


def two_challenger_instance(budget=1, threshold="1/3"):
    return CbcctInstance(
        (vector([(0, "1/2"), (1, "1")]), vector([(0, "1/3"), (2, "2/3")])),
        budget,
        F(threshold),
    )


class TestCbcctToCup:
    def test_two_challengers_structure(self):
        cup = cbcct_to_cup(two_challenger_instance())
        assert cup.num_players == 4
        assert cup.seeding[0] == 0  # favorite at position 1
        assert cup.seeding[1] == 1  # main player 1 at position 2
        assert cup.seeding[2] == 2  # main player 2 at position 3
        assert cup.budget == 1 and cup.threshold == F(1, 3)
        assert (1, 0) in cup.pairwise and (2, 0) in cup.pairwise
        multi = [p for p, v in cup.pairwise.items() if len(v) > 1]
        assert set(multi) == {(1, 0), (2, 0)}
        for pair, vec in cup.pairwise.items():
            if pair not in ((1, 0), (2, 0)):
                assert len(vec) == 1 and vec.entries[0].bribe == 0

    def test_three_challengers_positions(self):
        inst = CbcctInstance(
            (vector([(0, "1/2")]),) * 3,
            0,
            F(1, 8),
        )
        cup = cbcct_to_cup(inst)
        assert cup.num_players == 8
        assert cup.seeding[4] == 3  # main player 3 at position 5
        dummies = [p for p in cup.seeding if p > 3]
        assert len(dummies) == 4

    def test_single_challenger(self):
        cup = cbcct_to_cup(CbcctInstance((vector([(0, "1/2")]),), 0, F(1, 2)))
        assert cup.num_players == 2
        assert solve_cup_bruteforce(cup).best_probability == F(1, 2)

    def test_rejects_empty(self):
        with pytest.raises(ReductionError):
            cbcct_to_cup(CbcctInstance((), 0, F(1)))

    def test_main_player_meets_favorite_each_round(self):
        # With the favorite forced to win (opponents' losing probability 1),
        # the favorite must reach every round, meeting each main player with
        # probability 1; so its win probability is exactly 1.
        inst = CbcctInstance((vector([(0, "1")]),) * 3, 0, F(1))
        cup = cbcct_to_cup(inst)
        assert cup_win_probability(cup) == 1

    def test_round_opponent_subtree_won_by_main_player(self):
        # The favorite's round-i opponent comes from leaf positions
        # [2^(i-1), 2^i); main player i must win that subtree outright.
        from champbribe import CupInstance

        inst = CbcctInstance((vector([(0, "1/2"), (2, "3/4")]),) * 3, 4, F(1, 8))
        cup = cbcct_to_cup(inst)
        for i in (2, 3):
            lo, hi = 1 << (i - 1), 1 << i
            leaves = cup.seeding[lo:hi]
            renumber = {old: new for new, old in enumerate(leaves)}
            sub = CupInstance(
                hi - lo,
                renumber[i],
                tuple(range(hi - lo)),
                {
                    (renumber[a], renumber[b]): vec
                    for (a, b), vec in cup.pairwise.items()
                    if a in renumber and b in renumber
                },
                0,
                F(1),
            )
            dist = bracket_distribution(sub)
            assert dist[renumber[i]] == 1

    def test_decision_preserved(self):
        for budget, threshold in [(1, "1/3"), (2, "1/2"), (0, "1")]:
            inst = two_challenger_instance(budget, threshold)
            report = verify_reduction(
                inst, cbcct_to_cup(inst), solve_bruteforce, solve_cup_bruteforce
            )
            assert report.equivalent

    def test_per_plan_probability_equality(self):
        from itertools import product

        inst = two_challenger_instance()
        cup = cbcct_to_cup(inst)
        for choices in product(*(range(1, len(v) + 1) for v in inst.bribe_vectors)):
            plan = BribePlan(choices)
            assert (
                cup_win_probability(cup, cup_choices_from_plan(plan))
                == evaluate_plan(inst, plan).win_probability
            )

    def test_bracket_normalizes_on_image(self):
        cup = cbcct_to_cup(two_challenger_instance())
        assert sum(bracket_distribution(cup).values()) == 1


class TestVerifyReduction:
    def test_negative_control(self):
        # Corrupt the target threshold: equivalence must fail.
        inst = two_challenger_instance(1, "1/3")
        broken = CbcctInstance(inst.bribe_vectors, inst.budget, F(99, 100))
        report = verify_reduction(inst, broken, solve_bruteforce, solve_bruteforce)
        assert not report.equivalent

    def test_tuple_oracle_protocol(self):
        src = SmallKSumInstance((-1, 1, 2), 2)
        report = verify_reduction(
            src, src, solve_small_ksum_bruteforce, solve_small_ksum_bruteforce
        )
        assert report.equivalent and report.source_decision
