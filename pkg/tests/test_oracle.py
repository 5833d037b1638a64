import random

import pytest
from hypothesis import given, settings

from smtt.core import Instance, Job, PAPER_P1, edd_sequence, evaluate, total_tardiness
from smtt.generator import GenSpec, derive_seed, generate_instance
from smtt.oracle import brute_force, subset_dp
from strategies import instances

TINY3 = Instance("tiny3", (Job(1, 2, 1), Job(2, 3, 2), Job(3, 1, 3)))


@pytest.mark.parametrize("solver", [brute_force, subset_dp])
def test_three_job_optimum(solver):
    result = solver(TINY3)
    assert result.optimum == 5
    assert result.witness == [1, 3, 2]
    assert evaluate(TINY3, result.witness).total == 5


def test_explored_counts():
    assert brute_force(TINY3).explored == 6
    assert subset_dp(TINY3).explored == 8


@pytest.mark.parametrize("solver", [brute_force, subset_dp])
def test_single_job(solver):
    tardy = Instance("late1", (Job(1, 9, 4),))
    result = solver(tardy)
    assert result.optimum == 5
    assert result.witness == [1]
    early = Instance("early1", (Job(1, 3, 4),))
    assert solver(early).optimum == 0


def test_dp_on_reference_instance():
    result = subset_dp(PAPER_P1)
    assert result.optimum == 23
    assert evaluate(PAPER_P1, result.witness).total == 23


def test_all_loose_due_dates_optimum_zero():
    inst = Instance("loose", (Job(1, 5, 50), Job(2, 5, 50), Job(3, 5, 50)))
    assert subset_dp(inst).optimum == 0
    assert brute_force(inst).optimum == 0


def test_brute_force_refuses_large_n():
    inst = generate_instance(GenSpec(n=12, seed=0))
    with pytest.raises(ValueError, match="subset_dp"):
        brute_force(inst)


def test_subset_dp_refuses_large_n():
    inst = generate_instance(GenSpec(n=21, seed=0))
    with pytest.raises(ValueError, match="n <= 20"):
        subset_dp(inst)


def test_tie_breaking_rules():
    # with all sequences optimal (total 0 everywhere), enumeration returns
    # the lexicographically smallest sequence, while the DP picks the
    # smallest job id for each *last* slot
    inst = Instance("ties", tuple(Job(i, 1, 100) for i in range(1, 5)))
    assert brute_force(inst).witness == [1, 2, 3, 4]
    assert subset_dp(inst).witness == [4, 3, 2, 1]


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6, max_p=12, max_d=40))
def test_oracles_agree_and_witnesses_check_out(inst):
    bf = brute_force(inst)
    dp = subset_dp(inst)
    assert bf.optimum == dp.optimum
    assert evaluate(inst, bf.witness).total == bf.optimum
    assert evaluate(inst, dp.witness).total == dp.optimum


def test_cross_agreement_on_generated_instances():
    for k in range(6):
        inst = generate_instance(GenSpec(n=7, seed=derive_seed(31, k)))
        assert brute_force(inst).optimum == subset_dp(inst).optimum


def test_optimum_is_a_lower_bound_for_random_sequences():
    inst = generate_instance(GenSpec(seed=17))
    optimum = subset_dp(inst).optimum
    rng = random.Random(5)
    order = list(range(1, inst.n + 1))
    for _ in range(1000):
        rng.shuffle(order)
        assert total_tardiness(inst, order) >= optimum


def test_zero_optimum_iff_edd_zero():
    seen_zero = seen_positive = 0
    for k in range(30):
        inst = generate_instance(GenSpec(seed=derive_seed(53, k)))
        optimum = subset_dp(inst).optimum
        edd_total = total_tardiness(inst, edd_sequence(inst))
        if optimum == 0:
            assert edd_total == 0
            seen_zero += 1
        else:
            assert edd_total > 0
            seen_positive += 1
    # the sample should exercise both branches
    assert seen_zero and seen_positive
