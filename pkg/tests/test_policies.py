"""Shipped policies and the exhaustive offline searches."""

import random

import pytest

from delayedhits import (
    ModelParams,
    belady_classical,
    brute_force_opt,
    fifo_policy,
    is_hit_sequence_feasible,
    lru_policy,
    make_policy,
    never_cache_policy,
    optimal_hit_sequences,
    replay,
    simulate,
    static_policy,
)
from delayedhits.policies import BeladyPolicy, SearchBudgetExceeded

from conftest import draw_instance, draw_policy


def test_lru_evicts_least_recently_requested():
    # 1 was just requested, so 2 goes when 3 arrives
    result = simulate(ModelParams(3, 2, 1), [1, 3], lru_policy())
    assert result.eviction_sequence == [0, 2]


def test_lru_tie_breaks_to_smaller_id():
    result = simulate(ModelParams(3, 2, 1), [3], lru_policy())
    assert result.eviction_sequence == [1]


def test_fifo_evicts_in_initial_order():
    result = simulate(ModelParams(4, 2, 1), [3, 4], fifo_policy())
    assert result.eviction_sequence == [1, 2]


def test_fifo_cycles_through_insertions():
    result = simulate(ModelParams(4, 2, 1), [3, 4, 1, 3], fifo_policy())
    # queue: (1,2) -> (2,3) -> (3,4) -> (4,1) -> (1,3); 3 misses again at t=4
    assert result.eviction_sequence == [1, 2, 3, 4]
    assert result.cache_history[-1] == frozenset({1, 3})


def test_never_cache_keeps_initial_cache():
    result = simulate(ModelParams(4, 2, 2), [3, 4, 3], never_cache_policy())
    assert set(result.cache_history) == {frozenset({1, 2})}


def test_static_policy_converges_then_freezes():
    params = ModelParams(3, 2, 2)
    result = simulate(params, [3, 0, 0, 3, 1], static_policy({1, 3}))
    # 3 returns at t=2's retrieval and replaces the only non-target item 2
    assert result.eviction_sequence[1] == 2
    assert result.cache_history[-1] == frozenset({1, 3})
    assert result.per_request_latency == [2, 0, 0, 0, 0]


def test_static_policy_validates_size():
    with pytest.raises(ValueError):
        simulate(ModelParams(3, 1, 1), [2], static_policy({1, 2}))


def test_belady_declines_item_never_used_again():
    # future holds 2 then 1; incoming 3 is never reused, so it is not cached
    result = simulate(ModelParams(3, 2, 1), [3, 2, 1], belady_classical([3, 2, 1]))
    assert result.eviction_sequence == [0, 0, 0]
    assert result.total_latency == 1


def test_belady_empty_future_evicts_smallest():
    result = simulate(ModelParams(3, 2, 1), [3], belady_classical([3]))
    assert result.eviction_sequence == [1]


def test_belady_is_optimal_at_delay_one():
    rng = random.Random(71)
    for _ in range(60):
        k = rng.randint(1, 3)
        n = k + rng.randint(1, 2)
        seq = [
            0 if rng.random() < 0.15 else rng.randint(1, n)
            for _ in range(rng.randint(1, 14))
        ]
        params = ModelParams(n, k, 1)
        mine = simulate(params, seq, belady_classical(seq)).total_latency
        assert mine == brute_force_opt(params, seq).min_latency


def test_make_policy_names():
    for name in ("lru", "fifo", "never"):
        assert make_policy(name).name == name
    assert make_policy("static", static_items=[1]).name == "static"
    assert make_policy("belady", sequence=[1]).name == "belady"
    with pytest.raises(ValueError):
        make_policy("nope")
    with pytest.raises(ValueError):
        make_policy("belady")
    with pytest.raises(ValueError):
        make_policy("static")


def test_opt_on_burst_is_forced():
    for delay in (1, 3, 5):
        params = ModelParams(3, 2, delay)
        opt = brute_force_opt(params, [3] * delay)
        assert opt.min_latency == delay * (delay + 1) // 2


def test_opt_on_all_hits_is_zero():
    opt = brute_force_opt(ModelParams(2, 2, 4), [1, 1, 1])
    assert opt.min_latency == 0
    assert opt.witness_hits == [1, 1, 1]


def test_opt_witness_replays_to_its_value():
    rng = random.Random(83)
    for _ in range(40):
        k, delay, n, seq = draw_instance(rng, max_length=12, max_cache=2, max_delay=4)
        params = ModelParams(n, k, delay)
        opt = brute_force_opt(params, seq)
        rerun = replay(params, seq, opt.witness_evictions)
        assert rerun.total_latency == opt.min_latency
        assert rerun.hit_sequence == opt.witness_hits


def test_no_policy_beats_opt():
    rng = random.Random(89)
    for _ in range(40):
        k, delay, n, seq = draw_instance(rng, max_length=12, max_cache=2, max_delay=4)
        params = ModelParams(n, k, delay)
        opt = brute_force_opt(params, seq).min_latency
        policy = draw_policy(rng, seq, k, n)
        assert simulate(params, seq, policy).total_latency >= opt


class _DemandBelady(BeladyPolicy):
    """Belady without bypass: always caches, evicting a resident item.

    This is the demand-paging optimum at delay 1, the baseline the
    classical k-competitiveness of LRU is stated against (a bypassing
    optimum can be stronger, making LRU only (k+1)-competitive).
    """

    def choose_eviction(self, t, item, cache):
        best_id, best_next = None, -1
        for j in sorted(cache):
            nxt = self._next_use(j, t)
            if nxt > best_next:
                best_id, best_next = j, nxt
        return best_id


def test_lru_within_k_times_demand_opt_at_delay_one():
    rng = random.Random(97)
    checked = 0
    while checked < 30:
        k = rng.randint(1, 3)
        n = k + rng.randint(1, 2)
        seq = [rng.randint(1, n) for _ in range(rng.randint(1, 14))]
        params = ModelParams(n, k, 1)
        demand = _DemandBelady(seq)
        demand_opt = simulate(params, seq, demand).total_latency
        if demand_opt == 0:
            continue
        # the bypassing optimum can only be cheaper
        assert brute_force_opt(params, seq).min_latency <= demand_opt
        assert simulate(params, seq, lru_policy()).total_latency <= k * demand_opt
        checked += 1


def test_all_ones_infeasible_when_cache_too_small():
    params = ModelParams(3, 2, 2)
    feasible, witness = is_hit_sequence_feasible(params, [1, 2, 3], [1, 1, 1])
    assert not feasible and witness is None


def test_simulated_hit_sequence_is_self_witnessing():
    rng = random.Random(101)
    for _ in range(30):
        k, delay, n, seq = draw_instance(rng, max_length=14, max_cache=2, max_delay=4)
        params = ModelParams(n, k, delay)
        run = simulate(params, seq, draw_policy(rng, seq, k, n))
        feasible, witness = is_hit_sequence_feasible(params, seq, run.hit_sequence)
        assert feasible
        assert replay(params, seq, witness).hit_sequence == run.hit_sequence


def test_optimal_hit_sequences_exhausts_ties():
    # both cold misses are unavoidable, so every schedule realizes (0, 0)
    params = ModelParams(3, 1, 1)
    total, optima = optimal_hit_sequences(params, [2, 3])
    assert total == 2
    assert optima == {(0, 0)}
    # caching 2 creates a strictly better, unique optimum when 2 returns
    total, optima = optimal_hit_sequences(params, [2, 2])
    assert total == 1
    assert optima == {(0, 1)}


def test_search_budget_is_enforced():
    params = ModelParams(6, 3, 4)
    seq = [4, 5, 6, 4, 5, 6, 4, 5, 6, 4, 5, 6]
    with pytest.raises(SearchBudgetExceeded):
        brute_force_opt(params, seq, node_budget=3)
    with pytest.raises(SearchBudgetExceeded):
        is_hit_sequence_feasible(params, seq, [0] * len(seq), node_budget=1)
