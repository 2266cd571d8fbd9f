"""Shared helpers for drawing random instances in the test sweeps."""

import random

from delayedhits import make_policy
from delayedhits.policies import RandomEvictionPolicy
from delayedhits.traces import random_sequence


def draw_instance(rng, max_length=50, max_cache=4, max_delay=8, idle_prob=0.25):
    """Random (cache_size, delay, num_items, sequence) tuple."""
    k = rng.randint(1, max_cache)
    delay = rng.randint(1, max_delay)
    n = k + rng.randint(1, 4)
    sequence = random_sequence(rng, n, rng.randint(1, max_length), idle_prob)
    return k, delay, n, sequence


def draw_policy(rng, sequence, cache_size, num_items):
    """Sample one policy from the full pool, including decliners."""
    name = rng.choice(["lru", "fifo", "never", "belady", "static", "random"])
    if name == "belady":
        return make_policy("belady", sequence=sequence)
    if name == "static":
        size = rng.randint(1, min(cache_size, num_items))
        return make_policy(
            "static", static_items=rng.sample(range(1, num_items + 1), size)
        )
    if name == "random":
        return RandomEvictionPolicy(rng.randrange(2**30))
    return make_policy(name)
