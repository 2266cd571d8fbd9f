"""A trace where taking one extra cache hit makes total latency worse.

The gadget: an early lone request for an item, then a short burst of the
same item just under ``delay`` steps later. If the lone request misses,
its fetch is still in flight when the burst arrives and serves the whole
burst cheaply; if it hits, the burst pays full price. Wrapping the gadget
so that everything else is forced produces two realizable hit-bit vectors
that differ in a single position, where the one with the *extra hit* has
strictly larger total latency, by z*(delay-z) - delay with z = delay//2.
The miss variant is moreover the unique optimum. The fetch-on-hit model
is immune: there the extra hit never increases latency.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ModelParams, STANDARD, VerificationError
from .latency import delayed_hits_latency, antimonotone_latency, dominates
from .policies import (
    DEFAULT_SEARCH_BUDGET,
    brute_force_opt,
    is_hit_sequence_feasible,
    optimal_hit_sequences,
)


@dataclass(frozen=True)
class BuildingBlock:
    """Lone request plus trailing burst of one cold item, with closed forms."""

    sequence: tuple[int, ...]
    all_miss_latency: int
    first_hit_latency: int


def building_block(delay: int, cache_size: int = 1) -> BuildingBlock:
    """The gadget on its own: item k+1 at t=1 and a burst at the window edge.

    The burst of z = delay//2 requests starts at t = delay - z + 1, so a
    missed opening request serves it in flight. Closed forms:
    all-miss costs delay + z(z+1)/2, first-hit costs (delay+1)z - z(z+1)/2;
    the first is smaller exactly when delay >= 5.
    """
    if delay < 1:
        raise ValueError("delay must be >= 1")
    z = delay // 2
    item = cache_size + 1
    seq = [0] * delay
    seq[0] = item
    for t in range(delay - z + 1, delay + 1):
        seq[t - 1] = item
    all_miss = delay + z * (z + 1) // 2
    first_hit = (delay + 1) * z - z * (z + 1) // 2
    return BuildingBlock(tuple(seq), all_miss, first_hit)


@dataclass(frozen=True)
class CounterexampleSpec:
    """The full forced trace plus its two distinguished hit-bit vectors."""

    delay: int
    cache_size: int
    burst_len: int                # z = delay // 2
    sequence: tuple[int, ...]
    baseline_bits: tuple[int, ...]   # the optimal vector (misses the gadget)
    extra_hit_bits: tuple[int, ...]  # same but with the one extra hit
    predicted_gap: int               # z*(delay - z) - delay, positive for delay >= 5

    def params(self, mode: str = STANDARD) -> ModelParams:
        return ModelParams(self.cache_size + 2, self.cache_size, self.delay, mode)


def counterexample_sequence(delay: int, cache_size: int = 1) -> CounterexampleSpec:
    """Build the forced trace for any cache size.

    The k=1 core: hot = k+1 at t=1, decoy = k+2 at t=2, hot again at
    t=delay+1, a z-burst of hot ending at 2*delay, and a delay-long block
    of the decoy at the tail. The tail forces the optimum to cache the
    decoy when it returns (retrieval of t=delay+1), which evicts whatever
    the single useful slot held, so the only live choice is whether the
    hot request at t=delay+1 hits. For larger caches, a delay-long block
    for each initially resident item 2..k pins those slots; blocks are
    laid out on 2*delay strides so every active block has at least
    ``delay`` idle slots on each side.
    """
    if delay < 5:
        raise ValueError("the construction needs delay >= 5 to have a positive gap")
    if cache_size < 1:
        raise ValueError("cache_size must be >= 1")
    k, z = cache_size, delay // 2
    hot, decoy = k + 1, k + 2
    length = (2 * k + 2) * delay
    seq = [0] * length

    def put(t, item):
        seq[t - 1] = item

    put(1, hot)
    put(2, decoy)
    put(delay + 1, hot)
    for t in range(2 * delay - z + 1, 2 * delay + 1):
        put(t, hot)
    for j in range(k - 1):
        pinned = j + 2
        start = (3 + 2 * j) * delay + 1
        for t in range(start, start + delay):
            put(t, pinned)
    tail_start = (2 * k + 1) * delay + 1
    for t in range(tail_start, tail_start + delay):
        put(t, decoy)

    miss_times = {1, 2, delay + 1} | set(range(2 * delay - z + 1, 2 * delay + 1))
    baseline = tuple(0 if t in miss_times else 1 for t in range(1, length + 1))
    extra = list(baseline)
    extra[delay] = 1  # the lone flippable position, t = delay + 1
    return CounterexampleSpec(
        delay=delay,
        cache_size=k,
        burst_len=z,
        sequence=tuple(seq),
        baseline_bits=baseline,
        extra_hit_bits=tuple(extra),
        predicted_gap=z * (delay - z) - delay,
    )


@dataclass
class NonAntimonotonicityReport:
    """Verified evidence that the extra hit strictly increases latency."""

    spec: CounterexampleSpec
    baseline_latency: int
    extra_hit_latency: int
    gap: int
    baseline_witness: list[int]
    extra_hit_witness: list[int]
    fetch_on_hit_baseline: int
    fetch_on_hit_extra: int
    opt_latency: int | None
    opt_unique: bool | None


def verify_nonantimonotonicity(
    cspec: CounterexampleSpec,
    check_optimal: bool = True,
    node_budget: int = DEFAULT_SEARCH_BUDGET,
) -> NonAntimonotonicityReport:
    """Check every claim the construction makes; raise on the first failure.

    Verifies the one-bit domination structure, the exact latency gap,
    feasibility of both vectors (by independent search), immunity of the
    fetch-on-hit model, and optionally that the baseline vector is the
    unique optimum (by exhaustive search).
    """
    seq, delay = list(cspec.sequence), cspec.delay
    b, b_hi = list(cspec.baseline_bits), list(cspec.extra_hit_bits)

    if not dominates(b, b_hi):
        raise VerificationError("baseline bits do not precede the extra-hit bits")
    diffs = [t for t in range(1, len(seq) + 1) if b[t - 1] != b_hi[t - 1]]
    if diffs != [delay + 1]:
        raise VerificationError(f"bit vectors differ at {diffs}, expected [{delay + 1}]")

    low, _ = delayed_hits_latency(seq, delay, b)
    high, _ = delayed_hits_latency(seq, delay, b_hi)
    gap = high - low
    if gap != cspec.predicted_gap:
        raise VerificationError(
            f"latency gap is {gap}, closed form predicts {cspec.predicted_gap}"
        )
    if gap <= 0:
        raise VerificationError(f"gap {gap} is not positive")

    params = cspec.params()
    ok_low, witness_low = is_hit_sequence_feasible(params, seq, b, node_budget)
    if not ok_low:
        raise VerificationError("baseline hit sequence is not feasible")
    ok_high, witness_high = is_hit_sequence_feasible(params, seq, b_hi, node_budget)
    if not ok_high:
        raise VerificationError("extra-hit hit sequence is not feasible")

    anti_low, _ = antimonotone_latency(seq, delay, b)
    anti_high, _ = antimonotone_latency(seq, delay, b_hi)
    if anti_high > anti_low:
        raise VerificationError(
            "fetch-on-hit latency increased under the extra hit; it must not"
        )

    opt_latency = None
    opt_unique = None
    if check_optimal:
        opt = brute_force_opt(params, seq, node_budget)
        opt_latency = opt.min_latency
        if opt_latency != low:
            raise VerificationError(
                f"exhaustive optimum {opt_latency} != baseline latency {low}"
            )
        _, optima = optimal_hit_sequences(params, seq, node_budget)
        opt_unique = optima == {tuple(b)}
        if not opt_unique:
            raise VerificationError(
                f"baseline is not the unique optimal hit sequence; found {len(optima)}"
            )

    return NonAntimonotonicityReport(
        spec=cspec,
        baseline_latency=low,
        extra_hit_latency=high,
        gap=gap,
        baseline_witness=witness_low,
        extra_hit_witness=witness_high,
        fetch_on_hit_baseline=anti_low,
        fetch_on_hit_extra=anti_high,
        opt_latency=opt_latency,
        opt_unique=opt_unique,
    )
