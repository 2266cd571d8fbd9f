"""Discrete-time cache simulation with delayed hits.

The model runs in integer timesteps. Each timestep has a request phase
(item ``i_t`` arrives; 0 marks an idle slot) and a retrieval phase (the
backing-store fetch dispatched ``delay - 1`` steps earlier returns and
serves every queued request for its item). A request for a resident item
is a hit and costs 0. A miss enqueues the request and dispatches a fetch;
if an earlier same-item fetch is still in flight the request is served by
it sooner (a delayed hit, cost in 1..delay-1), otherwise it waits the
full ``delay``.

Two variants are supported. The standard model dispatches a fetch only on
a miss. The antimonotone variant dispatches on every nonzero request,
hits included, which is the modification that makes its latency function
antimonotone in the hit bits.

All arithmetic is exact integers; given a deterministic eviction policy
the whole simulation is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

STANDARD = "standard"
ANTIMONOTONE = "antimonotone"
MODES = (STANDARD, ANTIMONOTONE)


class InfeasibleEvictionError(Exception):
    """An eviction was attempted that the cache state does not allow."""

    def __init__(self, timestep, item, reason="item not resident"):
        self.timestep = timestep
        self.item = item
        super().__init__(
            f"infeasible eviction of item {item} at t={timestep}: {reason}"
        )


class VerificationError(Exception):
    """A checked property failed; the message names the violated check."""


@dataclass(frozen=True)
class ModelParams:
    """Instance parameters: item universe, cache capacity, fetch delay, variant."""

    num_items: int
    cache_size: int
    delay: int
    mode: str = STANDARD

    def __post_init__(self):
        if self.num_items < 1:
            raise ValueError("num_items must be >= 1")
        if self.cache_size < 1:
            raise ValueError("cache_size must be >= 1")
        if self.delay < 1:
            raise ValueError("delay must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def initial_cache(self) -> frozenset[int]:
        # by convention the cache starts holding items 1..cache_size
        return frozenset(range(1, self.cache_size + 1))


@dataclass
class StepRecord:
    """What happened during one timestep."""

    time: int
    item: int
    hit: bool | None            # None for idle slots
    returned: int | None        # item that came back, if any
    served: list[tuple[int, int]]  # (request time, charged latency) pairs
    evicted: int                # 0 when nothing was evicted


@dataclass
class SimulationResult:
    """Everything observable from one complete run."""

    hit_sequence: list[int]
    per_request_latency: list[int]
    eviction_sequence: list[int]
    cache_history: list[frozenset[int]]
    total_latency: int

    def final_cache(self) -> frozenset[int]:
        return self.cache_history[-1]

    def miss_count(self) -> int:
        return self.hit_sequence.count(0)


def validate_sequence(params: ModelParams, sequence) -> None:
    for pos, item in enumerate(sequence, start=1):
        if not 0 <= item <= params.num_items:
            raise ValueError(
                f"request at t={pos} is {item}, outside 0..{params.num_items}"
            )


class Simulation:
    """The delayed-hits state machine, advanced one phase at a time.

    ``step`` runs a full timestep and is what :func:`simulate` uses. The
    split ``request_phase`` / ``retrieval_serve`` / ``apply_eviction``
    entry points exist for callers that need to pause at eviction
    decisions (the exhaustive searches) or to interleave two simulations
    (the model reduction).
    """

    def __init__(self, params: ModelParams):
        self.params = params
        self.t = 0
        self.cache = set(params.initial_cache())
        self.pending = []      # (item, request time), served in retrieval phases
        self.fetches = {}      # return time -> item; one dispatch per timestep
        self.hit_bits = []
        self.per_request_latency = []  # None until the request is served
        self.eviction_sequence = []
        self.cache_history = [frozenset(self.cache)]
        self.charged = 0       # latency charged so far
        self.last_served = []  # (request time, latency) pairs of the last retrieval

    # -- request phase -------------------------------------------------

    def request_phase(self, item: int) -> bool | None:
        """Advance the clock and take in the next request (0 = idle)."""
        if not 0 <= item <= self.params.num_items:
            raise ValueError(f"item {item} outside 0..{self.params.num_items}")
        self.t += 1
        self.eviction_sequence.append(0)
        if item == 0:
            # idle slots are recorded as hits and never cost anything
            self.hit_bits.append(1)
            self.per_request_latency.append(0)
            return None
        hit = item in self.cache
        if hit:
            self.hit_bits.append(1)
            self.per_request_latency.append(0)
            if self.params.mode == ANTIMONOTONE:
                self._dispatch(item)
        else:
            self.hit_bits.append(0)
            self.per_request_latency.append(None)
            self.pending.append((item, self.t))
            self._dispatch(item)
        return hit

    def _dispatch(self, item: int) -> None:
        return_time = self.t + self.params.delay - 1
        # one request per timestep, so the slot is always free
        self.fetches[return_time] = item

    # -- retrieval phase -----------------------------------------------

    def retrieval_serve(self) -> int | None:
        """Return the fetch due now (if any) and serve its queued requests."""
        returned = self.fetches.pop(self.t, None)
        if returned is None:
            self.last_served = []
            return None
        still = []
        served = []
        for item, t0 in self.pending:
            if item == returned:
                latency = self.t - t0 + 1
                self.per_request_latency[t0 - 1] = latency
                self.charged += latency
                served.append((t0, latency))
            else:
                still.append((item, t0))
        self.pending = still
        self.last_served = served
        return returned

    def needs_decision(self, returned) -> bool:
        return returned is not None and returned not in self.cache

    def apply_eviction(self, returned: int, eviction: int) -> None:
        """Cache ``returned`` in place of ``eviction`` (0 declines)."""
        if eviction == 0:
            return
        if returned in self.cache:
            raise InfeasibleEvictionError(
                self.t, eviction, "no insertion opportunity: returned item resident"
            )
        if eviction not in self.cache:
            raise InfeasibleEvictionError(self.t, eviction)
        self.cache.remove(eviction)
        self.cache.add(returned)
        self.eviction_sequence[self.t - 1] = eviction
        assert len(self.cache) == self.params.cache_size

    # -- drivers ---------------------------------------------------------

    def step(self, item: int, policy=None) -> StepRecord:
        """Run one full timestep, consulting ``policy`` at a decision point."""
        hit = self.request_phase(item)
        if policy is not None:
            policy.observe(self.t, item, hit)
        returned = self.retrieval_serve()
        evicted = 0
        if self.needs_decision(returned) and policy is not None:
            choice = policy.choose_eviction(self.t, returned, frozenset(self.cache))
            self.apply_eviction(returned, choice)
            evicted = choice
        self.cache_history.append(frozenset(self.cache))
        return StepRecord(self.t, item, hit, returned, self.last_served, evicted)

    def drain_step(self) -> None:
        """Retrieval-only timestep past the end of the trace; no decisions."""
        self.t += 1
        self.retrieval_serve()

    def drain(self) -> None:
        while self.fetches:
            self.drain_step()

    def in_flight(self) -> bool:
        return bool(self.fetches)

    # -- search support --------------------------------------------------

    def committed_latency(self) -> int:
        """Charged latency plus the already-determined cost of queued requests.

        A queued request's serving fetch is fixed the moment it misses (the
        earliest same-item fetch then in flight), so this is exact, not a
        bound, and makes a sharp branch-and-bound prune.
        """
        total = self.charged
        for item, t0 in self.pending:
            earliest = min(rt for rt, it in self.fetches.items() if it == item)
            total += earliest - t0 + 1
        return total

    def clone(self) -> "Simulation":
        twin = object.__new__(Simulation)
        twin.params = self.params
        twin.t = self.t
        twin.cache = set(self.cache)
        twin.pending = list(self.pending)
        twin.fetches = dict(self.fetches)
        twin.hit_bits = list(self.hit_bits)
        twin.per_request_latency = list(self.per_request_latency)
        twin.eviction_sequence = list(self.eviction_sequence)
        twin.cache_history = list(self.cache_history)
        twin.charged = self.charged
        twin.last_served = list(self.last_served)
        return twin

    def result(self) -> SimulationResult:
        assert not self.fetches, "run not drained"
        assert all(lat is not None for lat in self.per_request_latency)
        return SimulationResult(
            hit_sequence=list(self.hit_bits),
            per_request_latency=list(self.per_request_latency),
            eviction_sequence=list(self.eviction_sequence),
            cache_history=list(self.cache_history),
            total_latency=sum(self.per_request_latency),
        )


def simulate(params: ModelParams, sequence, policy) -> SimulationResult:
    """Run ``policy`` over the whole trace and drain trailing fetches.

    The policy is reset first, observes every request phase (idle slots
    included), and is consulted whenever a fetch returns an item that is
    not resident. Retrieval phases after the end of the trace still serve
    queued requests, so every incurred latency is charged, but they offer
    no caching decision: the eviction sequence has exactly one entry per
    trace position.
    """
    validate_sequence(params, sequence)
    policy.reset(params)
    sim = Simulation(params)
    for item in sequence:
        sim.step(item, policy)
    sim.drain()
    return sim.result()


class _ReplayPolicy:
    """Feeds a fixed eviction sequence back into the simulator."""

    def __init__(self, evictions):
        self.evictions = evictions

    def reset(self, params):
        pass

    def observe(self, t, item, hit):
        pass

    def choose_eviction(self, t, item, cache):
        return self.evictions[t - 1]


def replay(params: ModelParams, sequence, evictions) -> SimulationResult:
    """Re-run a trace under a fixed eviction sequence, checking feasibility.

    Raises :class:`InfeasibleEvictionError` if an eviction names an item
    that is not resident at its retrieval phase, or falls on a timestep
    with no insertion opportunity.
    """
    if len(evictions) != len(sequence):
        raise ValueError(
            f"eviction sequence length {len(evictions)} != trace length {len(sequence)}"
        )
    result = simulate(params, sequence, _ReplayPolicy(list(evictions)))
    for pos, wanted in enumerate(evictions, start=1):
        if wanted != 0 and result.eviction_sequence[pos - 1] != wanted:
            raise InfeasibleEvictionError(
                pos, wanted, "no insertion opportunity at this timestep"
            )
    return result
