"""Deterministic simulator and analysis toolkit for caching with delayed hits."""

__version__ = "0.1.0"

from .model import (
    ANTIMONOTONE,
    STANDARD,
    InfeasibleEvictionError,
    ModelParams,
    Simulation,
    SimulationResult,
    VerificationError,
    replay,
    simulate,
)
from .latency import antimonotone_latency, delayed_hits_latency, dominates
from .policies import (
    OptResult,
    Policy,
    SearchBudgetExceeded,
    belady_classical,
    brute_force_opt,
    fifo_policy,
    is_hit_sequence_feasible,
    lru_policy,
    make_policy,
    never_cache_policy,
    optimal_hit_sequences,
    static_policy,
)
from .adversary import (
    AdversaryReport,
    build_adversarial_sequence,
    bursty_segment,
    pure_segment,
)
from .counterexample import (
    CounterexampleSpec,
    building_block,
    counterexample_sequence,
    verify_nonantimonotonicity,
)
from .reduction import (
    reduction_outer_params,
    verify_domination,
    wrap_reduction,
)
from .traces import random_sequence, read_trace, write_trace

__all__ = [
    "ANTIMONOTONE",
    "STANDARD",
    "AdversaryReport",
    "CounterexampleSpec",
    "InfeasibleEvictionError",
    "ModelParams",
    "OptResult",
    "Policy",
    "SearchBudgetExceeded",
    "Simulation",
    "SimulationResult",
    "VerificationError",
    "antimonotone_latency",
    "belady_classical",
    "brute_force_opt",
    "build_adversarial_sequence",
    "building_block",
    "bursty_segment",
    "counterexample_sequence",
    "delayed_hits_latency",
    "dominates",
    "fifo_policy",
    "is_hit_sequence_feasible",
    "lru_policy",
    "make_policy",
    "never_cache_policy",
    "optimal_hit_sequences",
    "pure_segment",
    "random_sequence",
    "read_trace",
    "reduction_outer_params",
    "replay",
    "simulate",
    "static_policy",
    "verify_domination",
    "verify_nonantimonotonicity",
    "wrap_reduction",
    "write_trace",
]
