"""Closed-form latency of a trace as a function of its hit bits.

Once you know which requests were full hits, the total latency of a run
is determined without re-simulating: a missed request at time t is served
by the earliest fetch still in flight for its item, and fetches exist
exactly at earlier misses (standard model) or at earlier requests of any
kind (fetch-on-hit variant). Both functions below return the total and
the per-request latency vector; they are the analytic counterparts of the
event-driven simulator and are kept deliberately independent of it.

Hit bits at idle slots carry no information; they are forced to 1 before
evaluation so the functions are total over all bit vectors.
"""

from __future__ import annotations


def normalize_hit_bits(sequence, bits) -> list[int]:
    """Validate the bit vector and pin idle-slot bits to 1."""
    if len(bits) != len(sequence):
        raise ValueError(
            f"hit sequence length {len(bits)} != trace length {len(sequence)}"
        )
    out = []
    for item, bit in zip(sequence, bits):
        if bit not in (0, 1):
            raise ValueError(f"hit bits must be 0 or 1, got {bit!r}")
        out.append(1 if item == 0 else bit)
    return out


def delayed_hits_latency(sequence, delay, bits) -> tuple[int, list[int]]:
    """Latency of the standard model under hit bits ``bits``.

    A miss at time t pays ``delay - (t - p)`` where p is the earliest
    *miss* of the same item within the last ``delay`` timesteps (p = t
    when there is none, i.e. a full miss).
    """
    b = normalize_hit_bits(sequence, bits)
    per = [0] * len(sequence)
    for t, item in enumerate(sequence, start=1):
        if item == 0 or b[t - 1] == 1:
            continue
        p = t
        for s in range(max(1, t - delay + 1), t):
            if sequence[s - 1] == item and b[s - 1] == 0:
                p = s
                break
        per[t - 1] = delay - (t - p)
    return sum(per), per


def antimonotone_latency(sequence, delay, bits) -> tuple[int, list[int]]:
    """Latency of the fetch-on-hit variant under hit bits ``bits``.

    Identical to :func:`delayed_hits_latency` except the serving window
    minimum ranges over *all* earlier same-item requests, hits included,
    because every request dispatches a fetch.
    """
    b = normalize_hit_bits(sequence, bits)
    per = [0] * len(sequence)
    positions = {}
    for t, item in enumerate(sequence, start=1):
        if item != 0:
            positions.setdefault(item, []).append(t)
    cursor = dict.fromkeys(positions, 0)
    for t, item in enumerate(sequence, start=1):
        if item == 0:
            continue
        occ = positions[item]
        i = cursor[item]
        low = t - delay + 1
        while occ[i] < low:
            i += 1
        cursor[item] = i
        if b[t - 1] == 0:
            per[t - 1] = delay - (t - occ[i])
    return sum(per), per


def dominates(bits, other) -> bool:
    """True when ``bits <= other`` pointwise (the hit-bit partial order)."""
    if len(bits) != len(other):
        raise ValueError(
            f"cannot compare hit sequences of lengths {len(bits)} and {len(other)}"
        )
    return all(x <= y for x, y in zip(bits, other))
