"""Trace files: one nonnegative integer per line, 0 meaning an idle slot.

Blank lines and '#' comments are ignored. When no universe size is given
it is inferred as the largest item in the trace (minimum 1 so parameters
stay valid for all-idle traces).
"""

from __future__ import annotations


class TraceError(Exception):
    """The trace file cannot be read or fails validation."""


def parse_trace(text: str) -> list[int]:
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            value = int(line)
        except ValueError:
            raise TraceError(f"line {lineno}: {line!r} is not an integer") from None
        if value < 0:
            raise TraceError(f"line {lineno}: requests must be nonnegative")
        items.append(value)
    return items


def read_trace(path) -> list[int]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise TraceError(f"cannot read trace {path}: {exc}") from None
    return parse_trace(text)


def write_trace(path, sequence) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in sequence:
            fh.write(f"{item}\n")


def infer_num_items(sequence) -> int:
    return max([1, *sequence])


def random_sequence(rng, num_items: int, length: int, idle_prob: float = 0.25) -> list[int]:
    """Draw a trace: each slot idles with ``idle_prob``, else a uniform item."""
    return [
        0 if rng.random() < idle_prob else rng.randint(1, num_items)
        for _ in range(length)
    ]
