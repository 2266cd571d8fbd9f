"""Command-line front end: run traces, build reports, seeded property sweeps.

Every command prints one JSON report envelope (deterministic for a given
command line and seed): {"command", "version", "params", "results"}.
Exit codes: 0 ok, 1 property violation, 2 input error, 3 infeasible
eviction, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .adversary import build_adversarial_sequence
from .counterexample import counterexample_sequence, verify_nonantimonotonicity
from .latency import antimonotone_latency, delayed_hits_latency
from .model import (
    ANTIMONOTONE,
    STANDARD,
    InfeasibleEvictionError,
    ModelParams,
    VerificationError,
    simulate,
)
from .policies import (
    DEFAULT_SEARCH_BUDGET,
    POLICY_NAMES,
    RandomEvictionPolicy,
    SearchBudgetExceeded,
    brute_force_opt,
    make_policy,
)
from .reduction import verify_domination
from .traces import TraceError, infer_num_items, random_sequence, read_trace, write_trace

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4


def _ratio_json(fr: Fraction) -> dict:
    return {
        "numerator": fr.numerator,
        "denominator": fr.denominator,
        "decimal": f"{fr.numerator / fr.denominator:.6f}",
    }


def _parse_items(text) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _policy_for(args, sequence=None, cache_size=None):
    static_items = None
    if args.policy == "static":
        static_items = (
            _parse_items(args.static_items)
            if getattr(args, "static_items", None)
            else range(1, cache_size + 1)
        )
    return make_policy(args.policy, sequence=sequence, static_items=static_items)


def cmd_simulate(args):
    sequence = read_trace(args.trace)
    n = args.n if args.n is not None else infer_num_items(sequence)
    params = ModelParams(n, args.k, args.Z, args.model)
    bad = [item for item in sequence if item > n]
    if bad:
        raise TraceError(f"trace contains item {bad[0]} > declared n={n}")
    policy = _policy_for(args, sequence=sequence, cache_size=args.k)
    result = simulate(params, sequence, policy)
    report_params = _params_dict(n, args.k, args.Z, args.model, args.policy, None)
    results = {
        "trace_length": len(sequence),
        "total_latency": result.total_latency,
        "per_request_latency": result.per_request_latency,
        "hit_sequence": result.hit_sequence,
        "eviction_sequence": result.eviction_sequence,
        "miss_count": result.miss_count(),
    }
    return report_params, results, EXIT_OK


def cmd_adversary(args):
    params = ModelParams(args.n if args.n is not None else args.k + 1, args.k, args.Z)
    if args.policy == "belady":
        raise ValueError("the adversary targets online policies; belady is offline")
    policy = _policy_for(args, cache_size=args.k)
    report = build_adversarial_sequence(policy, params, cap=args.cap)
    if args.trace_out:
        write_trace(args.trace_out, report.sequence)
    results = {
        "trace": report.sequence,
        "trace_length": len(report.sequence),
        "segments": [
            {"kind": seg.kind, "item": seg.item} for seg in report.segments
        ],
        "policy_latency": report.policy_latency,
        "opt_latency": report.opt_latency,
        "opt_witness_item": report.opt_witness_item,
        "marked": sorted(report.marked),
        "bursty_count": report.bursty_count,
        "capped": report.capped,
        "ratio_lower_bound": _ratio_json(report.ratio_lower_bound),
        "oracle_opt": None,
    }
    code = EXIT_OK
    if args.oracle_check:
        try:
            results["oracle_opt"] = brute_force_opt(
                params, report.sequence, args.search_budget
            ).min_latency
        except SearchBudgetExceeded as exc:
            results["oracle_error"] = str(exc)
            code = EXIT_BUDGET
        else:
            if results["oracle_opt"] != report.opt_latency:
                raise VerificationError(
                    f"exhaustive optimum {results['oracle_opt']} != "
                    f"witnessed optimum {report.opt_latency}"
                )
    report_params = _params_dict(
        params.num_items, args.k, args.Z, STANDARD, args.policy, None
    )
    return report_params, results, code


def cmd_counterexample(args):
    cspec = counterexample_sequence(args.Z, args.k)
    if args.trace_out:
        write_trace(args.trace_out, cspec.sequence)
    code = EXIT_OK
    try:
        report = verify_nonantimonotonicity(
            cspec, check_optimal=args.oracle_check, node_budget=args.search_budget
        )
    except SearchBudgetExceeded:
        report = verify_nonantimonotonicity(
            cspec, check_optimal=False, node_budget=args.search_budget
        )
        code = EXIT_BUDGET
    results = {
        "sequence": list(cspec.sequence),
        "baseline_bits": list(cspec.baseline_bits),
        "extra_hit_bits": list(cspec.extra_hit_bits),
        "burst_len": cspec.burst_len,
        "baseline_latency": report.baseline_latency,
        "extra_hit_latency": report.extra_hit_latency,
        "gap": report.gap,
        "predicted_gap": cspec.predicted_gap,
        "baseline_witness": report.baseline_witness,
        "extra_hit_witness": report.extra_hit_witness,
        "fetch_on_hit_baseline": report.fetch_on_hit_baseline,
        "fetch_on_hit_extra": report.fetch_on_hit_extra,
        "opt_latency": report.opt_latency,
        "opt_unique": report.opt_unique,
    }
    report_params = _params_dict(
        cspec.cache_size + 2, args.k, args.Z, STANDARD, None, None
    )
    return report_params, results, code


def cmd_reduce(args):
    sequence = read_trace(args.trace)
    n = args.n if args.n is not None else infer_num_items(sequence)
    inner_params = ModelParams(n, args.k, args.Z, ANTIMONOTONE)
    policy = _policy_for(args, sequence=sequence, cache_size=args.k)
    try:
        report = verify_domination(sequence, policy, inner_params)
    except VerificationError as exc:
        results = {"dominates": False, "violation": str(exc)}
        return (
            _params_dict(n, args.k, args.Z, ANTIMONOTONE, args.policy, None),
            results,
            EXIT_VIOLATION,
        )
    results = {
        "dominates": True,
        "inner_total": report.inner_total,
        "outer_total": report.outer_total,
        "inner_per_request": report.inner_per_request,
        "outer_per_request": report.outer_per_request,
        "outer_cache_size": args.k + args.Z,
    }
    return (
        _params_dict(n, args.k, args.Z, ANTIMONOTONE, args.policy, None),
        results,
        EXIT_OK,
    )


def _draw_params(rng):
    k = rng.randint(1, 4)
    delay = rng.randint(1, 8)
    n = k + rng.randint(1, 4)
    return k, delay, n


def _draw_policy(rng, sequence, k, n, case_seed):
    name = rng.choice(["lru", "fifo", "never", "belady", "static", "random"])
    if name == "belady":
        return make_policy("belady", sequence=sequence)
    if name == "static":
        size = rng.randint(1, k)
        items = rng.sample(range(1, n + 1), min(size, n))
        return make_policy("static", static_items=items)
    if name == "random":
        return RandomEvictionPolicy(case_seed)
    return make_policy(name)


def _check_latency(rng, cases, idle_prob):
    failures = 0
    first = None
    for case in range(cases):
        k, delay, n = _draw_params(rng)
        sequence = random_sequence(rng, n, rng.randint(1, 50), idle_prob)
        policy = _draw_policy(rng, sequence, k, n, case_seed=rng.randrange(2**30))
        for mode, closed_form in (
            (STANDARD, delayed_hits_latency),
            (ANTIMONOTONE, antimonotone_latency),
        ):
            params = ModelParams(n, k, delay, mode)
            run = simulate(params, sequence, policy)
            total, per = closed_form(sequence, delay, run.hit_sequence)
            if total != run.total_latency or per != run.per_request_latency:
                failures += 1
                if first is None:
                    first = {
                        "case": case,
                        "mode": mode,
                        "sequence": sequence,
                        "params": {"n": n, "k": k, "Z": delay},
                        "policy": policy.name,
                        "simulated": run.total_latency,
                        "closed_form": total,
                    }
                break
    return failures, first


def _check_antimono(rng, cases, idle_prob):
    failures = 0
    first = None
    for case in range(cases):
        n = rng.randint(1, 6)
        delay = rng.randint(1, 8)
        sequence = random_sequence(rng, n, rng.randint(1, 50), idle_prob)
        bits = [rng.randint(0, 1) for _ in sequence]
        base, _ = antimonotone_latency(sequence, delay, bits)
        witness = None
        for pos, bit in enumerate(bits):
            if bit == 1:
                continue
            flipped = list(bits)
            flipped[pos] = 1
            value, _ = antimonotone_latency(sequence, delay, flipped)
            if value > base:
                witness = {"flip_pos": pos + 1, "base": base, "flipped": value}
                break
        if witness is None:
            upper = [b | (rng.random() < 0.5) for b in bits]
            value, _ = antimonotone_latency(sequence, delay, upper)
            if value > base:
                witness = {"pair": True, "base": base, "upper": value}
        if witness is not None:
            failures += 1
            if first is None:
                first = {
                    "case": case,
                    "sequence": sequence,
                    "bits": bits,
                    "params": {"n": n, "Z": delay},
                    **witness,
                }
    return failures, first


def _check_reduction(rng, cases, idle_prob):
    failures = 0
    first = None
    for case in range(cases):
        k = rng.randint(1, 3)
        delay = rng.randint(1, 6)
        n = rng.randint(2, 8)
        sequence = random_sequence(rng, n, rng.randint(1, 50), idle_prob)
        inner = make_policy(rng.choice(["lru", "fifo"]))
        try:
            verify_domination(sequence, inner, ModelParams(n, k, delay))
        except VerificationError as exc:
            failures += 1
            if first is None:
                first = {
                    "case": case,
                    "sequence": sequence,
                    "params": {"n": n, "k": k, "Z": delay},
                    "policy": inner.name,
                    "violation": str(exc),
                }
    return failures, first


_SUITES = {
    "latency": _check_latency,
    "antimono": _check_antimono,
    "reduction": _check_reduction,
}


def cmd_check(args):
    rng = random.Random(args.seed)
    failures, first = _SUITES[args.suite](rng, args.cases, args.idle_prob)
    results = {
        "suite": args.suite,
        "cases": args.cases,
        "passed": args.cases - failures,
        "failures": failures,
        "first_failure": first,
    }
    code = EXIT_OK if failures == 0 else EXIT_VIOLATION
    return _params_dict(None, None, None, None, None, args.seed), results, code


def _params_dict(n, k, delay, mode, policy, seed):
    return {"n": n, "k": k, "Z": delay, "mode": mode, "policy": policy, "seed": seed}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delayedhits",
        description="Deterministic delayed-hits cache simulator and analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trace=False, policy=True):
        if trace:
            p.add_argument("trace", help="trace file: one item per line, 0 = idle")
        p.add_argument("-n", type=int, default=None, help="item universe size")
        p.add_argument("-k", type=int, default=2, help="cache capacity")
        p.add_argument("-Z", type=int, default=4, help="backing-store fetch delay")
        if policy:
            p.add_argument("--policy", default="lru", choices=POLICY_NAMES)
            p.add_argument(
                "--static-items",
                default=None,
                help="comma-separated target set for --policy static (default 1..k)",
            )
        p.add_argument("--out", default=None, help="write the JSON report here")

    p_sim = sub.add_parser("simulate", help="run a trace under a policy")
    common(p_sim, trace=True)
    p_sim.add_argument("--model", default=STANDARD, choices=(STANDARD, ANTIMONOTONE))
    p_sim.set_defaults(handler=cmd_simulate)

    p_adv = sub.add_parser("adversary", help="build the adaptive lower-bound trace")
    common(p_adv)
    p_adv.add_argument("--cap", type=int, default=None, help="max bursty segments")
    p_adv.add_argument("--oracle-check", action="store_true")
    p_adv.add_argument("--search-budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p_adv.add_argument("--trace-out", default=None, help="also write the built trace here")
    p_adv.set_defaults(handler=cmd_adversary)

    p_cex = sub.add_parser(
        "counterexample", help="build and verify the extra-hit-hurts trace"
    )
    common(p_cex, policy=False)
    p_cex.add_argument("--oracle-check", action="store_true")
    p_cex.add_argument("--search-budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p_cex.add_argument("--trace-out", default=None, help="also write the trace here")
    p_cex.set_defaults(handler=cmd_counterexample)

    p_red = sub.add_parser("reduce", help="check the k+Z reduction on a trace")
    common(p_red, trace=True)
    p_red.set_defaults(handler=cmd_reduce)

    p_chk = sub.add_parser("check", help="seeded randomized property sweeps")
    p_chk.add_argument("--suite", default="latency", choices=sorted(_SUITES))
    p_chk.add_argument("--cases", type=int, default=1000)
    p_chk.add_argument("--seed", type=int, default=0)
    p_chk.add_argument("--idle-prob", type=float, default=0.25)
    p_chk.add_argument("--out", default=None)
    p_chk.set_defaults(handler=cmd_check)

    return parser


def _emit(envelope, out_path):
    text = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params, results, code = args.handler(args)
    except (TraceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleEvictionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    envelope = {
        "command": args.command,
        "version": __version__,
        "params": params,
        "results": results,
    }
    _emit(envelope, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
