"""Command line interface.

Exit codes: 0 success/found, 2 usage or parameter error, 3 not found or
reduction failure, 4 enumeration guard exceeded.

Every run writes a manifest (``--manifest``, default ``<out>.manifest.json``,
or one JSON line on stderr when there is no output file) recording argv,
parameters, version, duration and SHA-256 digests of every output with
timing fields stripped.  ``replay`` re-runs a manifest into a scratch
directory and compares digests.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import (CapacityError, ParameterError, dumps, instance_from_json,
                   instance_to_json, parse_domain, sis_from_json, sis_to_json)
from .gen import Seed, gen_ksum, gen_sis, uniform_below_array
from .reductions import ReductionConfig, reduce_ksum_to_plane, reduce_sis_to_ksum
from .solvers import BkwConfig, bkw_oracle, solve_bkw, solve_bruteforce, solve_mitm
from .stats import experiments as E
from .stats.params import theorem51_params

EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_CAPACITY = 0, 2, 3, 4

# options whose values are files written by the run
OUTPUT_OPTIONS = ("out", "trace", "summary")
TIMING_SUFFIX = "_seconds"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip()]


def _read_json(path: str):
    if path == "-":
        return json.loads(sys.stdin.read())
    with open(path) as fh:
        return json.load(fh)


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _csv_text(rows: list, fields=None) -> str:
    buf = io.StringIO()
    fields = fields or (list(rows[0]) if rows else [])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _emit_rows(args, rows: list, fields=None, summary=None) -> None:
    if args.format == "json":
        _write_text(args.out, dumps(rows))
    else:
        _write_text(args.out, _csv_text(rows, fields))
    if summary is not None:
        # without a file target the summary only appears when asked for
        path = args.summary
        if path is None and args.out not in (None, "-"):
            path = str(Path(args.out).with_suffix(".summary.json"))
            args.summary = path
        if path is not None:
            _write_text(path, dumps(summary))


# subcommands ---------------------------------------------------------------

def cmd_generate(args) -> int:
    domain = parse_domain(args.domain)
    inst = gen_ksum(domain, args.m, args.k, Seed(args.seed, args.stream))
    _write_text(args.out, dumps(instance_to_json(inst)))
    return EXIT_OK


def cmd_generate_sis(args) -> int:
    inst = gen_sis(args.q, args.r, args.m_prime, args.beta, Seed(args.seed, args.stream))
    _write_text(args.out, dumps(sis_to_json(inst)))
    return EXIT_OK


def _oracle(name: str, density=Fraction(1)):
    if name == "brute":
        return solve_bruteforce
    if name == "mitm":
        return solve_mitm
    return lambda inst: bkw_oracle(inst, density)


def cmd_solve(args) -> int:
    inst = instance_from_json(_read_json(args.input))
    if args.algo == "bkw" and args.bkw_q is not None:
        ell = args.bkw_ell if args.bkw_ell is not None else inst.k.bit_length() - 1
        cfg = BkwConfig(args.bkw_q, ell, args.density)
        if inst.k != cfg.k or getattr(inst.domain, "Q", None) != cfg.modulus:
            raise ParameterError(f"instance is not a {cfg.k}-SUM over Z_{cfg.modulus}")
        sol = solve_bkw(inst.elements, cfg)
    else:
        sol = _oracle(args.algo, args.density)(inst)
    if sol is None:
        _write_text(args.out, "null\n")
        return EXIT_NOT_FOUND
    _write_text(args.out, json.dumps(list(sol.indices)) + "\n")
    return EXIT_OK


def cmd_reduce_sis(args) -> int:
    cfg = ReductionConfig(args.q, args.r, args.t, args.k, args.m, p_floor=args.p_floor,
                          attempt_cap=args.attempt_cap, cap_to_schedule=args.cap_to_schedule)
    sis = sis_from_json(_read_json(args.input))
    x, trace = reduce_sis_to_ksum(sis, _oracle(args.oracle), cfg, Seed(args.seed, args.stream))
    if args.trace:
        Path(args.trace).write_text(dumps(trace.to_json()))
    if x is None:
        return EXIT_NOT_FOUND
    _write_text(args.out, dumps({"x": [str(v) for v in x.x], "l1": str(x.l1)}))
    return EXIT_OK


def cmd_reduce_plane(args) -> int:
    inst = instance_from_json(_read_json(args.input))
    sol = reduce_ksum_to_plane(inst)
    if sol is None:
        _write_text(args.out, "null\n")
        return EXIT_NOT_FOUND
    _write_text(args.out, json.dumps(list(sol.indices)) + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    seed = Seed(args.seed, args.stream)
    kind = args.kind
    if kind == "totality":
        cells = [tuple(int(x) for x in c.split(":")) for c in args.cell] if args.cell else E.TOTALITY_GRID
        reports = E.totality_grid(cells, args.trials, seed, args.jobs)
        rows = [r.row() for r in reports]
    elif kind == "lhl":
        M, ts, Qs = args.M or 16, args.t or [2, 3], args.Q or [5, 7, 11]
        rows = [E.lhl_validation(M, t, Q, args.draws, seed.child(n), args.jobs)
                for n, (t, Q) in enumerate((t, Q) for t in ts for Q in Qs)]
    elif kind == "hitting":
        M, t, Q = args.M or 14, (args.t or [2])[0], (args.Q or [5])[0]
        eps = float(args.epsilon) if args.epsilon is not None else 0.5
        rows = [E.hitting_validation(M, t, Q, args.draws, eps, seed.child(0), args.jobs)]
        agreement = E.hitting_agreement(args.points, M, t, Q, args.mc_trials, seed.child(1))
        rows[0]["agreement_pass"] = sum(r["verdict"] == "pass" for r in agreement)
        rows[0]["agreement_points"] = len(agreement)
        if rows[0]["agreement_pass"] != len(agreement):
            rows[0]["verdict"] = "fail"
    elif kind == "params":
        eps = args.epsilon if args.epsilon is not None else Fraction(1, 2)
        p = theorem51_params(args.n, args.k, eps, args.epsilon_prime, args.c)
        row = p.as_dict()
        row["verdict"] = "pass" if p.meets_modulus_target() else "fail"
        rows = [row]
    else:  # pragma: no cover - argparse restricts choices
        raise ParameterError(kind)
    passed = sum(r.get("verdict") == "pass" for r in rows)
    summary = {"experiment": kind, "cells": len(rows), "passed": passed,
               "all_pass": passed == len(rows)}
    _emit_rows(args, rows, summary=summary)
    return EXIT_OK if summary["all_pass"] else EXIT_NOT_FOUND


BENCH_FIELDS = ["algo", "params", "trials", "successes", "success_rate",
                "median_seconds", "min_seconds"]


def _bench_cells(args):
    if args.suite == "bkw-scaling":
        qs = _int_list(args.qs) if args.qs is not None else [3, 5, 7]
        ells = _int_list(args.ells) if args.ells is not None else [2, 3]
        for q in qs:
            for ell in ells:
                yield "bkw", {"q": q, "ell": ell}
    elif args.suite == "mitm-scaling":
        ks = _int_list(args.ks) if args.ks is not None else [2, 3, 4]
        ms = _int_list(args.ms) if args.ms is not None else [20, 40]
        for k in ks:
            for m in ms:
                yield "mitm", {"Q": args.modulus, "m": m, "k": k}
    else:
        raise ParameterError(f"unknown suite {args.suite!r}")


def _bench_run(algo, params, density, seed):
    """One timed trial: returns (solved, seconds)."""
    if algo == "bkw":
        cfg = BkwConfig(params["q"], params["ell"], density)
        a = uniform_below_array(seed.rng(), cfg.modulus, cfg.input_size())
        t0 = time.perf_counter()
        sol = solve_bkw(a, cfg)
        return sol is not None, time.perf_counter() - t0
    inst = gen_ksum(parse_domain(f"modular:{params['Q']}"), params["m"], params["k"], seed)
    t0 = time.perf_counter()
    sol = solve_mitm(inst)
    return sol is not None, time.perf_counter() - t0


def cmd_bench(args) -> int:
    if args.trials < 5:
        raise ParameterError("bench needs at least 5 timed trials")
    seed = Seed(args.seed, args.stream)
    rows = []
    for n, (algo, params) in enumerate(_bench_cells(args)):
        cell = seed.child(n)
        _bench_run(algo, params, args.density, cell.child(2**32))  # warm-up, discarded
        runs = [_bench_run(algo, params, args.density, cell.child(i)) for i in range(args.trials)]
        times = sorted(t for _, t in runs)
        succ = sum(ok for ok, _ in runs)
        if algo == "bkw":
            params = dict(params, m=BkwConfig(params["q"], params["ell"], args.density).input_size())
        rows.append({
            "algo": algo, "params": ";".join(f"{k}={v}" for k, v in params.items()),
            "trials": args.trials, "successes": succ, "success_rate": f"{succ / args.trials:.4f}",
            "median_seconds": f"{times[len(times) // 2]:.6f}", "min_seconds": f"{times[0]:.6f}",
        })
    _emit_rows(args, rows, BENCH_FIELDS)
    return EXIT_OK


def cmd_replay(args) -> int:
    manifest = json.loads(Path(args.manifest).read_text())
    argv = list(manifest["argv"])
    with tempfile.TemporaryDirectory() as tmp:
        remapped = {}
        for opt, rec in manifest["outputs"].items():
            new = os.path.join(tmp, f"{opt}{Path(rec['path']).suffix}")
            flag = "--" + opt
            if flag in argv:
                argv[argv.index(flag) + 1] = new
            else:  # implicit path derived from --out
                argv += [flag, new]
            remapped[opt] = new
        argv += ["--manifest", os.path.join(tmp, "replay.manifest.json")]
        buf = io.StringIO()
        stdin = manifest.get("stdin")
        old_stdin = sys.stdin
        if stdin is not None:
            sys.stdin = io.StringIO(stdin)
        try:
            with redirect_stdout(buf):
                code = run(argv)
        finally:
            sys.stdin = old_stdin
        report = {"exit_code_match": code == manifest["exit_code"],
                  "stdout_match": _digest_text(buf.getvalue()) == manifest["stdout_sha256"],
                  "outputs": {}}
        for opt, rec in manifest["outputs"].items():
            got = _digest_file(remapped[opt]) if os.path.exists(remapped[opt]) else None
            report["outputs"][opt] = got == rec["sha256"]
    ok = report["exit_code_match"] and report["stdout_match"] and all(report["outputs"].values())
    report["identical"] = ok
    sys.stdout.write(dumps(report))
    return EXIT_OK if ok else EXIT_NOT_FOUND


# manifest ------------------------------------------------------------------

def _strip_timing(text: str) -> str:
    """Remove timing columns (CSV) or keys (JSON) named ``*_seconds``."""
    try:
        obj = json.loads(text)
    except ValueError:
        obj = None
    if obj is not None:
        def clean(o):
            if isinstance(o, dict):
                return {k: clean(v) for k, v in o.items() if not k.endswith(TIMING_SUFFIX)}
            if isinstance(o, list):
                return [clean(v) for v in o]
            return o
        return json.dumps(clean(obj), sort_keys=True)
    lines = text.splitlines()
    if not lines or TIMING_SUFFIX not in lines[0]:
        return text
    rows = list(csv.reader(lines))
    keep = [i for i, h in enumerate(rows[0]) if not h.endswith(TIMING_SUFFIX)]
    return "\n".join(",".join(r[i] for i in keep) for r in rows)


def _digest_text(text: str) -> str:
    return hashlib.sha256(_strip_timing(text).encode()).hexdigest()


def _digest_file(path: str) -> str:
    return _digest_text(Path(path).read_text())


def _write_manifest(args, argv, code, duration, stdout_text, stdin_text):
    outputs = {}
    for opt in OUTPUT_OPTIONS:
        path = getattr(args, opt, None)
        if path and path != "-" and os.path.exists(path):
            outputs[opt] = {"path": path, "sha256": _digest_file(path)}
    params = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in vars(args).items()
              if k not in ("func", "manifest")}
    manifest = {
        "subcommand": args.command, "argv": argv, "parameters": params,
        "seed": {"master": getattr(args, "seed", None), "stream": getattr(args, "stream", None)},
        "tool_version": __version__, "duration_seconds": round(duration, 6),
        "exit_code": code, "stdout_sha256": _digest_text(stdout_text), "outputs": outputs,
    }
    if stdin_text is not None:
        manifest["stdin"] = stdin_text
    target = args.manifest
    if target is None and getattr(args, "out", None) not in (None, "-"):
        target = args.out + ".manifest.json"
    if target is None:
        sys.stderr.write(json.dumps(manifest, sort_keys=True) + "\n")
    else:
        Path(target).write_text(dumps(manifest))


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--stream", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=["json", "csv"], default="csv")
    common.add_argument("--out", default=None)
    common.add_argument("--manifest", default=None)

    p = argparse.ArgumentParser(prog="avgksum", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="random k-SUM instance")
    g.add_argument("--domain", required=True, help="modular:Q or interval:u")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.set_defaults(func=cmd_generate)

    g = sub.add_parser("generate-sis", parents=[common], help="random SIS instance")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--m-prime", type=int, required=True)
    g.add_argument("--beta", type=int, required=True)
    g.set_defaults(func=cmd_generate_sis)

    s = sub.add_parser("solve", parents=[common], help="run a k-SUM solver")
    s.add_argument("--algo", choices=["brute", "mitm", "bkw"], required=True)
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--bkw-q", type=int)
    s.add_argument("--bkw-ell", type=int)
    s.add_argument("--density", type=_fraction, default=Fraction(1))
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="run a reduction")
    rsub = r.add_subparsers(dest="reduction", required=True)
    rs = rsub.add_parser("sis-to-ksum", parents=[common])
    for name in ("q", "r", "t", "k", "m"):
        rs.add_argument(f"--{name}", type=int, required=True)
    rs.add_argument("--p-floor", type=_fraction, default=Fraction(1, 2))
    rs.add_argument("--attempt-cap", type=int)
    rs.add_argument("--cap-to-schedule", action="store_true")
    rs.add_argument("--oracle", choices=["brute", "mitm", "bkw"], default="brute")
    rs.add_argument("--in", dest="input", required=True)
    rs.add_argument("--trace")
    rs.set_defaults(func=cmd_reduce_sis)
    rp = rsub.add_parser("ksum-to-plane", parents=[common])
    rp.add_argument("--in", dest="input", required=True)
    rp.set_defaults(func=cmd_reduce_plane)

    e = sub.add_parser("experiment", parents=[common], help="validate a probability bound")
    e.add_argument("kind", choices=["totality", "lhl", "hitting", "params"])
    e.add_argument("--summary")
    e.add_argument("--trials", type=int, default=1000)
    e.add_argument("--cell", action="append", help="Q:m:k (totality; repeatable)")
    e.add_argument("--M", type=int, help="vector length (lhl: 16, hitting: 14)")
    e.add_argument("--t", type=_int_list, help="subset sizes, comma separated")
    e.add_argument("--Q", type=_int_list, help="moduli, comma separated")
    e.add_argument("--draws", type=int, default=200)
    e.add_argument("--points", type=int, default=20)
    e.add_argument("--mc-trials", type=int, default=10_000)
    e.add_argument("--n", type=int, default=16)
    e.add_argument("--k", type=int, default=4)
    e.add_argument("--epsilon", type=_fraction)
    e.add_argument("--epsilon-prime", type=_fraction, default=Fraction(2))
    e.add_argument("--c", type=_fraction, default=Fraction(1))
    e.set_defaults(func=cmd_experiment)

    b = sub.add_parser("bench", parents=[common], help="timing and success table")
    b.add_argument("--suite", required=True)
    b.add_argument("--qs")
    b.add_argument("--ells")
    b.add_argument("--ks")
    b.add_argument("--ms")
    b.add_argument("--modulus", type=int, default=10007)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--density", type=_fraction, default=Fraction(1))
    b.set_defaults(func=cmd_bench)

    rp = sub.add_parser("replay", help="re-run a manifest and compare outputs")
    rp.add_argument("manifest")
    rp.set_defaults(func=cmd_replay)
    return p


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "replay":
        return args.func(args)
    stdin_text = None
    if getattr(args, "input", None) == "-":
        stdin_text = sys.stdin.read()
        sys.stdin = io.StringIO(stdin_text)
    captured = io.StringIO()
    t0 = time.perf_counter()
    try:
        with redirect_stdout(captured):
            code = args.func(args)
    except ParameterError as exc:
        print(f"avgksum: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except CapacityError as exc:
        print(f"avgksum: capacity: {exc}", file=sys.stderr)
        code = EXIT_CAPACITY
    duration = time.perf_counter() - t0
    sys.stdout.write(captured.getvalue())
    _write_manifest(args, argv, code, duration, captured.getvalue(), stdin_text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
