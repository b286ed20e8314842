"""Command-line interface: ``hrss solve|verify|reduce|gen|bench``.

Exit status is 2 for unreadable, malformed or invalid input, 3 when a solver's
precondition or size bound is violated, and 0 otherwise.

Bench CSV columns (one row per instance and algorithm)::

    seed,n1,n2,rho,m,n_acquainted,n_unacquainted,algo,status,size,
    socially_stable,optimum,ratio,runtime_s

``m`` is the number of acceptable pairs.  ``optimum`` is the oracle's
maximum socially stable size (empty when the brute-force limit is exceeded)
and ``ratio`` is optimum / size.  ``status`` is ``ok`` or ``n/a`` when the
algorithm's precondition does not hold for that instance.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence, TextIO

from hrss import io
from hrss.fpt import DEFAULT_MAX_ACQUAINTED, DEFAULT_MAX_UNACQUAINTED, BoundExceededError
from hrss.generate import GenSpec, GenSpecError, generate
from hrss.model import InvalidInstanceError, InvalidMatchingError, PreconditionError, check_matching
from hrss.oracle import LimitExceededError, max_socially_stable_bruteforce
from hrss.reductions import clone, gadget_ids, hrss_to_hrsn, indset_to_smiss, smti_to_smiss
from hrss.solve import ALGORITHMS, solve
from hrss.verification import blocking_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3

BENCH_COLUMNS = (
    "seed", "n1", "n2", "rho", "m", "n_acquainted", "n_unacquainted", "algo", "status",
    "size", "socially_stable", "optimum", "ratio", "runtime_s",
)
_SOLVER_ERRORS = (PreconditionError, BoundExceededError, LimitExceededError)


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return io.read_text(path)
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}") from None


def _emit(text: str, path: str | None, out: TextIO) -> None:
    if path:
        io.write_text(path, text)
    else:
        out.write(text)


def _verdict(flag: bool) -> str:
    return "true" if flag else "false"


def _trace_to(stream: TextIO):
    def trace(event: str, data: dict) -> None:
        fields = " ".join(f"{k}={v}" for k, v in data.items())
        print(f"trace {event} {fields}".rstrip(), file=stream)

    return trace


def cmd_solve(args, out: TextIO, err: TextIO) -> int:
    instance = io.parse(_read(args.file))
    report = solve(
        instance,
        args.algo,
        trace=_trace_to(err) if args.trace else None,
        brute_limit=args.limit,
        max_unacquainted=args.max_unacquainted,
        max_acquainted=args.max_acquainted,
    )
    out.write(io.format_matching(report.matching))
    out.write(f"size {report.size}\n")
    out.write(f"socially-stable {_verdict(report.socially_stable)}\n")
    out.write(f"algorithm {report.algorithm}\n")
    if report.deletions is not None:
        out.write(f"deletions {report.deletions}\n")
    if report.promotions is not None:
        out.write(f"promotions {report.promotions}\n")
    for key, value in report.extra.items():
        out.write(f"{key} {value}\n")
    # timing varies run to run, so it stays off stdout
    print(f"time {report.runtime:.6f}s", file=err)
    return EXIT_OK


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    instance = io.parse(_read(args.file))
    matching = io.parse_matching(_read(args.matching))
    check_matching(instance, matching)
    report = blocking_report(instance, matching)
    acq = instance.acquainted
    for r, h in report.classical:
        kind = "social" if (r, h) in acq else "classical"
        out.write(f"blocking {r} {h} {kind}\n")
    out.write(f"classical-blocking {len(report.classical)}\n")
    out.write(f"social-blocking {len(report.social)}\n")
    out.write(f"stable {_verdict(report.stable)}\n")
    out.write(f"socially-stable {_verdict(report.socially_stable)}\n")
    return EXIT_OK


def cmd_reduce(args, out: TextIO, err: TextIO) -> int:
    text = _read(args.file)
    if args.to == "hrsn":
        hrsn = hrss_to_hrsn(io.parse(text))
        result = io.serialize_hrsn(hrsn)
        mapping = {d: h for h, d in hrsn.dummy_of.items()}
    elif args.to == "smiss-clone":
        smiss, cmap = clone(io.parse(text))
        result = io.serialize(smiss)
        mapping = dict(cmap.hospital_of)
    elif args.source == "smti":
        smti = io.parse_smti(text)
        result = io.serialize(smti_to_smiss(smti, args.seed))
        mapping = {a: a for a in smti.men + smti.women}
    else:
        g = io.parse_graph(text)
        result = io.serialize(indset_to_smiss(g))
        mapping = {gid: v for v in g.vertices for gid in gadget_ids(v)}
    _emit(result, args.output, out)
    map_path = args.map or (args.output + ".map" if args.output else None)
    if map_path:
        io.write_text(map_path, io.format_mapping(mapping))
    return EXIT_OK


def cmd_gen(args, out: TextIO, err: TextIO) -> int:
    try:
        spec = GenSpec.from_json(_read(args.specfile))
    except (json.JSONDecodeError, TypeError) as e:
        raise _InputError(f"bad spec file: {e}") from None
    _emit(io.serialize(generate(spec)), args.output, out)
    return EXIT_OK


def _bench_row(spec: GenSpec, algos: tuple[str, ...], limit: int | None) -> list[dict]:
    instance = generate(spec)
    try:
        optimum: int | None = len(max_socially_stable_bruteforce(instance, limit))
    except LimitExceededError:
        optimum = None
    n_acq = len(instance.acquainted)
    base = {
        "seed": spec.seed, "n1": spec.n1, "n2": spec.n2, "rho": spec.rho,
        "m": len(instance.acceptable), "n_acquainted": n_acq,
        "n_unacquainted": len(instance.acceptable) - n_acq,
        "optimum": "" if optimum is None else optimum,
    }
    rows = []
    for algo in algos:
        row = dict(base, algo=algo, status="ok", size="", socially_stable="", ratio="", runtime_s="")
        try:
            report = solve(instance, algo, brute_limit=limit)
        except _SOLVER_ERRORS:
            row["status"] = "n/a"
        else:
            row["size"] = report.size
            row["socially_stable"] = _verdict(report.socially_stable)
            row["runtime_s"] = f"{report.runtime:.6f}"
            if optimum is not None and report.size:
                row["ratio"] = f"{optimum / report.size:.6f}"
        rows.append(row)
    return rows


def _bench_specs(config: dict) -> tuple[list[GenSpec], tuple[str, ...], int | None, int]:
    config = dict(config)
    count = int(config.pop("count", 1))
    algos = tuple(config.pop("algos", ("stable", "approx", "brute")))
    limit = config.pop("brute_limit", None)
    jobs = int(config.pop("jobs", 1))
    bad = [a for a in algos if a not in ALGORITHMS]
    if bad:
        raise GenSpecError(f"unknown algorithms {bad}")
    rhos = config.pop("rho", 0.5)
    rhos = rhos if isinstance(rhos, list) else [rhos]
    seed = int(config.pop("seed", 0))
    specs = [
        GenSpec.from_dict({**config, "seed": seed + i, "rho": rho})
        for rho in rhos
        for i in range(count)
    ]
    return specs, algos, limit, jobs


def cmd_bench(args, out: TextIO, err: TextIO) -> int:
    try:
        config = json.loads(_read(args.specfile))
    except json.JSONDecodeError as e:
        raise _InputError(f"bad spec file: {e}") from None
    if not isinstance(config, dict):
        raise _InputError("bench spec must be a JSON object")
    specs, algos, limit, jobs = _bench_specs(config)
    jobs = args.jobs or jobs
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_bench_row, specs, [algos] * len(specs), [limit] * len(specs)))
    else:
        chunks = [_bench_row(s, algos, limit) for s in specs]
    target = open(args.output, "w", newline="", encoding="utf-8") if args.output else out
    try:
        writer = csv.DictWriter(target, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rows in chunks:
            writer.writerows(rows)
    finally:
        if args.output:
            target.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hrss", description="Hospitals/Residents under social stability.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute a matching")
    s.add_argument("--algo", choices=ALGORITHMS, required=True)
    s.add_argument("--trace", action="store_true", help="stream approx events to stderr")
    s.add_argument("--limit", type=int, default=None, help="brute-force search-space limit")
    s.add_argument("--max-unacquainted", type=int, default=DEFAULT_MAX_UNACQUAINTED)
    s.add_argument("--max-acquainted", type=int, default=DEFAULT_MAX_ACQUAINTED)
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="report blocking pairs of a matching")
    v.add_argument("file")
    v.add_argument("matching")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="apply a reduction")
    way = r.add_mutually_exclusive_group(required=True)
    way.add_argument("--to", choices=("hrsn", "smiss-clone"))
    way.add_argument("--from", dest="source", choices=("smti", "indset"))
    r.add_argument("--seed", type=int, default=0, help="tie-breaking seed for --from smti")
    r.add_argument("-o", "--output")
    r.add_argument("--map", help="mapping sidecar path (default: OUTPUT.map)")
    r.add_argument("file")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", help="generate a random instance from a JSON spec")
    g.add_argument("specfile")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="run algorithms on generated instances, CSV out")
    b.add_argument("specfile")
    b.add_argument("-o", "--output")
    b.add_argument("-j", "--jobs", type=int, default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except (_InputError, io.ParseError, InvalidInstanceError, InvalidMatchingError, GenSpecError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    except _SOLVER_ERRORS as e:
        print(f"error: {e}", file=err)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
