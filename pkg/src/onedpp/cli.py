"""Command line front end.

Subcommands: prob, corr, kernel, counts, stats, simulate, oracle,
oracle-check, group, connectivity, validate.  Every run echoes its
resolved configuration (and the library version) into the output
header; rationals print as num/den; all output is deterministic.

Exit codes: 0 success, 1 oracle mismatch, 2 usage or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .catalog import TypeBDescents, build, model_string, parse_model
from .connectivity import ConnectivityModel
from .exact import rat_str
from .groupcarries import (
    BudgetError,
    GroupStructureError,
    carries_pattern_distribution,
    factor_set,
    setup_from_json,
    to_spec,
)
from .onedep import (
    PatternSpec,
    StationaryA,
    StationaryE,
    TableE,
    all_patterns,
    correlation,
    kernel_from_table,
    kernel_stationary,
    pattern_probability,
    spec_from_json,
    spec_to_json,
    validate_spec,
)
from .oracle import (
    EnumerationBudgetError,
    OracleBudget,
    oracle_correlations,
    oracle_distribution,
    oracle_group_distribution,
)
from .stats import (
    count_moments,
    count_polynomial,
    normal_approx_report,
    simulate_process,
)


def _emit(args, payload_lines: list[str], config: dict) -> None:
    header = [f"# onedpp {__version__}",
              "# config: " + json.dumps(config, sort_keys=True, separators=(",", ":"))]
    text = "\n".join(header + payload_lines) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict, config: dict) -> None:
    doc = {"version": __version__, "config": config}
    doc.update(payload)
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _positions(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    return tuple(int(x) for x in text.split(","))


def _build_spec(parser: argparse.ArgumentParser, model_text: str, n: int,
                terms: int | None = None):
    try:
        name = parse_model(model_text)
        if isinstance(name, TypeBDescents) and n != name.n + 1:
            parser.error(f"model {model_text} fixes --n {name.n + 1}")
        return name, build(name, n, terms=terms)
    except ValueError as exc:
        parser.error(str(exc))


def _dense_kernel(name, spec, n: int):
    if isinstance(spec, TableE):
        kernel, _ = kernel_from_table(spec)
        return kernel
    return kernel_stationary(spec, -1, max(n - 2, 0)).to_dense(n)


def cmd_prob(parser, args) -> int:
    name, spec = _build_spec(parser, args.model, args.n)
    given = [x for x in (args.ones, args.zeros, args.pattern) if x is not None]
    if len(given) != 1:
        parser.error("pass exactly one of --ones, --zeros, --pattern")
    if args.pattern is not None:
        pattern = PatternSpec.from_string(args.pattern)
        if pattern.horizon != args.n:
            parser.error(f"pattern length {len(args.pattern)} needs --n {pattern.horizon}")
    elif args.ones is not None:
        pattern = PatternSpec.from_support(args.n, _positions(args.ones))
    else:
        pattern = PatternSpec.from_zeros(args.n, _positions(args.zeros))
    value = pattern_probability(spec, pattern)
    config = {"command": "prob", "model": model_string(name), "n": args.n,
              "pattern": pattern.as_string()}
    if args.format == "json":
        _emit_json(args, {"pattern": pattern.as_string(),
                          "probability": rat_str(value)}, config)
    else:
        _emit(args, [rat_str(value)], config)
    return 0


def cmd_corr(parser, args) -> int:
    name, spec = _build_spec(parser, args.model, args.n)
    sites = _positions(args.sites)
    value = correlation(spec, sites)
    config = {"command": "corr", "model": model_string(name), "n": args.n,
              "sites": list(sites)}
    if args.format == "json":
        _emit_json(args, {"correlation": rat_str(value)}, config)
    else:
        _emit(args, [rat_str(value)], config)
    return 0


def cmd_kernel(parser, args) -> int:
    if (args.range is None) == (args.n is None):
        parser.error("pass exactly one of --range LO..HI or --n N")
    if args.range is not None:
        try:
            lo_text, hi_text = args.range.split("..")
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            parser.error("range must look like -1..16")
        name = None
        try:
            name = parse_model(args.model)
        except ValueError as exc:
            parser.error(str(exc))
        if isinstance(name, TypeBDescents):
            parser.error("type B has no stationary kernel; use --n for the dense form")
        spec = build(name, max(hi + 3, 2), terms=hi + 4)
        kernel = kernel_stationary(spec, lo, hi)
        config = {"command": "kernel", "model": model_string(name),
                  "range": [lo, hi]}
        lines = ["m,value"]
        lines += [f"{m},{rat_str(kernel.at(m))}" for m in range(lo, hi + 1)]
        _emit(args, lines, config)
        return 0
    name, spec = _build_spec(parser, args.model, args.n)
    kernel = _dense_kernel(name, spec, args.n)
    config = {"command": "kernel", "model": model_string(name), "n": args.n,
              "dense": True}
    lines = ["x,y,value"]
    for x in kernel.positions:
        for y in kernel.positions:
            lines.append(f"{x},{y},{rat_str(kernel.at(x, y))}")
    _emit(args, lines, config)
    return 0


def cmd_counts(parser, args) -> int:
    name, spec = _build_spec(parser, args.model, args.n)
    poly = count_polynomial(_dense_kernel(name, spec, args.n))
    config = {"command": "counts", "model": model_string(name), "n": args.n}
    if args.format == "json":
        _emit_json(args, {"coefficients": [rat_str(c) for c in poly.coeffs]}, config)
    else:
        lines = ["count,probability"]
        lines += [f"{j},{rat_str(c)}" for j, c in enumerate(poly.coeffs)]
        _emit(args, lines, config)
    return 0


def cmd_stats(parser, args) -> int:
    name, spec = _build_spec(parser, args.model, args.n)
    kernel = _dense_kernel(name, spec, args.n)
    mean, variance = count_moments(kernel)
    report = normal_approx_report(count_polynomial(kernel))
    config = {"command": "stats", "model": model_string(name), "n": args.n}
    payload = {"mean": rat_str(mean), "variance": rat_str(variance)}
    payload.update(report.as_dict())
    _emit_json(args, payload, config)
    return 0


def cmd_simulate(parser, args) -> int:
    try:
        name = parse_model(args.model)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        result = simulate_process(name, args.n, args.reps, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    config = {"command": "simulate", "model": model_string(name), "n": args.n,
              "reps": args.reps, "seed": args.seed}
    if args.format == "json":
        _emit_json(args, {"pattern_counts": dict(sorted(result.pattern_counts.items()))},
                   config)
    else:
        lines = ["pattern,count"]
        lines += [f"{p},{c}" for p, c in sorted(result.pattern_counts.items())]
        _emit(args, lines, config)
    return 0


def cmd_oracle(parser, args) -> int:
    try:
        name = parse_model(args.model)
        dist = oracle_distribution(name, args.n, OracleBudget(args.budget))
    except ValueError as exc:
        parser.error(str(exc))
    except EnumerationBudgetError as exc:
        parser.error(str(exc))
    config = {"command": "oracle", "model": model_string(name), "n": args.n,
              "budget": args.budget}
    lines = ["pattern,probability"]
    for bits in sorted(dist):
        key = "".join(str(b) for b in bits)
        lines.append(f"{key},{rat_str(dist[bits])}")
    _emit(args, lines, config)
    return 0


def cmd_oracle_check(parser, args) -> int:
    name, spec = _build_spec(parser, args.model, args.n)
    try:
        dist = oracle_distribution(name, args.n, OracleBudget(args.budget))
    except EnumerationBudgetError as exc:
        parser.error(str(exc))
    rho = oracle_correlations(dist)
    kernel = _dense_kernel(name, spec, args.n)
    lines = []
    bad = 0
    for pattern in all_patterns(args.n):
        mine = pattern_probability(spec, pattern)
        ref = dist[pattern.bits]
        if mine != ref:
            bad += 1
            lines.append(f"MISMATCH pattern {pattern.as_string()}: "
                         f"{rat_str(mine)} vs oracle {rat_str(ref)}")
    lines.append(f"patterns checked: {2 ** (args.n - 1)}, mismatches: {bad}")
    minor_bad = 0
    for sites, ref in sorted(rho.items()):
        mine = kernel.minor(sites)
        if mine != ref:
            minor_bad += 1
            lines.append(f"MISMATCH minor {sites}: {rat_str(mine)} vs oracle {rat_str(ref)}")
    lines.append(f"kernel minors checked: {len(rho)}, mismatches: {minor_bad}")
    config = {"command": "oracle-check", "model": model_string(name),
              "n": args.n, "budget": args.budget}
    _emit(args, lines, config)
    return 1 if bad or minor_bad else 0


def cmd_group(parser, args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            setup = setup_from_json(json.load(fh))
    except (OSError, KeyError, ValueError, GroupStructureError) as exc:
        parser.error(f"bad group file: {exc}")
    config = {"command": "group", "file": args.file, "n": args.n,
              "order": setup.group.order, "index": setup.index}
    lines = ["sigma,tau,carry"]
    fs = factor_set(setup)
    for (i, j), value in sorted(fs.items()):
        lines.append(f"{i},{j},{value}")
    status = 0
    if args.n is not None:
        try:
            dist = carries_pattern_distribution(setup, args.n)
        except BudgetError as exc:
            parser.error(str(exc))
        lines.append("pattern,probability")
        for bits in sorted(dist):
            key = "".join(str(b) for b in bits)
            lines.append(f"{key},{rat_str(dist[bits])}")
        if args.check:
            try:
                ref = oracle_group_distribution(setup, args.n)
            except EnumerationBudgetError as exc:
                parser.error(str(exc))
            spec = to_spec(setup, args.n)
            bad = 0
            for bits, value in sorted(ref.items()):
                pat = PatternSpec(args.n, bits)
                if dist[bits] != value or pattern_probability(spec, pat) != value:
                    bad += 1
                    lines.append("MISMATCH pattern " + pat.as_string())
            lines.append(f"patterns checked: {len(ref)}, mismatches: {bad}")
            status = 1 if bad else 0
    _emit(args, lines, config)
    return status


def cmd_connectivity(parser, args) -> int:
    model = ConnectivityModel(args.n)
    config = {"command": "connectivity", "n": args.n}
    if args.simulate:
        if args.seed is None:
            parser.error("--simulate requires --seed")
        config.update({"reps": args.reps, "seed": args.seed})
        paths = model.simulate(args.seed, args.reps)
        counts: dict[str, int] = {}
        for path in paths:
            key = "-".join(str(x) for x in path)
            counts[key] = counts.get(key, 0) + 1
        lines = ["trajectory,count"]
        lines += [f"{k},{v}" for k, v in sorted(counts.items())]
        _emit(args, lines, config)
        return 0
    kernel = model.kernel()
    lines = ["x,y,value"]
    for x in kernel.positions:
        for y in kernel.positions:
            lines.append(f"{x},{y},{rat_str(kernel.at(x, y))}")
    _emit(args, lines, config)
    return 0


def cmd_validate(parser, args) -> int:
    if (args.model is None) == (args.spec_file is None):
        parser.error("pass exactly one of --model or --spec-file")
    if args.model is not None:
        _, spec = _build_spec(parser, args.model, args.n)
        config = {"command": "validate", "model": args.model,
                  "n": args.n, "max_n": args.max_n}
    else:
        try:
            with open(args.spec_file, "r", encoding="utf-8") as fh:
                spec = spec_from_json(json.load(fh))
        except (OSError, KeyError, ValueError) as exc:
            parser.error(f"bad spec file: {exc}")
        config = {"command": "validate", "spec_file": args.spec_file,
                  "max_n": args.max_n}
    report = validate_spec(spec, args.max_n)
    payload = {"ok": report.ok, "checked": report.checked,
               "failures": [[n, pattern, rat_str(v)]
                            for n, pattern, v in report.failures],
               "spec": spec_to_json(spec)}
    _emit_json(args, payload, config)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="onedpp",
        description="exact determinantal calculus for one-dependent 0/1 processes")
    parser.add_argument("--version", action="version", version=f"onedpp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True, n=True):
        if model:
            p.add_argument("--model", required=True,
                           help="e.g. carries:b=10, descents:mallows:q=1/2")
        if n:
            p.add_argument("--n", type=int, required=True, help="horizon")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default="-", help="output path, - for stdout")

    p = sub.add_parser("prob", help="probability of one exact pattern")
    common(p)
    p.add_argument("--ones", help="comma separated positions of ones")
    p.add_argument("--zeros", help="comma separated positions of zeros")
    p.add_argument("--pattern", help="explicit bit string")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("corr", help="correlation rho(A) of a site set")
    common(p)
    p.add_argument("--sites", required=True, help="comma separated positions")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("kernel", help="stationary kernel values or dense kernel")
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=int, help="horizon for the dense kernel")
    p.add_argument("--range", help="LO..HI for stationary k(m)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("counts", help="exact law of the number of ones")
    common(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("stats", help="moments and normal approximation report")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("simulate", help="seeded Monte Carlo pattern counts")
    common(p)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="brute force pattern distribution")
    common(p)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("oracle-check",
                       help="compare determinants and kernel minors with brute force")
    common(p)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("group", help="validate a group file and echo its factor set")
    p.add_argument("--file", required=True, help="JSON group description")
    p.add_argument("--n", type=int, help="also emit the carry pattern law")
    p.add_argument("--check", action="store_true",
                   help="cross-check the law against enumeration")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("connectivity", help="connectivity process kernel or sampler")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("validate", help="nonnegativity of all pattern determinants")
    p.add_argument("--model")
    p.add_argument("--n", type=int, default=6, help="horizon when --model is used")
    p.add_argument("--spec-file")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_validate)

    if argv is None:
        argv = sys.argv[1:]
    # join "--range -1..16" so argparse does not read the value as a flag
    joined: list[str] = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token == "--range" and i + 1 < len(argv):
            joined.append(f"--range={argv[i + 1]}")
            skip = True
        else:
            joined.append(token)
    args = parser.parse_args(joined)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
