"""Command-line front end: ``transcripta {symbolize,measures,group,henon}``.

Exit codes: 0 success, 2 missing input file, 64 usage error, 65 bad data,
70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coupling import (ccc, directionality_indicator, mutual_information,
                       symbolic_transfer_entropy, transcript_mutual_information)
from .entropy import (estimate_dist, js_distance, js_divergence, normalized_entropy,
                      shannon_entropy, statistical_complexity)
from .groups import (METRICS, GroupAxiomError, admissible_distances, cayley_embed,
                     distance_matrix, load_group, order_classes)
from .henon import EXPERIMENTS, ExperimentOutput, SweepConfig, SweepDiverged, default_workers
from .io import (DataError, MeasureRecord, RunManifest, dumps, is_symbols_csv, read_real_csv,
                 read_symbols_csv, symbols_csv)
from .metrics import (distance_distribution, distance_series, lump_by_order_class,
                      similarity_distance, sliding_lp_series)
from .symbolization import TIE_RULES, symbolize, transcribe

EXIT_OK, EXIT_NOFILE, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 2, 64, 65, 70

MEASURES = ("entropy", "js", "sc", "tmi", "te", "ccc", "mi", "orderclasses",
            "similarity", "distances")
PAIR_MEASURES = {"tmi", "te", "ccc", "mi", "similarity", "distances"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _manifest(args, command: str, inputs, output: str) -> None:
    if output == "-":
        return
    params = {k: v for k, v in vars(args).items() if k not in ("func",) and v is not None}
    RunManifest.create(command, params, inputs).write(f"{output}.manifest.json")


def _check_input(path) -> Path:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such input file: {path}")
    return path


def _load_series(path: Path, args):
    if is_symbols_csv(path):
        return read_symbols_csv(path)
    x = read_real_csv(path, args.column)
    return symbolize(x, args.length, args.delay, args.tie_rule, seed=args.seed,
                     label=path.stem)


def _check_symbolization_args(args) -> None:
    if args.length < 2:
        raise UsageError(f"--length must be >= 2, got {args.length}")
    if args.length > 7:
        raise UsageError(f"--length above 7 is not supported, got {args.length}")
    if args.delay < 1:
        raise UsageError(f"--delay must be >= 1, got {args.delay}")


# ---------------------------------------------------------------------------
# symbolize
# ---------------------------------------------------------------------------


def cmd_symbolize(args) -> int:
    _check_symbolization_args(args)
    path = _check_input(args.input)
    x = read_real_csv(path, args.column)
    s = symbolize(x, args.length, args.delay, args.tie_rule, seed=args.seed, label=path.stem)
    _emit(symbols_csv(s), args.output)
    _manifest(args, "symbolize", [path], args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------


def _transcript_law(a, b, args):
    t = transcribe(a, b, args.transcript_lag, pad=args.lambda_pad)
    return estimate_dist(t, laplace=args.laplace)


def _measure_records(a, b, wanted, args) -> list[MeasureRecord]:
    base = args.base
    lam = args.lam
    g = a.group
    # single-series measures describe the transcript law when two inputs are given
    p = _transcript_law(a, b, args) if b is not None else estimate_dist(a, laplace=args.laplace)
    subject = "transcript" if b is not None else "symbols"
    common = {"subject": subject, "laplace": args.laplace}
    if b is not None:
        common["transcript_lag"] = args.transcript_lag
    uniform = np.full(len(p), 1.0 / len(p))
    out = []
    for name in wanted:
        if name == "entropy":
            out.append(MeasureRecord("entropy", shannon_entropy(p, base), base, common))
            out.append(MeasureRecord("normalized_entropy", normalized_entropy(p), None, common))
        elif name == "js":
            out.append(MeasureRecord("js_divergence", js_divergence(p, uniform, base), base,
                                     {**common, "reference": "uniform"}))
            out.append(MeasureRecord("js_distance", js_distance(p, uniform, base), base,
                                     {**common, "reference": "uniform"}))
        elif name == "sc":
            out.append(MeasureRecord("statistical_complexity", statistical_complexity(p), 2,
                                     {**common, "reference": "uniform"}))
        elif name == "orderclasses":
            lumped = lump_by_order_class(p, order_classes(g))
            out.append(MeasureRecord("order_classes", lumped.as_dict(), None, common))
            out.append(MeasureRecord("order_class_entropy", lumped.entropy(base), base, common))
        elif name == "te":
            out.append(MeasureRecord("transfer_entropy",
                                     symbolic_transfer_entropy(a, b, lam, base), base,
                                     {"lambda": lam, "direction": "a->b"}))
        elif name == "tmi":
            out.append(MeasureRecord("transcript_mutual_information",
                                     transcript_mutual_information(a, b, lam, base), base,
                                     {"lambda": lam, "direction": "a->b"}))
            out.append(MeasureRecord("delta_ti", directionality_indicator(a, b, lam, base), base,
                                     {"lambda": lam, "direction": "a->b"}))
        elif name == "mi":
            out.append(MeasureRecord("mutual_information", mutual_information(a, b, 0, base),
                                     base, {"lambda": 0}))
        elif name == "ccc":
            out.append(MeasureRecord("ccc", ccc([a, b], base), base, {"M": 2}))
        elif name == "similarity":
            out.append(MeasureRecord(f"delta_{args.metric[0].upper()}",
                                     similarity_distance(a, b, args.metric), None,
                                     {"metric": args.metric}))
        elif name == "distances":
            d = distance_series(a, b, args.metric)
            hist = distance_distribution(d)
            value = {"probs": hist.probs, "counts": hist.counts,
                     "forbidden_distances": hist.forbidden(),
                     "max_possible": d.max_possible}
            params = {"metric": args.metric, "transported": d.transported}
            if args.window is not None:
                lp = sliding_lp_series(a, b, args.window, args.p, args.metric)
                value["sliding_lp"] = lp
                params.update(window=args.window, p=args.p)
            out.append(MeasureRecord("distances", value, None, params))
    return out


def cmd_measures(args) -> int:
    _check_symbolization_args(args)
    wanted = [w.strip() for w in args.set.split(",") if w.strip()]
    unknown = [w for w in wanted if w not in MEASURES]
    if unknown or not wanted:
        raise UsageError(f"unknown measure(s) {unknown}; choose from {', '.join(MEASURES)}")
    if {"te", "tmi"} & set(wanted) and args.lam < 1:
        raise UsageError(f"--lambda must be >= 1 for te/tmi, got {args.lam}")
    if args.window is not None and args.window < 1:
        raise UsageError("--window must be >= 1")
    if not args.p >= 1:
        raise UsageError("--p must be >= 1 (or inf)")
    if args.laplace < 0:
        raise UsageError("--laplace must be >= 0")
    pair = PAIR_MEASURES & set(wanted)
    if pair and args.b is None:
        raise UsageError(f"measure(s) {sorted(pair)} need two inputs (--b)")
    inputs = [_check_input(args.a)] + ([_check_input(args.b)] if args.b else [])
    a = _load_series(inputs[0], args)
    b = _load_series(inputs[1], args) if len(inputs) > 1 else None
    if b is not None:
        if a.group != b.group:
            raise DataError(f"incompatible groups: {a.group.name} and {b.group.name}")
        if {"ccc", "mi", "similarity", "distances"} & set(wanted) and len(a) != len(b):
            raise DataError(f"series lengths differ ({len(a)} and {len(b)})")
    records = _measure_records(a, b, wanted, args)
    _emit(dumps([r.to_dict() for r in records]), args.output)
    _manifest(args, "measures", inputs, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# group
# ---------------------------------------------------------------------------


def _load_table(path):
    path = _check_input(path)
    try:
        return load_group(path), path
    except (json.JSONDecodeError, KeyError, TypeError) as err:
        raise DataError(f"{path}: not a group-spec file ({err})") from None


def cmd_group(args) -> int:
    g, path = _load_table(args.table)
    if args.group_cmd == "distances":
        m = distance_matrix(g, args.metric)
        adm = admissible_distances(m, g.identity)
        _emit(m.to_csv(), args.output)
        summary = dumps({"metric": m.metric, "transported": m.transported,
                         "max_possible": m.max_possible, "admissible": adm.values,
                         "gaps": adm.gaps})
        if args.output == "-":
            sys.stderr.write(summary)
        else:
            Path(f"{args.output}.summary.json").write_text(summary)
    elif args.group_cmd == "orderclasses":
        lines = ["order,size,elements"]
        for m, members in order_classes(g).items():
            lines.append(f"{m},{len(members)},{' '.join(g.labels[i] for i in members)}")
        _emit("\n".join(lines) + "\n", args.output)
    elif args.group_cmd == "embed":
        lines = ["element,image"]
        for label, image in zip(g.labels, cayley_embed(g)):
            lines.append(f"{label},{image}")
        _emit("\n".join(lines) + "\n", args.output)
    _manifest(args, f"group {args.group_cmd}", [path], args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# henon
# ---------------------------------------------------------------------------


def cmd_henon(args) -> int:
    if not args.step > 0:
        raise UsageError(f"--step must be > 0, got {args.step}")
    if args.cmax < args.cmin or args.cmin < 0:
        raise UsageError("need 0 <= --cmin <= --cmax")
    if args.n < 1 or args.transient < 0:
        raise UsageError("need --n >= 1 and --transient >= 0")
    if args.length < 2 or args.length > 7 or args.lam < 1:
        raise UsageError("need 2 <= --length <= 7 and --lambda >= 1")
    if args.tlag is not None and args.tlag < 1:
        raise UsageError("--tlag must be >= 1")
    figures = sorted(EXPERIMENTS) if args.all else [args.figure]
    workers = args.workers if args.workers is not None else default_workers()
    outdir = Path(args.outdir)
    written = []
    for fig in figures:
        name, fn = EXPERIMENTS[fig]
        if args.tlag is not None:
            tlags = [args.tlag]
        else:
            tlags = [1, 5] if fig == 4 else [1]
        for T in tlags:
            sweep = SweepConfig(args.cmin, args.cmax, args.step, args.length, T, args.lam,
                                args.n, args.transient)
            table = fn(sweep, workers=workers)
            stem = f"fig{fig}_{name}" + (f"_T{T}" if fig == 4 else "")
            meta = {"experiment": name, "figure": fig, **sweep.metadata(),
                    "log_base": 2, "tool_version": __version__}
            written += ExperimentOutput(name, table, meta).write(outdir, stem)
    label = "all" if args.all else f"fig{args.figure}"
    params = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    params["outputs"] = [p.name for p in written]
    RunManifest.create("henon", params).write(outdir / f"{label}.manifest.json")
    for p in written:
        print(p)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _symbol_options(p) -> None:
    p.add_argument("--column", default=None, help="column name or 0-based index")
    p.add_argument("--length", type=int, default=3, help="pattern length L")
    p.add_argument("--delay", type=int, default=1, help="delay time T")
    p.add_argument("--tie-rule", dest="tie_rule", choices=TIE_RULES, default="index")
    p.add_argument("--seed", type=int, default=None, help="seed for --tie-rule jitter")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="transcripta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"transcripta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("symbolize", help="real series CSV -> ordinal symbol CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    _symbol_options(p)
    p.set_defaults(func=cmd_symbolize)

    p = sub.add_parser("measures", help="entropic, coupling and distance measures as JSON")
    p.add_argument("--a", required=True, help="source series (real or symbol CSV)")
    p.add_argument("--b", default=None, help="target series (real or symbol CSV)")
    p.add_argument("--set", default="entropy",
                   help="comma list from: " + ",".join(MEASURES))
    p.add_argument("--lambda", dest="lam", type=int, default=1,
                   help="coupling delay for te/tmi")
    p.add_argument("--transcript-lag", dest="transcript_lag", type=int, default=0,
                   help="delay of the transcript series used for distribution measures")
    p.add_argument("--lambda-pad", dest="lambda_pad", action="store_true",
                   help="pad a negative transcript lag with identity targets")
    p.add_argument("--metric", choices=METRICS, default="kendall")
    p.add_argument("--window", type=int, default=None, help="sliding window W for distances")
    p.add_argument("--p", type=float, default=1.0, help="l_p exponent (inf for Chebyshev)")
    p.add_argument("--base", type=float, default=2.0, help="logarithm base")
    p.add_argument("--laplace", type=float, default=0.0, help="additive smoothing pseudo-count")
    p.add_argument("--output", default="-")
    _symbol_options(p)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("group", help="finite-group tooling")
    p.add_argument("--table", required=True, help="group-spec JSON file")
    gsub = p.add_subparsers(dest="group_cmd", required=True, parser_class=_Parser)
    q = gsub.add_parser("distances", help="transported distance matrix CSV")
    q.add_argument("--metric", choices=METRICS, default="kendall")
    q.add_argument("--output", default="-")
    q = gsub.add_parser("orderclasses", help="elements grouped by order")
    q.add_argument("--output", default="-")
    q = gsub.add_parser("embed", help="Cayley embedding images in one-line form")
    q.add_argument("--output", default="-")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("henon", help="coupled Hénon experiments")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--figure", type=int, choices=sorted(EXPERIMENTS))
    which.add_argument("--all", action="store_true")
    p.add_argument("--cmin", type=float, default=0.0)
    p.add_argument("--cmax", type=float, default=1.2)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--n", type=int, default=10_000, help="samples after the transient")
    p.add_argument("--transient", type=int, default=1_000)
    p.add_argument("--tlag", type=int, default=None,
                   help="ordinal delay time T (figure 4 runs T=1 and T=5 by default)")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--length", type=int, default=3)
    p.add_argument("--workers", type=int, default=None,
                   help="process pool size (default: $TRANSCRIPTA_THREADS or CPU count)")
    p.add_argument("--outdir", default="henon_out")
    p.set_defaults(func=cmd_henon)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"transcripta: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as err:
        print(f"transcripta: {err}", file=sys.stderr)
        return EXIT_NOFILE
    except SweepDiverged as err:
        print(f"transcripta: {err}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, GroupAxiomError, ValueError) as err:
        print(f"transcripta: data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except Exception as err:  # pragma: no cover - last-resort guard
        print(f"transcripta: internal error: {err!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
