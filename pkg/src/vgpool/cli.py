"""Command-line surface.

Subcommands: describe, classify, synth, profile, verify.
Exit codes: 0 success, 2 invalid arguments/config, 3 parse error,
4 I/O error, 5 internal invariant violation (or failed verify).
"""

import argparse
import json
import sys

from .classify import SplitProtocol
from .descriptors import distance_profile
from .errors import (
    InvalidArgumentError,
    InvalidInputError,
    ParseError,
    ResourceLimitError,
)
from .graphs import build_hvg, build_nvg, build_wvg
from .pipeline import (
    RunConfig,
    config_from_scheme,
    descriptor_matrix,
    emit_profile,
    emit_report,
    load_features,
    run_pipeline,
    save_features,
)
from .synth import FractalSeriesSpec, synth_fractal, synth_periodic, synth_random_uniform
from .verify import run_identity_checks

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_IO = 4
EXIT_INTERNAL = 5


def _parse_protocol(text: str) -> SplitProtocol:
    """Parse "random:train=30,repeats=10,seed=42" or "folds:<path.json>".

    The folds file holds a JSON list of {"train": [...], "test": [...]}.
    """
    head, sep, rest = text.partition(":")
    if not sep:
        raise InvalidArgumentError(f"malformed protocol {text!r}")
    if head == "random":
        fields = {}
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise InvalidArgumentError(f"malformed protocol field {item!r}")
            fields[key.strip()] = int(value)
        unknown = set(fields) - {"train", "repeats", "seed"}
        if unknown or "train" not in fields:
            raise InvalidArgumentError(f"malformed random protocol {rest!r}")
        return SplitProtocol.random(
            train_per_class=fields["train"],
            repeats=fields.get("repeats", 1),
            seed=fields.get("seed", 0),
        )
    if head == "folds":
        with open(rest, encoding="utf-8") as fh:
            spec = json.load(fh)
        try:
            folds = [(fold["train"], fold["test"]) for fold in spec]
        except (TypeError, KeyError):
            raise ParseError(f"{rest}: expected a list of train/test objects") from None
        return SplitProtocol.fixed(folds)
    raise InvalidArgumentError(f"unknown protocol kind {head!r}")


def _parse_kinds(text: str) -> tuple[str, ...]:
    return tuple(k.strip().upper() for k in text.split(",") if k.strip())


def _parse_distances(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(d) for d in text.split(",") if d.strip())
    except ValueError:
        raise InvalidArgumentError(f"malformed distance list {text!r}") from None


def _parse_lambda(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise InvalidArgumentError(f"lambda must be 'auto' or a number, got {text!r}") from None


def _cmd_describe(args) -> int:
    table = load_features(args.input)
    cfg = RunConfig(
        kinds=_parse_kinds(args.kinds) if args.kinds else (),
        distances=_parse_distances(args.distances) if args.distances else (),
        include_ds=args.ds,
        protocol=SplitProtocol.random(1, 1),  # unused by describe
        mode=args.mode,
        normalize=args.normalize,
        workers=args.workers,
    )
    matrix = descriptor_matrix(table, cfg)
    save_features(table.labels, matrix, args.output)
    print(f"wrote {matrix.shape[0]} x {matrix.shape[1]} descriptors ({cfg.scheme}) to {args.output}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    table = load_features(args.input)
    cfg = config_from_scheme(
        args.scheme,
        _parse_protocol(args.protocol),
        mode=args.mode,
        normalize=args.normalize,
        lambda_mode=_parse_lambda(args.lam),
        workers=args.workers,
    )
    _, report = run_pipeline(table, cfg)
    paths = emit_report(report, args.report, cfg)
    print(
        f"scheme {cfg.scheme}: mean accuracy {report.mean_accuracy:.4f}"
        f" +/- {report.std_accuracy:.4f} over {len(report.per_split_accuracy)} splits"
    )
    print(f"wrote {paths['metrics']} and {paths['confusion']}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.family == "fractal":
        spec = FractalSeriesSpec(depth=args.depth, placement=args.placement, seed=args.seed)
        series = synth_fractal(spec)
    elif args.family == "periodic":
        if not args.template:
            raise InvalidArgumentError("periodic synthesis requires --template")
        template = [float(v) for v in args.template.split(",")]
        period = args.period if args.period is not None else len(template)
        series = synth_periodic(period, args.repeats, template)
    elif args.family == "uniform":
        series = synth_random_uniform(args.n, seed=args.seed)
    else:  # argparse choices guard this
        raise InvalidArgumentError(f"unknown family {args.family!r}")
    save_features([args.label], series.values[None, :], args.output)
    print(f"wrote {args.family} series of length {len(series)} to {args.output}")
    return EXIT_OK


def _cmd_profile(args) -> int:
    table = load_features(args.input)
    if not 0 <= args.row < table.n_samples:
        raise InvalidArgumentError(f"row {args.row} out of range")
    builder = {"N": build_nvg, "H": build_hvg, "W": build_wvg}[args.kind]
    graph = builder(table.features[args.row])
    profile = distance_profile(graph, args.node, args.rmax, args.mode)
    emit_profile(profile, args.output)
    print(f"wrote degree profile (r=1..{args.rmax}) of node {args.node} to {args.output}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_identity_checks()
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name}: {res.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vgpool",
        description="Visibility-graph descriptor pooling and evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="pool a feature table into descriptors")
    p.add_argument("--input", required=True)
    p.add_argument("--kinds", default="", help="comma list from N,H,W")
    p.add_argument("--distances", default="", help="comma list from 1,2,3")
    p.add_argument("--ds", action="store_true", help="append the degree sequence")
    p.add_argument("--mode", choices=("walks", "shell"), default="walks")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("classify", help="pool, split, fit, and report accuracy")
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", required=True, help='e.g. "H1+DS" or "ND1+ND2"')
    p.add_argument("--protocol", required=True,
                   help='"random:train=30,repeats=10,seed=42" or "folds:<json>"')
    p.add_argument("--lambda", dest="lam", default="auto", help="shrinkage: auto or a number")
    p.add_argument("--mode", choices=("walks", "shell"), default="walks")
    p.add_argument("--no-normalize", dest="normalize", action="store_false")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", required=True, help="output directory")
    p.set_defaults(func=_cmd_classify, normalize=True)

    p = sub.add_parser("synth", help="generate a synthetic series as a 1-row feature CSV")
    p.add_argument("--family", choices=("fractal", "periodic", "uniform"), required=True)
    p.add_argument("--depth", type=int, default=4, help="fractal refinement steps")
    p.add_argument("--placement", choices=("deterministic-mid", "seeded-random"),
                   default="deterministic-mid")
    p.add_argument("--period", type=int, default=None,
                   help="template period (defaults to the template length)")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--template", default="", help="comma list of template values")
    p.add_argument("--n", type=int, default=1024, help="uniform series length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--label", type=int, default=0, help="label column value")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("profile", help="degree-at-distance profile of one node")
    p.add_argument("--input", required=True)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--kind", choices=("N", "H", "W"), default="N")
    p.add_argument("--mode", choices=("walks", "shell"), default="walks")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("verify", help="run the exact degree-law identity checks")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidArgumentError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit code
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
