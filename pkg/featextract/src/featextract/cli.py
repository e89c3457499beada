"""CLI: ``featextract extract --images <dir> --model <id> --layer <name>
--output <csv>``.

Exit codes match the pooling pipeline: 0 success, 2 invalid
arguments/config, 3 parse error (unused here), 4 I/O error, 5 internal.
"""

import argparse
import sys
from pathlib import Path

from .extract import ExtractionError, ExtractionJob, extract
from .models import ModelError, available_models


def _cmd_extract(args) -> int:
    job = ExtractionJob(
        image_root=Path(args.images),
        model_id=args.model,
        layer=args.layer,
        output=Path(args.output),
        pretrained=args.pretrained,
        batch_size=args.batch_size,
    )
    out = extract(job)
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="featextract",
        description="Dump fully-connected CNN activations to a feature CSV",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("extract", help="one CSV row of activations per image")
    p.add_argument("--images", required=True,
                   help="directory with one subdirectory per class")
    p.add_argument("--model", required=True,
                   help=f"one of {', '.join(available_models())}")
    p.add_argument("--layer", default="fc2", help="fc1 or fc2")
    p.add_argument("--output", required=True)
    p.add_argument("--no-pretrained", dest="pretrained", action="store_false",
                   help="fixed-seed random weights (offline use and tests)")
    p.add_argument("--batch-size", type=int, default=8)
    p.set_defaults(func=_cmd_extract, pretrained=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, ExtractionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit code
        print(f"internal error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
