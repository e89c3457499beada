"""Feature-table ingestion, the end-to-end descriptor pipeline, and the
bit-exact file formats shared with external producers.

Feature files are UTF-8 CSV with a mandatory header ``label,f0,...,f{n-1}``
and one sample per row; floats round-trip exactly because values are
written with shortest round-trip precision (repr).  Each sample's feature
vector is treated as a single 1-D series in column order.

Descriptor blocks concatenate in a fixed documented order regardless of
how the configuration was spelled: kinds N, H, W; distances ascending
within a kind; the degree sequence (DS) last.
"""

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classify import EvalReport, LabeledDataset, SplitProtocol, evaluate
from .descriptors import (
    DS_LABEL,
    DescriptorVector,
    DistanceDegreeProfile,
    block_label,
    canonical_scheme,
    combine,
    degree_at_distance,
    degree_sequence,
    normalize,
)
from .errors import InvalidArgumentError, InvalidInputError, ParseError
from .graphs import build_hvg, build_nvg, build_wvg

KIND_ORDER = ("N", "H", "W")
KIND_BUILDERS = {"N": build_nvg, "H": build_hvg, "W": build_wvg}
ALLOWED_DISTANCES = (1, 2, 3)


@dataclass(eq=False)
class FeatureTable:
    """m feature rows of width n with integer labels, as loaded from CSV."""

    labels: np.ndarray
    features: np.ndarray
    source: str = ""

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 2:
            raise InvalidInputError("features must be a 2-D matrix")
        if self.labels.shape[0] != self.features.shape[0]:
            raise InvalidInputError("label count does not match row count")
        if self.labels.size and self.labels.min() < 0:
            raise InvalidInputError("labels must be non-negative")

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])


def expected_header(width: int) -> list[str]:
    return ["label"] + [f"f{i}" for i in range(width)]


def load_features(path, expected_width: int | None = None) -> FeatureTable:
    """Load and validate a feature CSV.

    Malformed rows raise ParseError naming the 1-based line; a file with
    only a header is invalid input.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty file") from None
        if len(header) < 2 or header != expected_header(len(header) - 1):
            raise ParseError(f"{path}: line 1: malformed header {header!r}", line=1)
        width = len(header) - 1
        if expected_width is not None and width != expected_width:
            raise InvalidInputError(
                f"{path}: expected {expected_width} feature columns, found {width}"
            )
        labels: list[int] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue  # tolerate a trailing blank line
            if len(row) != width + 1:
                raise ParseError(
                    f"{path}: line {lineno}: expected {width + 1} columns, found {len(row)}",
                    line=lineno,
                )
            try:
                label = int(row[0])
            except ValueError:
                raise ParseError(
                    f"{path}: line {lineno}: non-integer label {row[0]!r}", line=lineno
                ) from None
            if label < 0:
                raise ParseError(
                    f"{path}: line {lineno}: negative label {label}", line=lineno
                )
            try:
                values = [float(cell) for cell in row[1:]]
            except ValueError:
                raise ParseError(
                    f"{path}: line {lineno}: non-numeric feature cell", line=lineno
                ) from None
            if not all(np.isfinite(values)):
                raise ParseError(
                    f"{path}: line {lineno}: non-finite feature value", line=lineno
                )
            labels.append(label)
            rows.append(values)
    if not rows:
        raise InvalidInputError(f"{path}: no data rows")
    return FeatureTable(
        labels=np.array(labels), features=np.array(rows), source=str(path)
    )


def _fmt(value: float) -> str:
    """Shortest exact decimal form; integral values print without '.0'."""
    value = float(value)
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def save_features(labels, features, path) -> None:
    """Write a feature table in the canonical CSV format (exact round-trip)."""
    labels = np.asarray(labels)
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(expected_header(features.shape[1]))
        for label, row in zip(labels, features):
            writer.writerow([int(label)] + [repr(float(v)) for v in row])


@dataclass(frozen=True)
class RunConfig:
    """Descriptor + evaluation configuration for one pipeline run."""

    kinds: tuple[str, ...]
    distances: tuple[int, ...]
    include_ds: bool
    protocol: SplitProtocol
    mode: str = "walks"
    normalize: bool = True
    lambda_mode: str | float = "auto"
    workers: int = 1

    def __post_init__(self):
        kinds = tuple(k for k in KIND_ORDER if k in self.kinds)
        if set(self.kinds) - set(KIND_ORDER):
            raise InvalidArgumentError(f"unknown graph kinds {set(self.kinds) - set(KIND_ORDER)}")
        distances = tuple(sorted(set(self.distances)))
        if any(d not in ALLOWED_DISTANCES for d in distances):
            raise InvalidArgumentError(f"distances must be from {ALLOWED_DISTANCES}")
        if kinds and not distances:
            raise InvalidArgumentError("distances must be non-empty when kinds are selected")
        if not kinds and not self.include_ds:
            raise InvalidArgumentError("select at least one (kind, distance) block or DS")
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "distances", distances)
        if self.workers < 1:
            raise InvalidArgumentError("workers must be >= 1")

    @property
    def scheme(self) -> str:
        parts = [block_label(k, r) for k in self.kinds for r in self.distances]
        if self.include_ds:
            parts.append(DS_LABEL)
        return "+".join(parts)


def config_from_scheme(scheme: str, protocol: SplitProtocol, **kwargs) -> RunConfig:
    """Build a RunConfig from a scheme label like "H1+DS" or "ND1+ND2".

    Only grid-shaped schemes (every selected kind pooled at every selected
    distance) are representable; anything else is rejected.
    """
    tokens = canonical_scheme(scheme).split("+")
    pairs = set()
    include_ds = False
    for token in tokens:
        if token == DS_LABEL:
            include_ds = True
        else:
            pairs.add((token[0], int(token[2:])))
    kinds = tuple(k for k in KIND_ORDER if any(p[0] == k for p in pairs))
    distances = tuple(sorted({r for _, r in pairs}))
    if pairs != {(k, r) for k in kinds for r in distances}:
        raise InvalidArgumentError(
            f"scheme {scheme!r} is not a full kinds-by-distances grid"
        )
    return RunConfig(
        kinds=kinds,
        distances=distances,
        include_ds=include_ds,
        protocol=protocol,
        **kwargs,
    )


def sample_descriptor(values, cfg: RunConfig) -> DescriptorVector:
    """Pool one feature sequence into its configured descriptor vector."""
    parts: list[DescriptorVector] = []
    for kind in cfg.kinds:
        graph = KIND_BUILDERS[kind](values)
        for r in cfg.distances:
            pooled = degree_at_distance(graph, r, cfg.mode)
            parts.append(
                DescriptorVector(pooled, block_label(kind, r), (pooled.size,))
            )
    if cfg.include_ds:
        # DS comes from the first configured kind (natural when none);
        # degrees are unweighted either way
        base_kind = cfg.kinds[0] if cfg.kinds else "N"
        ds = degree_sequence(KIND_BUILDERS[base_kind](values))
        parts.append(DescriptorVector(ds, DS_LABEL, (ds.size,)))
    vector = combine(parts)
    return normalize(vector) if cfg.normalize else vector


def descriptor_matrix(table: FeatureTable, cfg: RunConfig) -> np.ndarray:
    """Per-sample descriptors, stacked in input order."""

    def one(i):
        try:
            return sample_descriptor(table.features[i], cfg).values
        except Exception as exc:
            raise InvalidInputError(f"sample {i}: {exc}") from exc

    indices = range(table.n_samples)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(one, indices))
    else:
        rows = [one(i) for i in indices]
    return np.stack(rows)


def run_pipeline(table: FeatureTable, cfg: RunConfig) -> tuple[np.ndarray, EvalReport]:
    """Pool every sample, then evaluate the configured protocol."""
    matrix = descriptor_matrix(table, cfg)
    ds = LabeledDataset(matrix, table.labels)
    report = evaluate(ds, cfg.protocol, cfg.lambda_mode, workers=cfg.workers)
    return matrix, report


def _protocol_echo(proto: SplitProtocol) -> dict:
    echo = {"kind": proto.kind, "repeats": proto.repeats, "seed": proto.seed}
    if proto.kind == "fixed-folds":
        echo["n_folds"] = len(proto.folds)
    else:
        echo["train_per_class"] = proto.train_per_class
    return echo


def emit_report(report: EvalReport, dest, cfg: RunConfig | None = None) -> dict[str, Path]:
    """Write metrics.json and confusion.csv under ``dest`` (a directory).

    Overwrites idempotently; byte-identical output for identical inputs.
    """
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    metrics = {
        "mean_accuracy": report.mean_accuracy,
        "std_accuracy": report.std_accuracy,
        "per_split_accuracy": report.per_split_accuracy,
    }
    if cfg is not None:
        metrics["config"] = {
            "scheme": cfg.scheme,
            "mode": cfg.mode,
            "normalize": cfg.normalize,
            "lambda": cfg.lambda_mode,
            "protocol": _protocol_echo(cfg.protocol),
        }
        metrics["seed"] = cfg.protocol.seed
    metrics_path = dest / "metrics.json"
    with open(metrics_path, "w", encoding="utf-8") as fh:
        json.dump(metrics, fh, indent=2, sort_keys=True)
        fh.write("\n")
    confusion_path = dest / "confusion.csv"
    c = report.confusion.shape[0]
    with open(confusion_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["true"] + [str(j) for j in range(c)])
        for i in range(c):
            writer.writerow([i] + [int(v) for v in report.confusion[i]])
    return {"metrics": metrics_path, "confusion": confusion_path}


def emit_profile(profile: DistanceDegreeProfile, dest) -> Path:
    """Two-column CSV (r, d) for external log-log plotting."""
    dest = Path(dest)
    with open(dest, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["r", "d"])
        for r, d in profile.pairs:
            writer.writerow([r, _fmt(d)])
    return dest
