"""End to end: synthesize a two-class feature table, pool it with the
H1+DS scheme, evaluate a repeated stratified protocol, and emit the
report files.

Run: python demos/classification_pipeline.py
"""

import json
import tempfile
from pathlib import Path

import numpy as np

import vgpool as vg
from vgpool.pipeline import FeatureTable, emit_report, run_pipeline, save_features

rng = np.random.default_rng(42)
length, per_class = 128, 40

# class 0: random periodic tilings; class 1: uniform noise
rows, labels = [], []
for _ in range(per_class):
    period = int(rng.integers(2, 9))
    template = rng.random(period)
    reps = -(-length // period)
    rows.append(vg.synth_periodic(period, reps, template).values[:length])
    labels.append(0)
for _ in range(per_class):
    rows.append(rng.random(length))
    labels.append(1)
table = FeatureTable(labels=np.array(labels), features=np.array(rows))

proto = vg.SplitProtocol.random(train_per_class=20, repeats=10, seed=42)
cfg = vg.config_from_scheme("H1+DS", proto)
matrix, report = run_pipeline(table, cfg)

print(f"descriptors: {matrix.shape[0]} samples x {matrix.shape[1]} features ({cfg.scheme})")
print("per-split accuracy:", [round(a, 3) for a in report.per_split_accuracy])
print(f"mean {report.mean_accuracy:.3f} +/- {report.std_accuracy:.3f}")
print("confusion (rows=true, cols=predicted):")
print(report.confusion)

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp)
    save_features(table.labels, table.features, out / "features.csv")
    paths = emit_report(report, out / "report", cfg)
    metrics = json.loads(paths["metrics"].read_text())
    print("\nmetrics.json keys:", sorted(metrics))
    print("confusion.csv:")
    print(paths["confusion"].read_text())
