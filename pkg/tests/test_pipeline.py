"""Feature-table I/O, scheme handling, the end-to-end pipeline, report
emission, and the command-line surface."""

import json

import numpy as np
import pytest

from vgpool.classify import SplitProtocol
from vgpool.cli import main
from vgpool.descriptors import DescriptorVector, DistanceDegreeProfile
from vgpool.errors import InvalidArgumentError, InvalidInputError, ParseError
from vgpool.pipeline import (
    FeatureTable,
    RunConfig,
    config_from_scheme,
    descriptor_matrix,
    emit_profile,
    emit_report,
    load_features,
    run_pipeline,
    sample_descriptor,
    save_features,
)
from vgpool.synth import synth_periodic


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def proto10():
    return SplitProtocol.random(train_per_class=2, repeats=3, seed=9)


def toy_table(rng=None, m=12, n=32):
    rng = rng or np.random.default_rng(60)
    rows, labels = [], []
    for i in range(m):
        if i % 2 == 0:
            rows.append(synth_periodic(4, n // 4, [0.1, 0.9, 0.4, 0.6]).values)
        else:
            rows.append(rng.random(n))
        labels.append(i % 2)
    return FeatureTable(labels=np.array(labels), features=np.array(rows))


class TestLoadFeatures:
    def test_basic_load(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0,f1\n0,1.5,2.5\n1,3,4\n2,5,6\n")
        table = load_features(p)
        assert table.n_samples == 3 and table.n_features == 2
        assert table.labels.tolist() == [0, 1, 2]
        assert table.features[0].tolist() == [1.5, 2.5]

    def test_missing_column_names_line(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0,f1\n0,1.0,2.0\n1,3.0\n")
        with pytest.raises(ParseError) as err:
            load_features(p)
        assert err.value.line == 3 and "line 3" in str(err.value)

    def test_header_only_is_invalid_input(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0,f1\n")
        with pytest.raises(InvalidInputError):
            load_features(p)

    def test_empty_file(self, tmp_path):
        p = write(tmp_path / "t.csv", "")
        with pytest.raises(InvalidInputError):
            load_features(p)

    def test_bad_header(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,x0,x1\n0,1,2\n")
        with pytest.raises(ParseError) as err:
            load_features(p)
        assert err.value.line == 1

    def test_non_numeric_cell(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0\n0,abc\n")
        with pytest.raises(ParseError) as err:
            load_features(p)
        assert err.value.line == 2

    def test_non_integer_label(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0\nx,1.0\n")
        with pytest.raises(ParseError):
            load_features(p)

    def test_width_mismatch(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0,f1\n0,1,2\n")
        with pytest.raises(InvalidInputError):
            load_features(p, expected_width=5)

    def test_scientific_notation(self, tmp_path):
        p = write(tmp_path / "t.csv", "label,f0\n0,1.5e-3\n")
        assert load_features(p).features[0, 0] == 1.5e-3


class TestRoundTrip:
    def test_exact_float_round_trip(self, tmp_path):
        rng = np.random.default_rng(61)
        features = np.concatenate(
            [rng.random((4, 6)), [[0.1, 1 / 3, 1e-300, 1e300, -7.25, 2.0]]]
        )
        labels = np.arange(5)
        p = tmp_path / "rt.csv"
        save_features(labels, features, p)
        table = load_features(p)
        assert np.array_equal(table.features, features)
        assert np.array_equal(table.labels, labels)


class TestRunConfig:
    def test_canonical_block_order(self):
        cfg = RunConfig(kinds=("W", "N"), distances=(2, 1), include_ds=True,
                        protocol=proto10())
        assert cfg.kinds == ("N", "W")
        assert cfg.distances == (1, 2)
        assert cfg.scheme == "ND1+ND2+WD1+WD2+DS"

    def test_requires_some_block(self):
        with pytest.raises(InvalidArgumentError):
            RunConfig(kinds=(), distances=(), include_ds=False, protocol=proto10())

    def test_kinds_need_distances(self):
        with pytest.raises(InvalidArgumentError):
            RunConfig(kinds=("N",), distances=(), include_ds=True, protocol=proto10())

    def test_distance_domain(self):
        with pytest.raises(InvalidArgumentError):
            RunConfig(kinds=("N",), distances=(4,), include_ds=False, protocol=proto10())

    def test_scheme_parsing(self):
        cfg = config_from_scheme("H1+DS", proto10())
        assert cfg.kinds == ("H",) and cfg.distances == (1,) and cfg.include_ds
        cfg = config_from_scheme("N1+H1+W1", proto10())
        assert cfg.kinds == ("N", "H", "W") and cfg.distances == (1,)
        cfg = config_from_scheme("ND1+ND2", proto10())
        assert cfg.kinds == ("N",) and cfg.distances == (1, 2)

    def test_non_grid_scheme_rejected(self):
        with pytest.raises(InvalidArgumentError):
            config_from_scheme("N1+H2", proto10())


class TestSampleDescriptor:
    def test_block_layout_and_normalization(self):
        cfg = RunConfig(kinds=("N", "H"), distances=(1, 2), include_ds=True,
                        protocol=proto10())
        y = np.random.default_rng(62).random(20)
        vec = sample_descriptor(y, cfg)
        assert isinstance(vec, DescriptorVector)
        assert vec.blocks == (20,) * 5
        assert vec.scheme == "ND1+ND2+HD1+HD2+DS"
        assert vec.normalized and np.all((vec.values >= 0) & (vec.values <= 1))

    def test_ds_comes_from_first_kind(self):
        from vgpool.descriptors import degree_sequence
        from vgpool.graphs import build_hvg

        y = np.random.default_rng(63).random(16)
        cfg = RunConfig(kinds=("H",), distances=(1,), include_ds=True,
                        protocol=proto10(), normalize=False)
        vec = sample_descriptor(y, cfg)
        assert np.array_equal(vec.values[16:], degree_sequence(build_hvg(y)))


class TestRunPipeline:
    def test_h1_ds_reproduces_flagship_scheme(self):
        table = toy_table()
        cfg = config_from_scheme("H1+DS", proto10())
        matrix, report = run_pipeline(table, cfg)
        assert matrix.shape == (12, 64)
        assert len(report.per_split_accuracy) == 3

    def test_combined_kind_scheme(self):
        table = toy_table(m=8)
        cfg = config_from_scheme("N1+H1+W1", proto10())
        matrix, _ = run_pipeline(table, cfg)
        assert matrix.shape == (8, 96)

    def test_two_class_synthetic_separation(self):
        table = toy_table(m=16, n=48)
        cfg = config_from_scheme(
            "H1+DS", SplitProtocol.random(train_per_class=4, repeats=5, seed=10)
        )
        _, report = run_pipeline(table, cfg)
        assert report.mean_accuracy > 0.9

    def test_workers_do_not_change_output(self):
        table = toy_table()
        base = config_from_scheme("H1+DS", proto10())
        threaded = config_from_scheme("H1+DS", proto10(), workers=4)
        m1, r1 = run_pipeline(table, base)
        m2, r2 = run_pipeline(table, threaded)
        assert np.array_equal(m1, m2)
        assert r1.per_split_accuracy == r2.per_split_accuracy

    def test_descriptor_matrix_order_independent_of_selection_order(self):
        table = toy_table(m=6)
        a = RunConfig(kinds=("W", "H", "N"), distances=(2, 1), include_ds=True,
                      protocol=proto10())
        b = RunConfig(kinds=("N", "H", "W"), distances=(1, 2), include_ds=True,
                      protocol=proto10())
        assert np.array_equal(descriptor_matrix(table, a), descriptor_matrix(table, b))


class TestEmit:
    def test_report_files(self, tmp_path):
        table = toy_table()
        cfg = config_from_scheme("H1+DS", proto10())
        _, report = run_pipeline(table, cfg)
        paths = emit_report(report, tmp_path / "out", cfg)
        metrics = json.loads(paths["metrics"].read_text())
        assert len(metrics["per_split_accuracy"]) == 3
        assert metrics["mean_accuracy"] == pytest.approx(
            np.mean(metrics["per_split_accuracy"])
        )
        assert metrics["seed"] == 9
        assert metrics["config"]["scheme"] == "HD1+DS"
        rows = paths["confusion"].read_text().strip().splitlines()
        assert rows[0] == "true,0,1"
        totals = np.array([[int(v) for v in r.split(",")[1:]] for r in rows[1:]])
        assert np.array_equal(totals, report.confusion)
        assert totals.sum(axis=1).tolist() == [
            int(row_sum) for row_sum in report.confusion.sum(axis=1)
        ]

    def test_report_idempotent_overwrite(self, tmp_path):
        table = toy_table()
        cfg = config_from_scheme("H1+DS", proto10())
        _, report = run_pipeline(table, cfg)
        first = emit_report(report, tmp_path, cfg)["metrics"].read_bytes()
        second = emit_report(report, tmp_path, cfg)["metrics"].read_bytes()
        assert first == second

    def test_profile_format(self, tmp_path):
        profile = DistanceDegreeProfile(node=0, pairs=((1, 1.0), (2, 1.0)))
        out = emit_profile(profile, tmp_path / "p.csv")
        assert out.read_text() == "r,d\n1,1\n2,1\n"

    def test_profile_fractional_degrees(self, tmp_path):
        profile = DistanceDegreeProfile(node=1, pairs=((1, 0.5), (2, 2.25)))
        out = emit_profile(profile, tmp_path / "p.csv")
        assert out.read_text() == "r,d\n1,0.5\n2,2.25\n"

    def test_empty_profile_unrepresentable(self):
        with pytest.raises(InvalidInputError):
            DistanceDegreeProfile(node=0, pairs=((0, 1.0),))


class TestCli:
    def run_ok(self, argv):
        code = main(argv)
        assert code == 0

    def test_describe_and_reload(self, tmp_path):
        src = tmp_path / "in.csv"
        save_features(*_small_table(), src)
        out = tmp_path / "desc.csv"
        self.run_ok([
            "describe", "--input", str(src), "--kinds", "N,H", "--distances", "1",
            "--ds", "--normalize", "--output", str(out),
        ])
        table = load_features(out)
        assert table.n_features == 3 * 8  # ND1 + HD1 + DS over length-8 rows

    def test_describe_selection_order_is_canonical(self, tmp_path):
        src = tmp_path / "in.csv"
        save_features(*_small_table(), src)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        self.run_ok(["describe", "--input", str(src), "--kinds", "H,N",
                     "--distances", "2,1", "--output", str(a)])
        self.run_ok(["describe", "--input", str(src), "--kinds", "N,H",
                     "--distances", "1,2", "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_classify_deterministic_bytes(self, tmp_path):
        src = tmp_path / "in.csv"
        table = toy_table()
        save_features(table.labels, table.features, src)
        d1, d2 = tmp_path / "r1", tmp_path / "r2"
        args = ["classify", "--input", str(src), "--scheme", "H1+DS",
                "--protocol", "random:train=3,repeats=4,seed=21", "--lambda", "1e-3"]
        self.run_ok(args + ["--report", str(d1)])
        self.run_ok(args + ["--report", str(d2)])
        assert (d1 / "metrics.json").read_bytes() == (d2 / "metrics.json").read_bytes()
        assert (d1 / "confusion.csv").read_bytes() == (d2 / "confusion.csv").read_bytes()

    def test_classify_fixed_folds(self, tmp_path):
        src = tmp_path / "in.csv"
        table = toy_table()
        save_features(table.labels, table.features, src)
        folds = [{"train": list(range(0, 8)), "test": list(range(8, 12))},
                 {"train": list(range(4, 12)), "test": list(range(0, 4))}]
        folds_path = tmp_path / "folds.json"
        folds_path.write_text(json.dumps(folds))
        report_dir = tmp_path / "rep"
        self.run_ok(["classify", "--input", str(src), "--scheme", "HD1",
                     "--protocol", f"folds:{folds_path}", "--report", str(report_dir)])
        metrics = json.loads((report_dir / "metrics.json").read_text())
        assert len(metrics["per_split_accuracy"]) == 2

    def test_synth_families(self, tmp_path):
        out = tmp_path / "s.csv"
        self.run_ok(["synth", "--family", "fractal", "--depth", "2", "--output", str(out)])
        assert load_features(out).n_features == 15
        self.run_ok(["synth", "--family", "periodic", "--template", "0,1,0.5",
                     "--repeats", "4", "--output", str(out)])
        assert load_features(out).features[0].tolist() == [0, 1, 0.5] * 4
        self.run_ok(["synth", "--family", "uniform", "--n", "20", "--seed", "3",
                     "--output", str(out)])
        assert load_features(out).n_features == 20

    def test_profile_subcommand(self, tmp_path):
        src = tmp_path / "in.csv"
        save_features(*_small_table(), src)
        out = tmp_path / "prof.csv"
        self.run_ok(["profile", "--input", str(src), "--row", "0", "--node", "0",
                     "--rmax", "3", "--mode", "walks", "--output", str(out)])
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "r,d" and len(lines) == 4

    def test_verify_subcommand(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 6 and "FAIL" not in out

    def test_exit_codes(self, tmp_path):
        missing = tmp_path / "missing.csv"
        assert main(["describe", "--input", str(missing), "--kinds", "N",
                     "--distances", "1", "--output", str(tmp_path / "o.csv")]) == 4
        bad = write(tmp_path / "bad.csv", "label,x\n0,1\n")
        assert main(["describe", "--input", str(bad), "--kinds", "N",
                     "--distances", "1", "--output", str(tmp_path / "o.csv")]) == 3
        good = tmp_path / "good.csv"
        save_features(*_small_table(), good)
        assert main(["classify", "--input", str(good), "--scheme", "N1+H2",
                     "--protocol", "random:train=1,repeats=1,seed=0",
                     "--report", str(tmp_path / "rep")]) == 2
        assert main(["classify", "--input", str(good), "--scheme", "HD1",
                     "--protocol", "nonsense", "--report", str(tmp_path / "rep")]) == 2


def _small_table():
    rng = np.random.default_rng(64)
    features = rng.random((6, 8))
    labels = np.arange(6) % 2
    return labels, features
