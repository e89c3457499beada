"""Series generators: the self-similar cascade and its left-degree law,
periodic tiling, and seeded uniform noise."""

import numpy as np
import pytest

from vgpool.errors import InvalidArgumentError, ResourceLimitError
from vgpool.graphs import build_nvg, nvg_edges_reference
from vgpool.synth import (
    FractalSeriesSpec,
    synth_fractal,
    synth_periodic,
    synth_random_uniform,
)


def anchor_left_degree(series) -> int:
    """Brute-force NVG left degree of the node originally at (2, 1/3)."""
    anchor = len(series) - 1
    assert series.x[anchor] == 2.0
    return sum(1 for _, j in nvg_edges_reference(series.values) if j == anchor)


class TestFractal:
    def test_depth_zero_is_seed_triple(self):
        s = synth_fractal(FractalSeriesSpec(depth=0))
        assert s.x.tolist() == [0.0, 1.0, 2.0]
        assert s.values.tolist() == [1.0, 1.0 / 3.0, 1.0 / 3.0]

    def test_depth_one_counts_and_heights(self):
        s = synth_fractal(FractalSeriesSpec(depth=1))
        assert len(s) == 7
        assert np.count_nonzero(s.values == 1.0 / 9.0) == 4

    def test_point_counts_per_depth(self):
        for depth in range(5):
            spec = FractalSeriesSpec(depth=depth)
            assert len(synth_fractal(spec)) == spec.n_points() == 2 ** (depth + 2) - 1

    def test_seed_pairs_always_present(self):
        s = synth_fractal(FractalSeriesSpec(depth=3))
        pairs = set(zip(s.x.tolist(), s.values.tolist()))
        assert {(0.0, 1.0), (1.0, 1.0 / 3.0), (2.0, 1.0 / 3.0)} <= pairs

    def test_sorted_by_position(self):
        s = synth_fractal(FractalSeriesSpec(depth=4))
        assert np.all(np.diff(s.x) > 0)

    def test_left_degree_recursion(self):
        # K(0) measured from the depth-0 brute-force graph, then 2K+1
        k0 = anchor_left_degree(synth_fractal(FractalSeriesSpec(depth=0)))
        assert k0 == 2
        previous = k0
        for depth in range(1, 5):
            k = anchor_left_degree(synth_fractal(FractalSeriesSpec(depth=depth)))
            assert k == 2 * previous + 1
            previous = k

    def test_left_degree_recursion_seeded_random(self):
        # placement inside the host gaps keeps the layering, so the law
        # survives random positions too
        previous = 2
        for depth in range(1, 4):
            spec = FractalSeriesSpec(depth=depth, placement="seeded-random", seed=5)
            k = anchor_left_degree(synth_fractal(spec))
            assert k == 2 * previous + 1
            previous = k

    def test_deterministic(self):
        a = synth_fractal(FractalSeriesSpec(depth=3))
        b = synth_fractal(FractalSeriesSpec(depth=3))
        assert np.array_equal(a.values, b.values) and np.array_equal(a.x, b.x)

    def test_seeded_random_reproducible(self):
        spec = FractalSeriesSpec(depth=3, placement="seeded-random", seed=9)
        a, b = synth_fractal(spec), synth_fractal(spec)
        assert np.array_equal(a.x, b.x)
        other = synth_fractal(FractalSeriesSpec(depth=3, placement="seeded-random", seed=10))
        assert not np.array_equal(a.x, other.x)

    def test_depth_budget(self):
        with pytest.raises(ResourceLimitError):
            synth_fractal(FractalSeriesSpec(depth=18))

    def test_bad_spec(self):
        with pytest.raises(InvalidArgumentError):
            FractalSeriesSpec(depth=-1)
        with pytest.raises(InvalidArgumentError):
            FractalSeriesSpec(depth=1, placement="scattered")


class TestPeriodic:
    def test_tiling(self):
        s = synth_periodic(2, 3, [0, 1])
        assert s.values.tolist() == [0, 1, 0, 1, 0, 1]

    def test_period_one_constant_gives_path_nvg(self):
        s = synth_periodic(1, 5, [2.0])
        assert build_nvg(s).edge_set() == {(i, i + 1) for i in range(4)}

    def test_interior_phase_periodicity(self):
        rng = np.random.default_rng(31)
        for _ in range(5):
            period = int(rng.integers(2, 9))
            template = rng.random(period)
            while np.ptp(template) == 0:
                template = rng.random(period)
            repeats = 10
            s = synth_periodic(period, repeats, template)
            deg = np.zeros(len(s), dtype=int)
            for i, j in nvg_edges_reference(s.values):
                deg[i] += 1
                deg[j] += 1
            interior = range(period, len(s) - period)
            by_phase = {}
            for i in interior:
                by_phase.setdefault(i % period, set()).add(deg[i])
            assert all(len(v) == 1 for v in by_phase.values())

    def test_errors(self):
        with pytest.raises(InvalidArgumentError):
            synth_periodic(2, 3, [])
        with pytest.raises(InvalidArgumentError):
            synth_periodic(3, 2, [1.0, 2.0])
        with pytest.raises(InvalidArgumentError):
            synth_periodic(1, 0, [1.0])


class TestUniform:
    def test_deterministic_per_seed(self):
        a = synth_random_uniform(50, seed=4)
        b = synth_random_uniform(50, seed=4)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, synth_random_uniform(50, seed=5).values)

    def test_single_sample_in_unit_interval(self):
        s = synth_random_uniform(1, seed=0)
        assert len(s) == 1 and 0.0 <= s.values[0] < 1.0

    def test_range(self):
        s = synth_random_uniform(1000, seed=6)
        assert np.all((s.values >= 0.0) & (s.values < 1.0))

    def test_rejects_zero_length(self):
        with pytest.raises(InvalidArgumentError):
            synth_random_uniform(0)
