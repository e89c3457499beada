"""Synthetic series generators: self-similar, periodic, and uniform random.

The self-similar family reproduces, on a finite budget, the qualitative
regimes a visibility graph is sensitive to: a geometric cascade of
ever-lower plateaus whose natural-visibility left degree at the anchor
doubles (plus one) with every construction step.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, InvalidInputError, ResourceLimitError
from .graphs import Series

PLACEMENTS = ("deterministic-mid", "seeded-random")

#: Hard cap on generated points (depth 18 would exceed a million points).
MAX_FRACTAL_POINTS = 1_000_000


@dataclass(frozen=True)
class FractalSeriesSpec:
    """Parameters of the self-similar cascade.

    depth      -- number of refinement steps (0 = the three seed points).
    placement  -- "deterministic-mid": new points subdivide their host gap
                  evenly; "seeded-random": positions drawn uniformly inside
                  the host gap.
    seed       -- RNG seed, used only by seeded-random placement.
    """

    depth: int
    placement: str = "deterministic-mid"
    seed: int = 0

    def __post_init__(self):
        if self.depth < 0:
            raise InvalidArgumentError("depth must be non-negative")
        if self.placement not in PLACEMENTS:
            raise InvalidArgumentError(
                f"placement must be one of {PLACEMENTS}, got {self.placement!r}"
            )

    def n_points(self) -> int:
        """Total point count: 3 seeds plus 2^(p+1) per step p."""
        return 3 + sum(2 ** (p + 1) for p in range(1, self.depth + 1))


def _subdivide(lo: float, hi: float, count: int, rng: np.random.Generator | None):
    """count interior positions of (lo, hi): even subdivision or uniform draws."""
    if rng is None:
        return lo + (hi - lo) * np.arange(1, count + 1) / (count + 1)
    return np.sort(rng.uniform(lo, hi, size=count))


def synth_fractal(spec: FractalSeriesSpec) -> Series:
    """Generate the self-similar cascade series.

    The construction starts from the pairs (0, 1), (1, 1/3), (2, 1/3).
    Step p (p = 1..depth) adds 2^(p+1) points, all at height 3^-(p+1):
    3 * 2^(p-1) of them fill the gap just left of the anchor at x = 2, and
    the remaining 2^(p-1) fill the gap just left of the point at x = 1.
    Each batch lands strictly inside its host gap, so every batch sits
    between the previous batch and its anchor.

    With that layering, scanning leftward from the anchor meets strictly
    younger (lower) plateaus first, every sight-line slope is a fresh
    strict minimum, and the anchor's left degree obeys
    K(p) = 2*K(p-1) + 1 exactly, starting from K(0) = 2.

    The output is ordered by x and carries the original x values as
    metadata; graph construction uses the integer index.
    """
    if spec.n_points() > MAX_FRACTAL_POINTS:
        raise ResourceLimitError(
            f"depth {spec.depth} needs {spec.n_points()} points"
            f" (budget {MAX_FRACTAL_POINTS})"
        )
    rng = np.random.default_rng(spec.seed) if spec.placement == "seeded-random" else None

    # ordered segments: [0,1) points | x=1 | (1,2) points | x=2
    left_x, left_y = [0.0], [1.0]
    right_x, right_y = [], []
    left_anchor_gap = 0.0  # lower bound of the open gap ending at x = 1
    right_anchor_gap = 1.0  # lower bound of the open gap ending at x = 2

    for p in range(1, spec.depth + 1):
        height = 3.0 ** -(p + 1)
        n_right = 3 * 2 ** (p - 1)
        n_left = 2 ** (p - 1)
        xs = _subdivide(right_anchor_gap, 2.0, n_right, rng)
        right_x.extend(xs)
        right_y.extend([height] * n_right)
        right_anchor_gap = float(xs[-1])
        xs = _subdivide(left_anchor_gap, 1.0, n_left, rng)
        left_x.extend(xs)
        left_y.extend([height] * n_left)
        left_anchor_gap = float(xs[-1])

    x = np.array(left_x + [1.0] + right_x + [2.0])
    y = np.array(left_y + [1.0 / 3.0] + right_y + [1.0 / 3.0])
    return Series(values=y, x=x)


def synth_periodic(period: int, repeats: int, template) -> Series:
    """Tile a template of length ``period`` ``repeats`` times."""
    if period < 1:
        raise InvalidArgumentError("period must be a positive integer")
    if repeats < 1:
        raise InvalidArgumentError("repeats must be a positive integer")
    tpl = np.asarray(template, dtype=np.float64)
    if tpl.size == 0:
        raise InvalidArgumentError("template must be non-empty")
    if tpl.size != period:
        raise InvalidArgumentError(
            f"template length {tpl.size} does not match period {period}"
        )
    if not np.all(np.isfinite(tpl)):
        raise InvalidInputError("template contains non-finite values")
    return Series(values=np.tile(tpl, repeats))


def synth_random_uniform(n: int, seed: int = 0) -> Series:
    """n i.i.d. Uniform(0, 1) samples, reproducible from the seed."""
    if n < 1:
        raise InvalidArgumentError("n must be a positive integer")
    rng = np.random.default_rng(seed)
    return Series(values=rng.random(n))
