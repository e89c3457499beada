"""Self-contained identity checks for the theoretical degree laws.

Each check pairs an exact arithmetic statement with an independent route
(divisor-sum inversion vs. powers of two, recursion vs. closed form,
recursion vs. brute-force graph degrees), so a pass is meaningful and a
failure localizes the defect.
"""

import math
from dataclasses import dataclass

import numpy as np

from .graphs import nvg_edges_reference
from .numth import (
    check_divisor_sum,
    deg_arith,
    divisors,
    k_left,
    k_left_closed_form,
    k_right,
    mobius,
)
from .synth import FractalSeriesSpec, synth_fractal


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_mobius_summatory(limit: int = 200) -> CheckResult:
    # sum of mu over the divisors of n is 1 for n = 1 and 0 otherwise
    bad = [
        n
        for n in range(1, limit + 1)
        if sum(mobius(d) for d in divisors(n)) != (1 if n == 1 else 0)
    ]
    return CheckResult(
        "mobius-summatory",
        not bad,
        f"sum_(d|n) mu(d) = [n=1] for n <= {limit}" + (f"; failed at {bad[:5]}" if bad else ""),
    )


def _check_divisor_sum(limit: int = 24) -> CheckResult:
    bad = [n for n in range(1, limit + 1) if not check_divisor_sum(n)]
    return CheckResult(
        "divisor-sum",
        not bad,
        f"sum_(d|n) deg(d) = 2^n exactly for n = 1..{limit}"
        + (f"; failed at {bad}" if bad else ""),
    )


def _check_right_degree_modes(limit: int = 24) -> CheckResult:
    # the literal reading collapses to the inverted degree term itself
    bad = [n for n in range(1, limit + 1) if k_right(n, "as-written") != deg_arith(n)]
    increasing = all(
        k_right(n + 1, "per-step") > k_right(n, "per-step") for n in range(1, limit)
    )
    ok = not bad and increasing
    return CheckResult(
        "right-degree-modes",
        ok,
        f"as-written equals the inverted degree term and per-step is increasing, n <= {limit}",
    )


def _check_left_recursion(limit: int = 40, k0: int = 1) -> CheckResult:
    bad = [n for n in range(limit + 1) if k_left(n, k0) != k_left_closed_form(n, k0)]
    return CheckResult(
        "left-recursion-closed-form",
        not bad,
        f"2K+1 recursion matches (k0+1)*2^n - 1 exactly for n <= {limit}"
        + (f"; failed at {bad[:5]}" if bad else ""),
    )


def _check_left_leading_term(n: int = 20, k0: int = 1) -> CheckResult:
    ratio = math.log2(k_left(n, k0)) / n
    ok = 0.95 <= ratio <= 1.05
    return CheckResult(
        "left-leading-term",
        ok,
        f"log2(K({n}))/{n} = {ratio:.4f} within [0.95, 1.05]",
    )


def _anchor_left_degree(depth: int) -> int:
    series = synth_fractal(FractalSeriesSpec(depth=depth))
    anchor = len(series) - 1
    return sum(1 for _, j in nvg_edges_reference(series.values) if j == anchor)


def _check_fractal_left_degree(max_depth: int = 4) -> CheckResult:
    measured = [_anchor_left_degree(d) for d in range(max_depth + 1)]
    expected = [k_left(d, measured[0]) for d in range(max_depth + 1)]
    ok = measured == expected
    return CheckResult(
        "fractal-left-degree",
        ok,
        f"brute-force anchor degrees {measured} vs recursion {expected}"
        f" (K(0) measured from the depth-0 graph)",
    )


def run_identity_checks() -> list[CheckResult]:
    """All degree-law checks, in a stable order."""
    return [
        _check_mobius_summatory(),
        _check_divisor_sum(),
        _check_right_degree_modes(),
        _check_left_recursion(),
        _check_left_leading_term(),
        _check_fractal_left_degree(),
    ]


@dataclass(frozen=True)
class TailFit:
    """Least-squares line fit of log P(k) against k over a degree window."""

    slope: float
    intercept: float
    r_squared: float
    k_lo: int
    k_hi: int


def degree_tail_fit(degrees, mass: float = 0.95) -> TailFit:
    """Fit log P(k) vs k over the narrowest degree window holding ``mass``.

    The minimal-width contiguous window of the empirical degree
    distribution keeps the bulk and drops both the depleted extremes (a
    handful of boundary nodes) and the sparse far tail, which is what an
    exponential-tail check needs to see.
    """
    ks, counts = np.unique(np.asarray(degrees), return_counts=True)
    p = counts / counts.sum()
    cum = np.concatenate([[0.0], np.cumsum(p)])
    best = None
    for lo in range(ks.size):
        hi = int(np.searchsorted(cum[lo + 1:], cum[lo] + mass)) + lo + 1
        if hi > ks.size:
            break
        width = ks[hi - 1] - ks[lo]
        if best is None or width < best[0]:
            best = (width, lo, hi - 1)
    if best is None:  # window never reaches the mass target: use everything
        best = (ks[-1] - ks[0], 0, ks.size - 1)
    _, lo, hi = best
    x = ks[lo: hi + 1].astype(np.float64)
    ylog = np.log(p[lo: hi + 1])
    design = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(design, ylog, rcond=None)
    resid = ylog - design @ coef
    ss_tot = float(((ylog - ylog.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float((resid**2).sum()) / ss_tot
    return TailFit(
        slope=float(coef[0]),
        intercept=float(coef[1]),
        r_squared=r2,
        k_lo=int(ks[lo]),
        k_hi=int(ks[hi]),
    )
