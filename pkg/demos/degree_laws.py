"""The exact degree laws of the self-similar cascade series, checked three
ways: closed-form arithmetic, the recursion, and brute-force graphs.

Run: python demos/degree_laws.py
"""

import vgpool as vg
from vgpool.synth import FractalSeriesSpec
from vgpool.verify import degree_tail_fit, run_identity_checks

# Divisor-sum identity: summing the Mobius-inverted degree term over the
# divisors of n recovers 2^n exactly.
print("n   deg(n)        sum over divisors   2^n")
for n in (1, 2, 3, 4, 5, 6, 12):
    total = sum(vg.deg_arith(d) for d in vg.divisors(n))
    print(f"{n:<3} {vg.deg_arith(n):<13} {total:<19} {2**n}")

# Left-degree law on the generated cascade: measure K(0) from the depth-0
# brute-force graph, then watch 2K+1 hold depth by depth.
print("\ndepth  n_points  anchor left degree  2K+1 prediction")
prev = None
for depth in range(5):
    series = vg.synth_fractal(FractalSeriesSpec(depth=depth))
    anchor = len(series) - 1
    k = sum(1 for _, j in vg.nvg_edges_reference(series.values) if j == anchor)
    pred = "-" if prev is None else 2 * prev + 1
    print(f"{depth:<6} {len(series):<9} {k:<19} {pred}")
    prev = k

# Averaged right-degree term, both printed readings.
print("\nn   as-written   per-step")
for n in range(1, 7):
    print(f"{n:<3} {str(vg.k_right(n, 'as-written')):<12} {vg.k_right(n, 'per-step')}")

# Uniform noise gives an exponentially decaying degree tail: the log of
# the degree distribution is close to a straight line over the bulk.
series = vg.synth_random_uniform(10_000, seed=7)
fit = degree_tail_fit(vg.build_nvg(series).degrees())
print(f"\nuniform n=10000 NVG tail: log P(k) ~ {fit.slope:.3f} k + {fit.intercept:.3f}"
      f" over k={fit.k_lo}..{fit.k_hi}, R^2 = {fit.r_squared:.4f}")

# Periodic series: interior degrees depend only on the phase.
series = vg.synth_periodic(4, 10, [0.2, 0.9, 0.5, 0.7])
degrees = vg.build_nvg(series).degrees()
phases = {p: sorted({int(degrees[i]) for i in range(4, len(series) - 4) if i % 4 == p})
          for p in range(4)}
print("periodic interior degrees by phase:", phases)

# The packaged identity suite bundles all of the exact checks.
print()
for result in run_identity_checks():
    print(("PASS" if result.passed else "FAIL"), result.name, "-", result.detail)
