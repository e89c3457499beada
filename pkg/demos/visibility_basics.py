"""Build the three visibility-graph flavors on a small series and look at
what each one sees.

Run: python demos/visibility_basics.py
"""

import numpy as np

import vgpool as vg

series = [0.87, 0.49, 0.36, 0.83, 0.87, 0.49, 0.36, 0.83]
print("series:", series)

# Natural visibility: sloped sight lines over the bar tops.
nvg = vg.build_nvg(series)
print("\nnatural edges:   ", sorted(nvg.edge_set()))
print("natural degrees: ", nvg.degrees().tolist())

# Horizontal visibility keeps only flat sight lines, so it is always a
# subgraph of the natural graph.
hvg = vg.build_hvg(series)
print("\nhorizontal edges:", sorted(hvg.edge_set()))
print("subset of natural:", hvg.edge_set() <= nvg.edge_set())

# The weighted flavor shares the natural structure and attaches the slope
# angle of each sight line (radians, sign preserved).
wvg = vg.build_wvg(series)
print("\nweighted edge angles:")
for (i, j), w in zip(wvg.edges.tolist(), wvg.weights):
    print(f"  ({i},{j}): {w:+.4f}")

# Affine changes of the values leave both edge sets alone.
y = np.asarray(series)
print("\nedge sets invariant under y -> 3y + 7:",
      vg.build_nvg(3 * y + 7).edge_set() == nvg.edge_set()
      and vg.build_hvg(3 * y + 7).edge_set() == hvg.edge_set())

# The shipped sweep agrees with the brute-force triple check exactly.
print("matches O(n^3) oracle:",
      nvg.edge_set() == vg.nvg_edges_reference(series)
      and hvg.edge_set() == vg.hvg_edges_reference(series))
