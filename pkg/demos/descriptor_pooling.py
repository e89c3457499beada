"""From a series to a fixed-length descriptor vector: degrees at
distances, shells, degree sequence, normalization, and block combination.

Run: python demos/descriptor_pooling.py
"""

import numpy as np

import vgpool as vg
from vgpool.descriptors import DescriptorVector, combine, normalize

rng = np.random.default_rng(0)
series = rng.random(24)
g = vg.build_nvg(series)

# Walk counting generalizes the degree: at distance r, each node counts
# the length-r walks that end somewhere else (weight products for the
# weighted flavor). Shell counting uses hop distance instead.
for r in (1, 2, 3):
    walks = vg.degree_at_distance(g, r, "walks")
    shells = vg.degree_at_distance(g, r, "shell")
    print(f"r={r}  walks[:6]={walks[:6].round(1).tolist()}  shells[:6]={shells[:6].tolist()}")

# A node's profile across distances is what a log-log scaling plot uses.
profile = vg.distance_profile(g, node=12, r_max=3)
print("\nnode 12 profile:", profile.pairs)

# Blocks assemble into schemes. Each block normalizes independently into
# [0, 1], so differently scaled blocks can share one vector.
hd1 = vg.degree_at_distance(vg.build_hvg(series), 1)
ds = vg.degree_sequence(vg.build_hvg(series))
vec = combine([
    DescriptorVector(hd1, "HD1", (hd1.size,)),
    DescriptorVector(ds, "DS", (ds.size,)),
])
print(f"\ncombined scheme {vec.scheme}: length {len(vec)}, blocks {vec.blocks}")
norm = normalize(vec)
print("normalized range per block:",
      [(norm.values[s:s + l].min(), norm.values[s:s + l].max())
       for s, l in zip((0, vec.blocks[0]), vec.blocks)])

# The same pooling, driven by a scheme label through the pipeline config.
cfg = vg.config_from_scheme("H1+DS", vg.SplitProtocol.random(1, 1))
print("\npipeline scheme:", cfg.scheme, "== H1+DS?",
      vg.scheme_matches(cfg.scheme, "H1+DS"))
sample = vg.sample_descriptor(series, cfg)
print("per-sample descriptor:", len(sample), "values, normalized:", sample.normalized)
