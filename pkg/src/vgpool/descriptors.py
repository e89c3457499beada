"""Degree-based descriptor pooling over visibility graphs.

A graph is pooled into fixed-length vectors:

* degree at distance r ("walks" mode): per node, the number of length-r
  walks to *other* nodes, i.e. the off-diagonal row sums of the r-th power
  of the adjacency matrix (weight matrix for weighted graphs, where walk
  contributions are products of edge weights);
* degree at distance r ("shell" mode): per node, how many nodes sit at
  unweighted shortest-path distance exactly r;
* degree sequence: the unweighted degrees sorted ascending.

Blocks combine by concatenation and normalize per block into [0, 1].
Matrix powers are never formed densely; row sums come from repeated
sparse matrix-vector products and diagonals from block propagation.
"""

import re
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from .errors import InvalidArgumentError, InvalidInputError
from .graphs import VisibilityGraph

POOLING_MODES = ("walks", "shell")

DS_LABEL = "DS"

_SCHEME_TOKEN = re.compile(r"^([NHW])D?([0-9]+)$")

_DIAG_BLOCK = 256
_SHELL_BLOCK = 512


@dataclass(frozen=True, eq=False)
class DescriptorVector:
    """A pooled feature vector with its block structure.

    ``blocks`` holds the length of each component block, in order;
    ``scheme`` is the '+'-joined label of those blocks (e.g. "HD1+DS").
    """

    values: np.ndarray
    scheme: str
    blocks: tuple[int, ...]
    normalized: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if sum(self.blocks) != values.size:
            raise InvalidInputError("block lengths do not sum to vector length")

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class DistanceDegreeProfile:
    """Degree-at-distance pairs (r, d) for one node, r strictly increasing."""

    node: int
    pairs: tuple[tuple[int, float], ...]

    def __post_init__(self):
        rs = [r for r, _ in self.pairs]
        if rs != sorted(set(rs)) or (rs and rs[0] < 1):
            raise InvalidInputError("distances must be strictly increasing positive integers")


def block_label(kind: str, r: int) -> str:
    """Canonical block label, e.g. ("H", 1) -> "HD1"."""
    return f"{kind}D{r}"


def canonical_scheme(scheme: str) -> str:
    """Normalize a scheme label: accepts compact tokens ("H1") and canonical
    ones ("HD1"); returns the '+'-joined canonical form."""
    parts = []
    for token in scheme.split("+"):
        token = token.strip()
        if token.upper() == DS_LABEL:
            parts.append(DS_LABEL)
            continue
        m = _SCHEME_TOKEN.match(token.upper())
        if not m:
            raise InvalidArgumentError(f"unrecognized scheme token {token!r}")
        parts.append(block_label(m.group(1), int(m.group(2))))
    if not parts:
        raise InvalidArgumentError("empty scheme")
    return "+".join(parts)


def scheme_matches(a: str, b: str) -> bool:
    """True when two scheme labels denote the same block sequence."""
    return canonical_scheme(a) == canonical_scheme(b)


def _walk_degree(graph: VisibilityGraph, r: int) -> np.ndarray:
    m = graph.adjacency()  # weight matrix for weighted graphs, 0/1 otherwise
    row_sums = np.ones(graph.n)
    for _ in range(r):
        row_sums = m @ row_sums
    return row_sums - _power_diagonal(m, r)


def _power_diagonal(m: sp.csr_matrix, r: int, block: int = _DIAG_BLOCK) -> np.ndarray:
    """diag(M^r) by propagating identity columns in blocks (no dense power)."""
    n = m.shape[0]
    if r == 1:
        return np.zeros(n)  # no self-loops
    diag = np.empty(n)
    for start in range(0, n, block):
        cols = np.arange(start, min(start + block, n))
        x = np.zeros((n, cols.size))
        x[cols, np.arange(cols.size)] = 1.0
        for _ in range(r):
            x = m @ x
        diag[cols] = x[cols, np.arange(cols.size)]
    return diag


def _shell_degree(graph: VisibilityGraph, r: int) -> np.ndarray:
    adj = graph.adjacency(weighted=False)
    counts = np.empty(graph.n)
    for start in range(0, graph.n, _SHELL_BLOCK):
        idx = np.arange(start, min(start + _SHELL_BLOCK, graph.n))
        dist = shortest_path(adj, method="D", unweighted=True, indices=idx)
        counts[idx] = (dist == r).sum(axis=1)
    return counts


def degree_at_distance(graph: VisibilityGraph, r: int, mode: str = "walks") -> np.ndarray:
    """Per-node degree at distance r.

    walks: off-diagonal row sums of the r-th adjacency (or weight) power;
    r = 1 reduces to the ordinary (or weighted) degree.
    shell: number of nodes at unweighted hop distance exactly r.
    """
    if r < 1:
        raise InvalidArgumentError("distance r must be a positive integer")
    if mode not in POOLING_MODES:
        raise InvalidArgumentError(f"mode must be one of {POOLING_MODES}, got {mode!r}")
    if graph.n < 1:
        raise InvalidInputError("graph has no nodes")
    if mode == "walks":
        return _walk_degree(graph, r)
    return _shell_degree(graph, r)


def degree_sequence(graph: VisibilityGraph) -> np.ndarray:
    """Unweighted node degrees sorted ascending (any graph kind)."""
    if graph.n < 1:
        raise InvalidInputError("graph has no nodes")
    return np.sort(graph.degrees()).astype(np.float64)


def normalize(vector: DescriptorVector) -> DescriptorVector:
    """Min-max normalize each block independently into [0, 1].

    Constant blocks map to all zeros.  Idempotent on non-constant blocks.
    """
    values = vector.values
    if values.size == 0:
        raise InvalidInputError("cannot normalize an empty vector")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("vector contains non-finite values")
    out = np.empty_like(values)
    start = 0
    for length in vector.blocks:
        block = values[start: start + length]
        lo, hi = block.min(), block.max()
        out[start: start + length] = 0.0 if hi == lo else (block - lo) / (hi - lo)
        start += length
    return DescriptorVector(out, vector.scheme, vector.blocks, normalized=True)


def combine(parts: list[DescriptorVector]) -> DescriptorVector:
    """Concatenate descriptor blocks in the given order.

    The scheme label joins the part labels with '+'; the parts must come
    from the same sample (not checkable here).
    """
    if not parts:
        raise InvalidArgumentError("combine requires at least one part")
    if len(parts) == 1:
        return parts[0]
    values = np.concatenate([p.values for p in parts])
    scheme = "+".join(p.scheme for p in parts)
    blocks = tuple(b for p in parts for b in p.blocks)
    normalized = all(p.normalized for p in parts)
    return DescriptorVector(values, scheme, blocks, normalized=normalized)


def distance_profile(
    graph: VisibilityGraph, node: int, r_max: int, mode: str = "walks"
) -> DistanceDegreeProfile:
    """Degree at distances 1..r_max for one node (for log-log scaling plots)."""
    if not 0 <= node < graph.n:
        raise InvalidArgumentError(f"node {node} out of range for n={graph.n}")
    if r_max < 1:
        raise InvalidArgumentError("r_max must be a positive integer")
    pairs = tuple(
        (r, float(degree_at_distance(graph, r, mode)[node])) for r in range(1, r_max + 1)
    )
    return DistanceDegreeProfile(node=node, pairs=pairs)
