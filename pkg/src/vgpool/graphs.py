"""Visibility-graph construction for 1-D series.

A series of real values y_0..y_{n-1} sits at integer positions x = i.  Two
points are "visible" to each other when the straight segment between them
clears every intermediate bar:

* natural visibility: the intermediate value must lie strictly below the
  sight line joining the endpoints;
* horizontal visibility: the intermediate value must lie strictly below
  both endpoint values.

Weighted graphs share the natural edge set and attach the signed slope
angle arctan((y_j - y_i)/(j - i)) to each edge.

The shipped builders are O(n^2) sweeps with running-maximum pruning; the
``*_edges_reference`` functions are deliberately naive O(n^3) triple checks
kept as independent cross-validation oracles.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import InvalidArgumentError, InvalidInputError

NATURAL = "natural"
HORIZONTAL = "horizontal"
WEIGHTED = "weighted"

GRAPH_KINDS = (NATURAL, HORIZONTAL, WEIGHTED)


@dataclass(frozen=True, eq=False)
class Series:
    """An ordered sequence of finite reals; value i sits at position x = i.

    ``x`` optionally records the original (non-uniform) sample positions of
    a generated series.  It is metadata only: graph construction always uses
    the integer index.
    """

    values: np.ndarray
    x: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise InvalidInputError("series must be one-dimensional")
        if values.size < 1:
            raise InvalidInputError("series must contain at least one value")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("series contains non-finite values")
        object.__setattr__(self, "values", values)
        if self.x is not None:
            x = np.asarray(self.x, dtype=np.float64)
            if x.shape != values.shape:
                raise InvalidInputError("position metadata must match series length")
            object.__setattr__(self, "x", x)

    def __len__(self) -> int:
        return int(self.values.size)


def as_series(data) -> Series:
    """Coerce an array-like (or pass through a Series) with validation."""
    if isinstance(data, Series):
        return data
    return Series(np.asarray(data, dtype=np.float64))


@dataclass(eq=False)
class VisibilityGraph:
    """Undirected visibility graph over n nodes.

    Edges are stored once as (i, j) pairs with i < j, sorted
    lexicographically.  ``weights`` is present exactly when
    kind == "weighted" and aligns with ``edges`` row for row.
    """

    n: int
    kind: str
    edges: np.ndarray = field(repr=False)
    weights: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in GRAPH_KINDS:
            raise InvalidArgumentError(f"unknown graph kind {self.kind!r}")
        if (self.weights is not None) != (self.kind == WEIGHTED):
            raise InvalidInputError("weights must be present exactly for weighted graphs")

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_set(self) -> set[tuple[int, int]]:
        """Edges as a set of (i, j) tuples with i < j."""
        return {(int(i), int(j)) for i, j in self.edges}

    def adjacency(self, weighted: bool | None = None) -> sp.csr_matrix:
        """Symmetric adjacency (0/1) or weight matrix as CSR.

        ``weighted`` defaults to True for weighted graphs and False otherwise.
        """
        if weighted is None:
            weighted = self.kind == WEIGHTED
        if weighted and self.weights is None:
            raise InvalidArgumentError("graph carries no weights")
        if self.n_edges == 0:
            return sp.csr_matrix((self.n, self.n), dtype=np.float64)
        i = self.edges[:, 0]
        j = self.edges[:, 1]
        vals = self.weights if weighted else np.ones(self.n_edges)
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
        data = np.concatenate([vals, vals]).astype(np.float64)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def degrees(self) -> np.ndarray:
        """Unweighted node degrees (edge counts), regardless of kind."""
        deg = np.zeros(self.n, dtype=np.int64)
        if self.n_edges:
            np.add.at(deg, self.edges[:, 0], 1)
            np.add.at(deg, self.edges[:, 1], 1)
        return deg


def _pack_edges(src: list[np.ndarray], dst: list[np.ndarray]) -> np.ndarray:
    if not src:
        return np.empty((0, 2), dtype=np.int64)
    i = np.concatenate(src)
    j = np.concatenate(dst)
    edges = np.stack([i, j], axis=1).astype(np.int64)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def _nvg_edge_arrays(y: np.ndarray) -> np.ndarray:
    """Natural visibility edge list via per-node slope sweep.

    For a fixed left endpoint i, j is visible iff the slope from i to j
    strictly exceeds the running maximum of the slopes from i to every
    intermediate point.  Equality means the intermediate sits exactly on
    the sight line and blocks it.
    """
    n = y.size
    src: list[np.ndarray] = []
    dst: list[np.ndarray] = []
    inv = 1.0 / np.arange(1, max(n, 2))
    for i in range(n - 1):
        seg = y[i + 1:]
        slopes = (seg - y[i]) * inv[: seg.size]
        vis = np.empty(seg.size, dtype=bool)
        vis[0] = True  # adjacent nodes: no intermediate exists
        if seg.size > 1:
            run_max = np.maximum.accumulate(slopes[:-1])
            vis[1:] = slopes[1:] > run_max
        js = np.nonzero(vis)[0] + i + 1
        src.append(np.full(js.size, i, dtype=np.int64))
        dst.append(js)
    return _pack_edges(src, dst)


def _hvg_edge_arrays(y: np.ndarray) -> np.ndarray:
    """Horizontal visibility edge list with early termination.

    Once an intermediate reaches y_i, no later node can be seen from i,
    so the sweep stops at the first such index (which is itself still a
    candidate endpoint).
    """
    n = y.size
    src: list[np.ndarray] = []
    dst: list[np.ndarray] = []
    for i in range(n - 1):
        seg = y[i + 1:]
        blockers = np.nonzero(seg >= y[i])[0]
        stop = blockers[0] + 1 if blockers.size else seg.size
        window = seg[:stop]
        vis = np.empty(window.size, dtype=bool)
        vis[0] = True
        if window.size > 1:
            run_max = np.maximum.accumulate(window[:-1])
            # intermediates are < y_i by the truncation, so only the
            # right-endpoint comparison remains
            vis[1:] = run_max < window[1:]
        js = np.nonzero(vis)[0] + i + 1
        src.append(np.full(js.size, i, dtype=np.int64))
        dst.append(js)
    return _pack_edges(src, dst)


def build_nvg(series) -> VisibilityGraph:
    """Natural visibility graph of a series.

    Nodes i < j are connected iff every intermediate value lies strictly
    below the straight sight line between (i, y_i) and (j, y_j); an
    intermediate exactly on the line blocks visibility.
    """
    s = as_series(series)
    return VisibilityGraph(n=len(s), kind=NATURAL, edges=_nvg_edge_arrays(s.values))


def build_hvg(series) -> VisibilityGraph:
    """Horizontal visibility graph: intermediates must sit strictly below
    both endpoint values."""
    s = as_series(series)
    return VisibilityGraph(n=len(s), kind=HORIZONTAL, edges=_hvg_edge_arrays(s.values))


def build_wvg(series) -> VisibilityGraph:
    """Weighted visibility graph: natural edge set, each edge carrying the
    slope angle arctan((y_j - y_i)/(j - i)) in radians, in (-pi/2, pi/2)."""
    s = as_series(series)
    edges = _nvg_edge_arrays(s.values)
    y = s.values
    if edges.shape[0]:
        rise = y[edges[:, 1]] - y[edges[:, 0]]
        run = (edges[:, 1] - edges[:, 0]).astype(np.float64)
        weights = np.arctan(rise / run)
    else:
        weights = np.empty(0, dtype=np.float64)
    return VisibilityGraph(n=len(s), kind=WEIGHTED, edges=edges, weights=weights)


def nvg_edges_reference(values) -> set[tuple[int, int]]:
    """Brute-force O(n^3) natural-visibility oracle.

    Checks the sight-line inequality directly for every (i, k, j) triple;
    kept independent of the sweep in build_nvg for cross-validation.
    """
    y = as_series(values).values
    n = y.size
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            k = np.arange(i + 1, j)
            line = y[j] + (y[i] - y[j]) * (j - k) / (j - i)
            if np.all(y[k] < line):
                edges.add((i, j))
    return edges


def hvg_edges_reference(values) -> set[tuple[int, int]]:
    """Brute-force O(n^3) horizontal-visibility oracle."""
    y = as_series(values).values
    n = y.size
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if np.all(y[i + 1: j] < min(y[i], y[j])):
                edges.add((i, j))
    return edges
