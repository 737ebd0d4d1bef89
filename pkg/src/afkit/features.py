"""Per-argument node embeddings consumed by the graph neural models.

Two layouts exist. P11 stacks six structural graph measures, the grounded
labelling status, and the four gradual-semantics degrees. P128 appends 117
pseudo-random columns derived from a counter-based hash, so the same
(framework, seed) pair always produces bit-identical matrices.

Structural columns are min-max scaled per graph into [0, 1]; a column that
is constant on a graph carries no signal and is mapped to all zeros. The
grounded-status and gradual-semantics columns are already in [0, 1] and are
left untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path
from sklearn.base import BaseEstimator, TransformerMixin

from .gradual import cbs, hcat, mbs, nsa
from .grounded import grounded_labelling
from .validation import check_feature_set, check_framework

__all__ = ["FeatureMatrix", "EmbeddingBuilder", "build_embedding",
           "eigenvector_centrality", "closeness_centrality", "pagerank",
           "greedy_coloring", "random_feature_columns",
           "P11_COLUMNS", "P128_COLUMNS", "RANDOM_COLUMN_COUNT"]

RANDOM_COLUMN_COUNT = 117
P11_COLUMNS = ("eigenvector", "closeness", "in-degree", "out-degree",
               "pagerank", "coloring", "grounded-status",
               "h-cat", "nsa", "Mbs", "Cbs")
P128_COLUMNS = P11_COLUMNS + tuple(
    f"random-{i:03d}" for i in range(RANDOM_COLUMN_COUNT))


@dataclass(frozen=True)
class FeatureMatrix:
    """An n x d embedding with its layout tag and provenance seed."""

    layout: str
    values: np.ndarray
    seed: int
    column_order: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.column_order.index(name)]


def _minmax(column: np.ndarray) -> np.ndarray:
    lo, hi = float(np.min(column)), float(np.max(column))
    if hi == lo:
        return np.zeros_like(column, dtype=np.float64)
    return (column - lo) / (hi - lo)


def _symmetric_adjacency(af) -> sp.csr_matrix:
    edges = af.edge_array
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    tgt = np.concatenate([edges[:, 1], edges[:, 0]])
    data = np.ones(src.shape[0], dtype=np.float64)
    both = sp.coo_matrix((data, (src, tgt)), shape=(af.n, af.n))
    both.sum_duplicates()
    both.data[:] = 1.0
    return both.tocsr()


def eigenvector_centrality(af) -> np.ndarray:
    """Power iteration on the symmetrized attack graph, min-max scaled.

    The iteration carries a unit shift (multiplies by A + I): bipartite
    graphs have paired eigenvalues of equal magnitude on which the bare
    iteration oscillates forever, while the shift makes the leading
    eigenvalue strictly dominant without changing the eigenvector.
    """
    adj = _symmetric_adjacency(af)
    x = np.full(af.n, 1.0 / np.sqrt(af.n))
    for _ in range(100):
        y = x + adj @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return np.zeros(af.n)
        y /= norm
        done = np.linalg.norm(y - x) < 1e-8
        x = y
        if done:
            break
    return _minmax(x)


def closeness_centrality(af) -> np.ndarray:
    """Harmonic closeness on the symmetrized graph, min-max scaled.

    Distances come from one all-pairs unweighted search, so this holds an
    n x n table and is meant for desk-scale graphs, not huge instances.
    """
    adj = _symmetric_adjacency(af)
    dist = shortest_path(adj, method="D", unweighted=True, directed=False)
    with np.errstate(divide="ignore"):
        inv = np.where((dist > 0) & np.isfinite(dist), 1.0 / dist, 0.0)
    return _minmax(inv.sum(axis=1))


def pagerank(af, damping: float = 0.85) -> np.ndarray:
    """Power iteration on the directed attack graph, min-max scaled.

    Uniform teleport, dangling mass redistributed uniformly, 100 iterations
    or L1 change below 1e-10.
    """
    n = af.n
    edges = af.edge_array
    out_deg = af.out_degrees.astype(np.float64)
    dangling = out_deg == 0.0
    weights = 1.0 / out_deg[edges[:, 0]]
    transition = sp.csr_matrix((weights, (edges[:, 1], edges[:, 0])), shape=(n, n))
    v = np.full(n, 1.0 / n)
    for _ in range(100):
        spread = transition @ v + np.sum(v[dangling]) / n
        v_new = (1.0 - damping) / n + damping * spread
        if np.sum(np.abs(v_new - v)) < 1e-10:
            v = v_new
            break
        v = v_new
    return _minmax(v)


def greedy_coloring(af) -> np.ndarray:
    """Greedy coloring of the symmetrized graph in id order, min-max scaled.

    Self-loops are ignored since they would make coloring infeasible.
    """
    adj = _symmetric_adjacency(af)
    indptr, indices = adj.indptr, adj.indices
    colors = np.full(af.n, -1, dtype=np.int64)
    for i in range(af.n):
        taken = {colors[j] for j in indices[indptr[i]:indptr[i + 1]]
                 if j != i and colors[j] >= 0}
        color = 0
        while color in taken:
            color += 1
        colors[i] = color
    return _minmax(colors.astype(np.float64))


_MIX_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def _mix64(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):  # wrapping multiplication is the point
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def random_feature_columns(n: int, seed: int) -> np.ndarray:
    """The 117 deterministic pseudo-random columns of the P128 layout.

    Entry (node, col) is mix64(key ^ (node << 32 | col)) mapped to [0, 1)
    by its top 53 bits, where key = mix64(seed + 2^64 golden ratio) and
    mix64 is the 64-bit finalizer of the splitmix generator. Node and
    column indices are 0-based.
    """
    key = _mix64(np.uint64(np.uint64(seed) + _MIX_GOLDEN))
    nodes = np.arange(n, dtype=np.uint64)[:, None] << np.uint64(32)
    cols = np.arange(RANDOM_COLUMN_COUNT, dtype=np.uint64)[None, :]
    h = _mix64(key ^ (nodes | cols))
    return (h >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def build_embedding(af, labelling=None, layout: str = "P11",
                    seed: int = 0) -> FeatureMatrix:
    """Assemble the embedding matrix in the fixed column order."""
    check_framework(af)
    check_feature_set(layout)
    if labelling is None:
        labelling = grounded_labelling(af)
    columns = [
        eigenvector_centrality(af),
        closeness_centrality(af),
        _minmax(af.in_degrees.astype(np.float64)),
        _minmax(af.out_degrees.astype(np.float64)),
        pagerank(af),
        greedy_coloring(af),
        labelling.status_feature(),
        hcat(af).degrees,
        nsa(af).degrees,
        mbs(af).degrees,
        cbs(af).degrees,
    ]
    if layout == "P128":
        columns.append(random_feature_columns(af.n, seed))
        order = P128_COLUMNS
    else:
        order = P11_COLUMNS
    values = np.column_stack(columns)
    return FeatureMatrix(layout, values, int(seed), order)


class EmbeddingBuilder(TransformerMixin, BaseEstimator):
    """Estimator-style wrapper turning a framework into an embedding matrix.

    fit is stateless validation; transform returns the raw value matrix so
    the class composes with standard pipelines, while build returns the
    full FeatureMatrix when the layout metadata is needed.
    """

    def __init__(self, layout: str = "P11", seed: int = 0):
        self.layout = layout
        self.seed = seed

    def fit(self, af, y=None):
        check_framework(af)
        check_feature_set(self.layout)
        return self

    def build(self, af, labelling=None) -> FeatureMatrix:
        return build_embedding(af, labelling, self.layout, self.seed)

    def transform(self, af) -> np.ndarray:
        return self.build(af).values
