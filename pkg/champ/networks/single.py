import typing
import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from .base import AbstractNetwork, EdgeArrays, frozen, check_weights, merge_duplicates, strengths
from ..utils import ValidationError

EdgeList = typing.Iterable[typing.Sequence[typing.Any]]

def resolve_nodes(edge_list: EdgeList, default_weight: float = 1.0) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray, typing.Optional[typing.List[str]]]:
    """
    Resolves node references of an edge list into dense integer ids.
    If every endpoint is an integer, the integers are used as ids directly.
    Otherwise endpoints are treated as names and numbered in order of first
    appearance; the names are returned alongside the edge arrays
    """
    src, dst, weight = [], [], []
    for entry in edge_list:
        if len(entry) == 2:
            i, j = entry
            w = default_weight
        elif len(entry) == 3:
            i, j, w = entry
        else:
            raise ValidationError("Edge entries must be (src, dst) or (src, dst, weight), got {}".format(entry))
        src.append(i)
        dst.append(j)
        weight.append(float(w))
    if not len(src):
        raise ValidationError("Edge list is empty")
    integral = all(
        isinstance(v, (int, np.integer)) and not isinstance(v, bool)
        for v in src + dst
    )
    if integral:
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if min(src.min(), dst.min()) < 0:
            raise ValidationError("Integer node ids must be nonnegative")
        names = None
    else:
        index = {}
        for v in (v for pair in zip(src, dst) for v in pair):
            key = str(v)
            if key not in index:
                index[key] = len(index)
        src = np.asarray([index[str(v)] for v in src], dtype=np.int64)
        dst = np.asarray([index[str(v)] for v in dst], dtype=np.int64)
        names = [*index]
    return src, dst, np.asarray(weight, dtype=float), names

class Network(AbstractNetwork):
    """
    Immutable weighted undirected single-layer network.
    Holds the adjacency as an oriented edge list together with node strengths
    and total weight. The Newman-Girvan null model k_i k_j / 2m is derived from
    these on demand and never stored densely
    """

    def __init__(
        self, node_count: int, src: np.ndarray, dst: np.ndarray, weight: np.ndarray,
        node_names: typing.Optional[typing.Sequence[str]] = None,
        metadata_labels: typing.Optional[typing.Sequence[typing.Any]] = None
    ):
        """
        Builds the network from parallel edge arrays.
        Duplicate (i, j) entries are summed. Use build_network for input parsing
        """
        self.node_count = int(node_count)
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=float)
        if not (len(src) == len(dst) == len(weight)):
            raise ValidationError("Edge arrays must have equal length")
        if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= self.node_count):
            raise ValidationError("Edge endpoints must be valid node ids in [0, {})".format(self.node_count))
        check_weights(weight)
        src, dst, weight = merge_duplicates(self.node_count, src, dst, weight)
        self.src = frozen(src)
        self.dst = frozen(dst)
        self.weight = frozen(weight)
        self.strength = frozen(strengths(self.node_count, src, dst, weight))
        self.total_weight = float(self.strength.sum() / 2)
        if node_names is not None and len(node_names) != self.node_count:
            raise ValidationError("Expected {} node names, got {}".format(self.node_count, len(node_names)))
        self.node_names = None if node_names is None else tuple(str(name) for name in node_names)
        self.metadata_labels = None
        if metadata_labels is not None:
            self.metadata_labels = self.check_labels(metadata_labels)
        if self.degenerate:
            self.flag_degenerate("Network has zero total weight; modularity coefficients are undefined")

    def __repr__(self) -> str:
        return '<Network nodes={} edges={} m={}>'.format(
            self.node_count,
            len(self.src),
            self.total_weight
        )

    @property
    def size(self) -> int:
        return self.node_count

    @property
    def degenerate(self) -> bool:
        return self.total_weight <= 0

    @property
    def edges(self) -> typing.List[typing.Tuple[int, int, float]]:
        """
        Edge list as (i, j, w) tuples with i <= j
        """
        return list(zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()))

    def objective_edges(self, omega: float = 0.0) -> EdgeArrays:
        return self.src, self.dst, self.weight

    def null_strengths(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        return self.strength.reshape(-1, 1), np.array([2 * self.total_weight])

    def with_metadata(self, metadata_labels: typing.Sequence[typing.Any]) -> 'Network':
        """
        Returns a copy of this network carrying the given per-node labels
        """
        return Network(self.node_count, self.src, self.dst, self.weight, self.node_names, metadata_labels)

    def adjacency(self) -> sp.csr_matrix:
        """
        Symmetric sparse adjacency in the ordered-pair convention:
        A_ij = A_ji = w for i != j, and A_ii = 2w for a self-loop
        """
        loops = self.src == self.dst
        rows = np.concatenate([self.src, self.dst[~loops]])
        cols = np.concatenate([self.dst, self.src[~loops]])
        vals = np.concatenate([np.where(loops, 2 * self.weight, self.weight), self.weight[~loops]])
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.node_count, self.node_count))

    def components(self) -> typing.Tuple[int, np.ndarray]:
        """
        Returns (count, labels) of connected components.
        Zero-weight edges do not connect nodes
        """
        positive = self.weight > 0
        graph = sp.csr_matrix(
            (np.ones(positive.sum()), (self.src[positive], self.dst[positive])),
            shape=(self.node_count, self.node_count)
        )
        return connected_components(graph, directed=False)

    def permuted(self, permutation: typing.Sequence[int]) -> 'Network':
        """
        Returns the network with node i renamed to permutation[i]
        """
        permutation = np.asarray(permutation, dtype=np.int64)
        if sorted(permutation.tolist()) != list(range(self.node_count)):
            raise ValidationError("Not a permutation of {} nodes".format(self.node_count))
        order = np.argsort(permutation)
        return Network(
            self.node_count,
            permutation[self.src],
            permutation[self.dst],
            self.weight,
            None if self.node_names is None else [self.node_names[i] for i in order],
            None if self.metadata_labels is None else self.metadata_labels[order]
        )

def build_network(
    edge_list: EdgeList, node_count: typing.Optional[int] = None,
    metadata: typing.Optional[typing.Dict[typing.Any, typing.Any]] = None,
    default_weight: float = 1.0
) -> Network:
    """
    Builds a Network from (src, dst[, weight]) entries.
    Integer endpoints are used as node ids; any other endpoints are treated as
    names and numbered in order of first appearance.
    node_count may extend the network with isolated trailing nodes.
    metadata maps node (id or name) to a categorical label; nodes without an
    entry get None
    """
    src, dst, weight, names = resolve_nodes(edge_list, default_weight)
    check_weights(weight)
    n = int(max(src.max(), dst.max())) + 1
    if node_count is not None:
        if node_count < n:
            raise ValidationError("node_count={} is smaller than the largest node id {}".format(node_count, n - 1))
        if names is not None:
            names = names + ['__isolated_{}'.format(i) for i in range(n, node_count)]
        n = node_count
    labels = None
    if metadata is not None:
        keys = names if names is not None else range(n)
        lookup = {str(k): v for k, v in metadata.items()}
        labels = [lookup.get(str(key)) for key in keys]
    return Network(n, src, dst, weight, names, labels)
