"""
Partitions, their reduction to modularity coefficients, and ensembles of
unique partitions with provenance
"""
import typing
from collections import namedtuple
import numpy as np
import pandas as pd
import scipy.sparse as sp
from .networks import AbstractNetwork, Network, MultilayerNetwork
from .utils import ValidationError, sha1_base32

PLANE_TOLERANCE = 1e-12

Provenance = namedtuple(
    'Provenance',
    ['gamma', 'omega', 'seed', 'run_id'],
    defaults=(None, None, None, None)
)

CoefficientTriple = namedtuple(
    'CoefficientTriple',
    ['a_hat', 'p_hat', 'c_hat', 'partition_id', 'community_count', 'community_count_ge5', 'zero_layers'],
    defaults=(0.0, None, 0, 0, ())
)

AddResult = namedtuple('AddResult', ['status', 'partition_id'])

INSERTED = 'inserted'
MERGED = 'merged'

def canonicalize(labels: typing.Sequence[int]) -> np.ndarray:
    """
    Renumbers community ids 0, 1, 2, ... in order of first appearance
    """
    labels = np.asarray(labels)
    if not labels.size:
        return labels.astype(np.int64)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse.ravel()]

class Partition(object):
    """
    Community assignment over the nodes (or node-layers) of a network.
    Partitions compare equal when their canonical label vectors are equal,
    regardless of how the communities are numbered
    """

    def __init__(self, labels: typing.Sequence[int], provenance: typing.Optional[Provenance] = None):
        labels = np.asarray(labels)
        if labels.ndim != 1 or not labels.size:
            raise ValidationError("Partition labels must be a nonempty vector")
        if not np.issubdtype(labels.dtype, np.integer):
            raise ValidationError("Partition labels must be integers, got dtype {}".format(labels.dtype))
        if labels.min() < 0:
            raise ValidationError("Partition labels must be nonnegative")
        self.labels = labels.astype(np.int64)
        self.labels.flags.writeable = False
        self.canonical = canonicalize(self.labels)
        self.canonical.flags.writeable = False
        self.provenance = provenance

    @property
    def key(self) -> bytes:
        return self.canonical.tobytes()

    @property
    def community_count(self) -> int:
        return int(self.canonical.max()) + 1

    def community_sizes(self) -> np.ndarray:
        return np.bincount(self.canonical)

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return '<Partition nodes={} communities={}>'.format(len(self), self.community_count)

def as_partition(partition: typing.Union[Partition, typing.Sequence[int]]) -> Partition:
    return partition if isinstance(partition, Partition) else Partition(partition)

def community_strengths(network: AbstractNetwork, labels: np.ndarray) -> np.ndarray:
    """
    (communities x groups) matrix of summed null-model strengths, where groups
    are the layers contributing to the null model
    """
    strength, _ = network.null_strengths()
    n = len(labels)
    onehot = sp.csr_matrix(
        (np.ones(n), (labels, np.arange(n))),
        shape=(int(labels.max()) + 1, n)
    )
    return np.asarray(onehot @ strength)

def reduce_partition(network: AbstractNetwork, partition: Partition, partition_id: typing.Optional[int] = None) -> CoefficientTriple:
    network.require_weight()
    labels = network.check_labels(partition.canonical)
    if isinstance(network, MultilayerNetwork):
        src, dst, weight = network.intra_src, network.intra_dst, network.intra_weight
    else:
        src, dst, weight = network.objective_edges()
    a_hat = 2 * float(weight[labels[src] == labels[dst]].sum())
    _, two_m = network.null_strengths()
    p_hat = float(((community_strengths(network, labels) ** 2) / two_m).sum())
    c_hat = 0.0
    zero_layers = ()
    if isinstance(network, MultilayerNetwork):
        c_hat = 2 * float(network.inter_weight[labels[network.inter_src] == labels[network.inter_dst]].sum())
        zero_layers = tuple(
            network.layer_name(s) for s in np.flatnonzero(network.layer_weight <= 0)
        )
    sizes = partition.community_sizes()
    return CoefficientTriple(
        a_hat,
        p_hat,
        c_hat,
        partition_id,
        len(sizes),
        int((sizes >= 5).sum()),
        zero_layers
    )

def coefficients(network: Network, partition: typing.Union[Partition, typing.Sequence[int]], partition_id: typing.Optional[int] = None) -> CoefficientTriple:
    """
    Reduces a single-layer partition to (a_hat, p_hat, 0).
    a_hat sums adjacency over ordered within-community pairs and p_hat is the
    sum over communities of squared community strength divided by 2m.
    Runs in O(M + N)
    """
    if isinstance(network, MultilayerNetwork):
        raise ValidationError("coefficients() expects a single-layer network; use coefficients_multilayer()")
    return reduce_partition(network, as_partition(partition), partition_id)

def coefficients_multilayer(network: MultilayerNetwork, partition: typing.Union[Partition, typing.Sequence[int]], partition_id: typing.Optional[int] = None) -> CoefficientTriple:
    """
    Reduces a node-layer partition to (a_hat, p_hat, c_hat).
    The null term is summed per layer against that layer's total weight, and
    c_hat sums interlayer coupling over ordered within-community pairs.
    Layers with zero intralayer weight contribute nothing and are listed in
    the zero_layers field
    """
    if not isinstance(network, MultilayerNetwork):
        raise ValidationError("coefficients_multilayer() expects a MultilayerNetwork")
    return reduce_partition(network, as_partition(partition), partition_id)

def network_coefficients(network: AbstractNetwork, partition: typing.Union[Partition, typing.Sequence[int]], partition_id: typing.Optional[int] = None) -> CoefficientTriple:
    """
    Dispatches to the single-layer or multilayer reduction
    """
    return reduce_partition(network, as_partition(partition), partition_id)

def modularity_at(triple: CoefficientTriple, gamma: float, omega: float = 0.0) -> float:
    """
    Evaluates the linear form a_hat - gamma * p_hat + omega * c_hat
    """
    return triple.a_hat - gamma * triple.p_hat + omega * triple.c_hat

def modularity(network: AbstractNetwork, partition: typing.Union[Partition, typing.Sequence[int]], gamma: float = 1.0, omega: float = 0.0) -> float:
    """
    Conventionally normalized modularity.
    The coefficient form is divided by the total ordered-pair weight of the
    objective, 2m for a single-layer network
    """
    triple = network_coefficients(network, partition)
    _, _, weight = network.objective_edges(omega)
    return modularity_at(triple, gamma, omega) / (2 * float(weight.sum()))

def same_plane(t1: CoefficientTriple, t2: CoefficientTriple, tolerance: float = PLANE_TOLERANCE) -> bool:
    return (
        abs(t1.a_hat - t2.a_hat) < tolerance
        and abs(t1.p_hat - t2.p_hat) < tolerance
        and abs(t1.c_hat - t2.c_hat) < tolerance
    )

def provenance_key(record: Provenance) -> typing.Tuple:
    return tuple((value is None, 0 if value is None else value) for value in record)

class Ensemble(object):
    """
    Set of unique partitions of one network with their coefficients.
    A partition found several times keeps one entry and accumulates the
    provenance of every run that produced it
    """

    def __init__(self, network: AbstractNetwork):
        self.network = network
        self.partitions = []
        self.triples = []
        self.provenance = []
        self._index = {}

    @property
    def multilayer(self) -> bool:
        return isinstance(self.network, MultilayerNetwork)

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self) -> typing.Iterator[Partition]:
        return iter(self.partitions)

    def __getitem__(self, partition_id: int) -> Partition:
        return self.partitions[partition_id]

    def __repr__(self) -> str:
        return '<Ensemble unique={} runs={}>'.format(len(self), self.run_count)

    @property
    def run_count(self) -> int:
        return sum(len(records) for records in self.provenance)

    def add(self, partition: typing.Union[Partition, typing.Sequence[int]], provenance: typing.Optional[Provenance] = None) -> AddResult:
        """
        Adds a partition. Returns ('merged', id) if an equal partition was
        already stored, in which case only the provenance is appended.
        Otherwise computes its coefficients and returns ('inserted', id)
        """
        partition = as_partition(partition)
        if provenance is None:
            provenance = partition.provenance
        self.network.check_labels(partition.labels)
        key = partition.key
        if key in self._index:
            partition_id = self._index[key]
            if provenance is not None:
                self.provenance[partition_id].append(provenance)
            return AddResult(MERGED, partition_id)
        partition_id = len(self.partitions)
        self.triples.append(reduce_partition(self.network, partition, partition_id))
        self.partitions.append(Partition(partition.canonical))
        self.provenance.append([] if provenance is None else [provenance])
        self._index[key] = partition_id
        return AddResult(INSERTED, partition_id)

    def find(self, partition: typing.Union[Partition, typing.Sequence[int]]) -> typing.Optional[int]:
        return self._index.get(as_partition(partition).key)

    def canonical(self) -> 'Ensemble':
        """
        Returns an equivalent ensemble with partitions ordered
        lexicographically by canonical labels and provenance sorted, so that
        partition ids do not depend on insertion order
        """
        order = sorted(range(len(self)), key=lambda i: self.partitions[i].canonical.tolist())
        result = Ensemble(self.network)
        for new_id, old_id in enumerate(order):
            result.partitions.append(self.partitions[old_id])
            result.triples.append(self.triples[old_id]._replace(partition_id=new_id))
            result.provenance.append(sorted(self.provenance[old_id], key=provenance_key))
            result._index[self.partitions[old_id].key] = new_id
        return result

    def fingerprint(self) -> str:
        """
        Short digest of the unique partition set, independent of order
        """
        keys = sorted(partition.canonical.tolist() for partition in self.partitions)
        return sha1_base32(repr(keys).encode(), 10)

    def to_frame(self) -> pd.DataFrame:
        """
        Coefficient table, one row per unique partition
        """
        return pd.DataFrame(
            [
                (t.partition_id, t.a_hat, t.p_hat, t.c_hat, t.community_count, t.community_count_ge5)
                for t in self.triples
            ],
            columns=['partition_id', 'a_hat', 'p_hat', 'c_hat', 'n_communities', 'n_communities_ge5']
        )

def scatter_table(ensemble: Ensemble) -> pd.DataFrame:
    """
    One row per recorded run: the run's parameters, the normalized modularity
    of the partition it found at those parameters, and its community counts
    """
    intra = float(ensemble.network.objective_edges(0.0)[2].sum())
    inter = float(ensemble.network.inter_weight.sum()) if ensemble.multilayer else 0.0
    rows = []
    for triple, records in zip(ensemble.triples, ensemble.provenance):
        for record in records:
            if record.gamma is None:
                continue
            omega = record.omega or 0.0
            rows.append((
                -1 if record.run_id is None else record.run_id,
                record.gamma,
                record.omega,
                record.seed,
                triple.partition_id,
                modularity_at(triple, record.gamma, omega) / (2 * (intra + omega * inter)),
                triple.community_count,
                triple.community_count_ge5
            ))
    table = pd.DataFrame(
        rows,
        columns=['run_id', 'gamma', 'omega', 'seed', 'partition_id', 'modularity', 'n_communities', 'n_communities_ge5']
    )
    return table.sort_values(['run_id', 'partition_id'], kind='stable').reset_index(drop=True)

def all_partitions(n: int) -> typing.Iterator[typing.Tuple[int, ...]]:
    """
    Yields every set partition of n items once, as restricted growth strings
    (canonical label vectors). There are Bell(n) of them
    """
    if n < 1:
        raise ValidationError("Cannot enumerate partitions of {} items".format(n))
    labels = [0] * n
    ceiling = [1] * n

    def extend(position):
        if position == n:
            yield tuple(labels)
            return
        for label in range(ceiling[position - 1] + 1):
            labels[position] = label
            ceiling[position] = max(ceiling[position - 1], label + 1)
            yield from extend(position + 1)

    yield from extend(1)
