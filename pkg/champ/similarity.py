"""
Information-theoretic partition similarity.
All quantities use natural logarithms. AMI is normalized by the larger of the
two entropies
"""
import typing
import warnings
from collections import namedtuple
from functools import partial
import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln
from scipy.stats import entropy as shannon_entropy
from sklearn.metrics import adjusted_mutual_info_score, mutual_info_score
from sklearn.metrics.cluster import contingency_matrix
from .partitions import Partition, canonicalize
from .networks import MultilayerNetwork
from .envelope.geometry import bounding_boxes, shared_border_length
from .utils import ValidationError, UndefinedAdjustmentError, parallel_map

ADJUSTMENT_TOLERANCE = 1e-12
BORDER_TOLERANCE = 1e-9

ContingencyTable = namedtuple('ContingencyTable', ['counts', 'rows', 'columns', 'n'])

LayerAMI = namedtuple('LayerAMI', ['value', 'per_layer', 'skipped', 'degenerate'])

def as_labels(partition: typing.Union[Partition, typing.Sequence[typing.Any]]) -> np.ndarray:
    if isinstance(partition, Partition):
        return partition.canonical
    labels = np.asarray(partition)
    if not labels.size:
        raise ValidationError("Partition labels must be nonempty")
    return canonicalize(labels)

def paired(x, y) -> typing.Tuple[np.ndarray, np.ndarray]:
    x, y = as_labels(x), as_labels(y)
    if len(x) != len(y):
        raise ValidationError("Cannot compare partitions of {} and {} items".format(len(x), len(y)))
    return x, y

def contingency(x, y) -> ContingencyTable:
    """
    Co-occurrence counts between the communities of two partitions
    """
    x, y = paired(x, y)
    counts = contingency_matrix(x, y, sparse=True)
    return ContingencyTable(
        counts,
        np.asarray(counts.sum(axis=1)).ravel(),
        np.asarray(counts.sum(axis=0)).ravel(),
        len(x)
    )

def entropy(partition) -> float:
    """
    Shannon entropy of the community sizes, in nats
    """
    return float(shannon_entropy(np.bincount(as_labels(partition))))

def mutual_information(x, y) -> float:
    x, y = paired(x, y)
    return float(mutual_info_score(x, y))

def expected_mutual_information(table: typing.Union[ContingencyTable, np.ndarray, sp.spmatrix]) -> float:
    """
    Exact expected mutual information of two partitions with the given
    marginals under the hypergeometric (permutation) model.
    Sums over every feasible cell value, using log-factorials for stability.
    Pairs of identical row and column sizes are evaluated once
    """
    if isinstance(table, ContingencyTable):
        rows, columns, n = table.rows, table.columns, table.n
    else:
        counts = table.toarray() if sp.issparse(table) else np.asarray(table)
        rows, columns = counts.sum(axis=1), counts.sum(axis=0)
        n = int(counts.sum())
    rows = np.asarray(rows, dtype=np.int64)
    columns = np.asarray(columns, dtype=np.int64)
    logfact = gammaln(np.arange(n + 1) + 1)
    row_sizes, row_counts = np.unique(rows[rows > 0], return_counts=True)
    col_sizes, col_counts = np.unique(columns[columns > 0], return_counts=True)
    total = 0.0
    for a, ca in zip(row_sizes.tolist(), row_counts.tolist()):
        for b, cb in zip(col_sizes.tolist(), col_counts.tolist()):
            nij = np.arange(max(1, a + b - n), min(a, b) + 1)
            if not len(nij):
                continue
            log_probability = (
                logfact[a] + logfact[b] + logfact[n - a] + logfact[n - b]
                - logfact[n] - logfact[nij] - logfact[a - nij] - logfact[b - nij]
                - logfact[n - a - b + nij]
            )
            term = (nij / n) * (np.log(n * nij) - np.log(a * b)) * np.exp(log_probability)
            total += ca * cb * float(term.sum())
    return total

def ami(x, y) -> float:
    """
    Adjusted mutual information, (MI - EMI) / (max(H(x), H(y)) - EMI).
    Exactly 1 for partitions equal up to relabeling. When the denominator
    vanishes, returns 0 if MI equals EMI and raises UndefinedAdjustmentError
    otherwise
    """
    x, y = paired(x, y)
    if np.array_equal(x, y):
        return 1.0
    hx, hy = entropy(x), entropy(y)
    # EMI <= min(H(x), H(y)), so the denominator can only vanish with equal entropies
    if abs(hx - hy) < ADJUSTMENT_TOLERANCE:
        table = contingency(x, y)
        emi = expected_mutual_information(table)
        if abs(max(hx, hy) - emi) < ADJUSTMENT_TOLERANCE:
            mi = float(mutual_info_score(None, None, contingency=table.counts))
            if abs(mi - emi) < ADJUSTMENT_TOLERANCE:
                return 0.0
            raise UndefinedAdjustmentError(
                "Adjustment is undefined: max entropy equals expected MI ({}) but MI = {}".format(emi, mi)
            )
    return float(adjusted_mutual_info_score(x, y, average_method='max'))

def ami_row(index: int, labels: typing.List[np.ndarray]) -> typing.List[float]:
    return [ami(labels[index], labels[j]) for j in range(index + 1, len(labels))]

def ami_matrix(partitions: typing.Sequence[typing.Any], workers: int = 1) -> np.ndarray:
    """
    Symmetric matrix of pairwise AMI with a unit diagonal.
    Rows are computed in parallel when workers > 1
    """
    labels = [as_labels(partition) for partition in partitions]
    if not len(labels):
        raise ValidationError("Cannot compare an empty set of partitions")
    rows = parallel_map(partial(ami_row, labels=labels), range(len(labels)), workers)
    matrix = np.eye(len(labels))
    for i, row in enumerate(rows):
        matrix[i, i + 1:] = row
        matrix[i + 1:, i] = row
    return matrix

def domain_neighbors(domains: typing.Sequence[typing.Any], tolerance: float = BORDER_TOLERANCE) -> typing.Dict[typing.Tuple[int, int], float]:
    """
    Map from index pairs (i < j) of domains sharing a border to the length of
    that border. Domains meeting only at a point are not neighbors
    """
    boxes = bounding_boxes([d.polygon for d in domains])
    borders = {}
    for i in range(len(domains)):
        overlap = (
            (boxes[i + 1:, 0] <= boxes[i, 1] + tolerance)
            & (boxes[i + 1:, 1] >= boxes[i, 0] - tolerance)
            & (boxes[i + 1:, 2] <= boxes[i, 3] + tolerance)
            & (boxes[i + 1:, 3] >= boxes[i, 2] - tolerance)
        )
        for j in (np.flatnonzero(overlap) + i + 1).tolist():
            length = shared_border_length(domains[i].polygon, domains[j].polygon, tolerance)
            if length > tolerance:
                borders[i, j] = length
    return borders

def neighbor_weighted_ami(domains: typing.Sequence[typing.Any], partitions: typing.Any) -> typing.Dict[typing.Any, typing.Optional[float]]:
    """
    For each domain, the mean AMI between its partition and those of the
    domains it borders, weighted by shared border length.
    partitions maps partition_id to a Partition (an Ensemble works).
    Domains without neighbors get None
    """
    values = {domain.partition_id: None for domain in domains}
    if len(domains) < 2:
        return values
    borders = domain_neighbors(domains)
    weighted = np.zeros(len(domains))
    weights = np.zeros(len(domains))
    cache = {}
    for (i, j), length in borders.items():
        key = (domains[i].partition_id, domains[j].partition_id)
        if key not in cache:
            cache[key] = ami(partitions[key[0]], partitions[key[1]])
        for k in (i, j):
            weighted[k] += length * cache[key]
            weights[k] += length
    for k, domain in enumerate(domains):
        if weights[k] > 0:
            values[domain.partition_id] = float(weighted[k] / weights[k])
    return values

def layer_averaged_ami(network: MultilayerNetwork, partition, metadata: typing.Optional[typing.Sequence[typing.Any]] = None) -> LayerAMI:
    """
    Mean over layers of the AMI between the partition and the metadata labels
    restricted to each layer. metadata defaults to the network's labels.
    Layers with fewer than 2 node-layers are skipped; layers where both the
    communities and the metadata are constant score 1 and are listed as
    degenerate
    """
    if metadata is None:
        metadata = network.metadata_labels
    if metadata is None:
        raise ValidationError("Metadata labels are required for layer-averaged AMI")
    labels = network.check_labels(as_labels(partition))
    metadata = network.check_labels(np.asarray([str(label) for label in metadata]))
    per_layer = {}
    skipped = []
    degenerate = []
    for s, members in enumerate(network.layer_slices()):
        name = network.layer_name(s)
        if len(members) < 2:
            skipped.append(name)
            continue
        x, y = canonicalize(labels[members]), canonicalize(metadata[members])
        if x.max() == 0 and y.max() == 0:
            degenerate.append(name)
        per_layer[name] = ami(x, y)
    if len(skipped):
        warnings.warn("Skipped layers with fewer than 2 node-layers: {}".format(skipped), stacklevel=2)
    if len(degenerate):
        warnings.warn("Layers with constant communities and metadata: {}".format(degenerate), stacklevel=2)
    value = float(np.mean([*per_layer.values()])) if len(per_layer) else None
    return LayerAMI(value, per_layer, skipped, degenerate)
