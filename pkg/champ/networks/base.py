import abc
import typing
import warnings
import numpy as np
from ..utils import ValidationError, DegenerateNetworkError

EdgeArrays = typing.Tuple[np.ndarray, np.ndarray, np.ndarray]

def frozen(array: np.ndarray) -> np.ndarray:
    """
    Marks an array read-only and returns it
    """
    array.flags.writeable = False
    return array

def check_weights(weights: np.ndarray):
    """
    Raises a ValidationError unless all weights are finite and nonnegative
    """
    if not np.all(np.isfinite(weights)):
        raise ValidationError("Edge weights must be finite")
    if np.any(weights < 0):
        raise ValidationError("Edge weights must be nonnegative (found {})".format(weights[weights < 0][0]))

def merge_duplicates(n: int, src: np.ndarray, dst: np.ndarray, weight: np.ndarray) -> EdgeArrays:
    """
    Orients each undirected edge as (min, max) and sums duplicate entries.
    Output is sorted by (src, dst)
    """
    lo = np.minimum(src, dst).astype(np.int64)
    hi = np.maximum(src, dst).astype(np.int64)
    weight = np.asarray(weight, dtype=float)
    if not len(lo):
        return lo, hi, weight
    keys, inverse = np.unique(lo * n + hi, return_inverse=True)
    summed = np.bincount(inverse.ravel(), weights=weight, minlength=len(keys))
    return keys // n, keys % n, summed

def strengths(n: int, src: np.ndarray, dst: np.ndarray, weight: np.ndarray) -> np.ndarray:
    """
    Per-node strength k_i = sum_j A_ij.
    Each undirected edge adds its weight to both endpoints, so a self-loop
    adds twice to its node
    """
    return (
        np.bincount(src, weights=weight, minlength=n)
        + np.bincount(dst, weights=weight, minlength=n)
    ).astype(float)

class AbstractNetwork(abc.ABC):
    """
    Base class for immutable weighted undirected networks.
    Edges are stored once each, oriented (i <= j). All coefficient sums follow
    the ordered-pair convention, counting every unordered edge twice
    """

    @property
    @abc.abstractmethod
    def size(self) -> int:
        """
        Number of indexable units (nodes, or node-layers) a partition must label
        """
        pass

    @property
    @abc.abstractmethod
    def degenerate(self) -> bool:
        """
        True if the null model is undefined (zero total weight)
        """
        pass

    @abc.abstractmethod
    def objective_edges(self, omega: float = 0.0) -> EdgeArrays:
        """
        Returns (src, dst, weight) for the attraction term of the modularity
        objective at the given interlayer coupling
        """
        pass

    @abc.abstractmethod
    def null_strengths(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        Returns (strength, two_m) where strength is an (size x L) array of
        per-group strengths and two_m the length-L vector of 2*m per group.
        Single-layer networks have a single group
        """
        pass

    def check_labels(self, labels: typing.Sequence[int]) -> np.ndarray:
        """
        Validates a label vector against this network and returns it as an array
        """
        labels = np.asarray(labels)
        if labels.ndim != 1 or len(labels) != self.size:
            raise ValidationError("Partition has {} labels but the network has {} {}".format(
                labels.size,
                self.size,
                'node-layers' if hasattr(self, 'layer_of') else 'nodes'
            ))
        return labels

    def require_weight(self):
        """
        Raises a DegenerateNetworkError if the null model is undefined
        """
        if self.degenerate:
            raise DegenerateNetworkError("Network has zero total weight; the null model is undefined")

    @staticmethod
    def flag_degenerate(message: str):
        warnings.warn(message, stacklevel=3)
