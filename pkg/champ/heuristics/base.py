import abc
import typing
import numpy as np
from ..networks import AbstractNetwork, MultilayerNetwork
from ..partitions import Partition, Provenance
from ..utils import UsageError

class AbstractHeuristic(abc.ABC):
    """
    Base class for stochastic modularity maximizers.
    A heuristic maps (network, gamma, omega, seed) to a label vector; the
    same inputs must always produce the same labels
    """

    def __init__(self, **kwargs):
        self.options = kwargs

    @abc.abstractmethod
    def optimize(self, network: AbstractNetwork, gamma: float, omega: float, seed: int) -> np.ndarray:
        """
        Returns community labels maximizing (locally) the modularity of the
        network at the given parameters
        """
        pass

    def __call__(self, network: AbstractNetwork, gamma: float, omega: float = 0.0, seed: int = 0, run_id: typing.Optional[int] = None) -> Partition:
        """
        Runs the heuristic and returns the partition with its provenance
        """
        network.require_weight()
        if gamma < 0 or omega < 0:
            raise UsageError("gamma and omega must be nonnegative, got ({}, {})".format(gamma, omega))
        labels = self.optimize(network, gamma, omega, seed)
        return Partition(
            labels,
            Provenance(
                float(gamma),
                float(omega) if isinstance(network, MultilayerNetwork) else None,
                int(seed),
                run_id
            )
        )
