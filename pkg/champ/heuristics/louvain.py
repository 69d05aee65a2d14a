import heapq
from collections import namedtuple
import numpy as np
import scipy.sparse as sp
from ..networks import AbstractNetwork, Network, MultilayerNetwork
from ..partitions import Partition, canonicalize
from ..utils import ValidationError, champ_logging
from .base import AbstractHeuristic

MOVE_TOLERANCE = 1e-12

# adjacency: symmetric CSR, off-diagonal entries hold the weight between two
# nodes once per direction; the diagonal is ignored.
# strength: (nodes x groups) null-model strengths; two_m: per-group 2m
Level = namedtuple('Level', ['adjacency', 'strength', 'two_m'])

def base_level(network: AbstractNetwork, omega: float) -> Level:
    src, dst, weight = network.objective_edges(omega)
    keep = (src != dst) & (weight > 0)
    src, dst, weight = src[keep], dst[keep], weight[keep]
    n = network.size
    adjacency = sp.csr_matrix(
        (np.concatenate([weight, weight]), (np.concatenate([src, dst]), np.concatenate([dst, src]))),
        shape=(n, n)
    )
    strength, two_m = network.null_strengths()
    return Level(adjacency, np.array(strength, dtype=float), np.asarray(two_m, dtype=float))

def aggregate(level: Level, communities: np.ndarray) -> Level:
    """
    Collapses each community of a level into a single node
    """
    n = level.adjacency.shape[0]
    k = int(communities.max()) + 1
    indicator = sp.csr_matrix((np.ones(n), (np.arange(n), communities)), shape=(n, k))
    adjacency = (indicator.T @ level.adjacency @ indicator).tocsr()
    return Level(adjacency, np.asarray(indicator.T @ level.strength), level.two_m)

def move_nodes(level: Level, communities: np.ndarray, gamma: float, order: np.ndarray) -> bool:
    """
    Moves nodes one at a time, in the given order, to the neighboring (or an
    empty) community with the largest modularity gain, until a full pass
    makes no move. Moves require a strict gain; equal gains go to the lowest
    community id. Updates communities in place and returns True if any node
    moved
    """
    n = level.adjacency.shape[0]
    strength = level.strength
    scaled = gamma * strength / level.two_m
    totals = np.zeros((n, strength.shape[1]))
    np.add.at(totals, communities, strength)
    size = np.bincount(communities, minlength=n)
    empty = [c for c in range(n) if size[c] == 0]
    heapq.heapify(empty)
    indptr = level.adjacency.indptr
    indices = level.adjacency.indices.tolist()
    data = level.adjacency.data.tolist()
    labels = communities.tolist()
    moved_any = False
    while True:
        moved = 0
        for i in order.tolist():
            current = labels[i]
            totals[current] -= strength[i]
            size[current] -= 1
            if size[current] == 0:
                heapq.heappush(empty, current)
            links = {current: 0.0}
            for j, w in zip(indices[indptr[i]:indptr[i + 1]], data[indptr[i]:indptr[i + 1]]):
                if j != i:
                    c = labels[j]
                    links[c] = links.get(c, 0.0) + w
            while len(empty) and size[empty[0]] > 0:
                heapq.heappop(empty)
            if size[current] > 0 and len(empty):
                links.setdefault(empty[0], 0.0)
            candidates = sorted(links)
            gains = np.array([links[c] for c in candidates]) - totals[candidates] @ scaled[i]
            best = gains.max()
            threshold = best - MOVE_TOLERANCE * max(1.0, abs(best))
            target = candidates[int(np.flatnonzero(gains >= threshold)[0])]
            if target != current and best > gains[candidates.index(current)] + MOVE_TOLERANCE * max(1.0, abs(best)):
                moved += 1
            else:
                target = current
            totals[target] += strength[i]
            size[target] += 1
            labels[i] = target
        if not moved:
            break
        moved_any = True
    communities[:] = labels
    return moved_any

def louvain_labels(network: AbstractNetwork, gamma: float, omega: float, seed: int) -> np.ndarray:
    """
    Two-phase Louvain over the flattened objective at (gamma, omega).
    Alternates node moves with aggregation of communities into nodes, and
    finishes only once a node-level pass on the original network makes no
    move, so the result is a local optimum under single-node moves
    """
    rng = np.random.default_rng(seed)
    base = base_level(network, omega)
    membership = np.arange(network.size)
    passes = 0
    while True:
        passes += 1
        improved = move_nodes(base, membership, gamma, rng.permutation(network.size))
        membership = canonicalize(membership)
        level = aggregate(base, membership)
        while True:
            n = level.adjacency.shape[0]
            communities = np.arange(n)
            if not move_nodes(level, communities, gamma, rng.permutation(n)):
                break
            improved = True
            communities = canonicalize(communities)
            membership = communities[membership]
            level = aggregate(level, communities)
        if not improved:
            break
    champ_logging.debug("Louvain converged after {} rounds with {} communities".format(passes, membership.max() + 1))
    return membership

class LouvainHeuristic(AbstractHeuristic):
    """
    Louvain modularity maximization. On a MultilayerNetwork this is the
    generalized (multislice) variant: node-layers move like nodes, and
    interlayer coupling enters gains scaled by omega
    """

    def optimize(self, network: AbstractNetwork, gamma: float, omega: float, seed: int) -> np.ndarray:
        return louvain_labels(network, gamma, omega, seed)

def louvain(network: Network, gamma: float = 1.0, seed: int = 0) -> Partition:
    """
    Runs Louvain on a single-layer network
    """
    if isinstance(network, MultilayerNetwork):
        raise ValidationError("louvain() expects a single-layer network; use genlouvain()")
    return LouvainHeuristic()(network, gamma, 0.0, seed)

def genlouvain(network: MultilayerNetwork, gamma: float = 1.0, omega: float = 1.0, seed: int = 0) -> Partition:
    """
    Runs generalized Louvain on a multilayer network
    """
    if not isinstance(network, MultilayerNetwork):
        raise ValidationError("genlouvain() expects a MultilayerNetwork")
    return LouvainHeuristic()(network, gamma, omega, seed)
