import typing
import warnings
from itertools import combinations
import numpy as np
from .base import AbstractNetwork, EdgeArrays, frozen, check_weights, merge_duplicates, strengths
from ..utils import ValidationError, champ_logging

# (i_actor, i_layer, j_actor, j_layer, weight)
LayerEdge = typing.Tuple[typing.Any, typing.Any, typing.Any, typing.Any, float]
NodeLayer = typing.Tuple[typing.Any, typing.Any]

def ordered_keys(keys: typing.Iterable[typing.Any], sort: bool = False) -> typing.List[typing.Any]:
    """
    Unique keys in first-appearance order, or sorted if requested and the
    keys are mutually comparable
    """
    unique = [*dict.fromkeys(keys)]
    if sort:
        try:
            return sorted(unique)
        except TypeError:
            pass
    return unique

def nodelayers_of(edges: typing.Iterable[LayerEdge]) -> typing.List[NodeLayer]:
    """
    The (actor, layer) pairs touched by a list of layer-tagged edges,
    in first-appearance order
    """
    return [
        *dict.fromkeys(
            nl
            for i_actor, i_layer, j_actor, j_layer, *_ in edges
            for nl in ((i_actor, i_layer), (j_actor, j_layer))
        )
    ]

def ordinal_coupling(intralayer: typing.Iterable[LayerEdge], weight: float = 1.0) -> typing.List[LayerEdge]:
    """
    Identity coupling between adjacent layers (temporal networks).
    Every actor present in two consecutive layers, in sorted layer order,
    is linked to itself across them
    """
    intralayer = list(intralayer)
    nodelayers = set(nodelayers_of(intralayer))
    layers = ordered_keys((layer for _, layer in nodelayers), True)
    actors = ordered_keys(actor for actor, _ in nodelayers_of(intralayer))
    return [
        (actor, a, actor, b, weight)
        for a, b in zip(layers[:-1], layers[1:])
        for actor in actors
        if (actor, a) in nodelayers and (actor, b) in nodelayers
    ]

def categorical_coupling(intralayer: typing.Iterable[LayerEdge], weight: float = 1.0) -> typing.List[LayerEdge]:
    """
    Identity coupling between every pair of layers (multiplex networks)
    """
    intralayer = list(intralayer)
    nodelayers = set(nodelayers_of(intralayer))
    layers = ordered_keys((layer for _, layer in nodelayers), True)
    actors = ordered_keys(actor for actor, _ in nodelayers_of(intralayer))
    return [
        (actor, a, actor, b, weight)
        for a, b in combinations(layers, 2)
        for actor in actors
        if (actor, a) in nodelayers and (actor, b) in nodelayers
    ]

class MultilayerNetwork(AbstractNetwork):
    """
    Immutable multilayer network over flattened node-layers.
    Node-layers are indexed layer-major: all node-layers of the first layer,
    then the second, and so on. Intralayer edges carry the adjacency and the
    per-layer Newman-Girvan null model. Interlayer edges carry the coupling
    scaled by omega
    """

    def __init__(
        self, layer_of: np.ndarray, actor_of: np.ndarray,
        intralayer: EdgeArrays, interlayer: EdgeArrays,
        layer_names: typing.Optional[typing.Sequence[typing.Any]] = None,
        actor_names: typing.Optional[typing.Sequence[typing.Any]] = None,
        metadata_labels: typing.Optional[typing.Sequence[typing.Any]] = None
    ):
        self.layer_of = frozen(np.asarray(layer_of, dtype=np.int64))
        self.actor_of = frozen(np.asarray(actor_of, dtype=np.int64))
        if len(self.layer_of) != len(self.actor_of):
            raise ValidationError("layer_of and actor_of must have equal length")
        if not len(self.layer_of):
            raise ValidationError("Multilayer network has no node-layers")
        self.nodelayer_count = len(self.layer_of)
        self.layer_count = int(self.layer_of.max()) + 1
        n = self.nodelayer_count
        src, dst, weight = (np.asarray(x) for x in intralayer)
        check_weights(weight)
        if len(src) and np.any(self.layer_of[src] != self.layer_of[dst]):
            raise ValidationError("Intralayer edge connects node-layers in different layers")
        loops = src == dst
        if loops.any():
            champ_logging.debug("Dropping {} intralayer self-loops".format(loops.sum()))
        src, dst, weight = merge_duplicates(n, src[~loops], dst[~loops], weight[~loops])
        self.intra_src, self.intra_dst, self.intra_weight = (frozen(x) for x in (src, dst, weight))
        src, dst, weight = (np.asarray(x) for x in interlayer)
        check_weights(weight)
        if len(src) and np.any(self.layer_of[src] == self.layer_of[dst]):
            raise ValidationError("Interlayer edge connects node-layers in the same layer")
        src, dst, weight = merge_duplicates(n, src, dst, weight)
        self.inter_src, self.inter_dst, self.inter_weight = (frozen(x) for x in (src, dst, weight))
        self.strength = frozen(strengths(n, self.intra_src, self.intra_dst, self.intra_weight))
        self.layer_weight = frozen(
            np.bincount(self.layer_of, weights=self.strength, minlength=self.layer_count) / 2
        )
        self.total_weight = float(self.layer_weight.sum())
        self.layer_names = None if layer_names is None else tuple(layer_names)
        self.actor_names = None if actor_names is None else tuple(actor_names)
        self.metadata_labels = None
        if metadata_labels is not None:
            self.metadata_labels = self.check_labels(metadata_labels)
        empty = np.flatnonzero(self.layer_weight <= 0)
        if len(empty) and not self.degenerate:
            warnings.warn(
                "Layers {} have zero intralayer weight and contribute nothing to the null model".format(
                    [self.layer_name(s) for s in empty]
                ),
                stacklevel=2
            )
        if self.degenerate:
            self.flag_degenerate("Multilayer network has zero intralayer weight; modularity coefficients are undefined")

    def __repr__(self) -> str:
        return '<MultilayerNetwork nodelayers={} layers={} intra={} inter={}>'.format(
            self.nodelayer_count,
            self.layer_count,
            len(self.intra_src),
            len(self.inter_src)
        )

    def layer_name(self, layer: int) -> typing.Any:
        return layer if self.layer_names is None else self.layer_names[layer]

    @property
    def size(self) -> int:
        return self.nodelayer_count

    @property
    def degenerate(self) -> bool:
        return self.total_weight <= 0

    @property
    def intralayer_edges(self) -> typing.List[typing.Tuple[int, int, float]]:
        return list(zip(self.intra_src.tolist(), self.intra_dst.tolist(), self.intra_weight.tolist()))

    @property
    def interlayer_edges(self) -> typing.List[typing.Tuple[int, int, float]]:
        return list(zip(self.inter_src.tolist(), self.inter_dst.tolist(), self.inter_weight.tolist()))

    def objective_edges(self, omega: float = 0.0) -> EdgeArrays:
        return (
            np.concatenate([self.intra_src, self.inter_src]),
            np.concatenate([self.intra_dst, self.inter_dst]),
            np.concatenate([self.intra_weight, omega * self.inter_weight])
        )

    def null_strengths(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        One column per layer with nonzero intralayer weight. Node-layers have
        strength only in the column of their own layer
        """
        active = np.flatnonzero(self.layer_weight > 0)
        column = np.full(self.layer_count, -1, dtype=np.int64)
        column[active] = np.arange(len(active))
        strength = np.zeros((self.nodelayer_count, len(active)))
        member = column[self.layer_of] >= 0
        strength[np.flatnonzero(member), column[self.layer_of[member]]] = self.strength[member]
        return strength, 2 * self.layer_weight[active]

    def layer_slices(self) -> typing.List[np.ndarray]:
        """
        Node-layer indices belonging to each layer, in layer order
        """
        return [np.flatnonzero(self.layer_of == s) for s in range(self.layer_count)]

def build_multilayer(
    intralayer: typing.Iterable[LayerEdge],
    interlayer: typing.Iterable[LayerEdge] = (),
    nodelayers: typing.Optional[typing.Iterable[NodeLayer]] = None,
    metadata: typing.Optional[typing.Dict[typing.Any, typing.Any]] = None
) -> MultilayerNetwork:
    """
    Builds a MultilayerNetwork from layer-tagged edges.
    Each edge is (i_actor, i_layer, j_actor, j_layer, weight). Layers are
    sorted when comparable; actors keep their first-appearance order.
    nodelayers may list additional (actor, layer) pairs with no edges.
    metadata maps (actor, layer) or actor to a categorical label
    """
    intralayer = [tuple(edge) for edge in intralayer]
    interlayer = [tuple(edge) for edge in interlayer]
    for edge in intralayer + interlayer:
        if len(edge) != 5:
            raise ValidationError("Layer edges must be (i_actor, i_layer, j_actor, j_layer, weight), got {}".format(edge))
    if not len(intralayer) and not len(interlayer):
        raise ValidationError("Edge list is empty")
    for edge in intralayer:
        if edge[1] != edge[3]:
            raise ValidationError("Intralayer edge {} crosses layers".format(edge))
    for edge in interlayer:
        if edge[1] == edge[3]:
            raise ValidationError("Interlayer edge {} lies within layer {}".format(edge, edge[1]))
    present = nodelayers_of(intralayer + interlayer) + [*(nodelayers or [])]
    layers = ordered_keys((layer for _, layer in present), True)
    actors = ordered_keys((actor for actor, _ in present), False)
    layer_index = {layer: s for s, layer in enumerate(layers)}
    actor_index = {actor: a for a, actor in enumerate(actors)}
    order = sorted({(layer_index[layer], actor_index[actor]) for actor, layer in present})
    index = {key: i for i, key in enumerate(order)}

    def arrays(edges):
        if not len(edges):
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), np.zeros(0)
        return (
            np.array([index[layer_index[e[1]], actor_index[e[0]]] for e in edges], dtype=np.int64),
            np.array([index[layer_index[e[3]], actor_index[e[2]]] for e in edges], dtype=np.int64),
            np.array([float(e[4]) for e in edges])
        )

    labels = None
    if metadata is not None:
        labels = []
        for s, a in order:
            key = (actors[a], layers[s])
            labels.append(metadata[key] if key in metadata else metadata.get(actors[a]))
    return MultilayerNetwork(
        [s for s, _ in order],
        [a for _, a in order],
        arrays(intralayer),
        arrays(interlayer),
        layers,
        actors,
        labels
    )
