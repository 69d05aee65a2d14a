import abc
import typing
import warnings
from collections import namedtuple
import numpy as np
from ..partitions import CoefficientTriple, PLANE_TOLERANCE, same_plane
from ..utils import ValidationError, UsageError, check_range
from .geometry import Box, box_area, clip_to_box, order_ccw, polygon_area

AREA_TOLERANCE = 1e-12

Domain1D = namedtuple(
    'Domain1D',
    ['partition_id', 'gamma_lo', 'gamma_hi', 'triple', 'aliases'],
    defaults=((),)
)

Domain2D = namedtuple(
    'Domain2D',
    ['partition_id', 'polygon', 'triple', 'aliases'],
    defaults=((),)
)

Envelope2D = namedtuple(
    'Envelope2D',
    ['domains', 'outside_box', 'measure_zero', 'box']
)

def identify(triples: typing.Sequence[CoefficientTriple]) -> typing.List[CoefficientTriple]:
    """
    Checks that triples are nonempty and that each carries a unique
    partition_id, assigning list positions where ids are missing
    """
    triples = list(triples)
    if not len(triples):
        raise ValidationError("Cannot prune an empty set of partitions")
    triples = [
        t if t.partition_id is not None else t._replace(partition_id=i)
        for i, t in enumerate(triples)
    ]
    ids = [t.partition_id for t in triples]
    if len(set(ids)) != len(ids):
        raise ValidationError("Partition ids must be unique")
    return triples

def unique_planes(triples: typing.Sequence[CoefficientTriple], tolerance: float = PLANE_TOLERANCE) -> typing.Tuple[typing.List[CoefficientTriple], typing.Dict[typing.Any, typing.Tuple]]:
    """
    Groups coplanar triples (all coefficients within tolerance).
    Each group is represented by its lowest partition_id; returns the
    representatives, sorted by partition_id, and a map from representative id
    to the ids of its aliases
    """
    triples = sorted(triples, key=lambda t: (t.a_hat, t.p_hat, t.c_hat, t.partition_id))
    groups = []
    for triple in triples:
        if len(groups):
            if same_plane(groups[-1][0], triple, tolerance):
                groups[-1].append(triple)
                continue
        groups.append([triple])
    representatives = []
    aliases = {}
    for group in groups:
        group.sort(key=lambda t: t.partition_id)
        representatives.append(group[0])
        aliases[group[0].partition_id] = tuple(t.partition_id for t in group[1:])
    representatives.sort(key=lambda t: t.partition_id)
    return representatives, aliases

def check_box(box: typing.Sequence[float]) -> Box:
    """
    Validates (gamma_min, gamma_max, omega_min, omega_max)
    """
    if box is None or len(box) != 4:
        raise UsageError("box must be (gamma_min, gamma_max, omega_min, omega_max)")
    g0, g1 = check_range('gamma range', box[:2], lower=0)
    w0, w1 = check_range('omega range', box[2:], lower=0)
    return g0, g1, w0, w1

class AbstractEnvelope2D(abc.ABC):
    """
    Base class for constructions of the two-parameter domains of optimality.
    Implementations compute, for each distinct plane, the region of an
    enlarged box where it lies on the upper envelope. This class clips those
    regions to the requested box and sorts partitions into domains,
    outside-box partitions, and measure-zero partitions
    """

    def __init__(self, box: typing.Sequence[float], outside_margin: float = 10):
        self.box = check_box(box)
        if outside_margin < 0:
            raise UsageError("outside_margin must be nonnegative")
        self.outside_margin = outside_margin
        g0, g1, w0, w1 = self.box
        dg = outside_margin * (g1 - g0)
        dw = outside_margin * (w1 - w0)
        self.search_box = (max(0.0, g0 - dg), g1 + dg, max(0.0, w0 - dw), w1 + dw)

    @abc.abstractmethod
    def regions(self, a: np.ndarray, p: np.ndarray, c: np.ndarray) -> typing.Dict[int, np.ndarray]:
        """
        Given coefficient arrays of distinct planes, returns a map from plane
        index to the vertices of its region of optimality within search_box.
        Planes which are nowhere optimal may be omitted.
        Vertices may be unordered
        """
        pass

    def prune(self, triples: typing.Sequence[CoefficientTriple]) -> Envelope2D:
        """
        Computes the domains of optimality of the given triples over the box
        """
        representatives, aliases = unique_planes(identify(triples))
        a = np.array([t.a_hat for t in representatives])
        p = np.array([t.p_hat for t in representatives])
        c = np.array([t.c_hat for t in representatives])
        regions = self.regions(a, p, c)
        domains = []
        outside = []
        measure_zero = []
        threshold = AREA_TOLERANCE * box_area(self.box)
        search_threshold = AREA_TOLERANCE * box_area(self.search_box)
        for index in sorted(regions):
            triple = representatives[index]
            region = order_ccw(regions[index])
            polygon = order_ccw(clip_to_box(region, self.box)) if len(region) >= 3 else region[:0]
            if len(polygon) >= 3 and polygon_area(polygon) >= threshold:
                domains.append(Domain2D(triple.partition_id, polygon, triple, aliases[triple.partition_id]))
            elif len(region) >= 3 and polygon_area(region) >= search_threshold:
                outside.append(triple.partition_id)
            else:
                outside.append(triple.partition_id)
                measure_zero.append(triple.partition_id)
        if len(measure_zero):
            warnings.warn(
                "Dropped {} measure-zero domains".format(len(measure_zero)),
                stacklevel=2
            )
        return Envelope2D(
            sorted(domains, key=lambda d: d.partition_id),
            sorted(outside),
            sorted(measure_zero),
            self.box
        )
