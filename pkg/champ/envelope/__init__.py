"""
Domains of optimality.
The upper envelope of the partitions' linear modularity functions is split
into intervals over gamma (one parameter) or convex polygons over
(gamma, omega) (two parameters), one per admissible partition
"""
import typing
import warnings
from scipy.spatial import QhullError
from ..partitions import CoefficientTriple
from ..utils import UsageError
from .base import AbstractEnvelope2D, Domain1D, Domain2D, Envelope2D
from .sweep1d import prune_1d, intersection_gamma, envelope_at, PARALLEL, COPLANAR
from .hull import QhullEnvelope
from .clipping import ClippingEnvelope
from .oracle import brute_force_envelope, verify_1d, verify_2d
from .summary import summarize_envelope, EnvelopeSummary

ENVELOPES = {
    'qhull': QhullEnvelope,
    'clip': ClippingEnvelope
}

def prune_2d(triples: typing.Sequence[CoefficientTriple], box: typing.Sequence[float], method: str = 'qhull', outside_margin: float = 10) -> Envelope2D:
    """
    Prunes partitions to those optimal somewhere in the (gamma, omega) box.
    Returns the domains, the partitions optimal only outside the box (within
    outside_margin box-widths of it), and the partitions whose region has
    measure zero. Falls back to direct clipping if Qhull rejects the input
    """
    if method not in ENVELOPES:
        raise UsageError("Unknown envelope method '{}'. Choose from {}".format(method, sorted(ENVELOPES)))
    try:
        return ENVELOPES[method](box, outside_margin).prune(triples)
    except QhullError as e:
        warnings.warn("Qhull failed ({}); falling back to half-plane clipping".format((str(e).splitlines() or [type(e).__name__])[0]))
        return ClippingEnvelope(box, outside_margin).prune(triples)

__all__ = [
    'AbstractEnvelope2D',
    'Domain1D',
    'Domain2D',
    'Envelope2D',
    'EnvelopeSummary',
    'ENVELOPES',
    'prune_1d',
    'prune_2d',
    'intersection_gamma',
    'envelope_at',
    'PARALLEL',
    'COPLANAR',
    'brute_force_envelope',
    'verify_1d',
    'verify_2d',
    'summarize_envelope'
]
