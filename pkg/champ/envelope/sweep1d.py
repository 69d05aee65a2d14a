"""
The one-parameter sweep: walks the upper envelope of the lines
Q(gamma) = a_hat - gamma * p_hat from low to high resolution
"""
import typing
import numpy as np
from ..partitions import CoefficientTriple, PLANE_TOLERANCE
from ..utils import check_range, ValidationError
from .base import Domain1D, Domain2D, identify, unique_planes
from .geometry import contains

PARALLEL = 'parallel'
COPLANAR = 'coplanar'

TIE_TOLERANCE = 1e-9

def intersection_gamma(t1: CoefficientTriple, t2: CoefficientTriple) -> typing.Union[float, str]:
    """
    Resolution at which two partitions have equal modularity.
    Returns PARALLEL if the lines have equal slope but differ, or COPLANAR if
    they coincide. c_hat is ignored
    """
    dp = t1.p_hat - t2.p_hat
    da = t1.a_hat - t2.a_hat
    if abs(dp) < PLANE_TOLERANCE:
        return COPLANAR if abs(da) < PLANE_TOLERANCE else PARALLEL
    return da / dp

def pick(candidates: np.ndarray, p: np.ndarray, c: np.ndarray, ids: typing.List[typing.Any]) -> int:
    """
    Tie-break among candidate indices: smallest p_hat, then smallest c_hat,
    then lowest partition id
    """
    return min(candidates.tolist(), key=lambda i: (p[i], c[i], ids[i]))

def prune_1d(triples: typing.Sequence[CoefficientTriple], gamma_min: float = 0.0, gamma_max: float = 2.0) -> typing.List[Domain1D]:
    """
    Prunes partitions to those optimal somewhere on [gamma_min, gamma_max).
    Starts from the partition maximizing modularity at gamma_min (the largest
    a_hat when gamma_min is 0), then repeatedly moves to the line with the
    smallest intersection beyond the current transition. Ties go to the
    smallest p_hat, so each step strictly decreases p_hat.
    Coplanar partitions are reported as aliases of a single domain.
    The result does not depend on the order of the input triples
    """
    gamma_min, gamma_max = check_range('gamma range', (gamma_min, gamma_max), lower=0)
    representatives, aliases = unique_planes(identify(triples))
    a = np.array([t.a_hat for t in representatives])
    p = np.array([t.p_hat for t in representatives])
    c = np.array([t.c_hat for t in representatives])
    ids = [t.partition_id for t in representatives]
    q = a - gamma_min * p
    best = q.max()
    current = pick(
        np.flatnonzero(q >= best - TIE_TOLERANCE * max(1.0, abs(best))),
        p, c, ids
    )
    gamma = gamma_min
    transitions = []
    while True:
        lower = np.flatnonzero(p < p[current] - PLANE_TOLERANCE)
        if not len(lower):
            break
        crossing = (a[current] - a[lower]) / (p[current] - p[lower])
        ahead = crossing > gamma + PLANE_TOLERANCE
        if not ahead.any():
            break
        lower, crossing = lower[ahead], crossing[ahead]
        step = crossing.min()
        if step >= gamma_max:
            break
        tied = lower[crossing <= step + TIE_TOLERANCE * max(1.0, abs(step))]
        chosen = pick(tied, p, c, ids)
        # the transition is where the chosen line crosses, not the smallest
        # crossing among lines tied with it
        step = float(crossing[lower == chosen][0])
        if step >= gamma_max:
            break
        transitions.append((gamma, step, current))
        gamma = step
        current = chosen
    transitions.append((gamma, gamma_max, current))
    return [
        Domain1D(ids[index], lo, hi, representatives[index], aliases[ids[index]])
        for lo, hi, index in transitions
    ]

def envelope_at(domains: typing.Sequence[typing.Union[Domain1D, Domain2D]], gamma: float, omega: float = 0.0) -> typing.Tuple[typing.Any, float]:
    """
    Evaluates the envelope at a point. Returns the owning partition_id and
    its modularity a_hat - gamma * p_hat + omega * c_hat.
    Raises a ValidationError if the point lies outside every domain
    """
    if not len(domains):
        raise ValidationError("No domains to evaluate")
    if isinstance(domains[0], Domain1D):
        lows = np.array([d.gamma_lo for d in domains])
        index = int(np.searchsorted(lows, gamma, side='right')) - 1
        if index < 0 or gamma > domains[-1].gamma_hi:
            raise ValidationError("gamma={} lies outside [{}, {}]".format(gamma, domains[0].gamma_lo, domains[-1].gamma_hi))
        domain = domains[index]
    else:
        point = np.array([[gamma, omega]])
        owners = [d for d in domains if contains(d.polygon, point, 1e-12)[0]]
        if not len(owners):
            raise ValidationError("({}, {}) lies outside every domain".format(gamma, omega))
        domain = owners[0]
    t = domain.triple
    return domain.partition_id, t.a_hat - gamma * t.p_hat + omega * t.c_hat
