"""
Brute-force evaluation of the envelope at sample points, used to verify
pruned domains
"""
import typing
import numpy as np
from ..partitions import CoefficientTriple
from ..utils import ValidationError
from .base import Domain1D, Envelope2D, identify
from .geometry import boundary_distance, contains

TIE_TOLERANCE = 1e-9

def as_points(sample_points: typing.Sequence[typing.Any]) -> np.ndarray:
    """
    Sample points as an (n x 2) array of (gamma, omega); bare gammas get
    omega = 0
    """
    points = np.asarray(sample_points, dtype=float)
    if points.ndim == 1:
        points = np.column_stack([points, np.zeros(len(points))])
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValidationError("Sample points must be gammas or (gamma, omega) pairs")
    return points

def evaluate(triples: typing.Sequence[CoefficientTriple], points: np.ndarray) -> np.ndarray:
    """
    (points x triples) matrix of modularity values
    """
    a = np.array([t.a_hat for t in triples])
    p = np.array([t.p_hat for t in triples])
    c = np.array([t.c_hat for t in triples])
    return a[None, :] - points[:, :1] * p[None, :] + points[:, 1:] * c[None, :]

def brute_force_envelope(triples: typing.Sequence[CoefficientTriple], sample_points: typing.Sequence[typing.Any], tolerance: float = TIE_TOLERANCE) -> typing.List[typing.FrozenSet[typing.Any]]:
    """
    For each sample point, the set of partition ids attaining the maximum
    modularity within a relative tolerance. Singleton sets are unique optima
    """
    triples = identify(triples)
    ids = np.array([t.partition_id for t in triples], dtype=object)
    points = as_points(sample_points)
    q = evaluate(triples, points)
    best = q.max(axis=1, keepdims=True)
    tied = q >= best - tolerance * np.maximum(1.0, np.abs(best))
    return [frozenset(ids[row].tolist()) for row in tied]

def verify_1d(domains: typing.Sequence[Domain1D], triples: typing.Sequence[CoefficientTriple], gammas: typing.Sequence[float], border: float = 1e-6) -> typing.List[typing.Tuple[float, typing.Any, typing.FrozenSet[typing.Any]]]:
    """
    Compares domain ownership against the brute-force argmax at each gamma.
    Points within border of a transition are skipped. Returns the mismatches
    as (gamma, owner, argmax set)
    """
    gammas = np.asarray(gammas, dtype=float)
    winners = brute_force_envelope(triples, gammas)
    lows = np.array([d.gamma_lo for d in domains])
    edges = np.array([d.gamma_lo for d in domains[1:]])
    mismatches = []
    for gamma, winner in zip(gammas, winners):
        if len(edges) and np.abs(edges - gamma).min() <= border:
            continue
        index = int(np.searchsorted(lows, gamma, side='right')) - 1
        if index < 0 or gamma >= domains[-1].gamma_hi:
            continue
        domain = domains[index]
        owners = {domain.partition_id, *domain.aliases}
        if not owners & winner:
            mismatches.append((float(gamma), domain.partition_id, winner))
    return mismatches

def verify_2d(envelope: Envelope2D, triples: typing.Sequence[CoefficientTriple], points: typing.Sequence[typing.Tuple[float, float]], border: float = 1e-6) -> typing.List[typing.Tuple[typing.Tuple[float, float], typing.Any, typing.FrozenSet[typing.Any]]]:
    """
    Compares polygon ownership against the brute-force argmax at each
    (gamma, omega) point. Points within border of any polygon edge are
    skipped; points covered by no polygon are reported with owner None
    """
    points = as_points(points)
    winners = brute_force_envelope(triples, points)
    owner = np.full(len(points), -1)
    near = np.zeros(len(points), dtype=bool)
    for k, domain in enumerate(envelope.domains):
        near |= boundary_distance(domain.polygon, points) <= border
        owner[contains(domain.polygon, points) & (owner < 0)] = k
    mismatches = []
    for point, index, winner, skip in zip(points, owner, winners, near):
        if skip:
            continue
        if index < 0:
            mismatches.append((tuple(point), None, winner))
            continue
        domain = envelope.domains[index]
        if not {domain.partition_id, *domain.aliases} & winner:
            mismatches.append((tuple(point), domain.partition_id, winner))
    return mismatches
