"""
Planar helpers for convex domain polygons in the (gamma, omega) plane.
Polygons are (k x 2) float arrays of vertices in counterclockwise order
"""
import typing
import numpy as np

Box = typing.Tuple[float, float, float, float]

def box_polygon(box: Box) -> np.ndarray:
    """
    Counterclockwise rectangle for (gamma_min, gamma_max, omega_min, omega_max)
    """
    g0, g1, w0, w1 = box
    return np.array([[g0, w0], [g1, w0], [g1, w1], [g0, w1]], dtype=float)

def box_area(box: Box) -> float:
    return (box[1] - box[0]) * (box[3] - box[2])

def polygon_area(polygon: np.ndarray) -> float:
    """
    Unsigned shoelace area
    """
    polygon = np.asarray(polygon, dtype=float)
    if len(polygon) < 3:
        return 0.0
    x, y = polygon[:, 0], polygon[:, 1]
    return abs(float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))) / 2

def polygon_centroid(polygon: np.ndarray) -> np.ndarray:
    """
    Area centroid of a simple polygon. Falls back to the vertex mean for
    degenerate polygons
    """
    polygon = np.asarray(polygon, dtype=float)
    x, y = polygon[:, 0], polygon[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    signed = cross.sum() / 2
    if abs(signed) < 1e-300:
        return polygon.mean(axis=0)
    return np.array([
        ((x + xn) * cross).sum() / (6 * signed),
        ((y + yn) * cross).sum() / (6 * signed)
    ])

def order_ccw(points: np.ndarray, tolerance: float = 1e-12) -> np.ndarray:
    """
    Orders the vertices of a convex polygon counterclockwise about their mean,
    dropping near-duplicate points. Starts from the lowest-left vertex so the
    output does not depend on input order
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if not len(points):
        return points
    scale = max(1.0, float(np.abs(points).max()))
    kept = []
    for point in points[np.lexsort((points[:, 1], points[:, 0]))]:
        if not any(np.abs(point - other).max() <= tolerance * scale for other in kept):
            kept.append(point)
    points = np.array(kept)
    if len(points) < 3:
        return points
    center = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - center[1], points[:, 0] - center[0])
    points = points[np.argsort(angles, kind='stable')]
    start = np.lexsort((points[:, 0], points[:, 1]))[0]
    return np.roll(points, -start, axis=0)

def clip_halfplane(polygon: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """
    Clips a convex polygon to the half-plane a*x + b*y <= c
    (one Sutherland-Hodgman pass)
    """
    polygon = np.asarray(polygon, dtype=float)
    if not len(polygon):
        return polygon
    scale = max(1.0, abs(c), float(np.abs(polygon).max()) * max(abs(a), abs(b)))
    side = polygon @ np.array([a, b]) - c
    inside = side <= 1e-12 * scale
    if inside.all():
        return polygon
    if not inside.any():
        return np.zeros((0, 2))
    output = []
    for k in range(len(polygon)):
        s, e = polygon[k - 1], polygon[k]
        ds, de = side[k - 1], side[k]
        if inside[k]:
            if not inside[k - 1]:
                output.append(s + (e - s) * (ds / (ds - de)))
            output.append(e)
        elif inside[k - 1]:
            output.append(s + (e - s) * (ds / (ds - de)))
    return np.array(output).reshape(-1, 2)

def clip_to_box(polygon: np.ndarray, box: Box) -> np.ndarray:
    g0, g1, w0, w1 = box
    for a, b, c in ((-1, 0, -g0), (1, 0, g1), (0, -1, -w0), (0, 1, w1)):
        polygon = clip_halfplane(polygon, a, b, c)
    return polygon

def cross2(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])

def bounding_boxes(polygons: typing.Sequence[np.ndarray]) -> np.ndarray:
    """
    (n x 4) array of [xmin, xmax, ymin, ymax] per polygon
    """
    return np.array([
        [p[:, 0].min(), p[:, 0].max(), p[:, 1].min(), p[:, 1].max()]
        for p in polygons
    ]).reshape(-1, 4)

def shared_border_length(p1: np.ndarray, p2: np.ndarray, tolerance: float = 1e-9) -> float:
    """
    Total length of boundary shared by two polygons: for every pair of
    collinear edges, the length of their overlap. Polygons meeting at a single
    point share no border
    """
    total = 0.0
    for k in range(len(p1)):
        a, b = p1[k - 1], p1[k]
        direction = b - a
        length = float(np.hypot(*direction))
        if length <= tolerance:
            continue
        unit = direction / length
        for l in range(len(p2)):
            c, d = p2[l - 1], p2[l]
            # distance of both endpoints from the supporting line of (a, b)
            if abs(cross2(unit, c - a)) > tolerance or abs(cross2(unit, d - a)) > tolerance:
                continue
            t = sorted((float(np.dot(c - a, unit)), float(np.dot(d - a, unit))))
            overlap = min(length, t[1]) - max(0.0, t[0])
            if overlap > tolerance:
                total += overlap
    return total

def boundary_distance(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    """
    Distance from each point to the nearest edge of the polygon
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    best = np.full(len(points), np.inf)
    for k in range(len(polygon)):
        a, b = polygon[k - 1], polygon[k]
        d = b - a
        denom = float(np.dot(d, d))
        t = np.zeros(len(points)) if denom == 0 else np.clip((points - a) @ d / denom, 0, 1)
        nearest = a + t[:, None] * d
        best = np.minimum(best, np.hypot(*(points - nearest).T))
    return best

def contains(polygon: np.ndarray, points: np.ndarray, tolerance: float = 0.0) -> np.ndarray:
    """
    True for points inside (or within tolerance of) a counterclockwise convex
    polygon
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    result = np.ones(len(points), dtype=bool)
    for k in range(len(polygon)):
        a, b = polygon[k - 1], polygon[k]
        edge = b - a
        cross = edge[0] * (points[:, 1] - a[1]) - edge[1] * (points[:, 0] - a[0])
        result &= cross >= -tolerance * max(1.0, float(np.hypot(*edge)))
    return result
