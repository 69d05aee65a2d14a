import typing
import numpy as np
from scipy.spatial import HalfspaceIntersection
from .base import AbstractEnvelope2D

class QhullEnvelope(AbstractEnvelope2D):
    """
    Domains from the intersection of upper half-spaces {Q >= a - gamma p + omega c}
    in (gamma, omega, Q), computed by Qhull through its dual convex hull.
    The search box and a cap plane above every partition plane are added as
    half-spaces so the intersection is bounded. Each vertex of the
    intersection lists the half-spaces meeting there; a plane's region is the
    projection of the vertices it touches
    """

    def halfspaces(self, a: np.ndarray, p: np.ndarray, c: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
        """
        Returns (halfspaces, interior_point) in scipy's [normal; offset] <= 0 form
        """
        g0, g1, w0, w1 = self.search_box
        bound = 1.0 + max(np.abs(a).max(), np.abs(p).max(), np.abs(c).max())
        corners = np.array([[g0, w0], [g1, w0], [g1, w1], [g0, w1]])
        top = float((a[None, :] - corners[:, :1] * p + corners[:, 1:] * c).max()) + 2 * bound
        gc, wc = (g0 + g1) / 2, (w0 + w1) / 2
        qc = float((a - gc * p + wc * c).max()) + bound
        planes = np.column_stack([-p, c, -np.ones(len(a)), a])
        box = np.array([
            [-1, 0, 0, g0],
            [1, 0, 0, -g1],
            [0, -1, 0, w0],
            [0, 1, 0, -w1],
            [0, 0, 1, -top]
        ], dtype=float)
        return np.vstack([planes, box]), np.array([gc, wc, qc])

    def regions(self, a: np.ndarray, p: np.ndarray, c: np.ndarray) -> typing.Dict[int, np.ndarray]:
        halfspaces, interior = self.halfspaces(a, p, c)
        intersection = HalfspaceIntersection(halfspaces, interior)
        touching = {}
        for vertex, facet in zip(intersection.intersections, intersection.dual_facets):
            for index in facet:
                if index < len(a):
                    touching.setdefault(int(index), []).append(vertex[:2])
        return {
            index: np.array(vertices)
            for index, vertices in touching.items()
        }
