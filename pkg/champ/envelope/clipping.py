import typing
import numpy as np
from .base import AbstractEnvelope2D
from .geometry import box_polygon, clip_halfplane

class ClippingEnvelope(AbstractEnvelope2D):
    """
    Domains by direct half-plane clipping. Each plane's region starts as the
    search box and is cut by the half-plane where it beats every other plane.
    Quadratic in the number of planes; used when Qhull rejects an input
    """

    def regions(self, a: np.ndarray, p: np.ndarray, c: np.ndarray) -> typing.Dict[int, np.ndarray]:
        g0, g1, w0, w1 = self.search_box
        gc, wc = (g0 + g1) / 2, (w0 + w1) / 2
        # strongest competitors first, so dominated regions empty out quickly
        order = np.argsort(-(a - gc * p + wc * c), kind='stable')
        start = box_polygon(self.search_box)
        regions = {}
        for i in range(len(a)):
            region = start
            for j in order:
                if j == i:
                    continue
                # a_i - g p_i + w c_i >= a_j - g p_j + w c_j
                region = clip_halfplane(region, p[i] - p[j], c[j] - c[i], a[i] - a[j])
                if not len(region):
                    break
            if len(region):
                regions[i] = region
        return regions
