"""
SVG domain maps: one filled polygon per domain of a two-parameter result
"""
import typing
import numpy as np
from .envelope import Domain2D
from .envelope.geometry import polygon_centroid

# viridis stops, low to high
SCALE = np.array([
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37]
], dtype=float)

MISSING = '#d0d0d0'

def escape_xml(text: typing.Any) -> str:
    return str(text).replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;').replace('"', '&quot;')

def color(value: typing.Optional[float], lo: float, hi: float) -> str:
    """
    Hex color of a value on the scale [lo, hi]
    """
    if value is None or not np.isfinite(value):
        return MISSING
    t = 0.5 if hi <= lo else min(1.0, max(0.0, (value - lo) / (hi - lo)))
    position = t * (len(SCALE) - 1)
    k = min(int(position), len(SCALE) - 2)
    rgb = SCALE[k] + (SCALE[k + 1] - SCALE[k]) * (position - k)
    return '#{:02x}{:02x}{:02x}'.format(*(int(round(x)) for x in rgb))

def domain_map(
    domains: typing.Sequence[Domain2D], box: typing.Sequence[float],
    values: typing.Dict[typing.Any, typing.Optional[float]],
    labels: typing.Optional[typing.Dict[typing.Any, str]] = None,
    title: str = '', key: str = '', width: int = 640, height: int = 480
) -> str:
    """
    Renders domains in (gamma, omega) space, filled by values[partition_id].
    Domains without a value are drawn grey
    """
    left, right, top, bottom = 60, 110, 40, 50
    g0, g1, w0, w1 = box
    plot_w = width - left - right
    plot_h = height - top - bottom

    def project(g, w):
        return left + (g - g0) / (g1 - g0) * plot_w, top + (w1 - w) / (w1 - w0) * plot_h

    present = [v for v in values.values() if v is not None and np.isfinite(v)]
    lo, hi = (min(present), max(present)) if len(present) else (0.0, 1.0)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}" font-family="Arial,sans-serif">'.format(width, height),
        '<rect width="{}" height="{}" fill="white"/>'.format(width, height),
        '<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>'.format(left + plot_w / 2, escape_xml(title))
    ]
    for domain in domains:
        value = values.get(domain.partition_id)
        points = ' '.join('{:.3f},{:.3f}'.format(*project(g, w)) for g, w in domain.polygon)
        parts.append(
            '<polygon points="{}" fill="{}" stroke="#ffffff" stroke-width="0.6"><title>partition {}: {}</title></polygon>'.format(
                points,
                color(value, lo, hi),
                escape_xml(domain.partition_id),
                'n/a' if value is None else '{:.4g}'.format(value)
            )
        )
        if labels is not None and domain.partition_id in labels:
            x, y = project(*polygon_centroid(domain.polygon))
            parts.append('<text x="{:.3f}" y="{:.3f}" text-anchor="middle" font-size="9">{}</text>'.format(
                x, y, escape_xml(labels[domain.partition_id])
            ))
    parts.append('<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333"/>'.format(left, top, plot_w, plot_h))
    for t in np.linspace(0, 1, 5):
        x, _ = project(g0 + t * (g1 - g0), w0)
        _, y = project(g0, w0 + t * (w1 - w0))
        parts.append('<text x="{:.3f}" y="{}" text-anchor="middle" font-size="11">{:.3g}</text>'.format(x, top + plot_h + 16, g0 + t * (g1 - g0)))
        parts.append('<text x="{}" y="{:.3f}" text-anchor="end" font-size="11">{:.3g}</text>'.format(left - 6, y + 4, w0 + t * (w1 - w0)))
    parts.append('<text x="{}" y="{}" text-anchor="middle" font-size="13">gamma</text>'.format(left + plot_w / 2, height - 12))
    parts.append('<text x="16" y="{0}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {0})">omega</text>'.format(top + plot_h / 2))
    # color key
    kx = left + plot_w + 24
    for k in range(50):
        parts.append('<rect x="{}" y="{:.3f}" width="16" height="{:.3f}" fill="{}"/>'.format(
            kx, top + plot_h * (1 - (k + 1) / 50), plot_h / 50 + 0.5, color(lo + (hi - lo) * (k + 0.5) / 50, lo, hi)
        ))
    parts.append('<text x="{}" y="{}" font-size="11">{:.3g}</text>'.format(kx + 20, top + 10, hi))
    parts.append('<text x="{}" y="{}" font-size="11">{:.3g}</text>'.format(kx + 20, top + plot_h, lo))
    parts.append('<text x="{}" y="{}" font-size="11">{}</text>'.format(kx, top - 8, escape_xml(key)))
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'

def write_domain_map(path: str, *args, **kwargs):
    with open(path, 'w') as w:
        w.write(domain_map(*args, **kwargs))
