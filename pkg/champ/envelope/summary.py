import typing
from collections import namedtuple
import pandas as pd
from .base import Domain1D, Domain2D
from .geometry import polygon_area

EnvelopeSummary = namedtuple('EnvelopeSummary', ['table', 'transitions', 'total'])

def summarize_envelope(domains: typing.Sequence[typing.Union[Domain1D, Domain2D]]) -> EnvelopeSummary:
    """
    Tabulates domains: extent (interval width or polygon area), community
    counts, and the rank of each domain by extent (1 = largest, ties by
    partition id). The label "X.Y" pairs the number of communities with at
    least 5 members with that rank.
    transitions lists the interior gamma boundaries of a one-parameter result
    """
    rows = []
    for domain in domains:
        if isinstance(domain, Domain1D):
            extent = domain.gamma_hi - domain.gamma_lo
        else:
            extent = polygon_area(domain.polygon)
        rows.append((
            domain.partition_id,
            extent,
            domain.triple.community_count,
            domain.triple.community_count_ge5
        ))
    table = pd.DataFrame(
        rows,
        columns=['partition_id', 'extent', 'n_communities', 'n_communities_ge5']
    )
    order = sorted(range(len(rows)), key=lambda i: (-rows[i][1], rows[i][0]))
    rank = [0] * len(rows)
    for r, i in enumerate(order):
        rank[i] = r + 1
    table['rank'] = rank
    table['label'] = [
        '{}.{}'.format(ge5, r)
        for ge5, r in zip(table['n_communities_ge5'], rank)
    ]
    transitions = [
        domain.gamma_lo for domain in domains[1:]
        if isinstance(domain, Domain1D)
    ]
    return EnvelopeSummary(table, transitions, float(table['extent'].sum()) if len(rows) else 0.0)
