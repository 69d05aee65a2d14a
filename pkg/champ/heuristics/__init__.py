"""
Modularity maximization heuristics and the parameter sweeps which use them
to build partition ensembles
"""
from .base import AbstractHeuristic
from .louvain import LouvainHeuristic, louvain, genlouvain
from .sweep import SweepSpec, HEURISTICS, check_spec, plan_runs, run_seed, ensemble_sweep

__all__ = [
    'AbstractHeuristic',
    'LouvainHeuristic',
    'louvain',
    'genlouvain',
    'SweepSpec',
    'HEURISTICS',
    'check_spec',
    'plan_runs',
    'run_seed',
    'ensemble_sweep'
]
