import typing
import warnings
from collections import namedtuple
from functools import partial
import numpy as np
from ..networks import AbstractNetwork, MultilayerNetwork
from ..partitions import Ensemble, Provenance
from ..utils import UsageError, check_range, parallel_map, worker_count, champ_logging
from .base import AbstractHeuristic
from .louvain import LouvainHeuristic

HEURISTICS = {
    'louvain': LouvainHeuristic
}

SweepSpec = namedtuple(
    'SweepSpec',
    ['gamma_range', 'omega_range', 'grid', 'runs', 'master_seed'],
    defaults=(None, None, 1, 0)
)

def check_spec(spec: SweepSpec, multilayer: bool = False) -> SweepSpec:
    """
    Validates a sweep specification and returns it normalized
    """
    gamma_range = check_range('gamma range', spec.gamma_range, lower=0)
    omega_range = spec.omega_range
    if multilayer and omega_range is None:
        raise UsageError("Multilayer sweeps require an omega range (--omega-range)")
    if omega_range is not None:
        if not multilayer:
            warnings.warn("Ignoring omega range for a single-layer network")
            omega_range = None
        else:
            omega_range = check_range('omega range', omega_range, lower=0)
    if isinstance(spec.runs, bool) or not isinstance(spec.runs, (int, np.integer)) or spec.runs < 1:
        raise UsageError("runs must be a positive integer, got {}".format(spec.runs))
    grid = spec.grid
    if grid is not None:
        grid = tuple(int(g) for g in grid)
        if not 1 <= len(grid) <= 2 or min(grid) < 1:
            raise UsageError("grid must be (n_gamma,) or (n_gamma, n_omega) with positive sizes, got {}".format(spec.grid))
        if omega_range is None:
            grid = grid[:1]
        elif len(grid) == 1:
            grid = (grid[0], 1)
    return SweepSpec(gamma_range, omega_range, grid, int(spec.runs), int(spec.master_seed))

def run_seed(master_seed: int, run_id: int) -> int:
    """
    Independent per-run seed derived from the master seed and run index
    """
    return int(np.random.SeedSequence([master_seed, run_id]).generate_state(1)[0])

def plan_runs(spec: SweepSpec) -> typing.List[Provenance]:
    """
    Parameter points and seeds for every run.
    With a grid, runs cycle over the evenly spaced grid points. Otherwise
    parameters are drawn uniformly at random from the ranges, using a stream
    seeded by the master seed
    """
    multilayer = spec.omega_range is not None
    if spec.grid is not None:
        gammas = np.linspace(*spec.gamma_range, spec.grid[0])
        omegas = np.linspace(*spec.omega_range, spec.grid[1]) if multilayer else np.array([np.nan])
        points = [(g, w) for g in gammas for w in omegas]
        if spec.runs % len(points):
            warnings.warn("{} runs do not evenly cover {} grid points".format(spec.runs, len(points)))
        points = [points[r % len(points)] for r in range(spec.runs)]
    else:
        rng = np.random.default_rng(spec.master_seed)
        gammas = rng.uniform(*spec.gamma_range, size=spec.runs)
        omegas = rng.uniform(*spec.omega_range, size=spec.runs) if multilayer else np.full(spec.runs, np.nan)
        points = list(zip(gammas, omegas))
    return [
        Provenance(
            float(g),
            float(w) if multilayer else None,
            run_seed(spec.master_seed, r),
            r
        )
        for r, (g, w) in enumerate(points)
    ]

def execute_run(plan: Provenance, network: AbstractNetwork, heuristic: AbstractHeuristic) -> np.ndarray:
    partition = heuristic(network, plan.gamma, plan.omega or 0.0, plan.seed, plan.run_id)
    return partition.canonical

def ensemble_sweep(network: AbstractNetwork, spec: SweepSpec, workers: typing.Optional[int] = None, heuristic: str = 'louvain', progress: bool = False) -> Ensemble:
    """
    Runs the heuristic at every planned parameter point and collects the
    unique partitions. Runs execute in parallel over worker processes; results
    are merged in run order and the returned ensemble is canonical, so the
    output depends only on the network and the sweep parameters
    """
    if heuristic not in HEURISTICS:
        raise UsageError("Unknown heuristic '{}'. Choose from {}".format(heuristic, sorted(HEURISTICS)))
    spec = check_spec(spec, isinstance(network, MultilayerNetwork))
    network.require_weight()
    plans = plan_runs(spec)
    workers = worker_count(workers)
    champ_logging.info1("Running {} {} runs over {} workers".format(len(plans), heuristic, workers))
    results = parallel_map(
        partial(execute_run, network=network, heuristic=HEURISTICS[heuristic]()),
        plans,
        workers,
        progress='Sweep' if progress else None
    )
    ensemble = Ensemble(network)
    for plan, labels in zip(plans, results):
        ensemble.add(labels, plan)
    champ_logging.info1("Found {} unique partitions in {} runs".format(len(ensemble), len(plans)))
    return ensemble.canonical()
