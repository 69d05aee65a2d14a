from .orchestrator import Orchestrator, version as __version__
from .networks import Network, MultilayerNetwork, build_network, build_multilayer
from .partitions import Partition, Ensemble, CoefficientTriple, coefficients, coefficients_multilayer
from .heuristics import louvain, genlouvain, ensemble_sweep, SweepSpec
from .envelope import prune_1d, prune_2d
from .similarity import ami, layer_averaged_ami
