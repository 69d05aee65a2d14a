"""
Network representations.
Networks are immutable once built and carry everything the modularity
coefficients need: edge weights, node strengths, and total weights
"""
from .base import AbstractNetwork
from .single import Network, build_network
from .multilayer import MultilayerNetwork, build_multilayer, ordinal_coupling, categorical_coupling

__all__ = [
    'AbstractNetwork',
    'Network',
    'build_network',
    'MultilayerNetwork',
    'build_multilayer',
    'ordinal_coupling',
    'categorical_coupling'
]
