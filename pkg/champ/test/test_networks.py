import unittest
from champ.networks import (
    MultilayerNetwork, build_network, build_multilayer,
    ordinal_coupling, categorical_coupling
)
from champ.utils import ValidationError

TRIANGLE = [(0, 1, 1), (1, 2, 1), (0, 2, 1)]

def toy_multilayer():
    intralayer = [('a', 1, 'b', 1, 1.0), ('a', 2, 'b', 2, 1.0)]
    return build_multilayer(intralayer, ordinal_coupling(intralayer, 1.0))

class TestUnit(unittest.TestCase):
    """
    Tests network construction and validation
    """

    def test_triangle(self):
        network = build_network(TRIANGLE)
        self.assertEqual(network.size, 3)
        self.assertListEqual(network.strength.tolist(), [2.0, 2.0, 2.0])
        self.assertEqual(network.total_weight, 3.0)
        self.assertFalse(network.degenerate)

    def test_path(self):
        network = build_network([(0, 1, 1), (1, 2, 1)])
        self.assertListEqual(network.strength.tolist(), [1.0, 2.0, 1.0])
        self.assertEqual(network.total_weight, 2.0)

    def test_default_weight(self):
        network = build_network([(0, 1), (1, 2)])
        self.assertEqual(network.total_weight, 2.0)

    def test_degenerate(self):
        with self.assertWarns(UserWarning):
            network = build_network([(0, 1, 0)])
        self.assertTrue(network.degenerate)
        self.assertListEqual(network.strength.tolist(), [0.0, 0.0])
        self.assertEqual(network.total_weight, 0.0)

    def test_rejects(self):
        with self.assertRaises(ValidationError):
            build_network([(0, 1, -1)])
        with self.assertRaises(ValidationError):
            build_network([])
        with self.assertRaises(ValidationError):
            build_network([(0, 1, 1, 1)])
        with self.assertRaises(ValidationError):
            build_network(TRIANGLE, node_count=2)

    def test_duplicates_merge(self):
        network = build_network([(0, 1, 1), (1, 0, 2), (1, 2, 1)])
        self.assertListEqual(network.edges, [(0, 1, 3.0), (1, 2, 1.0)])
        self.assertListEqual(network.strength.tolist(), [3.0, 4.0, 1.0])

    def test_self_loop(self):
        network = build_network([(0, 0, 1), (0, 1, 1)])
        self.assertListEqual(network.strength.tolist(), [3.0, 1.0])
        self.assertEqual(network.total_weight, 2.0)
        self.assertEqual(network.adjacency()[0, 0], 2.0)
        self.assertEqual(network.adjacency().sum(), 2 * network.total_weight)

    def test_names(self):
        network = build_network([('x', 'y', 1), ('y', 'z', 2)], metadata={'x': 'A', 'z': 'B'})
        self.assertTupleEqual(network.node_names, ('x', 'y', 'z'))
        self.assertListEqual(network.metadata_labels.tolist(), ['A', None, 'B'])
        self.assertListEqual(network.strength.tolist(), [1.0, 3.0, 2.0])

    def test_isolated(self):
        network = build_network(TRIANGLE, node_count=5)
        self.assertEqual(network.size, 5)
        count, labels = network.components()
        self.assertEqual(count, 3)
        self.assertEqual(labels[0], labels[2])
        self.assertNotEqual(labels[3], labels[4])

    def test_immutable(self):
        network = build_network(TRIANGLE)
        with self.assertRaises(ValueError):
            network.weight[0] = 5

    def test_permuted(self):
        network = build_network([(0, 1, 1), (1, 2, 2)])
        permuted = network.permuted([2, 0, 1])
        self.assertListEqual(permuted.strength.tolist(), [3.0, 2.0, 1.0])
        self.assertEqual(permuted.total_weight, network.total_weight)
        with self.assertRaises(ValidationError):
            network.permuted([0, 0, 1])

    def test_multilayer_toy(self):
        network = toy_multilayer()
        self.assertIsInstance(network, MultilayerNetwork)
        self.assertEqual(network.size, 4)
        self.assertEqual(network.layer_count, 2)
        self.assertListEqual(network.layer_weight.tolist(), [1.0, 1.0])
        self.assertListEqual(network.layer_of.tolist(), [0, 0, 1, 1])
        self.assertListEqual(network.actor_of.tolist(), [0, 1, 0, 1])
        self.assertListEqual(network.interlayer_edges, [(0, 2, 1.0), (1, 3, 1.0)])
        strength, two_m = network.null_strengths()
        self.assertListEqual(two_m.tolist(), [2.0, 2.0])
        self.assertListEqual(strength.tolist(), [[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 1.0]])

    def test_multilayer_decoupled(self):
        network = build_multilayer([('a', 1, 'b', 1, 1.0), ('a', 2, 'b', 2, 1.0)])
        self.assertEqual(len(network.inter_src), 0)
        src, dst, weight = network.objective_edges(5.0)
        self.assertEqual(weight.sum(), 2.0)

    def test_multilayer_rejects(self):
        with self.assertRaises(ValidationError):
            build_multilayer([('a', 1, 'b', 2, 1.0)])
        with self.assertRaises(ValidationError):
            build_multilayer([('a', 1, 'b', 1, 1.0)], [('a', 1, 'b', 1, 1.0)])
        with self.assertRaises(ValidationError):
            build_multilayer([('a', 1, 'b', 1, -1.0)])

    def test_zero_weight_layer(self):
        with self.assertWarns(UserWarning):
            network = build_multilayer(
                [('a', 1, 'b', 1, 1.0), ('a', 2, 'b', 2, 0.0)],
                [('a', 1, 'a', 2, 1.0)]
            )
        strength, two_m = network.null_strengths()
        self.assertEqual(strength.shape, (4, 1))
        self.assertListEqual(two_m.tolist(), [2.0])

    def test_couplings(self):
        actors = ['a', 'b', 'c']
        for layers in range(1, 6):
            with self.subTest(layers=layers):
                intralayer = [
                    (u, s, v, s, 1.0)
                    for s in range(layers)
                    for u, v in zip(actors, actors[1:])
                ]
                self.assertEqual(len(ordinal_coupling(intralayer)), (layers - 1) * len(actors))
                self.assertEqual(len(categorical_coupling(intralayer)), layers * (layers - 1) // 2 * len(actors))
                network = build_multilayer(intralayer, ordinal_coupling(intralayer))
                self.assertEqual(network.size, layers * len(actors))
                for members in network.layer_slices():
                    self.assertEqual(len(members), len(actors))

    def test_layer_order(self):
        network = build_multilayer([('a', 3, 'b', 3, 1.0), ('a', 1, 'b', 1, 2.0)])
        self.assertTupleEqual(network.layer_names, (1, 3))
        self.assertListEqual(network.layer_weight.tolist(), [2.0, 1.0])

    def test_multilayer_metadata(self):
        intralayer = [('a', 1, 'b', 1, 1.0), ('a', 2, 'b', 2, 1.0)]
        network = build_multilayer(intralayer, metadata={'a': 'x', ('b', 2): 'y', 'b': 'z'})
        self.assertListEqual(network.metadata_labels.tolist(), ['x', 'z', 'x', 'y'])
