import unittest
import warnings
import numpy as np
from timeout_decorator import timeout as with_timeout
from champ.networks import build_network
from champ.partitions import CoefficientTriple, all_partitions, coefficients
from champ.envelope import (
    prune_1d, prune_2d, intersection_gamma, envelope_at, summarize_envelope,
    brute_force_envelope, verify_1d, verify_2d, PARALLEL, COPLANAR, Domain1D
)
from champ.envelope.geometry import (
    polygon_area, clip_halfplane, box_polygon, shared_border_length, order_ccw, contains
)
from champ.utils import ValidationError, UsageError

WARNING_CONTEXT = None

TRIANGLE = [(0, 1, 1), (1, 2, 1), (0, 2, 1)]
PATH = [(0, 1, 1), (1, 2, 1)]

TOY_2D = [
    CoefficientTriple(10, 10, 0, 0),
    CoefficientTriple(6, 2, 0, 1),
    CoefficientTriple(8, 6, 4, 2)
]

def setUpModule():
    global WARNING_CONTEXT
    WARNING_CONTEXT = warnings.catch_warnings()
    WARNING_CONTEXT.__enter__()
    warnings.simplefilter('ignore', UserWarning)

def tearDownModule():
    WARNING_CONTEXT.__exit__()

def exhaustive(edges, n=None):
    network = build_network(edges, node_count=n)
    return [
        coefficients(network, labels, i)
        for i, labels in enumerate(all_partitions(network.size))
    ]

def as_set(polygon):
    return {(round(g, 9), round(w, 9)) for g, w in polygon}

class TestUnit(unittest.TestCase):
    """
    Tests one- and two-parameter domains of optimality
    """

    def test_intersection(self):
        self.assertAlmostEqual(intersection_gamma(CoefficientTriple(6, 6), CoefficientTriple(0, 2)), 1.5)
        self.assertEqual(intersection_gamma(CoefficientTriple(5, 3), CoefficientTriple(2, 3)), PARALLEL)
        self.assertEqual(intersection_gamma(CoefficientTriple(2, 2.5), CoefficientTriple(2, 2.5)), COPLANAR)

    def test_triangle(self):
        domains = prune_1d(exhaustive(TRIANGLE), 0, 6)
        self.assertListEqual([d.partition_id for d in domains], [0, 4])
        self.assertAlmostEqual(domains[0].gamma_lo, 0)
        self.assertAlmostEqual(domains[0].gamma_hi, 1.5)
        self.assertAlmostEqual(domains[1].gamma_lo, 1.5)
        self.assertAlmostEqual(domains[1].gamma_hi, 6)
        # the boundary is the crossing of the two surviving lines, bit for bit
        self.assertEqual(domains[0].gamma_hi, 1.5)
        self.assertEqual(domains[1].gamma_lo, 1.5)

    def test_path(self):
        domains = prune_1d(exhaustive(PATH), 0, 6)
        self.assertListEqual([d.partition_id for d in domains], [0, 1, 4])
        self.assertTupleEqual(domains[1].aliases, (3,))
        self.assertAlmostEqual(domains[0].gamma_hi, 4 / 3)
        self.assertAlmostEqual(domains[1].gamma_hi, 2)
        self.assertAlmostEqual(domains[2].gamma_hi, 6)

    def test_single(self):
        domains = prune_1d([CoefficientTriple(3, 1, 0, 'only')], 0.5, 2.5)
        self.assertEqual(len(domains), 1)
        self.assertTupleEqual((domains[0].gamma_lo, domains[0].gamma_hi), (0.5, 2.5))
        summary = summarize_envelope(domains)
        self.assertListEqual(summary.transitions, [])

    def test_errors(self):
        with self.assertRaises(ValidationError):
            prune_1d([])
        with self.assertRaises(UsageError):
            prune_1d(exhaustive(TRIANGLE), 2, 1)
        with self.assertRaises(ValidationError):
            prune_1d([CoefficientTriple(1, 1, 0, 0), CoefficientTriple(2, 1, 0, 0)])

    def test_start_inside(self):
        domains = prune_1d(exhaustive(TRIANGLE), 2, 6)
        self.assertListEqual([d.partition_id for d in domains], [4])

    def test_order_invariance(self):
        triples = exhaustive([(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 0, 1), (0, 2, 1)])
        reference = prune_1d(triples, 0, 4)
        rng = np.random.default_rng(5)
        for trial in range(20):
            with self.subTest(trial=trial):
                shuffled = [triples[i] for i in rng.permutation(len(triples))]
                domains = prune_1d(shuffled, 0, 4)
                self.assertListEqual(
                    [(d.partition_id, d.gamma_lo, d.gamma_hi, d.aliases) for d in domains],
                    [(d.partition_id, d.gamma_lo, d.gamma_hi, d.aliases) for d in reference]
                )

    @with_timeout(120)
    def test_exhaustive_oracle(self):
        rng = np.random.default_rng(17)
        gammas = np.linspace(0, 4, 1000, endpoint=False)
        for trial in range(12):
            with self.subTest(trial=trial):
                n = int(rng.integers(3, 7))
                edges = [
                    (i, j, float(rng.integers(1, 5)))
                    for i in range(n)
                    for j in range(i + 1, n)
                    if rng.random() < 0.6
                ]
                if not len(edges):
                    continue
                triples = exhaustive(edges, n)
                domains = prune_1d(triples, 0, 4)
                self.assertListEqual(verify_1d(domains, triples, gammas), [])
                # contiguous cover with strictly decreasing p_hat
                self.assertEqual(domains[0].gamma_lo, 0)
                self.assertEqual(domains[-1].gamma_hi, 4)
                for left, right in zip(domains, domains[1:]):
                    self.assertEqual(left.gamma_hi, right.gamma_lo)
                    self.assertGreater(left.triple.p_hat, right.triple.p_hat)

    def test_verify_detects(self):
        triples = exhaustive(TRIANGLE)
        wrong = [Domain1D(4, 0.0, 6.0, triples[4])]
        self.assertGreater(len(verify_1d(wrong, triples, np.linspace(0, 6, 100))), 0)

    def test_brute_force(self):
        triples = exhaustive(TRIANGLE)
        at_one, at_transition = brute_force_envelope(triples, [1.0, 1.5])
        self.assertSetEqual(set(at_one), {0})
        self.assertSetEqual(set(at_transition), {0, 1, 2, 3, 4})

    def test_envelope_at(self):
        triples = exhaustive(TRIANGLE)
        domains = prune_1d(triples, 0, 6)
        pid, q = envelope_at(domains, 1.0)
        self.assertEqual(pid, 0)
        self.assertAlmostEqual(q, 0.0)
        pid, q = envelope_at(domains, 3.0)
        self.assertEqual(pid, 4)
        self.assertAlmostEqual(q, -6.0)
        with self.assertRaises(ValidationError):
            envelope_at(domains, 7.0)

    def test_summary_1d(self):
        summary = summarize_envelope(prune_1d(exhaustive(TRIANGLE), 0, 6))
        self.assertListEqual(summary.transitions, [1.5])
        self.assertListEqual(summary.table['extent'].tolist(), [1.5, 4.5])
        self.assertListEqual(summary.table['rank'].tolist(), [2, 1])
        self.assertListEqual(summary.table['label'].tolist(), ['0.2', '0.1'])
        self.assertAlmostEqual(summary.total, 6.0)

    def test_toy_2d(self):
        for method in ('qhull', 'clip'):
            with self.subTest(method=method):
                result = prune_2d(TOY_2D, (0, 2, 0, 2), method)
                self.assertListEqual([d.partition_id for d in result.domains], [0, 1, 2])
                self.assertListEqual(result.outside_box, [])
                areas = [polygon_area(d.polygon) for d in result.domains]
                for area, expected in zip(areas, [0.125, 1.125, 2.75]):
                    self.assertAlmostEqual(area, expected)
                self.assertSetEqual(as_set(result.domains[0].polygon), {(0, 0), (0.5, 0), (0, 0.5)})
                self.assertSetEqual(as_set(result.domains[1].polygon), {(0.5, 0), (2, 0), (2, 1.5)})
                self.assertEqual(len(result.domains[2].polygon), 5)
                summary = summarize_envelope(result.domains)
                self.assertAlmostEqual(summary.total, 4.0)
                pid, _ = envelope_at(result.domains, 1.0, 1.5)
                self.assertEqual(pid, 2)

    def test_grid_oracle_2d(self):
        side = 60
        g = (np.arange(side) + 0.5) * 2 / side
        points = np.array([(x, y) for x in g for y in g])
        for method in ('qhull', 'clip'):
            with self.subTest(method=method):
                result = prune_2d(TOY_2D, (0, 2, 0, 2), method)
                self.assertListEqual(verify_2d(result, TOY_2D, points), [])

    def test_strips(self):
        triples = [CoefficientTriple(6, 6, 0, 0), CoefficientTriple(0, 2, 0, 1)]
        for method in ('qhull', 'clip'):
            with self.subTest(method=method):
                result = prune_2d(triples, (0, 6, 0, 1), method)
                self.assertListEqual([d.partition_id for d in result.domains], [0, 1])
                self.assertAlmostEqual(result.domains[0].polygon[:, 0].max(), 1.5)
                self.assertAlmostEqual(result.domains[1].polygon[:, 0].min(), 1.5)
                self.assertAlmostEqual(polygon_area(result.domains[1].polygon), 4.5)

    def test_single_2d(self):
        result = prune_2d([CoefficientTriple(1, 1, 1, 0)], (0, 2, 0, 3))
        self.assertEqual(len(result.domains), 1)
        self.assertAlmostEqual(polygon_area(result.domains[0].polygon), 6.0)

    def test_outside_box(self):
        triples = TOY_2D[:2] + [CoefficientTriple(0, 0.5, 0, 2)]
        for method in ('qhull', 'clip'):
            with self.subTest(method=method):
                result = prune_2d(triples, (0, 2, 0, 2), method)
                self.assertListEqual([d.partition_id for d in result.domains], [0, 1])
                self.assertListEqual(result.outside_box, [2])

    def test_measure_zero_line(self):
        triples = exhaustive(TRIANGLE)
        result = prune_2d(triples, (0, 6, 0, 1), 'clip')
        self.assertListEqual([d.partition_id for d in result.domains], [0, 4])
        self.assertNotIn(1, [d.partition_id for d in result.domains])

    def test_coplanar_2d(self):
        triples = TOY_2D + [CoefficientTriple(8, 6, 4, 3)]
        result = prune_2d(triples, (0, 2, 0, 2))
        self.assertListEqual([d.partition_id for d in result.domains], [0, 1, 2])
        self.assertTupleEqual(result.domains[2].aliases, (3,))

    def test_box_errors(self):
        with self.assertRaises(UsageError):
            prune_2d(TOY_2D, (0, 2, 0))
        with self.assertRaises(UsageError):
            prune_2d(TOY_2D, (-1, 2, 0, 2))
        with self.assertRaises(UsageError):
            prune_2d(TOY_2D, (0, 2, 0, 2), 'bogus')

    def test_geometry(self):
        square = box_polygon((0, 1, 0, 1))
        self.assertEqual(polygon_area(square), 1.0)
        half = clip_halfplane(square, 1, 1, 1)
        self.assertAlmostEqual(polygon_area(half), 0.5)
        self.assertEqual(len(clip_halfplane(square, 1, 0, -1)), 0)
        right = box_polygon((1, 2, 0, 1))
        self.assertAlmostEqual(shared_border_length(square, right), 1.0)
        corner = box_polygon((1, 2, 1, 2))
        self.assertEqual(shared_border_length(square, corner), 0.0)
        offset = box_polygon((1, 2, 0.5, 3))
        self.assertAlmostEqual(shared_border_length(square, offset), 0.5)
        shuffled = order_ccw(square[[2, 0, 3, 1]])
        self.assertListEqual(shuffled.tolist(), square.tolist())
        self.assertListEqual(
            contains(square, [[0.5, 0.5], [1.5, 0.5], [1.0, 0.5]]).tolist(),
            [True, False, True]
        )
