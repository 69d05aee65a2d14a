import unittest
import json
import time
import warnings
import numpy as np
from timeout_decorator import timeout as with_timeout
from champ import formats
from champ.networks import Network, build_network, build_multilayer, ordinal_coupling
from champ.partitions import CoefficientTriple, Ensemble, Partition, all_partitions, coefficients
from champ.heuristics import SweepSpec, ensemble_sweep
from champ.envelope import prune_1d, prune_2d, verify_1d, verify_2d
from champ.envelope.geometry import polygon_area
from champ.similarity import layer_averaged_ami

def random_network(edge_count, seed=0):
    rng = np.random.default_rng(seed)
    n = edge_count // 10
    return Network(
        n,
        rng.integers(0, n, edge_count),
        rng.integers(0, n, edge_count),
        rng.uniform(0.5, 2.0, edge_count)
    )

def timed(func, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return float(np.median(times))

def planted_temporal(seed=0, actors=40, layers=4):
    """
    Two-block temporal network where actor 0 switches blocks halfway
    """
    rng = np.random.default_rng(seed)
    blocks = {
        (a, s): int(a >= actors // 2 or (a == 0 and s >= layers // 2))
        for a in range(actors)
        for s in range(layers)
    }
    intralayer = [
        (i, s, j, s, 1.0)
        for s in range(layers)
        for i in range(actors)
        for j in range(i + 1, actors)
        if rng.random() < (0.5 if blocks[i, s] == blocks[j, s] else 0.05)
    ]
    network = build_multilayer(
        intralayer,
        ordinal_coupling(intralayer, 1.0),
        nodelayers=list(blocks),
        metadata=blocks
    )
    return network

def setUpModule():
    global WARNING_CONTEXT
    WARNING_CONTEXT = warnings.catch_warnings()
    WARNING_CONTEXT.__enter__()
    warnings.simplefilter('ignore', UserWarning)

def tearDownModule():
    WARNING_CONTEXT.__exit__(None, None, None)

class TestIntegration(unittest.TestCase):
    """
    End-to-end properties of the sweep, prune, and analysis stages
    """

    @with_timeout(120)
    def test_exhaustive_small_graphs(self):
        rng = np.random.default_rng(30)
        gammas = rng.uniform(0, 5, 1000)
        checked = 0
        while checked < 30:
            n = int(rng.integers(2, 9))
            edges = [
                (i, j, float(rng.uniform(0.5, 3)))
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            ]
            if not len(edges):
                continue
            with self.subTest(graph=checked, nodes=n):
                network = build_network(edges, node_count=n)
                triples = [coefficients(network, labels, i) for i, labels in enumerate(all_partitions(n))]
                self.assertListEqual(verify_1d(prune_1d(triples, 0, 5), triples, gammas), [])
            checked += 1

    @with_timeout(300)
    def test_grid_oracle(self):
        rng = np.random.default_rng(20)
        side = 200
        centers = (np.arange(side) + 0.5) / side
        for trial in range(20):
            count = int(rng.integers(2, 201))
            triples = [
                CoefficientTriple(float(a), float(p), float(c), i)
                for i, (a, p, c) in enumerate(zip(
                    rng.uniform(0, 100, count),
                    rng.uniform(0, 50, count),
                    rng.uniform(0, 50, count)
                ))
            ]
            box = (0.0, 2.0, 0.0, 1.5)
            points = np.array([(box[0] + 2.0 * g, box[2] + 1.5 * w) for g in centers for w in centers])
            for method in ('qhull', 'clip'):
                with self.subTest(trial=trial, method=method):
                    result = prune_2d(triples, box, method)
                    self.assertListEqual(verify_2d(result, triples, points), [])
                    self.assertAlmostEqual(
                        sum(polygon_area(d.polygon) for d in result.domains) / 3.0,
                        1.0,
                        delta=1e-6
                    )

    @with_timeout(300)
    def test_coefficient_speed(self):
        times = []
        for edge_count in (250000, 500000, 1000000):
            network = random_network(edge_count)
            labels = np.random.default_rng(1).integers(0, 1000, network.size)
            partition = Partition(labels)
            times.append(timed(lambda: coefficients(network, partition)))
        self.assertLess(times[-1], 1.0)
        for small, large in zip(times[:-1], times[1:]):
            self.assertLessEqual(large, 2.5 * small + 0.01)

    @with_timeout(120)
    def test_prune_speed(self):
        rng = np.random.default_rng(2)
        p = rng.uniform(0, 100, 100000)
        a = p + rng.uniform(0, 50, 100000) + 0.01 * p ** 2
        triples = [CoefficientTriple(float(x), float(y), 0.0, i) for i, (x, y) in enumerate(zip(a, p))]
        start = time.perf_counter()
        domains = prune_1d(triples, 0, 2)
        self.assertLess(time.perf_counter() - start, 5.0)
        self.assertGreater(len(domains), 0)
        self.assertTrue(all(d1.triple.p_hat > d2.triple.p_hat for d1, d2 in zip(domains, domains[1:])))

    def test_flat_2d_matches_1d(self):
        rng = np.random.default_rng(3)
        for trial in range(5):
            with self.subTest(trial=trial):
                p = rng.uniform(1, 10, 40)
                triples = [
                    CoefficientTriple(float(x), float(y), 0.0, i)
                    for i, (x, y) in enumerate(zip(p + rng.uniform(0, 5, 40) + 0.2 * p ** 2, p))
                ]
                expected = {d.partition_id: (d.gamma_lo, d.gamma_hi) for d in prune_1d(triples, 0, 2)}
                for method in ('qhull', 'clip'):
                    result = prune_2d(triples, (0, 2, 0, 1), method)
                    found = {
                        d.partition_id: (d.polygon[:, 0].min(), d.polygon[:, 0].max())
                        for d in result.domains
                    }
                    self.assertSetEqual(set(found), set(expected))
                    for pid, (lo, hi) in expected.items():
                        self.assertAlmostEqual(found[pid][0], lo, delta=1e-9)
                        self.assertAlmostEqual(found[pid][1], hi, delta=1e-9)

    @with_timeout(120)
    def test_permutation_invariance(self):
        network = build_network([
            (i, j) for i in range(12) for j in range(i + 1, 12)
            if (i // 4 == j // 4) or (j == i + 4 and i % 3 == 0)
        ])
        ensemble = ensemble_sweep(network, SweepSpec((0, 3), None, None, 60, 1), workers=1)
        rng = np.random.default_rng(5)
        documents = set()
        for trial in range(4):
            shuffled = Ensemble(network)
            order = rng.permutation(len(ensemble)) if trial else np.arange(len(ensemble))
            for i in order:
                labels = ensemble[int(i)].canonical
                shuffled.add(labels.max() - labels)
            shuffled = shuffled.canonical()
            documents.add(json.dumps(
                formats.domains_document(prune_1d(shuffled.triples, 0, 3), shuffled.fingerprint(), (0, 3)),
                indent=2
            ))
        self.assertEqual(len(documents), 1)

    @with_timeout(900)
    def test_planted_multilayer(self):
        network = planted_temporal()
        ensemble = ensemble_sweep(network, SweepSpec((0, 2), (0, 1), None, 2000, 0))
        result = prune_2d(ensemble.triples, (0, 2, 0, 1))
        largest = max(result.domains, key=lambda d: polygon_area(d.polygon))
        self.assertGreaterEqual(layer_averaged_ami(network, ensemble[largest.partition_id]).value, 0.9)
