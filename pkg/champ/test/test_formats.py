import unittest
import os
import json
import tempfile
import warnings
import numpy as np
import pandas as pd
from champ import formats
from champ.networks import Network, MultilayerNetwork, build_network
from champ.partitions import Ensemble, Provenance
from champ.envelope import prune_1d, prune_2d
from champ.utils import ValidationError

def setUpModule():
    global WARNING_CONTEXT
    WARNING_CONTEXT = warnings.catch_warnings()
    WARNING_CONTEXT.__enter__()
    warnings.simplefilter('ignore', UserWarning)

def tearDownModule():
    WARNING_CONTEXT.__exit__(None, None, None)

class TestUnit(unittest.TestCase):
    """
    Tests file reading and writing
    """

    def setUp(self):
        self.tempdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tempdir.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tempdir.name, name)
        with open(path, 'w') as w:
            w.write(text)
        return path

    def path(self, name):
        return os.path.join(self.tempdir.name, name)

    def test_read_network(self):
        path = self.write('edges.txt', "# triangle\na b\nb c 2.5\n\na c\n")
        network = formats.load_network(path)
        self.assertIsInstance(network, Network)
        self.assertListEqual(list(network.node_names), ['a', 'b', 'c'])
        self.assertEqual(network.total_weight, 4.5)
        self.assertListEqual(network.strength.tolist(), [2.0, 3.5, 3.5])

    def test_read_metadata(self):
        edges = self.write('edges.txt', "a b\nb c\nc d\n")
        meta = self.write('meta.txt', "a x\nb x\nc y\n")
        network = formats.load_network(edges, meta)
        self.assertListEqual(list(network.metadata_labels), ['x', 'x', 'y', None])
        mixed = self.write('mixed.txt', "a 1 x\nb y\n")
        with self.assertRaises(ValidationError):
            formats.read_metadata(mixed)
        self.assertDictEqual(
            formats.read_metadata(self.write('layered.txt', "a 1 x\na 2 y\n")),
            {('a', 1): 'x', ('a', 2): 'y'}
        )

    def test_read_multilayer(self):
        path = self.write(
            'multi.txt',
            "a 1 b 1 1 intra\n"
            "a 2 b 2 1 intra\n"
            "a 1 a 2 1 inter\n"
            "b 1 b 2 1 inter\n"
        )
        meta = self.write('meta.txt', "a 1 x\nb 1 y\na 2 x\nb 2 x\n")
        self.assertTrue(formats.sniff_multilayer(path))
        network = formats.load_network(path, meta)
        self.assertIsInstance(network, MultilayerNetwork)
        self.assertEqual(network.size, 4)
        self.assertEqual(network.layer_count, 2)
        self.assertListEqual(list(network.metadata_labels), ['x', 'y', 'x', 'x'])
        bad = self.write('bad.txt', "a 1 b 1 1 across\n")
        with self.assertRaises(ValidationError):
            formats.read_multilayer(bad)

    def test_malformed_network(self):
        cases = {
            'missing': None,
            'empty': "# nothing here\n",
            'short': "a\n",
            'weight': "a b heavy\n",
            'negative': "a b -1\n",
        }
        for name, text in cases.items():
            with self.subTest(case=name):
                path = self.path(name) if text is None else self.write(name, text)
                with self.assertRaises(ValidationError):
                    formats.load_network(path)

    def test_ensemble_file(self):
        network = build_network([(0, 1), (1, 2), (0, 2)])
        ensemble = Ensemble(network)
        ensemble.add([1, 1, 0], Provenance(1.5, None, 7, 2))
        ensemble.add([0, 0, 0], Provenance(0.5, None, 3, 0))
        ensemble.add([0, 0, 1], Provenance(1.25, None, 9, 1))
        path = self.path('ensemble.jsonl')
        formats.write_ensemble(ensemble.canonical(), path)
        with open(path) as r:
            records = [json.loads(line) for line in r]
        self.assertListEqual([r['seed'] for r in records], [3, 9, 7])
        self.assertListEqual(records[1]['labels'], [0, 0, 1])
        self.assertIsNone(records[0]['omega'])
        loaded = formats.read_ensemble(path, network)
        self.assertEqual(len(loaded), 2)
        self.assertEqual(loaded.run_count, 3)
        self.assertEqual(loaded.fingerprint(), ensemble.fingerprint())
        self.assertListEqual(
            loaded.provenance[loaded.find([0, 0, 1])],
            [Provenance(1.25, None, 9, 1), Provenance(1.5, None, 7, 2)]
        )

    def test_malformed_ensemble(self):
        network = build_network([(0, 1), (1, 2), (0, 2)])
        cases = {
            'json': "{not json}\n",
            'labels': '{"gamma": 1.0}\n',
            'length': '{"labels": [0, 0]}\n',
            'negative': '{"labels": [0, -1, 0]}\n',
            'empty': "\n\n",
        }
        for name, text in cases.items():
            with self.subTest(case=name):
                with self.assertRaises(ValidationError):
                    formats.read_ensemble(self.write(name, text), network)

    def test_coefficients(self):
        network = build_network([(0, 1), (1, 2), (0, 2)])
        ensemble = Ensemble(network)
        ensemble.add([0, 0, 0])
        ensemble.add([0, 1, 2])
        path = self.path('coeffs.csv')
        formats.write_coefficients(ensemble, path)
        df = pd.read_csv(path)
        self.assertListEqual(
            list(df.columns),
            ['partition_id', 'a_hat', 'p_hat', 'c_hat', 'n_communities', 'n_communities_ge5']
        )
        self.assertListEqual(df['a_hat'].tolist(), [6.0, 0.0])
        self.assertListEqual(df['p_hat'].tolist(), [6.0, 2.0])

    def test_domains_1d(self):
        network = build_network([(0, 1), (1, 2), (0, 2)])
        ensemble = Ensemble(network)
        for labels in ([0, 0, 0], [0, 1, 2], [0, 0, 1]):
            ensemble.add(labels)
        ensemble = ensemble.canonical()
        domains = prune_1d(ensemble.triples, 0, 6)
        document = formats.domains_document(domains, ensemble.fingerprint(), (0, 6))
        self.assertEqual(document['mode'], '1d')
        self.assertListEqual(document['box'], [0.0, 6.0])
        self.assertListEqual(document['outside_box'], [])
        self.assertEqual(document['ensemble'], ensemble.fingerprint())
        path = self.path('domains.json')
        formats.write_json(document, path)
        loaded, restored = formats.read_domains(path)
        self.assertDictEqual(loaded, document)
        self.assertListEqual([d.partition_id for d in restored], [d.partition_id for d in domains])
        for original, read in zip(domains, restored):
            self.assertEqual(read.gamma_lo, original.gamma_lo)
            self.assertEqual(read.gamma_hi, original.gamma_hi)
            self.assertEqual(read.triple.a_hat, original.triple.a_hat)

    def test_domains_2d(self):
        network = build_network([(0, 1), (1, 2), (0, 2)])
        ensemble = Ensemble(network)
        for labels in ([0, 0, 0], [0, 1, 2]):
            ensemble.add(labels)
        result = prune_2d(ensemble.triples, (0, 6, 0, 1))
        document = formats.domains_document(result)
        self.assertEqual(document['mode'], '2d')
        self.assertListEqual(document['box'], [0.0, 6.0, 0.0, 1.0])
        self.assertIn('measure_zero', document)
        path = self.path('domains.json')
        formats.write_json(document, path)
        _, restored = formats.read_domains(path)
        self.assertEqual(len(restored), len(result.domains))
        for original, read in zip(result.domains, restored):
            self.assertTrue(np.array_equal(read.polygon, np.asarray(original.polygon, dtype=float)))

    def test_malformed_domains(self):
        cases = {
            'json': "[",
            'list': "[]",
            'mode': '{"mode": "3d", "domains": []}',
            'record': '{"mode": "1d", "domains": [{"partition_id": 0}]}',
            'polygon': '{"mode": "2d", "domains": [{"partition_id": 0, "a_hat": 1, "p_hat": 1, "c_hat": 0,'
                ' "n_communities": 1, "n_communities_ge5": 0, "polygon": [1, 2]}]}',
        }
        for name, text in cases.items():
            with self.subTest(case=name):
                with self.assertRaises(ValidationError):
                    formats.read_domains(self.write(name, text))
        with self.assertRaises(ValidationError):
            formats.read_domains(self.path('absent.json'))

    def test_ami_matrix(self):
        path = self.path('ami.csv')
        formats.write_ami_matrix([3, 5], np.array([[1.0, 0.25], [0.25, 1.0]]), path)
        df = pd.read_csv(path, index_col=0)
        self.assertEqual(df.index.name, 'partition_id')
        self.assertListEqual(df.index.tolist(), [3, 5])
        self.assertListEqual(list(df.columns), ['3', '5'])
        self.assertEqual(df.loc[3, '5'], 0.25)
