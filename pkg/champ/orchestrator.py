import typing
import os
import time
import numpy as np
import pandas as pd
import yaml
from .networks import Network, MultilayerNetwork
from .partitions import Ensemble, all_partitions, network_coefficients, scatter_table
from .heuristics import SweepSpec, HEURISTICS, check_spec, ensemble_sweep
from .envelope import (
    Domain1D, ENVELOPES, prune_1d, prune_2d, summarize_envelope, verify_1d, verify_2d, Envelope2D
)
from .envelope.base import check_box
from .similarity import ami, ami_matrix, neighbor_weighted_ami, layer_averaged_ami
from . import formats, svg
from .utils import UsageError, ValidationError, check_range, worker_count, champ_logging
version = '0.1.0'

COLOR_KEYS = {'communities', 'neighbor_ami', 'metadata_ami'}

DEFAULTS = {
    'sweep': {
        'gamma_range': [0, 2],
        'omega_range': None,
        'grid': None,
        'runs': 100,
        'seed': 0,
        'heuristic': 'louvain'
    },
    'prune': {
        'mode': '1d',
        'gamma_range': None,
        'box': None,
        'method': 'qhull',
        'outside_margin': 10,
        'color_by': 'communities',
        'svg': None
    },
    'analyze': {
        'scatter': False,
        'color_by': 'communities',
        'svg': None
    },
    'oracle': {
        'samples': 1000,
        'grid': 200,
        'max_nodes': 8
    },
    'threads': None
}

class Orchestrator(object):
    """
    Main class
    Parses a run configuration and drives the sweep, coeffs, prune, analyze,
    and oracle stages over the files it names
    """

    @staticmethod
    def fill_config(cfg: typing.Union[str, typing.Dict[str, typing.Any]]) -> typing.Dict[str, typing.Any]:
        """
        Loads the given config object (or reads from the given filepath)
        Applies champ defaults, then returns the final config dictionary
        """
        if isinstance(cfg, str):
            with open(cfg) as r:
                cfg = yaml.load(r, Loader=yaml.loader.SafeLoader)
        cfg = {} if cfg is None else dict(cfg)
        for key, value in DEFAULTS.items():
            if key not in cfg or cfg[key] is None:
                cfg[key] = value
            elif isinstance(value, dict):
                cfg[key] = {**value, **cfg[key]}
        return cfg

    def __init__(self, config: typing.Union[str, typing.Dict[str, typing.Any]]):
        """
        Initializes the Orchestrator from a given config.
        Referenced input files must exist
        """
        self.config = Orchestrator.fill_config(config)
        for key in ('network', 'metadata', 'ensemble', 'domains'):
            path = self.config.get(key)
            if path is not None and not os.path.isfile(path):
                raise UsageError("{} file '{}' does not exist".format(key.capitalize(), path))
        self.workers = worker_count(self.config['threads'])
        self._network = None

    def require(self, *keys: str):
        for key in keys:
            if self.config.get(key) is None:
                raise UsageError("Missing required option '{}'".format(key))

    @property
    def network(self) -> typing.Union[Network, MultilayerNetwork]:
        if self._network is None:
            self.require('network')
            self._network = formats.load_network(self.config['network'], self.config.get('metadata'))
        return self._network

    def load_ensemble(self) -> Ensemble:
        self.require('ensemble')
        ensemble = formats.read_ensemble(self.config['ensemble'], self.network)
        champ_logging.info("Loaded {} from {}".format(ensemble, self.config['ensemble']))
        return ensemble

    def sweep_spec(self) -> SweepSpec:
        sweep = self.config['sweep']
        if sweep['heuristic'] not in HEURISTICS:
            raise UsageError("Unknown heuristic '{}'".format(sweep['heuristic']))
        return check_spec(
            SweepSpec(
                sweep['gamma_range'],
                sweep['omega_range'],
                sweep['grid'],
                sweep['runs'],
                sweep['seed']
            ),
            isinstance(self.network, MultilayerNetwork)
        )

    def run_sweep(self) -> Ensemble:
        """
        Runs the heuristic sweep and writes the JSON-lines ensemble
        """
        self.require('network', 'output')
        spec = self.sweep_spec()
        start = time.monotonic()
        ensemble = ensemble_sweep(
            self.network,
            spec,
            self.workers,
            self.config['sweep']['heuristic'],
            progress=True
        )
        formats.write_ensemble(ensemble, self.config['output'])
        champ_logging.print(
            "{} runs, {} unique partitions, {:.1f}s".format(
                ensemble.run_count,
                len(ensemble),
                time.monotonic() - start
            )
        )
        return ensemble

    def run_coeffs(self) -> pd.DataFrame:
        """
        Writes the coefficient table of an ensemble
        """
        self.require('output')
        ensemble = self.load_ensemble()
        if isinstance(self.network, Network):
            count, _ = self.network.components()
            champ_logging.info("Network has {} connected components".format(count))
        formats.write_coefficients(ensemble, self.config['output'])
        return ensemble.to_frame()

    def gamma_range(self, section: str = 'prune') -> typing.Tuple[float, float]:
        bounds = self.config[section].get('gamma_range')
        if bounds is None:
            bounds = self.config['sweep']['gamma_range']
        return check_range('gamma range', bounds, lower=0)

    def box(self) -> typing.Tuple[float, float, float, float]:
        box = self.config['prune']['box']
        if box is None:
            omega = self.config['sweep']['omega_range']
            if omega is None:
                raise UsageError("2D pruning requires a box or an omega range (--omega-range)")
            box = [*self.gamma_range(), *omega]
        return check_box(box)

    def prune(self, ensemble: Ensemble) -> typing.Union[typing.List[Domain1D], Envelope2D]:
        prune = self.config['prune']
        if prune['mode'] == '1d':
            return prune_1d(ensemble.triples, *self.gamma_range())
        elif prune['mode'] == '2d':
            if prune['method'] not in ENVELOPES:
                raise UsageError("Unknown envelope method '{}'".format(prune['method']))
            return prune_2d(ensemble.triples, self.box(), prune['method'], prune['outside_margin'])
        raise UsageError("Unknown prune mode '{}'. Use 1d or 2d".format(prune['mode']))

    def run_prune(self) -> typing.Dict[str, typing.Any]:
        """
        Prunes an ensemble and writes the domain JSON (and optional SVG map)
        """
        self.require('output')
        prune = self.config['prune']
        if prune.get('svg') is not None:
            if prune['mode'] != '2d':
                raise UsageError("Domain maps require a 2d prune")
            self.check_color_key(prune.get('color_by', 'communities'))
        ensemble = self.load_ensemble()
        result = self.prune(ensemble)
        document = formats.domains_document(
            result,
            ensemble.fingerprint(),
            self.gamma_range() if prune['mode'] == '1d' else None
        )
        formats.write_json(document, self.config['output'])
        champ_logging.print("{} of {} unique partitions admissible".format(len(document['domains']), len(ensemble)))
        if len(document['outside_box']):
            champ_logging.print("{} partitions optimal only outside the box".format(len(document['outside_box'])))
        if prune.get('svg') is not None:
            key = prune.get('color_by', 'communities')
            annotations = {} if key == 'communities' else self.annotations(document, result.domains, ensemble)
            self.write_map(document, result.domains, annotations, key, prune['svg'])
        return document

    def check_color_key(self, key: str):
        if key not in COLOR_KEYS:
            raise UsageError("color_by must be one of {}".format(sorted(COLOR_KEYS)))
        if key == 'metadata_ami' and self.network.metadata_labels is None:
            raise ValidationError("Coloring by metadata AMI requires --metadata")

    def annotations(self, document, domains, ensemble: Ensemble) -> typing.Dict[typing.Any, typing.Dict[str, float]]:
        """
        Per-partition neighbor AMI (2d only) and metadata AMI (when the
        network carries metadata)
        """
        metadata = self.network.metadata_labels
        annotations = {d.partition_id: {} for d in domains}
        if document['mode'] == '2d':
            for pid, value in neighbor_weighted_ami(domains, ensemble).items():
                annotations[pid]['neighbor_ami'] = value
        if metadata is not None:
            for pid in annotations:
                if isinstance(self.network, MultilayerNetwork):
                    annotations[pid]['metadata_ami'] = layer_averaged_ami(self.network, ensemble[pid]).value
                else:
                    annotations[pid]['metadata_ami'] = ami(ensemble[pid], [str(label) for label in metadata])
        return annotations

    def write_map(self, document, domains, annotations, key: str, path: str):
        if document['mode'] != '2d':
            raise UsageError("Domain maps require a 2d prune")
        if key == 'communities':
            values = {d.partition_id: float(d.triple.community_count) for d in domains}
        else:
            values = {pid: extra.get(key) for pid, extra in annotations.items()}
        svg.write_domain_map(
            path,
            domains,
            document['box'],
            values,
            {record['partition_id']: record['label'] for record in document['domains']},
            title='Domains of optimality',
            key=key
        )

    def run_analyze(self) -> typing.Dict[str, str]:
        """
        Writes the pairwise AMI matrix of the domains' partitions, the domain
        summary, and the domain JSON annotated with neighbor AMI (2d) and
        metadata AMI (when metadata is available). Returns the written paths
        """
        self.require('domains', 'output_dir')
        analyze = self.config['analyze']
        self.check_color_key(analyze['color_by'])
        ensemble = self.load_ensemble()
        document, domains = formats.read_domains(self.config['domains'])
        if 'ensemble' in document and document['ensemble'] != ensemble.fingerprint():
            raise ValidationError("Domain file '{}' was not computed from ensemble '{}'".format(
                self.config['domains'], self.config['ensemble']
            ))
        if not len(domains):
            raise ValidationError("Domain file '{}' has no domains".format(self.config['domains']))
        output_dir = self.config['output_dir']
        os.makedirs(output_dir, exist_ok=True)
        outputs = {}
        ids = [d.partition_id for d in domains]
        matrix = ami_matrix([ensemble[pid] for pid in ids], self.workers)
        outputs['ami_matrix'] = os.path.join(output_dir, 'ami_matrix.csv')
        formats.write_ami_matrix(ids, matrix, outputs['ami_matrix'])
        annotations = self.annotations(document, domains, ensemble)
        for record in document['domains']:
            record.update(annotations[record['partition_id']])
        outputs['domains'] = os.path.join(output_dir, 'domains.annotated.json')
        formats.write_json(document, outputs['domains'])
        summary = summarize_envelope(domains)
        outputs['summary'] = os.path.join(output_dir, 'summary.csv')
        formats.write_frame(summary.table, outputs['summary'])
        if analyze['scatter']:
            outputs['scatter'] = os.path.join(output_dir, 'scatter.csv')
            formats.write_frame(scatter_table(ensemble), outputs['scatter'])
        if analyze['svg'] is not None:
            self.write_map(document, domains, annotations, analyze['color_by'], analyze['svg'])
            outputs['svg'] = analyze['svg']
        for name, path in outputs.items():
            champ_logging.info1("Wrote {} to {}".format(name, path))
        return outputs

    def exhaustive_check(self) -> typing.List[typing.Any]:
        """
        Prunes every partition of a small single-layer network and compares
        against brute force at evenly spaced gammas
        """
        network = self.network
        limit = self.config['oracle']['max_nodes']
        if isinstance(network, MultilayerNetwork) or network.size > limit:
            raise UsageError("Exhaustive checks need a single-layer network with at most {} nodes".format(limit))
        triples = [
            network_coefficients(network, labels, i)
            for i, labels in enumerate(all_partitions(network.size))
        ]
        lo, hi = self.gamma_range('oracle')
        domains = prune_1d(triples, lo, hi)
        gammas = np.linspace(lo, hi, self.config['oracle']['samples'], endpoint=False)
        champ_logging.info("Checking {} partitions at {} gammas".format(len(triples), len(gammas)))
        return verify_1d(domains, triples, gammas)

    def domain_check(self) -> typing.List[typing.Any]:
        """
        Checks a domain JSON against brute force over its ensemble
        """
        ensemble = self.load_ensemble()
        document, domains = formats.read_domains(self.config['domains'])
        oracle = self.config['oracle']
        if document['mode'] == '1d':
            lo, hi = document['box']
            return verify_1d(domains, ensemble.triples, np.linspace(lo, hi, oracle['samples'], endpoint=False))
        g0, g1, w0, w1 = document['box']
        side = oracle['grid']
        gg, ww = np.meshgrid(
            g0 + (np.arange(side) + 0.5) * (g1 - g0) / side,
            w0 + (np.arange(side) + 0.5) * (w1 - w0) / side
        )
        envelope = Envelope2D(domains, document['outside_box'], document.get('measure_zero', []), tuple(document['box']))
        return verify_2d(envelope, ensemble.triples, np.column_stack([gg.ravel(), ww.ravel()]))

    def run_oracle(self) -> typing.List[typing.Any]:
        """
        Runs brute-force verification and returns the mismatches
        """
        if self.config.get('domains') is not None:
            mismatches = self.domain_check()
        else:
            mismatches = self.exhaustive_check()
        for mismatch in mismatches[:20]:
            champ_logging.warning("Mismatch at {}: domain owner {} but argmax {}".format(
                mismatch[0], mismatch[1], sorted(mismatch[2])
            ))
        champ_logging.print("{} mismatches".format(len(mismatches)))
        return mismatches

    def run(self, command: str) -> typing.Any:
        commands = {
            'sweep': self.run_sweep,
            'coeffs': self.run_coeffs,
            'prune': self.run_prune,
            'analyze': self.run_analyze,
            'oracle': self.run_oracle
        }
        if command not in commands:
            raise UsageError("Unknown command '{}'".format(command))
        return commands[command]()
