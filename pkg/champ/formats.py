"""
Reading and writing networks, ensembles, coefficients, domains, and AMI
tables
"""
import os
import json
import typing
import numpy as np
import pandas as pd
from .networks import Network, MultilayerNetwork, build_network, build_multilayer
from .partitions import Ensemble, Provenance
from .envelope import Domain1D, Domain2D, Envelope2D, summarize_envelope
from .partitions import CoefficientTriple
from .utils import ValidationError, champ_logging

FLOAT_FORMAT = '%.17g'

def read_table(path: str, names: typing.List[str], what: str, required: int) -> pd.DataFrame:
    """
    Reads a whitespace-delimited text table with '#' comments and no header.
    Columns beyond the first `required` may be missing
    """
    if not os.path.isfile(path):
        raise ValidationError("{} file '{}' does not exist".format(what, path))
    try:
        df = pd.read_csv(
            path,
            sep=r'\s+',
            comment='#',
            header=None,
            names=names,
            dtype=str,
            index_col=False,
            skip_blank_lines=True
        )
    except pd.errors.EmptyDataError:
        raise ValidationError("{} file '{}' is empty".format(what, path))
    except pd.errors.ParserError as e:
        raise ValidationError("Malformed {} file '{}': {}".format(what, path, e)) from e
    if not len(df):
        raise ValidationError("{} file '{}' is empty".format(what, path))
    missing = df[names[:required]].isna().any(axis=1)
    if missing.any():
        raise ValidationError("{} file '{}' has {} rows with fewer than {} fields".format(
            what, path, missing.sum(), required
        ))
    return df

def parse_weights(column: pd.Series, path: str) -> np.ndarray:
    try:
        return column.fillna('1.0').astype(float).values
    except ValueError as e:
        raise ValidationError("Non-numeric weight in '{}': {}".format(path, e)) from e

def layer_keys(column: pd.Series) -> pd.Series:
    """
    Layer tags sort numerically when they are all integers
    """
    try:
        return column.astype(int)
    except ValueError:
        return column

def read_metadata(path: str) -> typing.Dict[typing.Any, str]:
    """
    Reads `node label` lines, or `actor layer label` lines for node-layers
    """
    df = read_table(path, ['node', 'second', 'third'], 'Metadata', 2)
    if df['third'].notna().all():
        return {
            (actor, layer): label
            for actor, layer, label in zip(df['node'], layer_keys(df['second']), df['third'])
        }
    if df['third'].notna().any():
        raise ValidationError("Metadata file '{}' mixes 2- and 3-column lines".format(path))
    return dict(zip(df['node'], df['second']))

def read_network(path: str, metadata: typing.Optional[str] = None) -> Network:
    """
    Reads a `src dst [weight]` edge list. Node tokens are names, numbered in
    order of first appearance
    """
    df = read_table(path, ['src', 'dst', 'weight'], 'Edge list', 2)
    network = build_network(
        zip(df['src'], df['dst'], parse_weights(df['weight'], path)),
        metadata=read_metadata(metadata) if metadata is not None else None
    )
    champ_logging.info("Read {} from {}".format(network, path))
    return network

def read_multilayer(path: str, metadata: typing.Optional[str] = None) -> MultilayerNetwork:
    """
    Reads `i_actor i_layer j_actor j_layer weight kind` lines, kind being
    intra or inter
    """
    df = read_table(path, ['i_actor', 'i_layer', 'j_actor', 'j_layer', 'weight', 'kind'], 'Multilayer edge list', 6)
    kinds = set(df['kind'])
    if not kinds <= {'intra', 'inter'}:
        raise ValidationError("Edge kind must be 'intra' or 'inter', found {}".format(sorted(kinds - {'intra', 'inter'})))
    df['i_layer'] = layer_keys(df['i_layer'])
    df['j_layer'] = layer_keys(df['j_layer'])
    df['weight'] = parse_weights(df['weight'], path)
    columns = ['i_actor', 'i_layer', 'j_actor', 'j_layer', 'weight']
    network = build_multilayer(
        df.loc[df['kind'] == 'intra', columns].itertuples(index=False, name=None),
        df.loc[df['kind'] == 'inter', columns].itertuples(index=False, name=None),
        metadata=read_metadata(metadata) if metadata is not None else None
    )
    champ_logging.info("Read {} from {}".format(network, path))
    return network

def sniff_multilayer(path: str) -> bool:
    """
    True if the first data line of a network file has the 6-field
    multilayer layout
    """
    with open(path) as r:
        for line in r:
            fields = line.split()
            if len(fields) and not fields[0].startswith('#'):
                return len(fields) == 6
    return False

def load_network(path: str, metadata: typing.Optional[str] = None) -> typing.Union[Network, MultilayerNetwork]:
    if not os.path.isfile(path):
        raise ValidationError("Network file '{}' does not exist".format(path))
    if sniff_multilayer(path):
        return read_multilayer(path, metadata)
    return read_network(path, metadata)

def number(value: typing.Any) -> typing.Any:
    if value is None:
        return None
    if isinstance(value, (np.integer, int)):
        return int(value)
    return float(value)

def write_ensemble(ensemble: Ensemble, path: str):
    """
    Writes one JSON line per recorded run, in run order:
    {"gamma", "omega", "seed", "labels"}. Partitions without provenance are
    written once with null parameters
    """
    lines = []
    for partition, records in zip(ensemble.partitions, ensemble.provenance):
        labels = partition.canonical.tolist()
        for record in (records if len(records) else [Provenance()]):
            lines.append((
                (record.run_id is None, record.run_id or 0),
                json.dumps({
                    'gamma': number(record.gamma),
                    'omega': number(record.omega),
                    'seed': number(record.seed),
                    'labels': labels
                })
            ))
    lines.sort(key=lambda line: line[0])
    with open(path, 'w') as w:
        for _, line in lines:
            w.write(line + '\n')

def read_ensemble(path: str, network: typing.Union[Network, MultilayerNetwork]) -> Ensemble:
    """
    Reads a JSON-lines ensemble against its network. Line numbers become run
    ids. Returns a canonical Ensemble
    """
    if not os.path.isfile(path):
        raise ValidationError("Ensemble file '{}' does not exist".format(path))
    ensemble = Ensemble(network)
    with open(path) as r:
        for run_id, line in enumerate(line for line in r if line.strip()):
            try:
                record = json.loads(line)
                labels = record['labels']
            except (ValueError, KeyError) as e:
                raise ValidationError("Malformed ensemble line {} in '{}': {}".format(run_id + 1, path, e)) from e
            if len(labels) != network.size:
                raise ValidationError("Ensemble line {} has {} labels but the network has {} {}".format(
                    run_id + 1,
                    len(labels),
                    network.size,
                    'node-layers' if isinstance(network, MultilayerNetwork) else 'nodes'
                ))
            ensemble.add(labels, Provenance(record.get('gamma'), record.get('omega'), record.get('seed'), run_id))
    if not len(ensemble):
        raise ValidationError("Ensemble file '{}' is empty".format(path))
    return ensemble.canonical()

def write_coefficients(ensemble: Ensemble, path: str):
    ensemble.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)

def domain_record(domain: typing.Union[Domain1D, Domain2D], label: str) -> typing.Dict[str, typing.Any]:
    record = {
        'partition_id': number(domain.partition_id),
        'a_hat': float(domain.triple.a_hat),
        'p_hat': float(domain.triple.p_hat),
        'c_hat': float(domain.triple.c_hat),
    }
    if isinstance(domain, Domain1D):
        record['interval'] = [float(domain.gamma_lo), float(domain.gamma_hi)]
    else:
        record['polygon'] = [[float(g), float(w)] for g, w in domain.polygon]
    record.update({
        'n_communities': int(domain.triple.community_count),
        'n_communities_ge5': int(domain.triple.community_count_ge5),
        'label': label,
        'aliases': [number(a) for a in domain.aliases]
    })
    return record

def domains_document(
    result: typing.Union[typing.List[Domain1D], Envelope2D],
    fingerprint: typing.Optional[str] = None,
    gamma_range: typing.Optional[typing.Tuple[float, float]] = None
) -> typing.Dict[str, typing.Any]:
    """
    Builds the domain JSON document for a 1D (list of Domain1D) or 2D result
    """
    if isinstance(result, Envelope2D):
        domains = result.domains
        document = {'mode': '2d', 'box': [float(x) for x in result.box]}
    else:
        domains = result
        document = {'mode': '1d', 'box': [float(domains[0].gamma_lo), float(domains[-1].gamma_hi)] if gamma_range is None else [float(x) for x in gamma_range]}
    summary = summarize_envelope(domains)
    document['domains'] = [
        domain_record(domain, label)
        for domain, label in zip(domains, summary.table['label'])
    ]
    document['outside_box'] = [number(p) for p in result.outside_box] if isinstance(result, Envelope2D) else []
    if isinstance(result, Envelope2D):
        document['measure_zero'] = [number(p) for p in result.measure_zero]
    document['transitions'] = [float(t) for t in summary.transitions]
    if fingerprint is not None:
        document['ensemble'] = fingerprint
    return document

def write_json(document: typing.Dict[str, typing.Any], path: str):
    with open(path, 'w') as w:
        json.dump(document, w, indent=2)
        w.write('\n')

def read_domains(path: str) -> typing.Tuple[typing.Dict[str, typing.Any], typing.List[typing.Union[Domain1D, Domain2D]]]:
    """
    Reads a domain JSON document. Returns the document and its domains
    """
    if not os.path.isfile(path):
        raise ValidationError("Domain file '{}' does not exist".format(path))
    with open(path) as r:
        try:
            document = json.load(r)
        except ValueError as e:
            raise ValidationError("Malformed domain file '{}': {}".format(path, e)) from e
    if not isinstance(document, dict):
        raise ValidationError("Domain file '{}' must hold a JSON object".format(path))
    if document.get('mode') not in {'1d', '2d'}:
        raise ValidationError("Domain file '{}' has unknown mode {}".format(path, document.get('mode')))
    domains = []
    for i, record in enumerate(document.get('domains', [])):
        try:
            triple = CoefficientTriple(
                float(record['a_hat']),
                float(record['p_hat']),
                float(record['c_hat']),
                record['partition_id'],
                record['n_communities'],
                record['n_communities_ge5']
            )
            if document['mode'] == '1d':
                gamma_lo, gamma_hi = record['interval']
                domains.append(Domain1D(record['partition_id'], float(gamma_lo), float(gamma_hi), triple, tuple(record.get('aliases', []))))
            else:
                polygon = np.array(record['polygon'], dtype=float)
                if polygon.ndim != 2 or polygon.shape[1] != 2:
                    raise ValueError("polygon must be a list of (gamma, omega) vertices")
                domains.append(Domain2D(record['partition_id'], polygon, triple, tuple(record.get('aliases', []))))
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError("Malformed domain {} in '{}': {}".format(i, path, e)) from e
    return document, domains

def write_ami_matrix(ids: typing.Sequence[typing.Any], matrix: np.ndarray, path: str):
    """
    Writes a square AMI matrix with partition ids as header row and column
    """
    ids = [number(i) for i in ids]
    df = pd.DataFrame(matrix, index=pd.Index(ids, name='partition_id'), columns=ids)
    df.to_csv(path, float_format=FLOAT_FORMAT)

def write_frame(df: pd.DataFrame, path: str):
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
