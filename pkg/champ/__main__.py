"""
For argument parsing and CLI interface
"""
import argparse
import logging
import sys
import crayons
import yaml
from . import Orchestrator, __version__
from .utils import ChampError, UsageError, champ_logging

LOG_FORMAT = '%(asctime)s:%(levelname)s:%(message)s'

def install_logger(level: int) -> logging.Logger:
    """
    Routes champ_logging and captured warnings to a stderr handler
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger = logging.getLogger('champ')
    logger.handlers = [handler]
    logger.setLevel(level)
    logger.propagate = False
    captured = logging.getLogger('py.warnings')
    captured.handlers = [handler]
    captured.propagate = False
    champ_logging.set_get_logger_hook(lambda: logger)
    return logger

def add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        'config',
        nargs='?',
        type=argparse.FileType('r'),
        help="Path to a YAML run configuration. Command line arguments will merge with,"
        " and override options in the file",
        default=None
    )
    parser.add_argument(
        '--config',
        dest='config_option',
        type=argparse.FileType('r'),
        help="Same as the positional config argument",
        default=None
    )
    parser.add_argument(
        '--export',
        type=argparse.FileType('w'),
        help="If provided, champ will write the final merged configuration to"
        " the provided filepath",
        default=None
    )
    parser.add_argument(
        '-n', '--network',
        help="Edge list. Either 'src dst [weight]' lines, or"
        " 'i_actor i_layer j_actor j_layer weight intra|inter' lines for multilayer networks",
        default=None
    )
    parser.add_argument(
        '-m', '--metadata',
        help="Node metadata labels. 'node label' lines, or 'actor layer label' lines",
        default=None
    )
    parser.add_argument(
        '-t', '--threads',
        type=int,
        help="Number of worker processes. Defaults to the physical core count,"
        " capped by $CHAMP_THREADS",
        default=None
    )
    parser.add_argument(
        '-q', '--quiet',
        action='store_true',
        help="Only log warnings and errors"
    )
    parser.add_argument(
        '--verbose',
        action='store_true',
        help="Log debug messages"
    )

def add_gamma_range(parser: argparse.ArgumentParser):
    parser.add_argument(
        '-g', '--gamma-range',
        type=float,
        nargs=2,
        metavar=('LO', 'HI'),
        help="Resolution parameter range",
        default=None
    )

def add_omega_range(parser: argparse.ArgumentParser):
    parser.add_argument(
        '-w', '--omega-range',
        type=float,
        nargs=2,
        metavar=('LO', 'HI'),
        help="Interlayer coupling range. Required for multilayer networks",
        default=None
    )

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        'champ',
        description="Prunes ensembles of community-detection partitions to those"
        " with a nonempty domain of modularity optimality"
    )
    parser.add_argument(
        '-v', '--version',
        action='version',
        version='champ '+__version__,
        help="Display the current version and exit"
    )
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    sweep = subparsers.add_parser('sweep', help="Run the Louvain heuristic over a parameter range and write the ensemble")
    add_common(sweep)
    add_gamma_range(sweep)
    add_omega_range(sweep)
    sweep.add_argument(
        '--grid',
        type=int,
        nargs='+',
        metavar='N',
        help="Cycle runs over an evenly spaced grid of N_GAMMA [N_OMEGA] points"
        " instead of drawing parameters at random",
        default=None
    )
    sweep.add_argument(
        '-r', '--runs',
        type=int,
        help="Number of heuristic runs",
        default=None
    )
    sweep.add_argument(
        '-s', '--seed',
        type=int,
        help="Master random seed",
        default=None
    )
    sweep.add_argument(
        '-o', '--output',
        help="Output JSON-lines ensemble",
        default=None
    )

    coeffs = subparsers.add_parser('coeffs', help="Write the coefficient table of an ensemble")
    add_common(coeffs)
    coeffs.add_argument('-e', '--ensemble', help="JSON-lines ensemble", default=None)
    coeffs.add_argument('-o', '--output', help="Output CSV", default=None)

    prune = subparsers.add_parser('prune', help="Compute the domains of optimality of an ensemble")
    add_common(prune)
    add_gamma_range(prune)
    add_omega_range(prune)
    prune.add_argument('-e', '--ensemble', help="JSON-lines ensemble", default=None)
    prune.add_argument(
        '--mode',
        choices=['1d', '2d'],
        help="Prune over gamma (1d) or over (gamma, omega) (2d)",
        default=None
    )
    prune.add_argument(
        '--method',
        choices=['qhull', 'clip'],
        help="Two-parameter construction. Defaults to qhull",
        default=None
    )
    prune.add_argument(
        '--outside-margin',
        type=float,
        help="Partitions optimal within this many box-widths outside the box"
        " are listed as outside_box",
        default=None
    )
    prune.add_argument(
        '--color-by',
        choices=['communities', 'neighbor_ami', 'metadata_ami'],
        help="Domain map color key. Defaults to communities",
        default=None
    )
    prune.add_argument('--svg', help="Also write a domain map (2d only)", default=None)
    prune.add_argument('-o', '--output', help="Output domain JSON", default=None)

    analyze = subparsers.add_parser('analyze', help="Compare the partitions of a domain file")
    add_common(analyze)
    analyze.add_argument('-e', '--ensemble', help="JSON-lines ensemble", default=None)
    analyze.add_argument('-d', '--domains', help="Domain JSON written by prune", default=None)
    analyze.add_argument(
        '--scatter',
        action='store_true',
        help="Also write per-run modularity and community counts"
    )
    analyze.add_argument(
        '--color-by',
        choices=['communities', 'neighbor_ami', 'metadata_ami'],
        help="Domain map color key",
        default=None
    )
    analyze.add_argument('--svg', help="Also write a domain map (2d only)", default=None)
    analyze.add_argument(
        '--output-dir',
        help="Output directory. Defaults to 'champ_output'",
        default=None
    )

    oracle = subparsers.add_parser(
        'oracle',
        help="Check pruning against brute force, either exhaustively for a network"
        " of at most 8 nodes, or on a grid for a domain file"
    )
    add_common(oracle)
    add_gamma_range(oracle)
    oracle.add_argument('-e', '--ensemble', help="JSON-lines ensemble", default=None)
    oracle.add_argument('-d', '--domains', help="Domain JSON to check", default=None)
    oracle.add_argument(
        '--samples',
        type=int,
        help="Number of gamma samples for one-parameter checks",
        default=None
    )
    oracle.add_argument(
        '--grid-size',
        type=int,
        help="Side of the (gamma, omega) sample grid for two-parameter checks",
        default=None
    )
    return parser

def merge_args(conf: dict, args: argparse.Namespace) -> dict:
    """
    Overrides configuration keys with the provided command line arguments
    """
    for key in ('network', 'metadata', 'ensemble', 'domains', 'output', 'output_dir', 'threads'):
        if getattr(args, key, None) is not None:
            conf[key] = getattr(args, key)
    sections = {
        'sweep': {
            'gamma_range': 'gamma_range',
            'omega_range': 'omega_range',
            'grid': 'grid',
            'runs': 'runs',
            'seed': 'seed'
        },
        'prune': {
            'gamma_range': 'gamma_range',
            'mode': 'mode',
            'method': 'method',
            'outside_margin': 'outside_margin',
            'color_by': 'color_by',
            'svg': 'svg'
        },
        'analyze': {
            'color_by': 'color_by',
            'svg': 'svg'
        },
        'oracle': {
            'gamma_range': 'gamma_range',
            'samples': 'samples',
            'grid': 'grid_size'
        }
    }
    overrides = {
        key: getattr(args, attr)
        for key, attr in sections.get(args.command, {}).items()
        if getattr(args, attr, None) is not None
    }
    if args.command == 'analyze' and args.scatter:
        overrides['scatter'] = True
    if len(overrides):
        if args.command not in conf or conf[args.command] is None:
            conf[args.command] = {}
        conf[args.command] = {
            **conf[args.command],
            **overrides
        }
    if args.command == 'prune' and args.omega_range is not None:
        # the 2d box comes from the sweep's ranges unless given explicitly
        if 'sweep' not in conf or conf['sweep'] is None:
            conf['sweep'] = {}
        conf['sweep'] = {**conf['sweep'], 'omega_range': args.omega_range}
    if args.command == 'analyze' and 'output_dir' not in conf:
        conf['output_dir'] = 'champ_output'
    return conf

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    install_logger(
        logging.WARNING if args.quiet else (logging.DEBUG if args.verbose else logging.INFO)
    )
    try:
        conf = {}
        source = args.config_option if args.config_option is not None else args.config
        if source is not None:
            conf = yaml.load(source, Loader=yaml.loader.SafeLoader) or {}
            if not isinstance(conf, dict):
                raise UsageError("Configuration file must hold a mapping")
        conf = merge_args(conf, args)
        if args.export is not None:
            yaml.dump(conf, args.export)
            args.export.close()
        result = Orchestrator(conf).run(args.command)
    except UsageError as e:
        print(crayons.red("ERROR:", bold=True), e, file=sys.stderr)
        sys.exit(2)
    except KeyboardInterrupt:
        print(crayons.red("ERROR:", bold=True), "Interrupted", file=sys.stderr)
        sys.exit(1)
    except (ChampError, OSError) as e:
        print(crayons.red("ERROR:", bold=True), e, file=sys.stderr)
        sys.exit(1)
    except Exception as e:
        logging.getLogger('champ').debug("Unhandled exception", exc_info=True)
        print(crayons.red("ERROR:", bold=True), "{}: {}".format(type(e).__name__, e), file=sys.stderr)
        sys.exit(1)
    if args.command == 'oracle' and len(result):
        sys.exit(1)

if __name__ == '__main__':
    main()
