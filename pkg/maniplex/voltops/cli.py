"""Command line front end: voltops <subcommand> ...

Exit codes: 0 success, 1 validation or domain error, 2 coset cap reached,
3 file I/O error.

"""
import argparse
import configparser
import json
import logging
import sys

from . import analysis
from . import operators
from . import symmetry
from . import utils
from .coxword import parse_word
from .cosetenum import DEFAULT_CAP, InconclusiveError, coxeter_flag_graph
from .premaniplex import Premaniplex
from .voltage import INCONCLUSIVE, VoltageOperator, compose, product, validate_operator

BUILTIN_PREFIX = 'builtin:'
SECTION = 'VOLTOPS'

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2
EXIT_IO = 3


class _ArgumentParser(argparse.ArgumentParser):
    # Usage errors are domain errors (exit 1), not argparse's exit 2
    def error(self, message):
        raise ValueError(f'{self.prog}: {message}')


def read_ini(ini_path):
    """Read an INI file into a plain dictionary of sections

    Raises
    ------
    OSError
        If the file can not be opened.

    """
    logging.debug(f'\nReading INI file: {ini_path}')
    config = configparser.ConfigParser()
    with open(ini_path) as f:
        config.read_file(f)
    ini = dict()
    for section in config.sections():
        ini[section] = {}
        for k, v in config[section].items():
            ini[section][k] = v
    return ini


def _read_text(path):
    with open(path) as f:
        return f.read()


def _load_premaniplex(path):
    return Premaniplex.from_pmx(_read_text(path))


def load_operator(name):
    """Operator from a .vop path or a builtin:NAME reference"""
    if name.startswith(BUILTIN_PREFIX):
        return operators.builtin(name[len(BUILTIN_PREFIX):])
    return VoltageOperator.from_vop(_read_text(name))


def _flags(values):
    return ' '.join(str(v) for v in values)


def _yes_no(value):
    return 'yes' if value else 'no'


def _generating_set(group):
    # Greedy: keep each element that falls outside the subgroup built so far
    generators = []
    reached = {symmetry.FlagPermutation.identity(group.premaniplex.flag_count)}
    for g in group:
        if g in reached:
            continue
        generators.append(g)
        reached = set(symmetry.AutomorphismGroup.generate(group.premaniplex, generators))
    return generators


def cmd_validate(args):
    text = _read_text(args.file)
    first = next(utils.content_lines(text), (0, ''))[1].split()
    if first and first[0] == 'vop':
        report = validate_operator(VoltageOperator.from_vop(text, check=False))
    else:
        report = Premaniplex.from_pmx(text, check=False).validate()
    for msg in report:
        logging.error(f'  {msg}')
    data = {'valid': not report, 'violations': report}
    text = f'valid {_yes_no(not report)}\n' + ''.join(f'violation {msg}\n' for msg in report)
    return text, data, EXIT_INVALID if report else EXIT_OK


def cmd_apply(args):
    x = _load_premaniplex(args.premaniplex)
    p = product(x, load_operator(args.operator))
    logging.info(f'Product: {p.flag_count} flags, {len(p.components)} component(s)')
    return p.to_pmx(), None, EXIT_OK


def cmd_aut(args):
    x = _load_premaniplex(args.premaniplex)
    group = symmetry.automorphisms(x)
    _, k = symmetry.orbits(x, group)
    generators = _generating_set(group)
    data = {
        'order': group.order,
        'orbits': k,
        'generators': [g.images.tolist() for g in generators],
    }
    text = f'order {group.order}\norbits {k}\n' + ''.join(
        f'generator {_flags(g.images.tolist())}\n' for g in generators)
    return text, data, EXIT_OK


def cmd_orbits(args):
    x = _load_premaniplex(args.premaniplex)
    partition, k = symmetry.orbits(x, symmetry.automorphisms(x))
    sizes = [len(orbit) for orbit in partition]
    data = {'orbits': k, 'sizes': sizes}
    return f'orbits {k}\nsizes {_flags(sizes)}\n', data, EXIT_OK


def cmd_stg(args):
    return symmetry.stg(_load_premaniplex(args.premaniplex)).to_pmx(), None, EXIT_OK


def cmd_covers(args):
    covered, q0 = symmetry.covers(_load_premaniplex(args.premaniplex),
                                  _load_premaniplex(args.target))
    data = {'covers': covered, 'witness': q0}
    text = f'covers {_yes_no(covered)}\n' + (f'witness {q0}\n' if covered else '')
    return text, data, EXIT_OK


def cmd_iso(args):
    iso = symmetry.is_isomorphic(_load_premaniplex(args.first), _load_premaniplex(args.second))
    witness = None if iso is None else iso.images.tolist()
    data = {'isomorphic': iso is not None, 'witness': witness}
    text = f'isomorphic {_yes_no(iso is not None)}\n'
    if witness is not None:
        text += f'witness {_flags(witness)}\n'
    return text, data, EXIT_OK


def cmd_analyze(args):
    x = _load_premaniplex(args.premaniplex)
    op = load_operator(args.operator)
    account = analysis.orbit_accounting(x, op)
    certificate = analysis.certify(x, op, cap=args.cap, direct_limit=args.direct_limit)
    data = {'account': account.to_dict(), 'certificate': certificate.to_dict()}
    text = account.to_text() + certificate.to_text()
    status = EXIT_INCONCLUSIVE if certificate.verdict == INCONCLUSIVE else EXIT_OK
    return text, data, status


def cmd_lifts(args):
    table = analysis.lift_table(_load_premaniplex(args.premaniplex), load_operator(args.operator))
    rows = [
        {'tau': r.tau, 'preserves_voltages': r.preserves_voltages, 'lifts': r.lifts,
         'image': r.lift(0) if r.lifts else None}
        for r in table
    ]
    text = ''.join(
        f'tau=[{",".join(str(v) for v in row["tau"])}] '
        f'preserves={_yes_no(row["preserves_voltages"])} lifts={_yes_no(row["lifts"])} '
        f'image={"-" if row["image"] is None else row["image"]}\n'
        for row in rows)
    return text, {'lifts': rows}, EXIT_OK


def cmd_compose(args):
    op = compose(load_operator(args.first), load_operator(args.second))
    logging.info(f'Composed operator: {op.flag_count} flags')
    return op.to_vop(), None, EXIT_OK


def cmd_build(args):
    if args.builder == 'coxeter':
        rank = len(args.schlafli) + 1
        relators = [parse_word(text, rank) for text in args.relator]
        p = coxeter_flag_graph(args.schlafli, relators, cap=args.cap)
    elif args.builder == 'polygon':
        p = Premaniplex.polygon(args.p)
    elif args.builder == 'one-vertex':
        p = Premaniplex.one_vertex(args.n)
    else:
        p = Premaniplex.two_flag(args.n, utils.parse_int_set(args.colors))
    logging.info(f'Built premaniplex: rank {p.rank}, {p.flag_count} flags')
    return p.to_pmx(), None, EXIT_OK


def cmd_builtin(args):
    if args.action == 'list':
        names = operators.names()
        return ''.join(f'{name}\n' for name in names), {'builtins': names}, EXIT_OK
    elif not args.name:
        raise ValueError('builtin export requires an operator name')
    return operators.builtin(args.name).to_vop(), None, EXIT_OK


def cmd_export_dot(args):
    return _load_premaniplex(args.premaniplex).to_dot(), None, EXIT_OK


def arg_parse(argv=None):
    """"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '-o', '--output', metavar='FILE',
        help='Output file (the default is standard output)')
    common.add_argument(
        '--format', choices=['text', 'json'], default=None,
        help='Report format (default text)')
    common.add_argument(
        '--cap', type=int, default=None,
        help=f'Coset enumeration cap (default {DEFAULT_CAP})')
    common.add_argument(
        '-i', '--ini', metavar='FILE',
        help='INI file with a [VOLTOPS] section of defaults')
    common.add_argument(
        '--debug', default=logging.INFO, const=logging.DEBUG,
        help='Debug level logging', action='store_const', dest='loglevel')

    parser = _ArgumentParser(
        prog='voltops', description='Voltage operations on premaniplexes',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    def add(name, func, help_text):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(func=func)
        return sub

    add('validate', cmd_validate, 'Validate a .pmx or .vop file').add_argument('file')
    sub = add('apply', cmd_apply, 'Product of a premaniplex with an operator')
    sub.add_argument('operator', help='.vop file or builtin:NAME')
    sub.add_argument('premaniplex')
    add('aut', cmd_aut, 'Automorphism group').add_argument('premaniplex')
    add('orbits', cmd_orbits, 'Flag orbits').add_argument('premaniplex')
    add('stg', cmd_stg, 'Symmetry type graph').add_argument('premaniplex')
    sub = add('covers', cmd_covers, 'Check for a covering')
    sub.add_argument('premaniplex')
    sub.add_argument('target')
    sub = add('iso', cmd_iso, 'Check for an isomorphism')
    sub.add_argument('first')
    sub.add_argument('second')
    sub = add('analyze', cmd_analyze, 'Orbit accounting and extra symmetry certificate')
    sub.add_argument('operator')
    sub.add_argument('premaniplex')
    sub.add_argument(
        '--direct-limit', type=int, default=None,
        help=f'Largest product for the direct comparison (default {analysis.DIRECT_LIMIT})')
    sub = add('lifts', cmd_lifts, 'Lift status of the automorphisms of Y')
    sub.add_argument('operator')
    sub.add_argument('premaniplex')
    sub = add('compose', cmd_compose, 'Compose two operators')
    sub.add_argument('first')
    sub.add_argument('second')

    sub = commands.add_parser('build', help='Build a premaniplex')
    sub.set_defaults(func=cmd_build)
    builders = sub.add_subparsers(dest='builder', metavar='BUILDER')
    builders.required = True
    coxeter = builders.add_parser('coxeter', parents=[common])
    coxeter.add_argument('schlafli', type=int, nargs='+')
    coxeter.add_argument(
        '--relator', action='append', default=[], metavar='WORD',
        help='Extra relator, e.g. [0,1,2,0,1,2,0,1,2]')
    builders.add_parser('polygon', parents=[common]).add_argument('p', type=int)
    builders.add_parser('one-vertex', parents=[common]).add_argument('n', type=int)
    two_flag = builders.add_parser('two-flag', parents=[common])
    two_flag.add_argument('n', type=int)
    two_flag.add_argument('colors', nargs='?', default='', help='Semi-edge colors, e.g. 0,1')

    sub = add('builtin', cmd_builtin, 'List or export builtin operators')
    sub.add_argument('action', choices=['list', 'export'])
    sub.add_argument('name', nargs='?')
    add('export-dot', cmd_export_dot, 'Export a premaniplex as DOT').add_argument('premaniplex')

    return parser.parse_args(argv)


def _apply_defaults(args):
    # Command line flags win over the INI file, which wins over the constants
    ini = read_ini(args.ini).get(SECTION, {}) if args.ini else {}
    if args.cap is None:
        args.cap = int(ini.get('cap', DEFAULT_CAP))
    if getattr(args, 'direct_limit', None) is None:
        args.direct_limit = int(ini.get('direct_limit', analysis.DIRECT_LIMIT))
    if args.format is None:
        args.format = ini.get('format', 'text')
    if args.format not in ('text', 'json'):
        raise ValueError(f'unsupported format: {args.format}')
    if args.cap < 1:
        raise ValueError(f'cap must be positive: {args.cap}')


def _write(args, text, data):
    if data is not None and args.format == 'json':
        text = json.dumps(data, indent=2) + '\n'
    if args.output:
        with open(args.output, 'w', newline='\n') as f:
            f.write(text)
        logging.debug(f'  Wrote {args.output}')
    else:
        sys.stdout.write(text)


def main(argv=None):
    """Run one voltops command

    Returns
    -------
    int
        Exit code.

    """
    try:
        args = arg_parse(argv)
    except ValueError as e:
        logging.basicConfig(level=logging.INFO, format='%(message)s')
        logging.error(f'ERROR: {e}')
        return EXIT_INVALID
    logging.basicConfig(level=args.loglevel, format='%(message)s')

    try:
        _apply_defaults(args)
        text, data, status = args.func(args)
        _write(args, text, data)
    except InconclusiveError as e:
        logging.error(f'INCONCLUSIVE: {e}')
        return EXIT_INCONCLUSIVE
    except ValueError as e:
        logging.error(f'ERROR: {e}')
        return EXIT_INVALID
    except OSError as e:
        logging.error(f'ERROR: {e}')
        return EXIT_IO
    return status


if __name__ == '__main__':
    sys.exit(main())
