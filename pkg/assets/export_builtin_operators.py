import argparse
import configparser
import logging
import os

from maniplex.voltops import operators
import maniplex.voltops.utils as utils


def main(ini_path, overwrite_flag=False):
    """Export builtin voltage operators as .vop files

    Parameters
    ----------
    ini_path : str
        Input file path.
    overwrite_flag : bool, optional
        If True, overwrite existing files (the default is False).

    """
    logging.info('\nExport builtin voltage operators')

    ini = read_ini(ini_path)

    output_ws = os.path.join(
        os.path.dirname(ini_path), ini['EXPORT']['output_folder'])
    if not os.path.isdir(output_ws):
        os.makedirs(output_ws)
    names = [name.strip() for name in ini['EXPORT']['builtins'].split(',') if name.strip()]

    for name in names:
        output_path = os.path.join(output_ws, vop_file_name(name))
        logging.info(f'{name}')
        if os.path.isfile(output_path) and not overwrite_flag:
            logging.debug('  File already exists, skipping')
            continue
        op = operators.builtin(name)
        logging.debug(f'  {op.flag_count} flags, source rank {op.source_rank}')
        with open(output_path, 'w', newline='\n') as f:
            f.write(op.to_vop())


def vop_file_name(name):
    """File name for a builtin, 'prism:2' -> 'prism-2.vop'"""
    return name.replace(':', '-') + '.vop'


def read_ini(ini_path):
    logging.debug('\nReading Input File')
    config = configparser.ConfigParser()
    with open(ini_path) as f:
        config.read_file(f)

    ini = dict()
    for section in config.sections():
        ini[str(section)] = {}
        for k, v in config[section].items():
            ini[str(section)][str(k)] = v
    return ini


def arg_parse():
    """"""
    parser = argparse.ArgumentParser(
        description='Export builtin voltage operators',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        '-i', '--ini', type=utils.arg_valid_file, metavar='FILE',
        default=os.path.join(os.path.dirname(os.path.abspath(__file__)), 'voltops.ini'),
        help='Input file')
    parser.add_argument(
        '--overwrite', default=False, action='store_true',
        help='Force overwrite of existing files')
    parser.add_argument(
        '--debug', default=logging.INFO, const=logging.DEBUG,
        help='Debug level logging', action='store_const', dest='loglevel')
    args = parser.parse_args()

    return args


if __name__ == "__main__":
    args = arg_parse()
    logging.basicConfig(level=args.loglevel, format='%(message)s')

    main(ini_path=args.ini, overwrite_flag=args.overwrite)
