import argparse
import logging
import os


def lazy_property(fn):
    """Decorator that makes a property lazy-evaluated

    https://stevenloria.com/lazy-properties/
    """
    attr_name = '_lazy_' + fn.__name__

    @property
    def _lazy_property(self):
        if not hasattr(self, attr_name):
            setattr(self, attr_name, fn(self))
        return getattr(self, attr_name)
    return _lazy_property


def is_number(x):
    try:
        int(x)
        return True
    except (TypeError, ValueError):
        return False


def parse_int_set(text):
    """Parse a comma separated list of integers and ranges ("0,2-4")

    Parameters
    ----------
    text : str

    Returns
    -------
    set of int

    Raises
    ------
    ValueError
        If an item is not an integer or an increasing range.

    """
    output = set()
    for item in text.replace(' ', '').split(','):
        if not item:
            continue
        elif '-' in item:
            start, _, end = item.partition('-')
            if not is_number(start) or not is_number(end) or int(start) > int(end):
                raise ValueError(f'invalid integer range: {item}')
            output.update(range(int(start), int(end) + 1))
        elif is_number(item):
            output.add(int(item))
        else:
            raise ValueError(f'invalid integer: {item}')
    return output


def arg_valid_file(file_path):
    """Argparse specific function for testing if file exists

    Convert relative paths to absolute paths
    """
    if os.path.isfile(os.path.abspath(os.path.realpath(file_path))):
        return os.path.abspath(os.path.realpath(file_path))
    else:
        raise argparse.ArgumentTypeError(f'{file_path} does not exist')


def content_lines(text):
    """Yield (line number, stripped content) for the non-empty lines of a
    text file, with '#' comments removed

    Line numbers are 1-based so they can be used directly in messages.
    """
    for line_num, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if content:
            yield line_num, content


def parse_header(lines, key):
    """Read a "<key> <int>" line from a content line iterator"""
    try:
        line_num, content = next(lines)
    except StopIteration:
        raise ValueError(f'unexpected end of file, expected "{key}"')
    name, _, value = content.partition(' ')
    if name != key or not is_number(value.strip()):
        raise ValueError(f'line {line_num}: expected "{key} <int>", got "{content}"')
    logging.debug(f'  {key}: {value.strip()}')
    return int(value)


def parse_labelled_line(lines, key, index):
    """Read a "<key> <index>: <items>" line and return the item strings"""
    try:
        line_num, content = next(lines)
    except StopIteration:
        raise ValueError(f'unexpected end of file, expected "{key} {index}:"')
    label, sep, body = content.partition(':')
    if not sep or label.split() != [key, str(index)]:
        raise ValueError(f'line {line_num}: expected "{key} {index}:", got "{content}"')
    return line_num, body
