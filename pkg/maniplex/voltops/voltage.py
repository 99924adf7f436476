"""Voltage operators and the product X ⋊ Y

An (n, m) voltage operator is a rank m premaniplex Y with a word of C^n on
every dart.  The flags of X ⋊ Y are the pairs (x, y), numbered x |Y| + y,
and (x, y)^i = (η(y, i) x, y^i) where η(y, i) is the voltage of the dart
of color i at y.

Path voltages multiply in reverse order: a path through darts d_1, ..., d_k
has voltage η(d_k) ... η(d_1).

"""
from dataclasses import dataclass
import logging
import re

import numpy as np

from .coxword import CoxWord, format_word, parse_word
from .cosetenum import DEFAULT_CAP, Presentation, todd_coxeter
from .premaniplex import Path, Premaniplex, format_perm_lines, read_perm_lines
from . import utils

VOP_VERSION = 1

YES = 'YES'
NO = 'NO'
INCONCLUSIVE = 'INCONCLUSIVE'

_BRACKET_RE = re.compile(r'\[[^\]]*\]')


class VoltageOperator:
    """Premaniplex Y with a voltage word of C^n on every dart"""

    def __init__(self, source_rank, premaniplex, voltages, check=True):
        """Construct a voltage operator

        Parameters
        ----------
        source_rank : int
            Rank n of the premaniplexes the operator applies to.
        premaniplex : Premaniplex
            The rank m premaniplex Y.  Flag 0 is the base flag.
        voltages : nested sequence
            voltages[i][y] is the voltage of the dart of color i at flag y,
            given as a CoxWord, a letter sequence or bracketed text.
        check : bool, optional
            If True (the default), raise when validate_operator reports
            violations.

        """
        if source_rank < 1:
            raise ValueError(f'invalid source rank: {source_rank}')
        self.source_rank = int(source_rank)
        self.premaniplex = premaniplex
        if len(voltages) != premaniplex.rank:
            raise ValueError(f'expected voltages for {premaniplex.rank} colors, got {len(voltages)}')
        self.voltages = []
        for i, row in enumerate(voltages):
            if len(row) != premaniplex.flag_count:
                raise ValueError(f'color {i}: expected {premaniplex.flag_count} voltages')
            self.voltages.append([self._word(w) for w in row])

        if check:
            report = validate_operator(self)
            if report:
                raise ValueError('invalid voltage operator: ' + '; '.join(report[:4]) +
                                 (f' ({len(report)} violations)' if len(report) > 4 else ''))

    def _word(self, word):
        if isinstance(word, CoxWord):
            if word.rank != self.source_rank:
                raise ValueError(f'rank mismatch: {word.rank} != {self.source_rank}')
            return word
        elif isinstance(word, str):
            return parse_word(word, self.source_rank)
        return CoxWord(word, self.source_rank)

    @property
    def rank(self):
        return self.premaniplex.rank

    @property
    def flag_count(self):
        return self.premaniplex.flag_count

    @property
    def base(self):
        return 0

    def voltage(self, y, i):
        """Voltage of the dart of color i at flag y"""
        return self.voltages[i][y]

    def __eq__(self, other):
        if not isinstance(other, VoltageOperator):
            return NotImplemented
        return (self.source_rank == other.source_rank and
                self.premaniplex == other.premaniplex and
                self.voltages == other.voltages)

    __hash__ = None

    def __repr__(self):
        return (f'<VoltageOperator source_rank={self.source_rank} '
                f'rank={self.rank} flags={self.flag_count}>')

    @classmethod
    def from_vop(cls, text, check=True):
        """Read the .vop text format

        Raises
        ------
        ValueError
            On malformed text (with the line number) or, with check, when
            the operator fails validate_operator.

        """
        lines = utils.content_lines(text)
        version = utils.parse_header(lines, 'vop')
        if version != VOP_VERSION:
            raise ValueError(f'unsupported vop version: {version}')
        source_rank = utils.parse_header(lines, 'source-rank')
        rank = utils.parse_header(lines, 'rank')
        flag_count = utils.parse_header(lines, 'flags')
        if source_rank < 1 or rank < 1 or flag_count < 1:
            raise ValueError(f'invalid ranks/flags: {source_rank}/{rank}/{flag_count}')
        perms = read_perm_lines(lines, rank, flag_count)
        voltages = []
        for i in range(rank):
            line_num, body = utils.parse_labelled_line(lines, 'volt', i)
            items = _BRACKET_RE.findall(body)
            if len(items) != flag_count or _BRACKET_RE.sub('', body).strip():
                raise ValueError(f'line {line_num}: expected {flag_count} bracketed words')
            try:
                voltages.append([parse_word(item, source_rank) for item in items])
            except ValueError as e:
                raise ValueError(f'line {line_num}: {e}')
        for line_num, content in lines:
            raise ValueError(f'line {line_num}: unexpected content "{content}"')
        return cls(source_rank, Premaniplex(perms, check=check), voltages, check=check)

    def to_vop(self):
        """Write the .vop text format"""
        lines = [
            f'vop {VOP_VERSION}',
            f'source-rank {self.source_rank}',
            f'rank {self.rank}',
            f'flags {self.flag_count}',
        ]
        lines.extend(format_perm_lines(self.premaniplex.perms))
        for i, row in enumerate(self.voltages):
            lines.append(f'volt {i}: ' + ' '.join(format_word(w.letters) for w in row))
        return '\n'.join(lines) + '\n'


@dataclass
class ConnectivityResult:
    """Answer of preserves_connectivity

    index is the index of ζ(L) in C^n when the enumeration completed.
    """
    verdict: str
    index: int = None

    def __bool__(self):
        return self.verdict == YES


def _walk(op, y, letters):
    """Voltage of the walk from y along raw letters (applied right to left)"""
    perms = op.premaniplex.perm_lists
    output = CoxWord.identity(op.source_rank)
    for letter in reversed(letters):
        output = op.voltages[letter][y] * output
        y = perms[letter][y]
    return output, y


def validate_operator(op):
    """Report every dart violating the voltage operator conditions

    Returns
    -------
    list of str
        Violations of the premaniplex axioms of Y, of inverse consistency
        on edges (η of the reverse dart is the inverse), of involutivity on
        semi-edges and of trivial voltage around the closed 4-paths of
        colors i, j with |i - j| >= 2.  Empty iff the operator is valid.

    """
    y_premaniplex = op.premaniplex
    report = [f'Y: {msg}' for msg in y_premaniplex.validate()]
    if report:
        return report
    perms = y_premaniplex.perm_lists
    for i in range(op.rank):
        for y in range(op.flag_count):
            z = perms[i][y]
            word = op.voltages[i][y]
            if z == y and not word.is_involution():
                report.append(f'semi-edge ({y},{i}) voltage {word} is not an involution')
            elif z > y and op.voltages[i][z] != word.inverse():
                report.append(
                    f'edge ({y},{i}) voltage {word} is not inverted by {op.voltages[i][z]}')
    if report:
        return report
    for i in range(op.rank):
        for j in range(i + 2, op.rank):
            for y in range(op.flag_count):
                word, _ = _walk(op, y, (j, i, j, i))
                if not word.is_identity():
                    report.append(f'colors {i},{j} 4-path at {y} has voltage {word}')
    return report


def _check_path(op, path):
    if not isinstance(path, Path) or not isinstance(path.word, CoxWord):
        raise TypeError('Path argument is required')
    elif path.word.rank != op.rank:
        raise ValueError(f'rank mismatch: {path.word.rank} != {op.rank}')
    elif not 0 <= path.base < op.flag_count:
        raise ValueError(f'invalid path base flag: {path.base}')


def voltage_of_path(op, path):
    """Voltage of a path of Y

    Parameters
    ----------
    op : VoltageOperator
    path : Path
        Path of Y; its word is read right to left.

    Returns
    -------
    CoxWord
        Product of the dart voltages, last dart leftmost.

    """
    _check_path(op, path)
    return _walk(op, path.base, path.word.letters)[0]


def zeta(op, word):
    """Voltage of the closed path at the base flag with a stabilizing word

    Raises
    ------
    ValueError
        If the word does not fix the base flag of Y.

    """
    if op.premaniplex.apply_word(op.base, word) != op.base:
        raise ValueError(f'word {word} does not stabilize the base flag')
    return voltage_of_path(op, Path(op.base, word))


def product(x, op):
    """The premaniplex X ⋊ Y

    Parameters
    ----------
    x : Premaniplex
        Rank n premaniplex.
    op : VoltageOperator
        (n, m) operator.

    Returns
    -------
    Premaniplex
        Rank m, |X| |Y| flags, (x, y) numbered x |Y| + y.

    Raises
    ------
    ValueError
        On rank mismatch.

    """
    if x.rank != op.source_rank:
        raise ValueError(f'rank mismatch: {x.rank} != {op.source_rank}')
    ky = op.flag_count
    y_perms = op.premaniplex.perms
    offsets = np.arange(x.flag_count) * ky
    perms = np.empty((op.rank, x.flag_count * ky), dtype=np.int64)
    images = {}
    for i in range(op.rank):
        for y in range(ky):
            word = op.voltages[i][y]
            if word not in images:
                images[word] = x.apply_word_all(word)
            perms[i, offsets + y] = images[word] * ky + y_perms[i, y]
    logging.debug(f'  Product: {x.flag_count} x {ky} = {perms.shape[1]} flags')
    return Premaniplex(perms)


def normalize(op):
    """Equivalent operator with identity voltage on the BFS spanning tree

    The dart (y, i) to z = y^i gets T(z)^-1 η(y, i) T(y), where T(y) is the
    voltage of the tree path from the base flag.  The flag (x, y) of the
    normalized product corresponds to (T(y) x, y) of the original.

    Raises
    ------
    ValueError
        If Y is not connected.

    """
    y_premaniplex = op.premaniplex
    if not y_premaniplex.is_connected:
        raise ValueError('premaniplex is not connected')
    order, _ = y_premaniplex.bfs(op.base)
    tree = {op.base: CoxWord.identity(op.source_rank)}
    for y, x, i in order:
        tree[y] = op.voltages[i][x] * tree[x]
    perms = y_premaniplex.perm_lists
    voltages = [
        [tree[perms[i][y]].inverse() * op.voltages[i][y] * tree[y] for y in range(op.flag_count)]
        for i in range(op.rank)
    ]
    return VoltageOperator(op.source_rank, y_premaniplex, voltages)


def is_tree_trivial(op):
    """True if every BFS spanning tree dart carries the identity"""
    order, _ = op.premaniplex.bfs(op.base)
    return all(op.voltages[i][x].is_identity() for _, x, i in order)


def compose(op1, op2):
    """Composition of an (n, k) operator (Z, ϑ) with a (k, m) operator (Y, η)

    The result is the (n, m) operator on Z ⋊ Y whose dart ((z, y), i) has
    the ϑ-voltage of the path of Z at z with word η(y, i), so that
    (X ⋊ Z) ⋊ Y and X ⋊ (Z ⋊ Y) coincide flag for flag.

    Raises
    ------
    ValueError
        If the rank of Z differs from the source rank of the second operator.

    """
    if op1.rank != op2.source_rank:
        raise ValueError(f'rank mismatch: {op1.rank} != {op2.source_rank}')
    premaniplex = product(op1.premaniplex, op2)
    ky = op2.flag_count
    voltages = [[None] * premaniplex.flag_count for _ in range(op2.rank)]
    for i in range(op2.rank):
        for z in range(op1.flag_count):
            for y in range(ky):
                voltages[i][z * ky + y] = voltage_of_path(op1, Path(z, op2.voltages[i][y]))
    return VoltageOperator(op1.source_rank, premaniplex, voltages)


def identity(n):
    """The identity operator (1^n, r_i for color i)"""
    return VoltageOperator(n, Premaniplex.one_vertex(n), [[[i]] for i in range(n)])


def preserves_connectivity(op, cap=DEFAULT_CAP):
    """Decide whether X ⋊ Y is connected for every connected X

    Y must be connected and ζ must map the stabilizer of the base flag onto
    C^n.  The image is given by the ζ-images of the Schreier generators and
    its index is found by coset enumeration.

    Returns
    -------
    ConnectivityResult
        YES (index 1), NO (Y disconnected or index > 1) or INCONCLUSIVE
        (the enumeration reached the cap).

    """
    if not op.premaniplex.is_connected:
        return ConnectivityResult(NO)
    generators = op.premaniplex.schreier_generators(op.base).generators
    images = [zeta(op, g) for g in generators]
    table = todd_coxeter(Presentation(op.source_rank), images, cap=cap)
    if not table.is_complete:
        logging.warning(f'  Connectivity test inconclusive after {table.size} cosets')
        return ConnectivityResult(INCONCLUSIVE)
    logging.debug(f'  Index of the voltage image: {table.size}')
    return ConnectivityResult(YES if table.size == 1 else NO, table.size)
