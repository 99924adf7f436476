"""Todd-Coxeter coset enumeration for groups generated by involutions

Enumeration follows the HLT strategy: every relator is scanned and filled
at each live coset in order, coincidences are processed immediately with a
union-find on the cosets.  Each generator is its own inverse so a single
column per generator holds both directions.

Cosets are right cosets H g; coset 0 is H and i-adjacency is right
multiplication by r_i.  Reading coset tables as premaniplexes this way
matches the left monodromy action on flags.

"""
import logging

import numpy as np

from .coxword import CoxWord
from .premaniplex import Premaniplex

DEFAULT_CAP = 10 ** 6


class InconclusiveError(RuntimeError):
    """Coset enumeration stopped at the coset cap"""

    def __init__(self, message, cosets=None, cap=None):
        super().__init__(message)
        self.cosets = cosets
        self.cap = cap


def _letters(word):
    return tuple(word.letters) if isinstance(word, CoxWord) else tuple(int(x) for x in word)


def string_commutators(generator_count):
    """Relators (r_i r_j)^2 for |i - j| >= 2"""
    return [(i, j, i, j) for i in range(generator_count) for j in range(i + 2, generator_count)]


class Presentation:
    """Group presented on involutory generators

    Parameters
    ----------
    generator_count : int
    relators : list of words, optional
        Words (CoxWord or letter sequences) that are trivial in the group,
        beyond the generator squares.
    string_commutations : bool, optional
        Add the relators of C^n, (r_i r_j)^2 for |i - j| >= 2 (the default
        is True).

    """

    def __init__(self, generator_count, relators=(), string_commutations=True):
        if generator_count < 1:
            raise ValueError(f'invalid generator count: {generator_count}')
        self.generator_count = generator_count
        self.relators = [_letters(r) for r in relators]
        self.string_commutations = string_commutations
        for relator in self.relators:
            if any(x < 0 or x >= generator_count for x in relator):
                raise ValueError(f'invalid relator letters: {list(relator)}')

    @classmethod
    def coxeter(cls, schlafli, extra_relators=()):
        """String Coxeter group [p_1, ..., p_{n-1}] plus extra relators"""
        relators = []
        for i, p in enumerate(schlafli, start=1):
            if int(p) < 2:
                raise ValueError(f'invalid Schlafli entry: {p}')
            relators.append((i - 1, i) * int(p))
        return cls(len(schlafli) + 1, relators + list(extra_relators))

    @property
    def all_relators(self):
        commutators = string_commutators(self.generator_count) if self.string_commutations else []
        return commutators + [r for r in self.relators if r]


class CosetTable:
    """Coset table with one row per coset and one column per generator"""

    COMPLETE = 'COMPLETE'
    CAPPED = 'CAPPED'

    def __init__(self, rows, status, generator_count):
        self.rows = rows
        self.status = status
        self.generator_count = generator_count

    @property
    def size(self):
        return len(self.rows)

    @property
    def is_complete(self):
        return self.status == self.COMPLETE

    def to_premaniplex(self):
        if not self.is_complete:
            raise InconclusiveError('coset table is not complete', cosets=self.size)
        return Premaniplex(np.array(self.rows, dtype=np.int64).T)

    def trace(self, coset, word):
        """Coset reached from coset by right multiplication with the letters"""
        for x in _letters(word):
            coset = self.rows[coset][x]
        return coset

    def check(self, presentation, subgroup_gens=()):
        """Violations of the defining properties of a complete table

        Returns
        -------
        list of str
            Empty for a valid table.

        """
        report = []
        for c, row in enumerate(self.rows):
            for x, d in enumerate(row):
                if d < 0:
                    report.append(f'coset {c} generator {x} undefined')
                elif self.rows[d][x] != c:
                    report.append(f'column {x} is not an involution at coset {c}')
        if report:
            return report
        for relator in presentation.all_relators:
            for c in range(self.size):
                if self.trace(c, relator) != c:
                    report.append(f'relator {list(relator)} fails at coset {c}')
        for word in subgroup_gens:
            if self.trace(0, word) != 0:
                report.append(f'subgroup generator {list(_letters(word))} moves coset 0')
        return report


class _CapReached(Exception):
    pass


class _Enumeration:
    """Mutable HLT state"""

    def __init__(self, generator_count, cap):
        self.generator_count = generator_count
        self.cap = cap
        self.table = [[-1] * generator_count]
        self.parent = [0]

    def find(self, c):
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def is_live(self, c):
        return self.parent[c] == c

    def define(self, c, x):
        if len(self.table) >= self.cap:
            raise _CapReached()
        d = len(self.table)
        self.table.append([-1] * self.generator_count)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x] = c

    def _merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            queue.append(b)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self._merge(a, b, queue)
        pos = 0
        while pos < len(queue):
            c = queue[pos]
            pos += 1
            for x in range(self.generator_count):
                d = table[c][x]
                if d < 0:
                    continue
                table[d][x] = -1
                mu, nu = self.find(c), self.find(d)
                if table[mu][x] >= 0:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x] >= 0:
                    self._merge(mu, table[nu][x], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x] = mu
        logging.debug(f'    Coincidence: {len(queue)} cosets merged')

    def scan_and_fill(self, alpha, word):
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j]] >= 0:
                b = table[b][word[j]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            elif i == j:
                table[f][word[i]] = b
                table[b][word[i]] = f
                return
            self.define(f, word[i])

    def run(self, relators, subgroup_words):
        for word in subgroup_words:
            if word:
                self.scan_and_fill(0, word)
        c = 0
        while True:
            while c < len(self.table):
                for relator in relators:
                    if not self.is_live(c):
                        break
                    self.scan_and_fill(c, relator)
                if self.is_live(c):
                    for x in range(self.generator_count):
                        if self.table[c][x] < 0:
                            self.define(c, x)
                c += 1
            incomplete = [c for c in range(len(self.table))
                          if self.is_live(c) and min(self.table[c]) < 0]
            if not incomplete:
                break
            c = incomplete[0]

    def rows(self):
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        index = {c: i for i, c in enumerate(live)}
        return [[index[self.find(d)] if d >= 0 else -1 for d in self.table[c]] for c in live]


def todd_coxeter(presentation, subgroup_gens=(), cap=DEFAULT_CAP):
    """Enumerate the cosets of a subgroup

    Parameters
    ----------
    presentation : Presentation
    subgroup_gens : list of words, optional
        Generators of the subgroup H (CoxWord or letter sequences).
    cap : int, optional
        Largest number of cosets that may be defined (the default is 10**6).

    Returns
    -------
    CosetTable
        Complete, with cosets numbered in order of definition, or Capped
        holding the live cosets reached so far.

    Raises
    ------
    ValueError
        If the cap is not positive or a word uses an invalid generator.

    """
    if cap < 1:
        raise ValueError(f'cap must be positive: {cap}')
    words = [_letters(w) for w in subgroup_gens]
    for word in words:
        if any(x < 0 or x >= presentation.generator_count for x in word):
            raise ValueError(f'invalid subgroup generator letters: {list(word)}')

    enumeration = _Enumeration(presentation.generator_count, cap)
    try:
        enumeration.run(presentation.all_relators, words)
        status = CosetTable.COMPLETE
    except _CapReached:
        status = CosetTable.CAPPED
        logging.debug(f'  Coset enumeration capped at {cap} cosets')
    table = CosetTable(enumeration.rows(), status, presentation.generator_count)
    logging.debug(f'  Coset enumeration: {table.size} cosets ({len(enumeration.table)} defined)')
    return table


def coxeter_flag_graph(schlafli, extra_relators=(), cap=DEFAULT_CAP):
    """Flag graph of the string Coxeter group quotient [p_1, ..., p_{n-1}]

    Parameters
    ----------
    schlafli : list of int
    extra_relators : list of words, optional
        Additional relators such as (r_0 r_1 r_2)^3 for the hemicube.
    cap : int, optional

    Returns
    -------
    Premaniplex
        Flags are the group elements; perms[i][x] = x r_i.

    Raises
    ------
    InconclusiveError
        If the enumeration reaches the cap.

    """
    presentation = Presentation.coxeter(schlafli, extra_relators)
    table = todd_coxeter(presentation, [], cap=cap)
    if not table.is_complete:
        raise InconclusiveError(
            f'coset enumeration exceeded cap: {cap}', cosets=table.size, cap=cap)
    return table.to_premaniplex()


def realize_schreier(n, subgroup_gens, cap=DEFAULT_CAP):
    """Coset graph of a subgroup of C^n as a premaniplex

    Raises
    ------
    InconclusiveError
        If the enumeration reaches the cap (infinite or very large index).

    """
    for word in subgroup_gens:
        if isinstance(word, CoxWord) and word.rank != n:
            raise ValueError(f'rank mismatch: {word.rank} != {n}')
    table = todd_coxeter(Presentation(n), subgroup_gens, cap=cap)
    if not table.is_complete:
        raise InconclusiveError(
            f'coset enumeration exceeded cap: {cap}', cosets=table.size, cap=cap)
    return table.to_premaniplex()
