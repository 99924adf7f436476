from collections import deque
from dataclasses import dataclass, field
import logging

import networkx as nx
import numpy as np

from .coxword import CoxWord, normal_form
from . import utils
from .utils import lazy_property

PMX_VERSION = 1

# Edge colors in DOT exports, cycled for ranks above the palette size
DOT_COLORS = ['red', 'blue', 'darkgreen', 'orange', 'purple', 'brown', 'cyan', 'magenta']


@dataclass(frozen=True)
class Path:
    """Path of a premaniplex starting at a flag, the word read right to left"""
    base: int
    word: CoxWord

    def terminal(self, premaniplex):
        return premaniplex.apply_word(self.base, self.word)


@dataclass
class SchreierSubgroup:
    """Finitely generated stabilizer of a flag"""
    base: int
    generators: list = field(default_factory=list)


class Premaniplex:
    """Rank n premaniplex stored as per-color involutions on the flags"""

    def __init__(self, perms, check=True):
        """Construct a premaniplex from its color involutions

        Parameters
        ----------
        perms : array_like
            Integer array of shape (rank, flag_count).  Row i holds the
            i-adjacent flag of every flag; fixed points are semi-edges.
        check : bool, optional
            If True (the default), raise if the arrays are not a premaniplex.
            Readers that want to report violations pass False and call
            validate().

        Raises
        ------
        ValueError
            If the array is malformed or (with check) violates the axioms.

        """
        perms = np.array(perms, dtype=np.int64)
        if perms.ndim != 2 or perms.shape[0] < 1 or perms.shape[1] < 1:
            raise ValueError(f'unsupported perms shape: {perms.shape}')
        elif perms.min() < 0 or perms.max() >= perms.shape[1]:
            raise ValueError('flag index out of range')
        perms.setflags(write=False)
        self.perms = perms

        if check:
            report = self.validate()
            if report:
                raise ValueError('invalid premaniplex: ' + '; '.join(report[:4]) +
                                 (f' ({len(report)} violations)' if len(report) > 4 else ''))

    @property
    def rank(self):
        return self.perms.shape[0]

    @property
    def flag_count(self):
        return self.perms.shape[1]

    @lazy_property
    def perm_lists(self):
        """Plain list copy of the perms for scalar lookups in tight loops"""
        return self.perms.tolist()

    def __eq__(self, other):
        if not isinstance(other, Premaniplex):
            return NotImplemented
        return np.array_equal(self.perms, other.perms)

    __hash__ = None

    def __repr__(self):
        return f'<Premaniplex rank={self.rank} flags={self.flag_count}>'

    @classmethod
    def one_vertex(cls, n):
        """The premaniplex 1^n: one flag with a semi-edge of every color"""
        if n < 1:
            raise ValueError(f'invalid rank: {n}')
        return cls(np.zeros((n, 1), dtype=np.int64))

    @classmethod
    def two_flag(cls, n, colors=()):
        """The premaniplex 2_I on two flags

        Parameters
        ----------
        n : int
            Rank.
        colors : iterable of int, optional
            The set I of colors that are semi-edges at both flags.  Every
            other color swaps the two flags.

        """
        colors = set(colors)
        if n < 1:
            raise ValueError(f'invalid rank: {n}')
        elif not colors.issubset(range(n)):
            raise ValueError(f'invalid color set: {sorted(colors)}')
        return cls([[0, 1] if i in colors else [1, 0] for i in range(n)])

    @classmethod
    def polygon(cls, p):
        """Flag graph of a p-gon

        Flags 0..2p-1 form a cycle; color 0 joins 2m and 2m+1 and color 1
        joins 2m+1 and 2m+2 (mod 2p).
        """
        if not isinstance(p, (int, np.integer)) or p < 2:
            raise ValueError(f'invalid polygon size: {p}')
        flags = np.arange(2 * p)
        return cls([flags ^ 1, (flags + 2 * (flags % 2) - 1) % (2 * p)])

    @classmethod
    def from_faces(cls, faces):
        """Flag graph of a polyhedral map given by its faces

        Parameters
        ----------
        faces : list of sequences
            Each face is a cyclic list of at least three distinct vertex
            labels.  Every edge must lie on exactly two faces.

        Returns
        -------
        Premaniplex
            Flags are the (vertex, edge, face) triples in sorted order;
            color 0 changes the vertex, color 1 the edge, color 2 the face.

        """
        edge_faces = {}
        flags = []
        for face_i, face in enumerate(faces):
            if len(face) < 3 or len(set(face)) != len(face):
                raise ValueError(f'invalid face: {list(face)}')
            for pos, v in enumerate(face):
                edge = tuple(sorted((v, face[(pos + 1) % len(face)])))
                edge_faces.setdefault(edge, []).append(face_i)
                flags.extend([(edge[0], edge, face_i), (edge[1], edge, face_i)])
        for edge, edge_face_list in edge_faces.items():
            if len(edge_face_list) != 2:
                raise ValueError(f'edge {edge} lies on {len(edge_face_list)} faces')

        flags.sort()
        index = {flag: i for i, flag in enumerate(flags)}
        perms = np.empty((3, len(flags)), dtype=np.int64)
        for (v, edge, face_i), x in index.items():
            face = faces[face_i]
            pos = list(face).index(v)
            other_edges = [
                tuple(sorted((v, face[(pos + 1) % len(face)]))),
                tuple(sorted((v, face[pos - 1]))),
            ]
            other_edges.remove(edge)
            other_face = [f for f in edge_faces[edge] if f != face_i][0]
            perms[0, x] = index[(edge[1] if v == edge[0] else edge[0], edge, face_i)]
            perms[1, x] = index[(v, other_edges[0], face_i)]
            perms[2, x] = index[(v, edge, other_face)]
        return cls(perms)

    @classmethod
    def from_pmx(cls, text, check=True):
        """Read the .pmx text format

        Parameters
        ----------
        text : str
        check : bool, optional
            Validate the premaniplex axioms (the default is True).

        Raises
        ------
        ValueError
            On malformed text, with the offending line number.

        """
        lines = utils.content_lines(text)
        version = utils.parse_header(lines, 'pmx')
        if version != PMX_VERSION:
            raise ValueError(f'unsupported pmx version: {version}')
        rank = utils.parse_header(lines, 'rank')
        flag_count = utils.parse_header(lines, 'flags')
        if rank < 1 or flag_count < 1:
            raise ValueError(f'invalid rank/flags: {rank}/{flag_count}')
        perms = read_perm_lines(lines, rank, flag_count)
        for line_num, content in lines:
            raise ValueError(f'line {line_num}: unexpected content "{content}"')
        return cls(perms, check=check)

    def to_pmx(self):
        """Write the .pmx text format"""
        lines = [f'pmx {PMX_VERSION}', f'rank {self.rank}', f'flags {self.flag_count}']
        lines.extend(format_perm_lines(self.perms))
        return '\n'.join(lines) + '\n'

    def to_networkx(self):
        """Undirected multigraph view, one edge per edge or semi-edge

        Every edge carries a 'color' attribute; semi-edges are self-loops.
        """
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.flag_count))
        for i, perm in enumerate(self.perm_lists):
            graph.add_edges_from(
                (x, y, {'color': i}) for x, y in enumerate(perm) if x <= y)
        return graph

    def to_dot(self, name='premaniplex'):
        """Colored edge graph description in the DOT language

        Flags are listed in ascending order and edges color by color.
        Semi-edges are drawn as dashed self-loops.
        """
        lines = [f'graph {name} {{']
        lines.extend(f'  {x};' for x in range(self.flag_count))
        for i, perm in enumerate(self.perm_lists):
            color = DOT_COLORS[i % len(DOT_COLORS)]
            for x, y in enumerate(perm):
                if x < y:
                    lines.append(f'  {x} -- {y} [label={i}, color={color}];')
                elif x == y:
                    lines.append(f'  {x} -- {x} [label={i}, color={color}, style=dashed];')
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def validate(self):
        """Report every violated premaniplex axiom

        Returns
        -------
        list of str
            One entry per non-involutory perm entry and per flag x with
            x^{ijij} != x for |i - j| >= 2.  Empty iff this is a premaniplex.

        """
        report = []
        flags = np.arange(self.flag_count)
        for i, perm in enumerate(self.perms):
            for x in np.flatnonzero(perm[perm] != flags):
                report.append(
                    f'perm {i} is not an involution at flag {x}: '
                    f'{x} -> {perm[x]} -> {perm[perm[x]]}')
        for i in range(self.rank):
            for j in range(i + 2, self.rank):
                step = self.perms[j][self.perms[i]]
                for x in np.flatnonzero(step[step] != flags):
                    report.append(f'colors {i},{j} do not close a 4-path at flag {x}')
        return report

    def is_maniplex(self):
        """Check for a connected premaniplex without semi-edges or parallel edges

        Returns
        -------
        tuple of (bool, list of str)
            The flag and the reasons it is False.

        Raises
        ------
        ValueError
            If the premaniplex is invalid.

        """
        if self.validate():
            raise ValueError('premaniplex is invalid')
        reasons = []
        if not self.is_connected:
            reasons.append(f'not connected ({len(self.components)} components)')
        flags = np.arange(self.flag_count)
        for i, perm in enumerate(self.perms):
            semi = np.flatnonzero(perm == flags)
            if semi.size:
                reasons.append(f'color {i} has semi-edges at flags {semi.tolist()}')
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                parallel = np.flatnonzero(
                    (self.perms[i] == self.perms[j]) & (self.perms[i] != flags))
                if parallel.size:
                    reasons.append(f'colors {i},{j} are parallel at flags {parallel.tolist()}')
        return not reasons, reasons

    def _check_word(self, word):
        if not isinstance(word, CoxWord):
            raise TypeError(f'unsupported word type: {type(word).__name__}')
        elif word.rank != self.rank:
            raise ValueError(f'rank mismatch: {word.rank} != {self.rank}')

    def apply_word(self, x, word):
        """Monodromy action of a word on a flag, letters applied right to left"""
        self._check_word(word)
        perms = self.perm_lists
        x = int(x)
        for letter in reversed(word.letters):
            x = perms[letter][x]
        return x

    def apply_word_all(self, word):
        """Image of every flag under a word, as an array"""
        self._check_word(word)
        images = np.arange(self.flag_count)
        for letter in reversed(word.letters):
            images = self.perms[letter][images]
        return images

    @lazy_property
    def components(self):
        """Connected components, each sorted, ordered by least flag"""
        return sorted(sorted(c) for c in nx.connected_components(self.to_networkx()))

    @lazy_property
    def is_connected(self):
        return len(self.components) == 1

    def _require_connected(self):
        if not self.is_connected:
            raise ValueError('premaniplex is not connected')

    def bfs(self, base):
        """Breadth first search from base, colors in increasing order

        Returns
        -------
        order : list of (flag, parent flag, color)
            Every flag reached after base, in discovery order.
        words : dict
            Letters (written order) of the tree word from base to each flag.

        """
        base = int(base)
        if not 0 <= base < self.flag_count:
            raise ValueError(f'invalid base flag: {base}')
        cache = self.__dict__.setdefault('_bfs_cache', {})
        if base not in cache:
            perms = self.perm_lists
            words = {base: ()}
            order = []
            queue = deque([base])
            while queue:
                x = queue.popleft()
                for i in range(self.rank):
                    y = perms[i][x]
                    if y not in words:
                        words[y] = (i,) + words[x]
                        order.append((y, x, i))
                        queue.append(y)
            cache[base] = order, words
        return cache[base]

    def spanning_tree(self, base=0):
        """Darts (x, i) of the BFS spanning tree rooted at base

        Raises
        ------
        ValueError
            If the premaniplex is not connected.

        """
        self._require_connected()
        order, _ = self.bfs(base)
        return [(x, i) for _, x, i in order]

    def tree_word(self, x, base=0):
        """Word of the spanning tree path from base to x"""
        self._require_connected()
        _, words = self.bfs(base)
        return normal_form(words[int(x)], self.rank)

    def schreier_generators(self, base=0):
        """Generators of the stabilizer of base in C^n

        One generator per semi-edge and per non-tree edge: the tree word to
        x, then the color, then the tree word back from the other end.
        Identity words (closed 4-paths of commuting colors) are dropped and
        repeated words are kept once.

        Returns
        -------
        SchreierSubgroup

        """
        self._require_connected()
        order, words = self.bfs(base)
        tree = {(x, i) for _, x, i in order} | {(y, i) for y, _, i in order}
        perms = self.perm_lists
        generators = []
        seen = set()
        for x in range(self.flag_count):
            for i in range(self.rank):
                y = perms[i][x]
                if y < x or (x, i) in tree:
                    continue
                word = normal_form(words[y][::-1] + (i,) + words[x], self.rank)
                if word.letters and word not in seen:
                    seen.add(word)
                    generators.append(word)
        logging.debug(f'  Schreier generators at flag {base}: {len(generators)}')
        return SchreierSubgroup(base=int(base), generators=generators)

    def subpremaniplex(self, flags):
        """Restriction to a set of flags closed under every color

        Flags are renumbered in ascending order.
        """
        flags = np.unique(np.asarray(flags, dtype=np.int64))
        sub = self.perms[:, flags]
        if not np.isin(sub, flags).all():
            raise ValueError('flag set is not a union of components')
        return Premaniplex(np.searchsorted(flags, sub))

    def component(self, index=0):
        """The component with the given position in the components list"""
        return self.subpremaniplex(self.components[index])

    def disjoint_union(self, *others):
        """Disjoint union, flags of each operand shifted after the previous"""
        blocks = [self.perms]
        offset = self.flag_count
        for other in others:
            if other.rank != self.rank:
                raise ValueError(f'rank mismatch: {other.rank} != {self.rank}')
            blocks.append(other.perms + offset)
            offset += other.flag_count
        return Premaniplex(np.concatenate(blocks, axis=1))

    def quotient(self, group):
        """Quotient by a group of automorphisms

        Parameters
        ----------
        group : AutomorphismGroup or iterable of FlagPermutation
            Any generating set of the group may be given.

        Returns
        -------
        tuple of (Premaniplex, numpy.ndarray)
            The quotient, whose flags are the orbits numbered by least flag,
            and the projection of every flag onto its orbit.

        Raises
        ------
        ValueError
            If an element is not an automorphism.

        """
        from .symmetry import orbit_labels

        labels = orbit_labels(self, group)
        reps = np.unique(labels)
        projection = np.searchsorted(reps, labels)
        perms = np.empty((self.rank, reps.size), dtype=np.int64)
        perms[:, projection] = projection[self.perms]
        logging.debug(f'  Quotient: {self.flag_count} -> {reps.size} flags')
        return Premaniplex(perms), projection


def read_perm_lines(lines, rank, flag_count):
    """Read the "perm <i>:" lines shared by the .pmx and .vop formats"""
    perms = []
    for i in range(rank):
        line_num, body = utils.parse_labelled_line(lines, 'perm', i)
        items = body.split()
        if len(items) != flag_count or not all(item.isdigit() for item in items):
            raise ValueError(f'line {line_num}: expected {flag_count} flag indices')
        perm = [int(item) for item in items]
        if max(perm) >= flag_count:
            raise ValueError(f'line {line_num}: flag index out of range')
        perms.append(perm)
    return perms


def format_perm_lines(perms):
    return [f'perm {i}: ' + ' '.join(str(x) for x in perm) for i, perm in enumerate(perms.tolist())]

