"""Automorphisms, isomorphisms, coverings and flag orbits

Color preserving maps out of a connected premaniplex are determined by the
image of a single flag, so every search here fixes the base flag of the
source and tries each flag of the target as its image.

"""
from dataclasses import dataclass
import logging

import numpy as np

from .utils import lazy_property


class FlagPermutation:
    """Bijection of the flags of a premaniplex, xγ = images[x]

    Products read left to right, x(αβ) = (xα)β.
    """

    __slots__ = ('images',)

    def __init__(self, images):
        images = np.array(images, dtype=np.int64)
        if images.ndim != 1 or not np.array_equal(np.sort(images), np.arange(images.size)):
            raise ValueError('images are not a permutation')
        images.setflags(write=False)
        self.images = images

    @classmethod
    def identity(cls, flag_count):
        return cls(np.arange(flag_count))

    def __call__(self, x):
        return int(self.images[x])

    def __len__(self):
        return self.images.size

    def __mul__(self, other):
        if len(other) != len(self):
            raise ValueError(f'size mismatch: {len(self)} != {len(other)}')
        return FlagPermutation(other.images[self.images])

    def inverse(self):
        images = np.empty_like(self.images)
        images[self.images] = np.arange(self.images.size)
        return FlagPermutation(images)

    def is_identity(self):
        return bool((self.images == np.arange(self.images.size)).all())

    def is_automorphism(self, premaniplex):
        """True if the permutation commutes with every color involution"""
        return (len(self) == premaniplex.flag_count and
                bool((self.images[premaniplex.perms] == premaniplex.perms[:, self.images]).all()))

    def cycles(self):
        """Non-trivial cycles, each starting at its least flag"""
        seen = set()
        output = []
        for x in range(self.images.size):
            if x in seen:
                continue
            cycle = [x]
            seen.add(x)
            y = int(self.images[x])
            while y != x:
                cycle.append(y)
                seen.add(y)
                y = int(self.images[y])
            if len(cycle) > 1:
                output.append(cycle)
        return output

    def __eq__(self, other):
        if not isinstance(other, FlagPermutation):
            return NotImplemented
        return np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f'FlagPermutation({self.images.tolist()})'


class AutomorphismGroup:
    """Explicit list of automorphisms of a premaniplex"""

    def __init__(self, premaniplex, elements):
        self.premaniplex = premaniplex
        self.elements = list(elements)

    @classmethod
    def trivial(cls, premaniplex):
        return cls(premaniplex, [FlagPermutation.identity(premaniplex.flag_count)])

    @classmethod
    def generate(cls, premaniplex, generators):
        """Group generated by a list of automorphisms

        Elements are listed in the order they are first reached, starting
        from the identity.

        Raises
        ------
        ValueError
            If a generator is not an automorphism.

        """
        generators = [g if isinstance(g, FlagPermutation) else FlagPermutation(g)
                      for g in generators]
        for g in generators:
            if not g.is_automorphism(premaniplex):
                raise ValueError('generator is not an automorphism')
        elements = [FlagPermutation.identity(premaniplex.flag_count)]
        seen = set(elements)
        pos = 0
        while pos < len(elements):
            for g in generators:
                h = elements[pos] * g
                if h not in seen:
                    seen.add(h)
                    elements.append(h)
            pos += 1
        return cls(premaniplex, elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element):
        return element in set(self.elements)

    @lazy_property
    def orbit_partition(self):
        return orbits(self.premaniplex, self)[0]

    def is_closed(self):
        """True if the elements are closed under products and inverses"""
        elements = set(self.elements)
        return (all(a * b in elements for a in self.elements for b in self.elements) and
                all(a.inverse() in elements for a in self.elements))


@dataclass
class Extension:
    """Result of extending a single flag assignment to a morphism

    Exactly one of images (the flag map) and conflict (the first dart
    (flag, color) of the source whose image is inconsistent) is set.
    """
    images: np.ndarray = None
    conflict: tuple = None

    def __bool__(self):
        return self.images is not None


def _check_pair(p, q):
    if p.rank != q.rank:
        raise ValueError(f'rank mismatch: {p.rank} != {q.rank}')
    elif not p.is_connected:
        raise ValueError('premaniplex is not connected')


def extend_unchecked(p, q, x0, q0):
    # Assign images along the BFS tree of p, then check every dart at once
    order, _ = p.bfs(x0)
    q_perms = q.perm_lists
    images = [-1] * p.flag_count
    images[x0] = int(q0)
    for y, x, i in order:
        images[y] = q_perms[i][images[x]]
    images = np.array(images, dtype=np.int64)
    mismatch = images[p.perms] != q.perms[:, images]
    if mismatch.any():
        i, x = np.argwhere(mismatch)[0]
        return Extension(conflict=(int(x), int(i)))
    return Extension(images=images)


def extend_morphism(p, q, x0, q0):
    """Extend x0 -> q0 to a color preserving map from p to q

    Parameters
    ----------
    p : Premaniplex
        Connected source.
    q : Premaniplex
        Target of the same rank.
    x0, q0 : int
        Flag of p and its prescribed image in q.

    Returns
    -------
    Extension
        True-valued with the flag map when the assignment extends,
        otherwise carrying the first inconsistent dart of p.

    Raises
    ------
    ValueError
        On rank mismatch, a disconnected source or flags out of range.

    """
    _check_pair(p, q)
    if not 0 <= int(q0) < q.flag_count:
        raise ValueError(f'invalid target flag: {q0}')
    return extend_unchecked(p, q, int(x0), int(q0))


def automorphisms(p):
    """All automorphisms of a connected premaniplex

    Returns
    -------
    AutomorphismGroup
        Elements ordered by the image of flag 0.

    """
    _check_pair(p, p)
    elements = []
    for x in range(p.flag_count):
        extension = extend_unchecked(p, p, 0, x)
        if extension:
            elements.append(FlagPermutation(extension.images))
    logging.debug(f'  Automorphisms: {len(elements)} of {p.flag_count} candidates')
    return AutomorphismGroup(p, elements)


def is_isomorphic(p, q):
    """Find an isomorphism between connected premaniplexes

    Returns
    -------
    FlagPermutation or None
        The isomorphism sending flag 0 of p to the least possible flag of q.

    """
    _check_pair(p, q)
    _check_pair(q, p)
    if p.flag_count != q.flag_count:
        return None
    for q0 in range(q.flag_count):
        extension = extend_unchecked(p, q, 0, q0)
        if extension and np.unique(extension.images).size == q.flag_count:
            return FlagPermutation(extension.images)
    return None


def covers(p, q):
    """Check whether p covers q

    Returns
    -------
    tuple of (bool, int or None)
        The answer and the image of flag 0 of p under the first covering.

    """
    _check_pair(p, q)
    if not q.is_connected:
        raise ValueError('premaniplex is not connected')
    for q0 in range(q.flag_count):
        if extend_unchecked(p, q, 0, q0):
            return True, q0
    return False, None


def orbit_labels(p, group):
    """Least flag of the orbit of every flag under a group or generating set

    Raises
    ------
    ValueError
        If an element is not an automorphism of p.

    """
    labels = np.arange(p.flag_count)
    elements = []
    for g in group:
        g = g if isinstance(g, FlagPermutation) else FlagPermutation(g)
        if not g.is_automorphism(p):
            raise ValueError('group element is not an automorphism')
        elements.append(g.images)

    # Union-find on the flags, merged along every element
    parent = list(range(p.flag_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for images in elements:
        for x, y in enumerate(images.tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    labels[:] = [find(x) for x in range(p.flag_count)]
    return labels


def orbits(p, group):
    """Orbit partition of the flags

    Returns
    -------
    tuple of (list of list of int, int)
        Orbits ordered by least flag and their number.

    """
    labels = orbit_labels(p, group)
    partition = {}
    for x, label in enumerate(labels.tolist()):
        partition.setdefault(label, []).append(x)
    output = [partition[label] for label in sorted(partition)]
    return output, len(output)


def stg(p):
    """Symmetry type graph: the quotient by the full automorphism group"""
    return p.quotient(automorphisms(p))[0]
