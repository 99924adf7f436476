"""Symmetry analysis of operated premaniplexes X ⋊ Y

Automorphisms of X embed in X ⋊ Y acting on the X-coordinate, and these are
exactly the automorphisms fixing the Y-coordinate of the base flag.  Extra
symmetry needs X to cover one of the coset graphs Z of the simultaneous
stabilizers of the base flag y0 and another flag y1 of Y; automorphisms of
Y may lift to X ⋊ Y and every lift is pinned by the image of one flag.

"""
from dataclasses import asdict, dataclass, field
import logging

import numpy as np

from .coxword import CoxWord
from .cosetenum import DEFAULT_CAP, InconclusiveError, realize_schreier
from .premaniplex import Premaniplex
from .symmetry import AutomorphismGroup, FlagPermutation, extend_unchecked, automorphisms, \
    covers, is_isomorphic, orbits
from . import operators
from .voltage import INCONCLUSIVE, NO, product, preserves_connectivity, zeta

DIRECT_LIMIT = 20000

NO_EXTRA = 'NO_EXTRA'
NO_EXTRA_BEYOND_LIFTS = 'NO_EXTRA_BEYOND_LIFTS'
EXTRA_PRESENT = 'EXTRA_PRESENT'


@dataclass
class OrbitAccount:
    """Orbit counts of X ⋊ Y against the automorphisms of X and their lifts

    index = [Aut(X ⋊ Y) : Aut(X)], lift_count = |Γ| for the group Γ of
    automorphisms of Y that lift, and t = [Aut(X ⋊ Y) : Γ~] for the lifted
    group Γ~ of order aut_x_order * lift_count.  t_table counts against Aut(X)
    alone, [Aut(X ⋊ Y) : Aut(X)], the quantity tabulated for orbit counts of
    operations on regular maps.
    """
    k: int
    y_size: int
    aut_x_order: int
    product_aut_order: int
    lifted_aut_order: int
    index: int
    lift_count: int
    product_orbits: int
    t: int
    t_table: int

    def to_dict(self):
        return asdict(self)

    def to_text(self):
        return '\n'.join(f'{key} {value}' for key, value in asdict(self).items()) + '\n'


@dataclass
class CertificateRecord:
    y1: int
    in_lift_orbit: bool
    built: bool
    z_flags: int = None
    covered: bool = None
    capped: bool = False

    def to_text(self):
        def _fmt(value):
            if value is None:
                return '-'
            elif isinstance(value, bool):
                return 'yes' if value else 'no'
            return str(value)
        return 'record ' + ' '.join(f'{key}={_fmt(value)}' for key, value in asdict(self).items())


@dataclass
class ExtraSymmetryCertificate:
    """Verdict on symmetry of X ⋊ Y beyond Aut(X) and lifts from Y"""
    verdict: str
    aut_x_order: int
    records: list = field(default_factory=list)
    distinct_z: int = 0
    direct: bool = False
    product_aut_order: int = None
    lifted_order: int = None

    def to_dict(self):
        return asdict(self)

    def to_text(self):
        lines = [
            f'verdict {self.verdict}',
            f'aut_x_order {self.aut_x_order}',
            f'distinct_z {self.distinct_z}',
            f'direct {"yes" if self.direct else "no"}',
            f'product_aut_order {"-" if self.product_aut_order is None else self.product_aut_order}',
            f'lifted_order {"-" if self.lifted_order is None else self.lifted_order}',
        ]
        lines.extend(record.to_text() for record in self.records)
        return '\n'.join(lines) + '\n'


@dataclass
class LiftedGroup:
    """The group Γ~ generated by Aut(X) and the lifts of Γ ≤ Aut(Y)"""
    group: AutomorphismGroup
    taus: list
    aut_x_order: int
    product_aut_order: int = None

    @property
    def order(self):
        return self.group.order

    @property
    def extension_law(self):
        """|Γ~| = |Aut(X)| |Γ|"""
        return self.order == self.aut_x_order * len(self.taus)

    @property
    def is_full(self):
        if self.product_aut_order is None:
            return None
        return self.order == self.product_aut_order


@dataclass
class LiftRecord:
    tau: list
    preserves_voltages: bool
    lift: FlagPermutation = None

    @property
    def lifts(self):
        return self.lift is not None


def _require_connected(x):
    if not x.is_connected:
        raise ValueError('premaniplex is not connected')


def _connected_product(x, op):
    _require_connected(x)
    p = product(x, op)
    if not p.is_connected:
        raise ValueError('product is not connected')
    return p


def _require_preserving(op, cap):
    result = preserves_connectivity(op, cap=cap)
    if result.verdict == INCONCLUSIVE:
        raise InconclusiveError('connectivity test reached the coset cap', cap=cap)
    elif result.verdict == NO:
        raise ValueError('operator does not preserve connectivity')


def embed_automorphism(gamma, y_size):
    """Automorphism (x, y) -> (xγ, y) of X ⋊ Y"""
    images = np.asarray(gamma.images)[:, None] * y_size + np.arange(y_size)
    return FlagPermutation(images.ravel())


def lift_orbit(op):
    """Flags of Y in the orbit of the base flag under Aut(Y)"""
    return sorted({g(op.base) for g in automorphisms(op.premaniplex)})


def _lifted_taus(op, aut_y, aut_p):
    # Every automorphism of the product sending the base flag into the fibre
    # of y0 τ is a lift of τ
    reached = {g(0) % op.flag_count for g in aut_p}
    return [tau for tau in aut_y if tau(op.base) in reached]


def orbit_accounting(x, op):
    """Orbit accounting of X ⋊ Y

    Raises
    ------
    ValueError
        If X or the product is not connected.
    RuntimeError
        If the computed groups contradict the embedding of Aut(X) or the
        orbit count identity (an implementation fault).

    """
    p = _connected_product(x, op)
    ky = op.flag_count
    aut_x = automorphisms(x)
    aut_p = automorphisms(p)

    embedded = {embed_automorphism(g, ky) for g in aut_x}
    y_fixing = {g for g in aut_p if g(0) % ky == op.base}
    if embedded != y_fixing:
        raise RuntimeError('Y-coordinate fixing automorphisms differ from the embedded Aut(X)')
    index, remainder = divmod(aut_p.order, aut_x.order)
    if remainder:
        raise RuntimeError(f'Aut(X) order {aut_x.order} does not divide {aut_p.order}')

    _, k = orbits(x, aut_x)
    _, product_orbits = orbits(p, aut_p)
    if product_orbits * index != k * ky:
        raise RuntimeError(f'orbit count {product_orbits} x index {index} != {k} x {ky}')

    lift_count = len(_lifted_taus(op, automorphisms(op.premaniplex), aut_p))
    account = OrbitAccount(
        k=k, y_size=ky, aut_x_order=aut_x.order, product_aut_order=aut_p.order,
        lifted_aut_order=len(y_fixing), index=index, lift_count=lift_count,
        product_orbits=product_orbits, t=aut_p.order // (aut_x.order * lift_count),
        t_table=index,
    )
    logging.debug(f'  Orbit account: {account}')
    return account


def diagonal_square(op, y1):
    """Component of (y0, y1) in Y ▵ Y, each color acting on both coordinates

    Returns
    -------
    Premaniplex
        Flag 0 is (y0, y1); the others are numbered in BFS order.

    """
    perms = op.premaniplex.perm_lists
    start = (op.base, int(y1))
    index = {start: 0}
    pairs = [start]
    pos = 0
    while pos < len(pairs):
        a, b = pairs[pos]
        pos += 1
        for i in range(op.rank):
            pair = (perms[i][a], perms[i][b])
            if pair not in index:
                index[pair] = len(pairs)
                pairs.append(pair)
    return Premaniplex([[index[(perms[i][a], perms[i][b])] for a, b in pairs]
                        for i in range(op.rank)])


def z_upsilon(op, y1, cap=DEFAULT_CAP):
    """Coset graph of ζ of the simultaneous stabilizer of y0 and y1

    Raises
    ------
    ValueError
        If Y is not connected or y1 is not a flag of Y.
    InconclusiveError
        If the coset enumeration reaches the cap.

    """
    if not op.premaniplex.is_connected:
        raise ValueError('premaniplex is not connected')
    elif not 0 <= int(y1) < op.flag_count:
        raise ValueError(f'invalid flag: {y1}')
    square = diagonal_square(op, y1)
    generators = square.schreier_generators(0).generators
    images = [zeta(op, g) for g in generators]
    z = realize_schreier(op.source_rank, images, cap=cap)
    logging.debug(f'  Z for flag {y1}: {square.flag_count} square flags, {z.flag_count} flags')
    return z


def _direct_lifted_order(x, op, aut_x_order):
    p = product(x, op)
    aut_p = automorphisms(p)
    taus = _lifted_taus(op, automorphisms(op.premaniplex), aut_p)
    return aut_p.order, aut_x_order * len(taus), len(taus)


def certify(x, op, cap=DEFAULT_CAP, direct_limit=DIRECT_LIMIT):
    """Certificate on extra symmetry of X ⋊ Y

    Every flag y1 != y0 of Y is processed: Z is built and tested for being
    covered by X.  Flags in the Aut(Y)-orbit of y0 always give Z = 1^n and
    only account for lifts.

    Parameters
    ----------
    x : Premaniplex
        Connected.
    op : VoltageOperator
        Must preserve connectivity.
    cap : int, optional
        Coset cap for each Z.
    direct_limit : int, optional
        Largest product flag count for which the automorphism group of the
        product is computed when the coverings do not settle the verdict.

    Returns
    -------
    ExtraSymmetryCertificate
        NO_EXTRA when X covers no Z, NO_EXTRA_BEYOND_LIFTS when only Z of
        flags in the lift orbit are covered, otherwise the verdict of the
        direct comparison, or INCONCLUSIVE when that is not feasible.

    Raises
    ------
    ValueError
        If X is not connected or the operator does not preserve
        connectivity.
    InconclusiveError
        If the connectivity test reaches the cap.

    """
    _require_connected(x)
    _require_preserving(op, cap)
    orbit = set(lift_orbit(op))
    aut_x_order = automorphisms(x).order

    records = []
    distinct = []
    for y1 in range(op.flag_count):
        if y1 == op.base:
            continue
        try:
            z = z_upsilon(op, y1, cap=cap)
        except InconclusiveError:
            records.append(CertificateRecord(y1=y1, in_lift_orbit=y1 in orbit, built=False, capped=True))
            continue
        covered, _ = covers(x, z)
        records.append(CertificateRecord(
            y1=y1, in_lift_orbit=y1 in orbit, built=True, z_flags=z.flag_count, covered=covered))
        if not any(is_isomorphic(z, other) is not None for other in distinct
                   if other.flag_count == z.flag_count):
            distinct.append(z)
        logging.debug(f'  {records[-1].to_text()}')

    certificate = ExtraSymmetryCertificate(
        verdict=INCONCLUSIVE, aut_x_order=aut_x_order, records=records, distinct_z=len(distinct))
    capped = any(r.capped for r in records)
    if not capped and not any(r.covered for r in records):
        certificate.verdict = NO_EXTRA
    elif not capped and not any(r.covered for r in records if not r.in_lift_orbit):
        certificate.verdict = NO_EXTRA_BEYOND_LIFTS
    elif x.flag_count * op.flag_count <= direct_limit:
        product_order, lifted_order, lift_count = _direct_lifted_order(x, op, aut_x_order)
        certificate.direct = True
        certificate.product_aut_order = product_order
        certificate.lifted_order = lifted_order
        if product_order > lifted_order:
            certificate.verdict = EXTRA_PRESENT
        elif lift_count > 1:
            certificate.verdict = NO_EXTRA_BEYOND_LIFTS
        else:
            certificate.verdict = NO_EXTRA
    else:
        logging.warning(f'  Product of {x.flag_count * op.flag_count} flags is above the '
                        f'direct limit {direct_limit}, verdict is inconclusive')
    logging.debug(f'  Verdict: {certificate.verdict}')
    return certificate


def aut_preserving(op):
    """Automorphisms of Y preserving the voltage of every dart

    Raises
    ------
    ValueError
        If Y is not connected.

    """
    y = op.premaniplex
    elements = [
        tau for tau in automorphisms(y)
        if all(op.voltages[i][tau(v)] == op.voltages[i][v]
               for i in range(op.rank) for v in range(op.flag_count))
    ]
    return AutomorphismGroup(y, elements)


def find_lift(x, op, tau):
    """Lift of an automorphism τ of Y to X ⋊ Y

    Parameters
    ----------
    x : Premaniplex
    op : VoltageOperator
    tau : FlagPermutation or sequence of int
        Automorphism of Y.

    Returns
    -------
    FlagPermutation or None
        The lift sending the base flag (0, y0) to (x', y0 τ) for the least
        possible x'.

    Raises
    ------
    ValueError
        If τ is not an automorphism of Y or an input is disconnected.

    """
    tau = tau if isinstance(tau, FlagPermutation) else FlagPermutation(tau)
    if not tau.is_automorphism(op.premaniplex):
        raise ValueError('tau is not an automorphism of Y')
    p = _connected_product(x, op)
    return _find_lift(p, x.flag_count, op, tau)


def _find_lift(p, x_count, op, tau):
    target = tau(op.base)
    for x1 in range(x_count):
        extension = extend_unchecked(p, p, 0, x1 * op.flag_count + target)
        if extension:
            return FlagPermutation(extension.images)
    return None


def lift_table(x, op):
    """Voltage preservation and lift of every automorphism of Y"""
    p = _connected_product(x, op)
    preserving = set(aut_preserving(op).elements)
    return [
        LiftRecord(tau=tau.images.tolist(), preserves_voltages=tau in preserving,
                   lift=_find_lift(p, x.flag_count, op, tau))
        for tau in automorphisms(op.premaniplex)
    ]


def lifted_group(x, op, cap=DEFAULT_CAP, compare=True):
    """The group generated by Aut(X) and the lifts of automorphisms of Y

    Parameters
    ----------
    x : Premaniplex
    op : VoltageOperator
    cap : int, optional
        Coset cap of the connectivity test.
    compare : bool, optional
        Also compute Aut(X ⋊ Y) to report whether the lifted group is the
        full group (the default is True).

    Returns
    -------
    LiftedGroup

    """
    _require_preserving(op, cap)
    p = _connected_product(x, op)
    ky = op.flag_count
    aut_x_order = automorphisms(x).order

    taus = []
    elements = []
    for tau in automorphisms(op.premaniplex):
        lifts = []
        for x1 in range(x.flag_count):
            extension = extend_unchecked(p, p, 0, x1 * ky + tau(op.base))
            if extension:
                lifts.append(FlagPermutation(extension.images))
        if lifts:
            taus.append(tau)
            elements.extend(lifts)
    output = LiftedGroup(
        group=AutomorphismGroup(p, elements), taus=taus, aut_x_order=aut_x_order)
    if compare:
        output.product_aut_order = automorphisms(p).order
    logging.debug(f'  Lifted group: {output.order} ({len(taus)} automorphisms of Y lift)')
    return output


def substitute(word, images):
    """Image of a word under the endomorphism r_i -> images[i]"""
    letters = []
    for letter in word.letters:
        letters.extend(images[letter].letters)
    return CoxWord(letters, images[0].rank)


def same_result_check(x, op, tau, images):
    """Check that X^τ# ⋊ Y is isomorphic to X ⋊ Y

    Parameters
    ----------
    x : Premaniplex
    op : VoltageOperator
    tau : FlagPermutation or sequence of int
        Automorphism of Y.
    images : list of words
        Images τ#(r_i), one per color of the source rank.

    Raises
    ------
    ValueError
        If τ# does not carry the voltage of every dart d to the voltage of
        the dart dτ.

    """
    tau = tau if isinstance(tau, FlagPermutation) else FlagPermutation(tau)
    if not tau.is_automorphism(op.premaniplex):
        raise ValueError('tau is not an automorphism of Y')
    d_op = operators.d_operator(op.source_rank, images)
    words = [row[0] for row in d_op.voltages]
    for i in range(op.rank):
        for y in range(op.flag_count):
            if substitute(op.voltages[i][y], words) != op.voltages[i][tau(y)]:
                raise ValueError(f'images are not compatible with tau at dart ({y},{i})')
    x_tau = product(x, d_op)
    return is_isomorphic(product(x_tau, op), product(x, op)) is not None


def is_orientable(x):
    """True if the product with the double cover is disconnected"""
    _require_connected(x)
    return not product(x, operators.double_cover(x.rank)).is_connected
