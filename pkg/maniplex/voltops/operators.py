"""Built-in voltage operators

Flag 0 of every operator is its base flag.

"""
import numpy as np

from .coxword import CoxWord
from .premaniplex import Premaniplex
from . import voltage
from .voltage import VoltageOperator

# Parametric operators take the source rank as their only argument
PARAMETRIC = ['prism', 'pyramid', 'dual', 'double-cover', 'identity']
FIXED = ['medial', 'truncation', 'omnitruncation', 'petrie']


def medial():
    """Medial of a rank 3 premaniplex

    Flags m1 = 0 and m2 = 1 joined by a color 2 edge with trivial voltage.
    Semi-edges: m1 color 0 -> [1], color 1 -> [0]; m2 color 0 -> [1],
    color 1 -> [2].
    """
    y = Premaniplex([[0, 1], [0, 1], [1, 0]])
    return VoltageOperator(3, y, [[[1], [1]], [[0], [2]], [[], []]])


def truncation():
    """Truncation of a rank 3 premaniplex

    Flags a = 0, b = 1, c = 2; a color 1 edge a-b and a color 2 edge b-c,
    both trivial.  Semi-edges: a color 0 -> [0], a color 2 -> [2],
    b color 0 -> [1], c color 0 -> [1], c color 1 -> [2].
    """
    y = Premaniplex([[0, 1, 2], [1, 0, 2], [0, 2, 1]])
    return VoltageOperator(3, y, [[[0], [1], [1]], [[], [], [2]], [[2], [], []]])


def _prism_flag(n, sigma, t):
    # (0, n) is flag 0
    return sigma * (n + 1) + (n - t)


def prism(n):
    """Prism over a rank n premaniplex, an (n, n+1) operator

    Flags (σ, t) with σ in {0, 1} the lid and t in {0, ..., n}, numbered
    σ (n+1) + (n - t).  Color 0 joins (0, 0) and (1, 0); color t joins
    (σ, t-1) and (σ, t).  The remaining colors are semi-edges at (σ, t):
    color i -> [i] for i <= t-1 and color i -> [i-1] for i >= t+2.
    """
    if n < 1:
        raise ValueError(f'invalid prism rank: {n}')
    size = 2 * (n + 1)
    perms = np.tile(np.arange(size), (n + 1, 1))
    voltages = [[[] for _ in range(size)] for _ in range(n + 1)]
    for sigma in (0, 1):
        for t in range(n + 1):
            y = _prism_flag(n, sigma, t)
            for i in range(n + 1):
                if i == 0 and t == 0:
                    perms[0, y] = _prism_flag(n, 1 - sigma, 0)
                elif i == t:
                    perms[i, y] = _prism_flag(n, sigma, t - 1)
                elif i == t + 1:
                    perms[i, y] = _prism_flag(n, sigma, t + 1)
                elif i <= t - 1:
                    voltages[i][y] = [i]
                else:
                    voltages[i][y] = [i - 1]
    return VoltageOperator(n, Premaniplex(perms), voltages)


def prism_lid_swap(n):
    """The automorphism (σ, t) -> (1 - σ, t) of the prism's premaniplex"""
    return (np.arange(2 * (n + 1)) + n + 1) % (2 * (n + 1))


def pyramid(n):
    """Pyramid over a rank n premaniplex, an (n, n+1) operator

    Flags z_0, ..., z_{n+1} numbered 0, ..., n+1.  Color n-t joins z_t and
    z_{t+1}.  Semi-edges at z_t: color i -> [i] for i <= n-t-1 and
    color i -> [i-1] for i >= n-t+2.
    """
    if n < 1:
        raise ValueError(f'invalid pyramid rank: {n}')
    size = n + 2
    perms = np.tile(np.arange(size), (n + 1, 1))
    voltages = [[[] for _ in range(size)] for _ in range(n + 1)]
    for t in range(size):
        for i in range(n + 1):
            if i == n - t:
                perms[i, t] = t + 1
            elif i == n - t + 1:
                perms[i, t] = t - 1
            elif i <= n - t - 1:
                voltages[i][t] = [i]
            else:
                voltages[i][t] = [i - 1]
    return VoltageOperator(n, Premaniplex(perms), voltages)


def d_operator(n, images):
    """One-flag operator (1^n, images)

    Parameters
    ----------
    n : int
    images : list of words
        images[i] is the voltage of the color i semi-edge.  Every image must
        be an involution and images of colors i, j with |i - j| >= 2 must
        commute.

    Raises
    ------
    ValueError
        If an image is not an involution or two images fail to commute.

    """
    if len(images) != n:
        raise ValueError(f'expected {n} images, got {len(images)}')
    images = [w if isinstance(w, CoxWord) else CoxWord(w, n) for w in images]
    for i, w in enumerate(images):
        if not w.is_involution():
            raise ValueError(f'image {i} is not an involution: {w}')
    return VoltageOperator(n, Premaniplex.one_vertex(n), [[w] for w in images])


def dual(n):
    """Duality operator, color i -> [n-1-i]"""
    return d_operator(n, [[n - 1 - i] for i in range(n)])


def petrie():
    """Petrie operator, images ([0,2], [1], [2])"""
    return d_operator(3, [[0, 2], [1], [2]])


def double_cover(n):
    """Operator on 2_∅ with voltage [i] on every dart of color i"""
    y = Premaniplex.two_flag(n)
    return VoltageOperator(n, y, [[[i], [i]] for i in range(n)])


def omnitruncation():
    """Composition of medial and truncation, 6 flags"""
    return voltage.compose(medial(), truncation())


def identity(n):
    return voltage.identity(n)


def names():
    """Builtin names, parametric ones with their argument placeholder"""
    return FIXED + [f'{name}:N' for name in PARAMETRIC]


def builtin(name):
    """Built-in operator by name, e.g. 'medial' or 'prism:3'

    Raises
    ------
    ValueError
        For unknown names or invalid parameters.

    """
    name, _, arg = name.partition(':')
    if name in FIXED and not arg:
        return {
            'medial': medial,
            'truncation': truncation,
            'omnitruncation': omnitruncation,
            'petrie': petrie,
        }[name]()
    elif name in PARAMETRIC:
        if not arg.isdigit():
            raise ValueError(f'builtin {name} requires a rank argument, e.g. {name}:3')
        return {
            'prism': prism,
            'pyramid': pyramid,
            'dual': dual,
            'double-cover': double_cover,
            'identity': identity,
        }[name](int(arg))
    raise ValueError(f'unsupported builtin operator: {name}')
