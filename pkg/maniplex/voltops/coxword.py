"""Words in the universal string Coxeter group C^n

C^n is generated by the involutions r_0, ..., r_{n-1}; r_i and r_j commute
when |i - j| >= 2 and no other relations hold.  The group is right-angled,
so cancelling letters and then sorting the commutation class gives an exact
solution of the word problem.

A word [a, b, c] stands for the element r_a r_b r_c.  Acting on a flag the
letters are applied right to left (c first).

"""
import heapq
import re

_WORD_RE = re.compile(r'^\[\s*(\d+\s*(?:,\s*\d+\s*)*)?\]$')


def _check_letters(letters, rank):
    if isinstance(letters, (str, bytes)):
        raise TypeError(f'unsupported letters type: {type(letters).__name__}')
    if int(rank) < 1:
        raise ValueError(f'invalid rank: {rank}')
    output = [int(letter) for letter in letters]
    for letter in output:
        if letter < 0 or letter >= rank:
            raise ValueError(f'invalid generator index: {letter} (rank {rank})')
    return output


def reduce(letters, rank):
    """Cancel pairs of equal letters separated only by commuting letters

    Parameters
    ----------
    letters : iterable of int
        Generator indices.
    rank : int

    Returns
    -------
    list of int
        A reduced word for the same group element.

    Raises
    ------
    ValueError
        If a letter is not a generator index of the rank.

    Notes
    -----
    Letters are pushed one at a time onto an already reduced word.  The new
    letter cancels against the last occurrence of itself if every letter
    after that occurrence commutes with it, otherwise it is appended.  This
    reaches the same fixpoint as repeatedly scanning for cancellable pairs.

    """
    output = []
    for letter in _check_letters(letters, rank):
        for pos in range(len(output) - 1, -1, -1):
            if output[pos] == letter:
                del output[pos]
                break
            elif abs(output[pos] - letter) < 2:
                output.append(letter)
                break
        else:
            output.append(letter)
    return output


def _lex_least(letters):
    """Lexicographically least word of the commutation class"""
    # Each occurrence depends on the previous occurrence of its neighbours
    remaining = [0] * len(letters)
    successors = [[] for _ in letters]
    last = {}
    for pos, letter in enumerate(letters):
        for dep in (letter - 1, letter, letter + 1):
            if dep in last:
                successors[last[dep]].append(pos)
                remaining[pos] += 1
        last[letter] = pos

    heap = [(letter, pos) for pos, letter in enumerate(letters) if not remaining[pos]]
    heapq.heapify(heap)
    output = []
    while heap:
        letter, pos = heapq.heappop(heap)
        output.append(letter)
        for succ in successors[pos]:
            remaining[succ] -= 1
            if not remaining[succ]:
                heapq.heappush(heap, (letters[succ], succ))
    return output


def normal_form(letters, rank):
    """Canonical word of a group element

    Parameters
    ----------
    letters : iterable of int
    rank : int

    Returns
    -------
    CoxWord

    Notes
    -----
    The word is reduced and then the smallest available letter is extracted
    from the commutation trace until it is empty.

    """
    return CoxWord._from_canonical(tuple(_lex_least(reduce(letters, rank))), int(rank))


def _check_ranks(a, b):
    if not isinstance(a, CoxWord) or not isinstance(b, CoxWord):
        raise TypeError('CoxWord arguments are required')
    if a.rank != b.rank:
        raise ValueError(f'rank mismatch: {a.rank} != {b.rank}')


def multiply(a, b):
    """Product a*b (the element a b, so b acts first on flags)"""
    _check_ranks(a, b)
    if not b.letters:
        return a
    elif not a.letters:
        return b
    return normal_form(a.letters + b.letters, a.rank)


def inverse(w):
    """Inverse of a word (the reversed letters, generators are involutions)"""
    return normal_form(w.letters[::-1], w.rank)


def conjugate(w, u):
    """The conjugate u^-1 w u"""
    _check_ranks(w, u)
    return normal_form(u.letters[::-1] + w.letters + u.letters, w.rank)


def is_involution(w):
    """True if w*w is the identity (the identity itself included)"""
    return not multiply(w, w).letters


def parse_word(text, rank):
    """Parse the bracketed text form of a word, '[0,2,1]' or '[]'

    Parameters
    ----------
    text : str
    rank : int

    Returns
    -------
    CoxWord

    Raises
    ------
    ValueError
        If the text is not a bracketed list of generator indices.

    """
    match = _WORD_RE.match(text.strip())
    if not match:
        raise ValueError(f'invalid word: {text!r}')
    elif match.group(1) is None:
        return CoxWord.identity(rank)
    return normal_form([int(x) for x in match.group(1).split(',')], rank)


def format_word(letters):
    """Text form of a word"""
    return '[' + ','.join(str(letter) for letter in letters) + ']'


class CoxWord:
    """Element of C^n stored as its canonical word"""

    __slots__ = ('letters', 'rank')

    def __init__(self, letters, rank):
        """Construct a word, normalizing the letters

        Parameters
        ----------
        letters : iterable of int
            Generator indices in the left-to-right written order.
        rank : int
            Rank n of the group C^n.

        """
        canonical = normal_form(letters, rank)
        self.letters = canonical.letters
        self.rank = canonical.rank

    @classmethod
    def _from_canonical(cls, letters, rank):
        word = object.__new__(cls)
        word.letters = letters
        word.rank = rank
        return word

    @classmethod
    def identity(cls, rank):
        if int(rank) < 1:
            raise ValueError(f'invalid rank: {rank}')
        return cls._from_canonical((), int(rank))

    @classmethod
    def generator(cls, index, rank):
        """The word [index]"""
        return cls._from_canonical(tuple(_check_letters([index], rank)), int(rank))

    @classmethod
    def from_text(cls, text, rank):
        return parse_word(text, rank)

    def is_identity(self):
        return not self.letters

    def is_involution(self):
        return is_involution(self)

    def inverse(self):
        return inverse(self)

    def conjugate(self, u):
        return conjugate(self, u)

    def __mul__(self, other):
        return multiply(self, other)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, CoxWord):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __str__(self):
        return format_word(self.letters)

    def __repr__(self):
        return f'CoxWord({list(self.letters)}, rank={self.rank})'
