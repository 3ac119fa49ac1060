"""Words in simple reflections.

Words are plain tuples of 1-based letters.  A word acts on weights
right-to-left, so ``act(C, (i1, ..., im), v) = s_i1(...(s_im(v)))``.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Sequence

from .cartan import CartanMatrix, Weight, reflect, rho

__all__ = [
    "Word",
    "NEG_INF",
    "POS_INF",
    "NotReducedError",
    "check_letters",
    "is_reduced",
    "require_reduced",
    "act",
    "support",
    "pred_succ",
    "longest_word",
]

Word = tuple[int, ...]


class NotReducedError(ValueError):
    """The word is not a reduced expression."""


@total_ordering
class _Infinity:
    """Signed infinity, ordered against every int.  Two instances exist."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        if isinstance(other, int):
            return self.sign > 0
        return NotImplemented

    def __repr__(self):
        return "-inf" if self.sign < 0 else "inf"

    __str__ = __repr__


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(+1)


def check_letters(C: CartanMatrix, word: Sequence[int]) -> Word:
    word = tuple(int(i) for i in word)
    for i in word:
        C.check_index(i)
    return word


def act(C: CartanMatrix, word: Sequence[int], v: Sequence[int]) -> Weight:
    """Apply ``s_i1 ... s_im`` to ``v`` (rightmost letter first)."""
    word = check_letters(C, word)
    v = tuple(v)
    for i in reversed(word):
        v = reflect(C, i, v)
    return v


def is_reduced(C: CartanMatrix, word: Sequence[int]) -> bool:
    """True iff the word has minimal length for the element it represents.

    Builds the element from the right: prepending ``s_i`` to ``u`` raises the
    length iff ``u^{-1} alpha_i`` is positive, i.e. iff coordinate ``i`` of
    ``u(rho)`` is positive.
    """
    word = check_letters(C, word)
    v = rho(C.rank)
    for i in reversed(word):
        if v[i - 1] <= 0:
            return False
        v = reflect(C, i, v)
    return True


def require_reduced(C: CartanMatrix, word: Sequence[int]) -> Word:
    word = check_letters(C, word)
    if not is_reduced(C, word):
        raise NotReducedError(f"word {word} is not reduced in type {C.type}")
    return word


def support(word: Sequence[int]) -> frozenset[int]:
    return frozenset(word)


def pred_succ(word: Sequence[int]) -> tuple[list, list]:
    """Previous/next occurrence of each position's letter, 1-based.

    Returns ``(p, s)`` indexed from 0 for position 1; missing neighbours are
    :data:`NEG_INF` / :data:`POS_INF`.
    """
    m = len(word)
    p: list = [NEG_INF] * m
    s: list = [POS_INF] * m
    last: dict[int, int] = {}
    for k, letter in enumerate(word, start=1):
        if letter in last:
            j = last[letter]
            p[k - 1] = j
            s[j - 1] = k
        last[letter] = k
    return p, s


def longest_word(C: CartanMatrix) -> Word:
    """A reduced word for the longest element, by greedy descent on ``rho``."""
    v = rho(C.rank)
    letters: list[int] = []
    while True:
        i = next((j for j in range(1, C.rank + 1) if v[j - 1] > 0), None)
        if i is None:
            break
        letters.append(i)
        v = reflect(C, i, v)
    return tuple(reversed(letters))
