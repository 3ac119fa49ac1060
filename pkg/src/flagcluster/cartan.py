"""Finite-type Cartan data and weight arithmetic in the fundamental-weight basis.

Convention: ``A[i, j] = <alpha_i^vee, alpha_j>``, so the simple root
``alpha_i`` has fundamental-weight coordinates given by column ``i``.
Non-simply-laced types use the Kac/Bourbaki numbering:

==========  =====================================  ==================
type        nonzero off-diagonal pair              short root(s)
==========  =====================================  ==================
B_n         A[n, n-1] = -2, A[n-1, n] = -1         alpha_n
C_n         A[n-1, n] = -2, A[n, n-1] = -1         alpha_1..alpha_{n-1}
F_4         A[3, 2] = -2, A[2, 3] = -1             alpha_3, alpha_4
G_2         A[2, 1] = -3, A[1, 2] = -1             alpha_1
==========  =====================================  ==================

Indices are 1-based in the public API (``I = {1, ..., rank}``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

__all__ = [
    "DynkinType",
    "CartanMatrix",
    "Weight",
    "cartan_matrix",
    "symmetrizer",
    "reflect",
    "fundamental_weight",
    "simple_root",
    "zero_weight",
    "weight_add",
    "weight_scale",
    "rho",
    "number_of_positive_roots",
]

Weight = tuple[int, ...]

_ADMISSIBLE = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


@dataclass(frozen=True)
class DynkinType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _ADMISSIBLE:
            raise ValueError(f"unknown series {self.series!r}")
        if not isinstance(self.rank, (int, np.integer)) or not _ADMISSIBLE[self.series](self.rank):
            raise ValueError(f"rank {self.rank} is not admissible for series {self.series}")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        """Parse ``"B3"``, ``"B_3"`` or ``"B 3"``."""
        text = text.strip().replace("_", "").replace(" ", "")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True, eq=False)
class CartanMatrix:
    """Integer Cartan matrix of one finite type; ``entries`` is read-only."""

    entries: np.ndarray
    type: DynkinType

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        n = a.shape[0]
        if a.shape != (n, n) or n != self.type.rank:
            raise ValueError(f"Cartan matrix shape {a.shape} does not match {self.type}")
        if not np.all(np.diag(a) == 2):
            raise ValueError("diagonal entries must be 2")
        off = a[~np.eye(n, dtype=bool)]
        if np.any(off > 0):
            raise ValueError("off-diagonal entries must be <= 0")
        if not np.array_equal(a == 0, a.T == 0):
            raise ValueError("zero pattern must be symmetric")

    @property
    def rank(self) -> int:
        return self.type.rank

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based entry access, ``C[i, j] = a_ij``."""
        i, j = ij
        return int(self.entries[i - 1, j - 1])

    def __eq__(self, other):
        return (
            isinstance(other, CartanMatrix)
            and self.type == other.type
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.type, self.entries.tobytes()))

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"index {i} out of range for {self.type}")


def _simply_laced_edges(series: str, r: int) -> list[tuple[int, int]]:
    if series in "ABCFG":
        return [(i, i + 1) for i in range(1, r)]
    if series == "D":
        return [(i, i + 1) for i in range(1, r - 1)] + [(r - 2, r)]
    # E_r, Bourbaki numbering: 1-3-4-5-...-r with 2 attached to 4
    return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, r)]


def cartan_matrix(dtype: DynkinType | str) -> CartanMatrix:
    """Cartan matrix of a finite type.

    >>> cartan_matrix("B3").entries.tolist()
    [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]
    """
    if isinstance(dtype, str):
        dtype = DynkinType.parse(dtype)
    r = dtype.rank
    a = 2 * np.eye(r, dtype=np.int64)
    for i, j in _simply_laced_edges(dtype.series, r):
        a[i - 1, j - 1] = a[j - 1, i - 1] = -1
    if dtype.series == "B":
        a[r - 1, r - 2] = -2
    elif dtype.series == "C":
        a[r - 2, r - 1] = -2
    elif dtype.series == "F":
        a[2, 1] = -2
    elif dtype.series == "G":
        a[1, 0] = -3
    return CartanMatrix(a, dtype)


def symmetrizer(C: CartanMatrix | np.ndarray) -> tuple[int, ...]:
    """Minimal positive integers ``d`` with ``d_i a_ij = d_j a_ji``.

    Minimality is per connected component of the Dynkin diagram.
    """
    a = C.entries if isinstance(C, CartanMatrix) else np.asarray(C, dtype=np.int64)
    n = a.shape[0]
    d: list[Fraction | None] = [None] * n
    comps: list[list[int]] = []
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or a[i, j] == 0:
                    continue
                dj = d[i] * int(a[i, j]) / int(a[j, i])
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    raise ValueError("matrix is not symmetrizable")
        comps.append(comp)
    out = [0] * n
    for comp in comps:
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            out[i] = v // g
    return tuple(out)


def zero_weight(rank: int) -> Weight:
    return (0,) * rank


def fundamental_weight(rank: int, i: int) -> Weight:
    if not 1 <= i <= rank:
        raise IndexError(f"index {i} out of range for rank {rank}")
    return tuple(1 if j == i else 0 for j in range(1, rank + 1))


def rho(rank: int) -> Weight:
    return (1,) * rank


def simple_root(C: CartanMatrix, i: int) -> Weight:
    """``alpha_i`` in the fundamental-weight basis (column ``i`` of ``C``)."""
    C.check_index(i)
    return tuple(int(x) for x in C.entries[:, i - 1])


def weight_add(*ws: Sequence[int]) -> Weight:
    return tuple(int(sum(c)) for c in zip(*ws))


def weight_scale(c: int, w: Sequence[int]) -> Weight:
    return tuple(c * x for x in w)


def reflect(C: CartanMatrix, i: int, w: Sequence[int]) -> Weight:
    """Simple reflection ``s_i(w) = w - w_i alpha_i``."""
    C.check_index(i)
    if len(w) != C.rank:
        raise ValueError(f"weight of length {len(w)} for rank {C.rank}")
    c = w[i - 1]
    if not c:
        return tuple(w)
    col = C.entries[:, i - 1]
    return tuple(int(x - c * a) for x, a in zip(w, col))


def number_of_positive_roots(dtype: DynkinType | str) -> int:
    if isinstance(dtype, str):
        dtype = DynkinType.parse(dtype)
    s, r = dtype.series, dtype.rank
    if s == "A":
        return r * (r + 1) // 2
    if s in "BC":
        return r * r
    if s == "D":
        return r * (r - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(s, r)]
