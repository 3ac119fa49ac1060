"""Initial seed of a Schubert cell from a reduced word.

Rows are word positions ``1..m``; the mutable positions are those whose
letter occurs again later in the word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cartan import CartanMatrix, DynkinType, Weight, cartan_matrix, fundamental_weight
from .cluster import ExtendedExchangeMatrix, Seed, formal_seed
from .weyl import POS_INF, act, pred_succ, require_reduced, support

__all__ = [
    "CellSpec",
    "MinorLabel",
    "build_Bw",
    "schubert_matrix",
    "classify_frozen",
    "variable_labels",
    "schubert_seed",
]


@dataclass(frozen=True)
class CellSpec:
    """A Schubert cell: Dynkin type, reduced word, and the nonempty set ``J``."""

    type: DynkinType
    word: tuple
    J: frozenset

    def __post_init__(self):
        dtype = DynkinType.parse(self.type) if isinstance(self.type, str) else self.type
        object.__setattr__(self, "type", dtype)
        word = require_reduced(cartan_matrix(dtype), self.word)
        object.__setattr__(self, "word", word)
        J = frozenset(int(j) for j in self.J)
        if not J:
            raise ValueError("J must be nonempty")
        bad = sorted(j for j in J if not 1 <= j <= dtype.rank)
        if bad:
            raise ValueError(f"J contains indices {bad} outside 1..{dtype.rank}")
        object.__setattr__(self, "J", J)

    @property
    def cartan(self) -> CartanMatrix:
        return cartan_matrix(self.type)

    @property
    def K(self) -> frozenset:
        return frozenset(range(1, self.type.rank + 1)) - self.J

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class MinorLabel:
    """Label ``D(w_i, w_{<=k} w_i)`` of the cell variable at position ``k``."""

    weight_index: int
    prefix: tuple
    resolved_weight: Weight
    frozen: bool

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    def __str__(self) -> str:
        pre = "".join(f"s{i}" for i in self.prefix) or "e"
        tag = "frozen" if self.frozen else "mutable"
        return f"D(w{self.weight_index}, {pre} w{self.weight_index}) = D(w{self.weight_index}, {list(self.resolved_weight)})  [{tag}]"


def classify_frozen(word: Sequence[int]) -> tuple[frozenset, frozenset]:
    """Split positions ``1..m`` into mutable (``s(k)`` finite) and frozen."""
    _, s = pred_succ(word)
    mutable = frozenset(k for k in range(1, len(word) + 1) if s[k - 1] != POS_INF)
    frozen = frozenset(range(1, len(word) + 1)) - mutable
    return mutable, frozen


def schubert_matrix(C: CartanMatrix, word: Sequence[int]) -> ExtendedExchangeMatrix:
    """The ``m x (m - |S(w)|)`` matrix of the cell seed, rows in word order."""
    word = require_reduced(C, word)
    m = len(word)
    p, s = pred_succ(word)
    mutable = [k for k in range(1, m + 1) if s[k - 1] != POS_INF]
    B = np.zeros((m, len(mutable)), dtype=np.int64)
    for c, k in enumerate(mutable):
        pk, sk = p[k - 1], s[k - 1]
        for j in range(1, m + 1):
            sj = s[j - 1]
            a = C[word[j - 1], word[k - 1]]
            if j == pk:
                B[j - 1, c] = 1
            elif j == sk:
                B[j - 1, c] = -1
            elif j < k < sj < sk:
                B[j - 1, c] = a
            elif k < j < sk < sj:
                B[j - 1, c] = -a
    assert B.shape[1] == m - len(support(word))
    return ExtendedExchangeMatrix(B, tuple(range(1, m + 1)), tuple(mutable))


def build_Bw(spec: CellSpec) -> ExtendedExchangeMatrix:
    return schubert_matrix(spec.cartan, spec.word)


def variable_labels(spec: CellSpec) -> list[MinorLabel]:
    C = spec.cartan
    mutable, _ = classify_frozen(spec.word)
    labels = []
    for k, i in enumerate(spec.word, start=1):
        prefix = spec.word[:k]
        w = act(C, prefix, fundamental_weight(C.rank, i))
        labels.append(MinorLabel(i, prefix, w, k not in mutable))
    return labels


def schubert_seed(spec: CellSpec, prefix: str = "x") -> Seed:
    """Cell seed with formal variables ``x1..xm``."""
    return formal_seed(build_Bw(spec), prefix)
