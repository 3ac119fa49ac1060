"""Seeds, mutation, exchange-graph exploration and grading bookkeeping.

Rows of an :class:`ExtendedExchangeMatrix` carry labels (word positions,
or strings such as ``"J3"`` for appended frozen rows).  Columns are
indexed by the labels of the mutable rows, so mutation directions are
given as labels, not as array offsets.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

from .laurent import LaurentPolynomial, NotDivisibleError, exact_divide, symbols

__all__ = [
    "ExtendedExchangeMatrix",
    "Seed",
    "MutationError",
    "ExchangeGraph",
    "LaurentReport",
    "is_skew_symmetrizable",
    "mutate_matrix",
    "mutate_seed",
    "mutate_sequence",
    "exchange_monomials",
    "enumerate_exchange_graph",
    "check_laurent",
    "all_walks",
    "random_walks",
    "column_degree_defect",
    "propagate_degrees",
    "formal_seed",
]

Label = Hashable


def is_skew_symmetrizable(M) -> tuple[bool, tuple[int, ...] | None]:
    """Decide whether ``D @ M`` is skew-symmetric for some positive integer diagonal ``D``.

    Returns ``(True, d)`` with ``d`` minimal on each connected component,
    or ``(False, None)``.
    """
    m = np.asarray(M, dtype=np.int64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    n = m.shape[0]
    if n == 0:
        return True, ()
    if np.any(np.diag(m) != 0):
        return False, None
    if np.any(np.sign(m) != -np.sign(m.T)):
        return False, None
    d: list[Fraction | None] = [None] * n
    comps = []
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in np.nonzero(m[i])[0]:
                j = int(j)
                # d_i m_ij = -d_j m_ji
                dj = d[i] * int(m[i, j]) / -int(m[j, i])
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    return False, None
        comps.append(comp)
    out = [0] * n
    for comp in comps:
        den = np.lcm.reduce([d[i].denominator for i in comp])
        ints = [int(d[i] * int(den)) for i in comp]
        g = np.gcd.reduce(ints)
        for i, v in zip(comp, ints):
            out[i] = int(v // g)
    return True, tuple(out)


@dataclass(frozen=True, eq=False)
class ExtendedExchangeMatrix:
    """An ``m x n`` integer matrix whose columns are indexed by mutable rows."""

    entries: np.ndarray
    row_labels: tuple
    mutable: tuple

    def __post_init__(self):
        row_labels = tuple(self.row_labels)
        mutable = tuple(self.mutable)
        a = np.array(self.entries, dtype=np.int64).reshape(len(row_labels), len(mutable))
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "mutable", mutable)
        if len(set(row_labels)) != len(row_labels):
            raise ValueError("duplicate row labels")
        missing = [k for k in mutable if k not in row_labels]
        if missing:
            raise ValueError(f"mutable labels {missing} are not row labels")
        if len(set(mutable)) != len(mutable):
            raise ValueError("duplicate mutable labels")
        ok, _ = is_skew_symmetrizable(self.principal_block())
        if not ok:
            raise ValueError("principal block is not skew-symmetrizable")

    @classmethod
    def from_square(cls, B, labels: Sequence[Label] | None = None) -> "ExtendedExchangeMatrix":
        """All rows mutable; labels default to ``1..n``."""
        B = np.asarray(B, dtype=np.int64)
        n = B.shape[0]
        labels = tuple(range(1, n + 1)) if labels is None else tuple(labels)
        return cls(B, labels, labels)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], n_mutable: int, labels: Sequence[Label] | None = None
    ) -> "ExtendedExchangeMatrix":
        """First ``n_mutable`` rows mutable, the rest frozen (the textbook layout)."""
        rows = np.asarray(rows, dtype=np.int64).reshape(len(rows), n_mutable)
        labels = tuple(range(1, rows.shape[0] + 1)) if labels is None else tuple(labels)
        return cls(rows, labels, labels[:n_mutable])

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def frozen(self) -> tuple:
        ms = set(self.mutable)
        return tuple(r for r in self.row_labels if r not in ms)

    def row_index(self, label: Label) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise KeyError(f"no row labelled {label!r}") from None

    def col_index(self, label: Label) -> int:
        try:
            return self.mutable.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a mutable index") from None

    def __getitem__(self, rc: tuple[Label, Label]) -> int:
        r, c = rc
        return int(self.entries[self.row_index(r), self.col_index(c)])

    def column(self, k: Label) -> dict:
        j = self.col_index(k)
        return {r: int(v) for r, v in zip(self.row_labels, self.entries[:, j])}

    def principal_block(self) -> np.ndarray:
        idx = [self.row_labels.index(k) for k in self.mutable]
        return self.entries[idx, :]

    def submatrix(self, rows: Sequence[Label]) -> "ExtendedExchangeMatrix":
        """Keep only ``rows`` (in the given order); every mutable row must survive."""
        rows = tuple(rows)
        idx = [self.row_index(r) for r in rows]
        return ExtendedExchangeMatrix(self.entries[idx, :], rows, self.mutable)

    def delete_rows(self, rows: Iterable[Label]) -> "ExtendedExchangeMatrix":
        drop = set(rows)
        return self.submatrix([r for r in self.row_labels if r not in drop])

    def with_rows(self, labels: Sequence[Label], rows) -> "ExtendedExchangeMatrix":
        """Append frozen rows."""
        rows = np.asarray(rows, dtype=np.int64).reshape(len(labels), len(self.mutable))
        return ExtendedExchangeMatrix(
            np.vstack([self.entries, rows]), self.row_labels + tuple(labels), self.mutable
        )

    def reordered(self, row_order: Sequence[Label]) -> "ExtendedExchangeMatrix":
        if sorted(map(repr, row_order)) != sorted(map(repr, self.row_labels)):
            raise ValueError("row order must be a permutation of the row labels")
        return self.submatrix(row_order)

    def display_order(self) -> tuple:
        """Mutable rows first, then frozen rows, each in storage order."""
        return self.mutable + self.frozen

    def __eq__(self, other):
        if not isinstance(other, ExtendedExchangeMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.mutable == other.mutable
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.row_labels, self.mutable, self.entries.tobytes()))

    def to_text(self, row_order: Sequence[Label] | None = None) -> str:
        """Aligned integer text with column labels on top and row labels on the right."""
        M = self if row_order is None else self.reordered(row_order)
        cells = [[str(int(v)) for v in row] for row in M.entries]
        header = [str(k) for k in M.mutable]
        width = max([len(c) for row in cells for c in row] + [len(h) for h in header] + [1])
        lines = ["  ".join(h.rjust(width) for h in header)]
        for lab, row in zip(M.row_labels, cells):
            lines.append("  ".join(c.rjust(width) for c in row) + "  | " + str(lab))
        return "\n".join(lines)

    def __repr__(self):
        return f"ExtendedExchangeMatrix(rows={self.row_labels}, mutable={self.mutable},\n{self.entries})"


def mutate_matrix(M: ExtendedExchangeMatrix, k: Label) -> ExtendedExchangeMatrix:
    """Matrix mutation in direction ``k``.

    ``b'_ij = -b_ij`` if ``i = k`` or ``j = k``, otherwise
    ``b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2``.
    """
    c = M.col_index(k)
    r = M.row_index(k)
    b = M.entries
    col = b[:, c][:, None]
    row = b[r, :][None, :]
    new = b + (np.abs(col) * row + col * np.abs(row)) // 2
    new[r, :] = -b[r, :]
    new[:, c] = -b[:, c]
    return ExtendedExchangeMatrix(new, M.row_labels, M.mutable)


class MutationError(NotDivisibleError):
    """An exchange relation has no Laurent solution; the input is not a valid seed."""


@dataclass(frozen=True)
class Seed:
    """Extended exchange matrix plus one variable per row (in row order)."""

    matrix: ExtendedExchangeMatrix
    variables: tuple

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        if len(variables) != len(self.matrix.row_labels):
            raise ValueError(
                f"{len(variables)} variables for {len(self.matrix.row_labels)} matrix rows"
            )

    def __getitem__(self, label: Label) -> LaurentPolynomial:
        return self.variables[self.matrix.row_index(label)]

    @property
    def cluster(self) -> tuple:
        return tuple(self[k] for k in self.matrix.mutable)

    @property
    def frozen_variables(self) -> tuple:
        return tuple(self[r] for r in self.matrix.frozen)

    def cluster_key(self) -> frozenset:
        """Unordered set of cluster variables, used to identify unlabeled seeds."""
        return frozenset(self.cluster)

    def mutate(self, k: Label) -> "Seed":
        return mutate_seed(self, k)

    def mutate_sequence(self, ks: Sequence[Label]) -> "Seed":
        return mutate_sequence(self, ks)

    def to_dict(self, row_order: Sequence[Label] | None = None) -> dict:
        from .io import seed_to_dict

        return seed_to_dict(self, row_order)


def formal_seed(M: ExtendedExchangeMatrix, prefix: str = "x") -> Seed:
    """Seed whose variables are fresh symbols ``{prefix}{label}`` sharing one registry."""
    return Seed(M, symbols([f"{prefix}{r}" for r in M.row_labels]))


def exchange_monomials(S: Seed, k: Label) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """``(prod_{b_ik>0} x_i^b_ik, prod_{b_ik<0} x_i^-b_ik)`` for column ``k``."""
    c = S.matrix.col_index(k)
    pos = neg = None
    for x, b in zip(S.variables, S.matrix.entries[:, c]):
        b = int(b)
        if b > 0:
            pos = x**b if pos is None else pos * x**b
        elif b < 0:
            neg = x ** (-b) if neg is None else neg * x ** (-b)
    ref = S.variables[S.matrix.row_index(k)]
    one = LaurentPolynomial.constant(1, ref.variables)
    return (one if pos is None else pos), (one if neg is None else neg)


def mutate_seed(S: Seed, k: Label) -> Seed:
    """Mutate matrix and cluster variable ``k``; other variables are kept."""
    M = mutate_matrix(S.matrix, k)
    pos, neg = exchange_monomials(S, k)
    idx = S.matrix.row_index(k)
    try:
        new = exact_divide(pos + neg, S.variables[idx])
    except NotDivisibleError as exc:
        raise MutationError(f"exchange relation at {k!r} has no Laurent solution: {exc}") from None
    variables = S.variables[:idx] + (new,) + S.variables[idx + 1 :]
    return Seed(M, variables)


def mutate_sequence(S: Seed, ks: Sequence[Label]) -> Seed:
    for pos, k in enumerate(ks):
        try:
            S = mutate_seed(S, k)
        except MutationError as exc:
            raise MutationError(f"step {pos} of {tuple(ks)}: {exc}") from None
    return S


# -- exchange graph ------------------------------------------------------------


@dataclass
class ExchangeGraph:
    seeds: list
    edges: set = field(default_factory=set)
    complete: bool = False

    def __len__(self):
        return len(self.seeds)

    def cluster_variables(self) -> set:
        return {x for s in self.seeds for x in s.cluster}

    def node_keys(self) -> set:
        return {s.cluster_key() for s in self.seeds}


def _neighbours(seed: Seed) -> list[tuple[Label, Seed]]:
    return [(k, mutate_seed(seed, k)) for k in seed.matrix.mutable]


def enumerate_exchange_graph(S: Seed, max_seeds: int, workers: int | None = None) -> ExchangeGraph:
    """Breadth-first closure of ``S`` under mutation, up to ``max_seeds`` unlabeled seeds.

    Nodes are identified by their unordered cluster.  ``workers > 1``
    mutates each frontier level on a thread pool; merging stays sequential
    in frontier order, so the node set and numbering are identical to the
    single-threaded run.
    """
    if max_seeds < 1:
        raise ValueError("max_seeds must be >= 1")
    index = {S.cluster_key(): 0}
    graph = ExchangeGraph(seeds=[S])
    frontier = [0]
    pool = ThreadPoolExecutor(workers) if workers and workers > 1 else None
    try:
        while frontier:
            nodes = [graph.seeds[i] for i in frontier]
            results = list(pool.map(_neighbours, nodes)) if pool else [_neighbours(s) for s in nodes]
            nxt = []
            for src, nbrs in zip(frontier, results):
                for k, t in nbrs:
                    key = t.cluster_key()
                    if key not in index:
                        if len(graph.seeds) >= max_seeds:
                            return graph
                        index[key] = len(graph.seeds)
                        graph.seeds.append(t)
                        nxt.append(index[key])
                    a, b = sorted((src, index[key]))
                    graph.edges.add((a, b))
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    graph.complete = True
    return graph


# -- Laurent phenomenon ------------------------------------------------------------


@dataclass
class LaurentReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def all_walks(labels: Sequence[Label], depth: int, backtrack: bool = False) -> list[tuple]:
    """Every mutation sequence of length ``<= depth``.

    Immediate repeats ``(..., k, k)`` are skipped unless ``backtrack``
    since they undo the previous step.
    """
    walks: list[tuple] = [()]
    level: list[tuple] = [()]
    for _ in range(depth):
        level = [w + (k,) for w in level for k in labels if backtrack or not w or w[-1] != k]
        walks.extend(level)
    return walks


def random_walks(
    labels: Sequence[Label], depth: int, count: int, rng: random.Random | int | None = None
) -> list[tuple]:
    """``count`` random sequences of length ``depth`` without immediate repeats."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    out = []
    labels = list(labels)
    for _ in range(count):
        w: list = []
        for _ in range(depth):
            choices = [k for k in labels if not w or k != w[-1]] or labels
            w.append(rng.choice(choices))
        out.append(tuple(w))
    return out


def check_laurent(S: Seed, walks: Iterable[Sequence[Label]]) -> LaurentReport:
    """Check that every variable met along ``walks`` is Laurent in the initial cluster.

    The seed is first replaced by a formal copy (one fresh symbol per
    row).  A variable passes when mutation succeeded and only mutable
    initial symbols carry negative exponents.
    """
    F = formal_seed(S.matrix)
    mutable_syms = {f"x{k}" for k in F.matrix.mutable}
    report = LaurentReport()
    cache: dict[tuple, Seed] = {(): F}
    for walk in walks:
        walk = tuple(walk)
        start = max((i for i in range(len(walk) + 1) if walk[:i] in cache), default=0)
        cur = cache[walk[:start]]
        for i in range(start, len(walk)):
            k = walk[i]
            try:
                cur = mutate_seed(cur, k)
            except MutationError as exc:
                report.violations.append(f"walk {walk} step {i}: {exc}")
                break
            cache[walk[: i + 1]] = cur
            x = cur[k]
            report.checked += 1
            bad = [v for v, e in x.min_exponents().items() if e < 0 and v not in mutable_syms]
            if bad:
                report.violations.append(
                    f"walk {walk} step {i}: variable {k} has non-mutable variables {bad} in the denominator"
                )
    return report


# -- grading ------------------------------------------------------------------------


def _matrix_of(S) -> ExtendedExchangeMatrix:
    return S.matrix if isinstance(S, Seed) else S


def column_degree_defect(S, degrees: Sequence[Sequence[int]]) -> dict:
    """``sum_i b_ik deg_i`` for every mutable ``k``; all zero iff the seed is graded."""
    M = _matrix_of(S)
    D = np.asarray(degrees, dtype=np.int64)
    if D.shape[0] != len(M.row_labels):
        raise ValueError(f"{D.shape[0]} degrees for {len(M.row_labels)} rows")
    out = M.entries.T @ D
    return {k: tuple(int(v) for v in row) for k, row in zip(M.mutable, out)}


def propagate_degrees(S, degrees: Sequence[Sequence[int]], k: Label) -> tuple:
    """Degrees after mutating at ``k``.

    ``deg x'_k = -deg x_k + max(deg M_k, deg L_k)`` componentwise, where
    ``M_k, L_k`` are the two exchange monomials.  On a graded column both
    monomials have the same degree; the maximum keeps the rule involutive
    on ungraded columns too.
    """
    M = _matrix_of(S)
    D = np.asarray(degrees, dtype=np.int64)
    col = M.entries[:, M.col_index(k)]
    r = M.row_index(k)
    new = -D[r] + np.maximum(np.clip(col, 0, None) @ D, np.clip(-col, 0, None) @ D)
    out = [tuple(int(v) for v in row) for row in D]
    out[r] = tuple(int(v) for v in new)
    return tuple(out)
