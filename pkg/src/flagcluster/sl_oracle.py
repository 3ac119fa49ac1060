"""Type A realization: flag minors, Lusztig coordinates and the degree functions.

Cell functions live in the entries ``n_ab`` (``a < b``) of a generic upper
unitriangular ``n x n`` matrix, named ``n12``, ``n13``, ... (``n1_12`` style
once ``n >= 10``).  Lifted functions live in the entries ``g_ab`` of a
generic ``n x n`` matrix.  Words in ``1..n-1`` act on index sets as
permutations, ``s_i`` swapping ``i`` and ``i + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .cartan import DynkinType, cartan_matrix, fundamental_weight
from .cluster import Seed, exchange_monomials, mutate_seed
from .laurent import LaurentPolynomial, NotDivisibleError, exact_divide, symbols
from .lift import LiftConvention, LiftedSeed, lift_seed, project
from .schubert import CellSpec, build_Bw
from .weyl import require_reduced

__all__ = [
    "SymbolicMatrix",
    "NoDecompositionError",
    "IdentityReport",
    "var_name",
    "unitriangular_matrix",
    "generic_matrix",
    "lusztig_point",
    "permute_indices",
    "flag_minor",
    "generalized_minor",
    "gauss_decompose",
    "sbar",
    "word_sbar",
    "gaussian_minor",
    "e_dagger",
    "a_degree",
    "lambda_of",
    "realize_seed",
    "minor_lifts",
    "realize_lifted_seed",
    "verify_exchange_identities",
    "verify_lifted_identities",
]


def var_name(prefix: str, a: int, b: int, n: int) -> str:
    return f"{prefix}{a}{b}" if n < 10 else f"{prefix}{a}_{b}"


_NAME = re.compile(r"^([a-z]+)(?:(\d+)_(\d+)|(\d)(\d))$")


def _parse_name(name: str):
    m = _NAME.match(name)
    if not m:
        return None
    prefix, a1, b1, a2, b2 = m.groups()
    return (prefix, int(a1), int(b1)) if a1 else (prefix, int(a2), int(b2))


class SymbolicMatrix:
    """Square matrix of Laurent polynomials; indices are 1-based in ``minor``."""

    def __init__(self, rows: Sequence[Sequence[LaurentPolynomial]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    def __getitem__(self, ab: tuple[int, int]) -> LaurentPolynomial:
        a, b = ab
        return self.rows[a - 1][b - 1]

    def __matmul__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in range(1, n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SymbolicMatrix(out)

    def __eq__(self, other):
        return isinstance(other, SymbolicMatrix) and self.rows == other.rows

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> LaurentPolynomial:
        """Determinant of the submatrix on the given (1-based) rows and columns."""
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        sub = [[self.rows[r - 1][c - 1] for c in cols] for r in rows]
        return _det(sub)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def _det(sub: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    k = len(sub)
    if k == 0:
        return LaurentPolynomial.constant(1)

    # expand along successive rows, memoized on the set of used columns
    @lru_cache(maxsize=None)
    def det_from(row: int, used: int) -> LaurentPolynomial:
        if row == k:
            return LaurentPolynomial.constant(1)
        acc = LaurentPolynomial.constant(0)
        sign = 1
        for c in range(k):
            if used >> c & 1:
                continue
            entry = sub[row][c]
            if entry:
                term = entry * det_from(row + 1, used | (1 << c))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return det_from(0, 0)


def unitriangular_matrix(n: int) -> SymbolicMatrix:
    """Generic upper unitriangular matrix with entries ``n_ab``."""
    names = [var_name("n", a, b, n) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    syms = dict(zip(names, symbols(names))) if names else {}
    one = LaurentPolynomial.constant(1, names)
    zero = LaurentPolynomial.constant(0, names)
    rows = []
    for a in range(1, n + 1):
        rows.append(
            [syms[var_name("n", a, b, n)] if b > a else one if a == b else zero for b in range(1, n + 1)]
        )
    return SymbolicMatrix(rows)


def generic_matrix(n: int, prefix: str = "g") -> SymbolicMatrix:
    names = [var_name(prefix, a, b, n) for a in range(1, n + 1) for b in range(1, n + 1)]
    syms = symbols(names)
    return SymbolicMatrix([syms[a * n : (a + 1) * n] for a in range(n)])


def lusztig_point(n: int, word: Sequence[int]) -> SymbolicMatrix:
    """``x_{i_1}(t_1) ... x_{i_m}(t_m)`` with ``x_i(t) = I + t E_{i,i+1}``."""
    word = tuple(word)
    for i in word:
        if not 1 <= i < n:
            raise IndexError(f"letter {i} out of range for SL_{n}")
    names = [f"t{k}" for k in range(1, len(word) + 1)]
    ts = symbols(names) if names else ()
    one = LaurentPolynomial.constant(1, names)
    zero = LaurentPolynomial.constant(0, names)
    rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
    # right-multiplying by I + t E_{i,i+1} adds t * column i to column i+1
    for t, i in zip(ts, word):
        for a in range(n):
            if rows[a][i - 1]:
                rows[a][i] = rows[a][i] + t * rows[a][i - 1]
    return SymbolicMatrix(rows)


def permute_indices(word: Sequence[int], indices) -> tuple[int, ...]:
    """Image of an index set under ``s_{i_1} ... s_{i_m}`` (rightmost first), sorted."""
    out = []
    for x in indices:
        for i in reversed(tuple(word)):
            if x == i:
                x = i + 1
            elif x == i + 1:
                x = i
        out.append(x)
    return tuple(sorted(out))


def flag_minor(g: SymbolicMatrix, cols: Sequence[int]) -> LaurentPolynomial:
    """Minor on rows ``1..len(cols)`` and the given columns."""
    return g.minor(range(1, len(cols) + 1), cols)


def _type_a(n: int):
    return cartan_matrix(DynkinType("A", n - 1))


def generalized_minor(g: SymbolicMatrix, u: Sequence[int], v: Sequence[int], i: int) -> LaurentPolynomial:
    """``Delta_{u w_i, v w_i}(g)`` as the minor on rows ``u{1..i}``, columns ``v{1..i}``."""
    n = g.n
    if not 1 <= i < n:
        raise IndexError(f"weight index {i} out of range for SL_{n}")
    C = _type_a(n)
    require_reduced(C, u)
    require_reduced(C, v)
    base = range(1, i + 1)
    return g.minor(permute_indices(u, base), permute_indices(v, base))


# -- numeric Gaussian decomposition ----------------------------------------------


class NoDecompositionError(ArithmeticError):
    """A leading principal minor vanishes."""


def _fraction_matrix(x) -> np.ndarray:
    a = np.array(x, dtype=object)
    return np.vectorize(Fraction, otypes=[object])(a)


def gauss_decompose(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact ``x = L D U`` (lower unitriangular, diagonal, upper unitriangular)."""
    a = _fraction_matrix(x)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    L = _fraction_matrix(np.eye(n, dtype=int))
    U = _fraction_matrix(np.eye(n, dtype=int))
    D = _fraction_matrix(np.zeros((n, n), dtype=int))
    work = a.copy()
    for k in range(n):
        piv = work[k, k]
        if piv == 0:
            raise NoDecompositionError(f"leading principal minor of order {k + 1} vanishes")
        D[k, k] = piv
        for i in range(k + 1, n):
            L[i, k] = work[i, k] / piv
        for j in range(k + 1, n):
            U[k, j] = work[k, j] / piv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i, j] -= L[i, k] * piv * U[k, j]
    return L, D, U


def sbar(n: int, i: int, literal: bool = False) -> np.ndarray:
    """Weyl group representative ``exp(f_i) exp(-e_i) exp(f_i)``.

    ``literal=True`` gives ``exp(f_i) exp(e_i) exp(f_i)``, which is not a
    monomial matrix and is kept only to document that fact.
    """
    E = np.zeros((n, n), dtype=int)
    E[i - 1, i] = 1
    F = E.T.copy()
    one = np.eye(n, dtype=int)
    sign = 1 if literal else -1
    return _fraction_matrix((one + F) @ (one + sign * E) @ (one + F))


def word_sbar(n: int, word: Sequence[int], literal: bool = False) -> np.ndarray:
    out = _fraction_matrix(np.eye(n, dtype=int))
    for i in word:
        out = out @ sbar(n, i, literal)
    return out


def _inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    work = np.hstack([a.copy(), _fraction_matrix(np.eye(n, dtype=int))])
    for c in range(n):
        p = next(r for r in range(c, n) if work[r, c] != 0)
        work[[c, p]] = work[[p, c]]
        work[c] = work[c] / work[c, c]
        for r in range(n):
            if r != c and work[r, c] != 0:
                work[r] = work[r] - work[r, c] * work[c]
    return work[:, n:]


def gaussian_minor(x, u: Sequence[int], v: Sequence[int], i: int, literal: bool = False) -> Fraction:
    """``[ubar^{-1} x vbar]_0^{w_i}``: product of the first ``i`` pivots."""
    x = _fraction_matrix(x)
    n = x.shape[0]
    y = _inverse(word_sbar(n, u, literal)) @ x @ word_sbar(n, v, literal)
    _, D, _ = gauss_decompose(y)
    out = Fraction(1)
    for k in range(i):
        out *= D[k, k]
    return out


# -- the derivations e_j^dagger and degrees ------------------------------------------


def e_dagger(j: int, f: LaurentPolynomial) -> LaurentPolynomial:
    """Right action of ``e_j``: ``sum_b n_{j+1,b} d f / d n_{j,b}`` (``n_{j+1,j+1} = 1``)."""
    if j < 1:
        raise IndexError(f"index {j} out of range")
    out = LaurentPolynomial.constant(0, f.variables)
    for name in f.occurring_variables():
        parsed = _parse_name(name)
        if parsed is None or parsed[0] != "n" or parsed[1] != j:
            continue
        b = parsed[2]
        if b == j + 1:
            coeff = 1
        else:
            nxt = f"n{j + 1}_{b}" if "_" in name else f"n{j + 1}{b}"
            coeff = LaurentPolynomial.variable(nxt)
        out = out + f.diff(name) * coeff
    return out


def a_degree(j: int, f: LaurentPolynomial) -> int:
    """Largest ``s`` with ``(e_j^dagger)^s f != 0``."""
    if f.is_zero():
        raise ValueError("a_degree is undefined for the zero function")
    s = 0
    g = e_dagger(j, f)
    while not g.is_zero():
        s += 1
        g = e_dagger(j, g)
    return s


def lambda_of(f: LaurentPolynomial, J, rank: int) -> tuple[int, ...]:
    """Minimal lift degree ``sum_{j in J} a_j(f) w_j`` as a weight vector."""
    J = set(J)
    return tuple(a_degree(j, f) if j in J else 0 for j in range(1, rank + 1))


# -- realized seeds -------------------------------------------------------------------


def _require_type_a(spec: CellSpec) -> int:
    if spec.type.series != "A":
        raise ValueError(f"type-A realization requested for {spec.type}")
    return spec.type.rank + 1


def realize_seed(spec: CellSpec, coordinates: str = "unipotent") -> Seed:
    """Cell seed whose variables are flag minors ``Delta(w_{i_k}, w_{<=k} w_{i_k})``.

    ``coordinates`` is ``"unipotent"`` (entries ``n_ab``) or ``"lusztig"``
    (parameters ``t_k`` of the word).
    """
    n = _require_type_a(spec)
    if coordinates == "unipotent":
        g = unitriangular_matrix(n)
    elif coordinates == "lusztig":
        g = lusztig_point(n, spec.word)
    else:
        raise ValueError(f"unknown coordinates {coordinates!r}")
    variables = [
        flag_minor(g, permute_indices(spec.word[:k], range(1, i + 1)))
        for k, i in enumerate(spec.word, start=1)
    ]
    return Seed(build_Bw(spec), variables)


def minor_lifts(spec: CellSpec, S: Seed | None = None):
    """Lift data realizing every cell variable as a minor of a generic matrix.

    Returns ``(degrees, lifts, delta_values, projection)`` for
    :func:`lift_seed`.  Raises ``ValueError`` when some variable's minimal
    lift degree is not its own fundamental weight, since the flag minor is
    then not the minimal lift and an explicit lift must be supplied.
    """
    n = _require_type_a(spec)
    S = S if S is not None else realize_seed(spec)
    rank = spec.type.rank
    g = generic_matrix(n)
    degrees = [lambda_of(x, spec.J, rank) for x in S.variables]
    lifts = {}
    for k, (i, deg) in enumerate(zip(spec.word, degrees), start=1):
        if deg != fundamental_weight(rank, i):
            raise ValueError(
                f"missing lift realization for position {k}: minimal degree {deg} is not w{i}"
            )
        lifts[k] = flag_minor(g, permute_indices(spec.word[:k], range(1, i + 1)))
    delta_values = {j: flag_minor(g, range(1, j + 1)) for j in spec.J}
    u = unitriangular_matrix(n)
    projection = {
        var_name("g", a, b, n): u[a, b] if a < b else (1 if a == b else 0)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
    }
    return degrees, lifts, delta_values, projection


def realize_lifted_seed(spec: CellSpec, conv: LiftConvention | str = LiftConvention.HOMOGENEOUS) -> LiftedSeed:
    S = realize_seed(spec)
    degrees, lifts, deltas, projection = minor_lifts(spec, S)
    return lift_seed(S, degrees, spec.J, conv, lifts=lifts, delta_values=deltas, projection=projection)


# -- identity checks --------------------------------------------------------------------


@dataclass
class IdentityReport:
    columns: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_exchange_identities(S: Seed) -> IdentityReport:
    """Check ``x_k x'_k = M_k + L_k`` with ``x'_k`` a polynomial, for every mutable ``k``."""
    report = IdentityReport()
    for k in S.matrix.mutable:
        pos, neg = exchange_monomials(S, k)
        x = S[k]
        try:
            new = mutate_seed(S, k)[k]
        except NotDivisibleError as exc:
            report.violations.append(f"column {k}: {exc}")
            report.columns.append((k, False, None))
            continue
        ok = x * new == pos + neg and new.is_polynomial()
        report.columns.append((k, ok, new))
        if not ok:
            report.violations.append(f"column {k}: x'_{k} = {new} fails the exchange identity or is not polynomial")
    return report


def verify_lifted_identities(L: LiftedSeed, mutated_lifts: Mapping | None = None) -> IdentityReport:
    """Check every lifted exchange relation as an identity among ambient polynomials.

    ``mutated_lifts`` may give the expected lift of ``x'_k`` per column;
    for the remaining columns the quotient must exist as a polynomial and
    project to the mutated cell variable.
    """
    if not L.realized:
        raise ValueError("missing lift realization: verify_lifted_identities needs explicit lifts")
    mutated_lifts = mutated_lifts or {}
    base = project(L)
    report = IdentityReport()
    for k in L.matrix.mutable:
        pos, neg = exchange_monomials(L.seed, k)
        x = L.seed[k]
        if k in mutated_lifts:
            ok = x * mutated_lifts[k] == pos + neg
            report.columns.append((k, ok, mutated_lifts[k]))
            if not ok:
                report.violations.append(
                    f"column {k}: {x} * ({mutated_lifts[k]}) != {pos} + {neg}"
                )
            continue
        try:
            new = exact_divide(pos + neg, x)
        except NotDivisibleError:
            report.violations.append(f"column {k}: lifted exchange binomial is not divisible by {x}")
            report.columns.append((k, False, None))
            continue
        expected = mutate_seed(base, k)[k]
        projected = project(L.mutate(k))[k]
        ok = new.is_polynomial() and projected == expected
        report.columns.append((k, ok, new))
        if not new.is_polynomial():
            report.violations.append(f"column {k}: lifted quotient {new} is not a polynomial")
        elif projected != expected:
            report.violations.append(f"column {k}: lifted quotient {new} does not project to {expected}")
    return report
