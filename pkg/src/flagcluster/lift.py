"""Lifting a cell seed to a seed on the partial flag variety.

The lifted seed appends one frozen row and one frozen variable
``Delta{j}`` per ``j in J``.  The appended rows are computed from the
degrees ``a_j(x_i)`` of the cell variables:

* ``homogeneous``: ``b_jk = -sum_i b_ik a_j(x_i)``.  Every exchange
  relation of the lifted seed is then homogeneous (zero column defect).
* ``paper``: the entrywise negation, reproducing the reference B3 fixture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .cartan import Weight, fundamental_weight
from .cluster import (
    ExtendedExchangeMatrix,
    MutationError,
    Seed,
    column_degree_defect,
    mutate_matrix,
    mutate_seed,
    propagate_degrees,
)
from .laurent import LaurentPolynomial, exact_divide, substitute, symbols

__all__ = [
    "LiftConvention",
    "LiftedSeed",
    "CommutationReport",
    "lift_matrix",
    "lift_seed",
    "project",
    "verify_commutation",
    "delta_label",
    "substitute_exact",
]


class LiftConvention(str, enum.Enum):
    PAPER = "paper"
    HOMOGENEOUS = "homogeneous"


def delta_label(j: int) -> str:
    return f"J{j}"


def _check_degrees(M: ExtendedExchangeMatrix, degrees, J: Sequence[int]) -> np.ndarray:
    D = np.asarray(degrees, dtype=np.int64)
    if D.ndim != 2 or D.shape[0] != len(M.row_labels):
        raise ValueError(f"need one degree per row ({len(M.row_labels)}), got shape {D.shape}")
    if np.any(D < 0):
        raise ValueError("degrees must be nonnegative combinations of fundamental weights")
    outside = [i for i in range(1, D.shape[1] + 1) if i not in set(J)]
    if outside and np.any(D[:, [i - 1 for i in outside]] != 0):
        raise ValueError(f"degrees must be supported on J={sorted(J)}")
    return D


def _normalize_J(J) -> tuple[int, ...]:
    J = tuple(sorted(int(j) for j in J))
    if not J:
        raise ValueError("J must be nonempty")
    return J


def lift_matrix(
    B: ExtendedExchangeMatrix,
    degrees: Sequence[Sequence[int]],
    J: Sequence[int],
    conv: LiftConvention | str = LiftConvention.HOMOGENEOUS,
) -> ExtendedExchangeMatrix:
    """``B`` with one appended row ``J{j}`` per ``j in J``."""
    conv = LiftConvention(conv)
    J = _normalize_J(J)
    D = _check_degrees(B, degrees, J)
    sums = B.entries.T @ D[:, [j - 1 for j in J]]  # n x |J|
    rows = -sums.T if conv is LiftConvention.HOMOGENEOUS else sums.T
    return B.with_rows([delta_label(j) for j in J], rows)


@dataclass(frozen=True)
class LiftedSeed:
    """A seed on the flag variety together with its projection data.

    ``seed`` holds the full matrix (cell rows then ``J`` rows) and the
    lifted variables.  ``projection`` maps every ambient variable of the
    lifted variables to its image in the cell coordinate ring; applying it
    and deleting the ``J`` rows recovers a cell seed.
    """

    seed: Seed
    J: tuple
    delta_vars: tuple
    degrees: tuple
    projection: Mapping = field(default_factory=dict)
    convention: LiftConvention = LiftConvention.HOMOGENEOUS
    realized: bool = False

    @property
    def matrix(self) -> ExtendedExchangeMatrix:
        return self.seed.matrix

    @property
    def variables(self) -> tuple:
        return self.seed.variables

    @property
    def delta_rows(self) -> tuple:
        return tuple(delta_label(j) for j in self.J)

    @property
    def base_rows(self) -> tuple:
        drop = set(self.delta_rows)
        return tuple(r for r in self.matrix.row_labels if r not in drop)

    @property
    def extra_rows(self) -> np.ndarray:
        idx = [self.matrix.row_index(r) for r in self.delta_rows]
        return self.matrix.entries[idx, :]

    def column_defects(self) -> dict:
        return column_degree_defect(self.matrix, self.degrees)

    def is_graded(self) -> bool:
        return all(not any(v) for v in self.column_defects().values())

    def mutate(self, k) -> "LiftedSeed":
        return replace(
            self,
            seed=mutate_seed(self.seed, k),
            degrees=propagate_degrees(self.matrix, self.degrees, k),
        )

    def mutate_matrix_only(self, k) -> "LiftedSeed":
        """Mutate the matrix and degrees but leave variables untouched."""
        M = mutate_matrix(self.matrix, k)
        return replace(
            self,
            seed=Seed(M, self.seed.variables),
            degrees=propagate_degrees(self.matrix, self.degrees, k),
        )

    def mutate_sequence(self, ks, variables: bool = True) -> "LiftedSeed":
        L = self
        for pos, k in enumerate(ks):
            try:
                L = L.mutate(k) if variables else L.mutate_matrix_only(k)
            except MutationError as exc:
                raise MutationError(f"step {pos} of {tuple(ks)}: {exc}") from None
        return L


def lift_seed(
    S: Seed,
    degrees: Sequence[Sequence[int]],
    J: Sequence[int],
    conv: LiftConvention | str = LiftConvention.HOMOGENEOUS,
    lifts: Mapping | None = None,
    delta_values: Mapping | None = None,
    projection: Mapping | None = None,
) -> LiftedSeed:
    """Lift a cell seed.

    Without ``lifts`` the lifted variables are formal symbols ``X{label}``
    projecting to the cell variables, and ``Delta{j}`` projects to 1.  With
    ``lifts`` (row label -> ambient polynomial), ``delta_values`` (j ->
    ambient polynomial) and ``projection`` (ambient variable -> cell value)
    an explicit realization is used instead.
    """
    conv = LiftConvention(conv)
    J = _normalize_J(J)
    M = lift_matrix(S.matrix, degrees, J, conv)
    rank = len(degrees[0]) if len(degrees) else max(J)
    deg = tuple(tuple(int(v) for v in d) for d in degrees) + tuple(
        fundamental_weight(rank, j) for j in J
    )
    delta_names = tuple(f"Delta{j}" for j in J)
    if lifts is None:
        names = [f"X{r}" for r in S.matrix.row_labels] + list(delta_names)
        syms = symbols(names)
        proj: dict = {f"X{r}": x for r, x in zip(S.matrix.row_labels, S.variables)}
        proj.update({d: 1 for d in delta_names})
        return LiftedSeed(Seed(M, syms), J, delta_names, deg, proj, conv, realized=False)
    if delta_values is None or projection is None:
        raise ValueError("explicit lifts need delta_values and projection")
    missing = [r for r in S.matrix.row_labels if r not in lifts]
    if missing:
        raise ValueError(f"missing lift realization for rows {missing}")
    variables = tuple(lifts[r] for r in S.matrix.row_labels) + tuple(delta_values[j] for j in J)
    return LiftedSeed(Seed(M, variables), J, delta_names, deg, dict(projection), conv, realized=True)


def substitute_exact(f: LaurentPolynomial, bindings: Mapping) -> LaurentPolynomial:
    """Substitute into a Laurent polynomial, clearing its monomial denominator first.

    Unlike :func:`substitute`, bound variables with negative exponents may
    map to non-monomials, provided the image of the denominator divides the
    image of the numerator exactly.
    """
    mins = f.min_exponents()
    den_exp = {v: -e for v, e in mins.items() if e < 0}
    if not den_exp:
        return substitute(f, bindings)
    den = LaurentPolynomial.monomial(den_exp, 1, f.variables)
    num = f * den
    return exact_divide(substitute(num, bindings), substitute(den, bindings))


def project(L: LiftedSeed | Seed, J: Sequence[int] = ()) -> Seed:
    """Delete the ``J`` rows and push every lifted variable down to the cell."""
    if isinstance(L, Seed):
        drop = [delta_label(j) for j in J if delta_label(j) in L.matrix.row_labels]
        return Seed(L.matrix.delete_rows(drop), L.variables) if drop else L
    M = L.matrix.delete_rows(L.delta_rows)
    variables = tuple(substitute_exact(L.seed[r], L.projection) for r in M.row_labels)
    return Seed(M, variables)


@dataclass
class CommutationReport:
    walks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_commutation(
    S: Seed,
    degrees: Sequence[Sequence[int]],
    J: Sequence[int],
    conv: LiftConvention | str,
    walks,
    lifted: LiftedSeed | None = None,
    variables: bool = True,
) -> CommutationReport:
    """Check that lifting commutes with mutation along every walk.

    For each walk, ``project(mu(lift(S)))`` must equal ``mu(S)`` on
    matrices and, if ``variables``, on variables.  Under the homogeneous
    convention the column degree defect must also stay zero.
    """
    conv = LiftConvention(conv)
    L0 = lifted if lifted is not None else lift_seed(S, degrees, J, conv)
    report = CommutationReport()
    lift_cache = {(): L0}
    base_cache = {(): S}
    for walk in walks:
        walk = tuple(walk)
        report.walks += 1
        start = max(i for i in range(len(walk) + 1) if walk[:i] in lift_cache)
        L, T = lift_cache[walk[:start]], base_cache[walk[:start]]
        try:
            for i in range(start, len(walk)):
                k = walk[i]
                if variables:
                    L, T = L.mutate(k), mutate_seed(T, k)
                else:
                    L = L.mutate_matrix_only(k)
                    T = Seed(mutate_matrix(T.matrix, k), T.variables)
                lift_cache[walk[: i + 1]], base_cache[walk[: i + 1]] = L, T
        except MutationError as exc:
            report.violations.append(f"walk {walk}: {exc}")
            continue
        if L.matrix.delete_rows(L.delta_rows) != T.matrix:
            report.violations.append(f"walk {walk}: projected matrix differs")
        if variables:
            P = project(L)
            for r, a, b in zip(T.matrix.row_labels, P.variables, T.variables):
                if a != b:
                    report.violations.append(f"walk {walk}: variable {r} projects to {a}, expected {b}")
        if conv is LiftConvention.HOMOGENEOUS and not L.is_graded():
            report.violations.append(f"walk {walk}: column defects {L.column_defects()}")
    return report
