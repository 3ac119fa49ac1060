import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcluster.cartan import cartan_matrix
from flagcluster.cluster import ExtendedExchangeMatrix, Seed, mutate_seed
from flagcluster.fixtures import SL3_SPEC, SL4_SPEC
from flagcluster.laurent import LaurentPolynomial, symbols
from flagcluster.lift import LiftConvention
from flagcluster.schubert import CellSpec
from flagcluster.sl_oracle import (
    NoDecompositionError,
    a_degree,
    e_dagger,
    gauss_decompose,
    gaussian_minor,
    generalized_minor,
    generic_matrix,
    lambda_of,
    lusztig_point,
    minor_lifts,
    permute_indices,
    realize_lifted_seed,
    realize_seed,
    sbar,
    unitriangular_matrix,
    verify_exchange_identities,
    verify_lifted_identities,
)
from flagcluster.weyl import NotReducedError

from oracles import to_sympy, weyl_lengths, apply_word_to_rho

n12, n13, n23 = (LaurentPolynomial.variable(v) for v in ("n12", "n13", "n23"))
t1, t2, t3 = symbols("t1 t2 t3")


# -- realizations ----------------------------------------------------------------


def test_lusztig_point_sl3():
    x = lusztig_point(3, (1, 2, 1))
    assert x[1, 2] == t1 + t3
    assert x[1, 3] == t1 * t2
    assert x[2, 3] == t2
    assert x[2, 1] == 0 and x[3, 3] == 1


def test_lusztig_point_trivial_cases():
    assert all(lusztig_point(3, ())[a, b] == (1 if a == b else 0) for a in (1, 2, 3) for b in (1, 2, 3))
    assert lusztig_point(2, (1,))[1, 2] == LaurentPolynomial.variable("t1")
    with pytest.raises(IndexError):
        lusztig_point(3, (3,))


def test_generalized_minor_examples():
    x = lusztig_point(3, (1, 2, 1))
    assert generalized_minor(x, (), (1, 2), 2) == t2 * t3
    assert generalized_minor(x, (), (1, 2, 1), 1) == t1 * t2
    g = generic_matrix(3)
    assert generalized_minor(g, (), (), 1) == LaurentPolynomial.variable("g11")
    with pytest.raises(NotReducedError):
        generalized_minor(g, (1, 1), (), 1)


def test_permute_indices():
    assert permute_indices((1, 2), (1,)) == (2,)
    assert permute_indices((2, 1), (1,)) == (3,)
    assert permute_indices((1, 2, 1), (1, 2)) == (2, 3)


def test_realize_seed_sl3():
    S = realize_seed(SL3_SPEC)
    assert S.variables == (n12, n12 * n23 - n13, n13)
    assert S.matrix.entries.tolist() == [[0], [1], [-1]]
    assert mutate_seed(S, 1)[1] == n23
    L = realize_seed(SL3_SPEC, coordinates="lusztig")
    assert L.variables == (t1 + t3, t2 * t3, t1 * t2)


def test_realize_seed_a1_and_errors():
    S = realize_seed(CellSpec("A1", (1,), {1}))
    assert S.variables == (LaurentPolynomial.variable("n12"),)
    assert S.matrix.shape == (1, 0)
    with pytest.raises(ValueError):
        realize_seed(CellSpec("B2", (1, 2), {1}))
    with pytest.raises(ValueError):
        realize_seed(SL3_SPEC, coordinates="polar")


def test_realized_variables_are_irreducible():
    for spec in (SL3_SPEC, SL4_SPEC):
        for x in realize_seed(spec).variables:
            factors = sp.factor_list(to_sympy(x))[1]
            assert len(factors) == 1 and factors[0][1] == 1, x


# -- Gaussian decomposition ------------------------------------------------------


def test_gauss_examples():
    L, D, U = gauss_decompose(np.eye(3, dtype=int))
    assert (L == np.eye(3)).all() and (D == np.eye(3)).all() and (U == np.eye(3)).all()
    L, D, U = gauss_decompose([[1, 1], [1, 2]])
    assert L.tolist() == [[1, 0], [1, 1]]
    assert D.tolist() == [[1, 0], [0, 1]]
    assert U.tolist() == [[1, 1], [0, 1]]
    with pytest.raises(NoDecompositionError):
        gauss_decompose([[0, 1], [1, 0]])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_gauss_multiplies_back(rows):
    try:
        L, D, U = gauss_decompose(rows)
    except NoDecompositionError:
        M = sp.Matrix(rows)
        assert any(M[:k, :k].det() == 0 for k in range(1, M.shape[0] + 1))
        return
    assert (L @ D @ U).tolist() == [[Fraction(v) for v in r] for r in rows]
    n = len(rows)
    assert all(L[i, i] == 1 and U[i, i] == 1 for i in range(n))
    assert all(L[i, j] == 0 and U[j, i] == 0 for i in range(n) for j in range(i + 1, n))


def test_literal_weyl_representative_is_not_monomial():
    assert sbar(2, 1, literal=True).tolist() == [[2, 1], [3, 2]]
    assert sbar(2, 1).tolist() == [[0, -1], [1, 0]]


def test_weyl_representatives_satisfy_braid_relation():
    a, b = sbar(3, 1), sbar(3, 2)
    assert ((a @ b @ a) == (b @ a @ b)).all()


def reduced_words_of(n):
    """One reduced word per element of S_n, found by BFS."""
    C = cartan_matrix(f"A{n - 1}")
    words = {apply_word_to_rho(C, ()): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, n):
                key = apply_word_to_rho(C, w + (i,))
                if key not in words:
                    words[key] = w + (i,)
                    nxt.append(w + (i,))
        frontier = nxt
    assert len(words) == len(weyl_lengths(C))
    return list(words.values())


@pytest.mark.parametrize("n", [3, 4])
def test_index_minor_matches_gaussian_definition_up_to_constant_sign(n):
    rng = random.Random(n)
    words = reduced_words_of(n)
    if n == 4:
        words = rng.sample(words, 10)
    signs = {}
    for u in words:
        for v in words:
            for i in range(1, n):
                for _ in range(3):
                    x = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
                    try:
                        gm = gaussian_minor(x, u, v, i)
                    except NoDecompositionError:
                        continue
                    rows = permute_indices(u, range(1, i + 1))
                    cols = permute_indices(v, range(1, i + 1))
                    M = sp.Matrix(x)
                    ref = M.extract([r - 1 for r in rows], [c - 1 for c in cols]).det()
                    if ref == 0:
                        assert gm == 0
                        continue
                    ratio = sp.Rational(gm.numerator, gm.denominator) / ref
                    assert ratio in (1, -1)
                    assert signs.setdefault((u, v, i), ratio) == ratio
    assert signs
    # the identity elements need no sign at all
    assert signs[((), (), 1)] == 1


# -- degrees -------------------------------------------------------------------


def test_e_dagger_examples():
    assert e_dagger(1, n12) == 1
    assert e_dagger(1, n12 * n23 - n13) == 0
    assert e_dagger(2, n13) == 0
    assert e_dagger(2, n12 * n23 - n13) == n12


def test_a_degree_examples():
    assert (a_degree(1, n12), a_degree(2, n12)) == (1, 0)
    f = n12 * n23 - n13
    assert (a_degree(1, f), a_degree(2, f)) == (0, 1)
    one = LaurentPolynomial.constant(1)
    assert a_degree(1, one) == a_degree(2, one) == 0
    with pytest.raises(ValueError):
        a_degree(1, n12 - n12)


def test_lambda_on_sl3_fixture():
    S = realize_seed(SL3_SPEC)
    assert [lambda_of(x, {1, 2}, 2) for x in S.variables] == [(1, 0), (0, 1), (1, 0)]
    assert lambda_of(mutate_seed(S, 1)[1], {1, 2}, 2) == (0, 1)
    assert lambda_of(n12, {2}, 2) == (0, 0)


def cell_polys(n):
    u = unitriangular_matrix(n)
    gens = [u[a, b] for a in range(1, n + 1) for b in range(a + 1, n + 1)]

    @st.composite
    def strat(draw):
        out = LaurentPolynomial.constant(0, gens[0].variables)
        for _ in range(draw(st.integers(1, 3))):
            term = LaurentPolynomial.constant(draw(st.integers(-3, 3).filter(bool)), gens[0].variables)
            for g in draw(st.lists(st.sampled_from(gens), max_size=3)):
                term = term * g
            out = out + term
        if out.is_zero():
            out = gens[0]
        return out

    return strat()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4]).flatmap(lambda n: st.tuples(st.just(n), cell_polys(n), cell_polys(n))))
def test_e_dagger_is_a_derivation(args):
    n, f, g = args
    for j in range(1, n):
        assert e_dagger(j, f * g) == e_dagger(j, f) * g + f * e_dagger(j, g)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4]).flatmap(lambda n: st.tuples(st.just(n), cell_polys(n), cell_polys(n))))
def test_degree_additivity(args):
    n, f, g = args
    for j in range(1, n):
        assert a_degree(j, f * g) == a_degree(j, f) + a_degree(j, g)


# -- identities ----------------------------------------------------------------


def test_exchange_identities_hold():
    for spec in (SL3_SPEC, SL4_SPEC):
        rep = verify_exchange_identities(realize_seed(spec))
        assert rep.ok, rep.violations
        assert len(rep.columns) == len(realize_seed(spec).matrix.mutable)


def test_corrupted_matrix_is_reported():
    S = realize_seed(SL4_SPEC)
    entries = S.matrix.entries.copy()
    frozen_row = S.matrix.row_index(S.matrix.frozen[0])
    entries[frozen_row, 0] += 1
    bad = Seed(ExtendedExchangeMatrix(entries, S.matrix.row_labels, S.matrix.mutable), S.variables)
    rep = verify_exchange_identities(bad)
    assert not rep.ok
    assert rep.columns[0][1] is False


def test_sl3_plucker_identity():
    g = generic_matrix(3)
    lhs = g[1, 2] * g.minor((1, 2), (1, 3))
    rhs = g[1, 1] * g.minor((1, 2), (2, 3)) + g.minor((1, 2), (1, 2)) * g[1, 3]
    assert lhs == rhs


def test_lifted_identity_sl3():
    L = realize_lifted_seed(SL3_SPEC, LiftConvention.HOMOGENEOUS)
    g = generic_matrix(3)
    assert L.variables == (g[1, 2], g.minor((1, 2), (2, 3)), g[1, 3], g[1, 1], g.minor((1, 2), (1, 2)))
    rep = verify_lifted_identities(L, mutated_lifts={1: g.minor((1, 2), (1, 3))})
    assert rep.ok, rep.violations
    assert verify_lifted_identities(L).ok


def test_lifted_identity_fails_under_paper_convention():
    L = realize_lifted_seed(SL3_SPEC, LiftConvention.PAPER)
    g = generic_matrix(3)
    rep = verify_lifted_identities(L, mutated_lifts={1: g.minor((1, 2), (1, 3))})
    assert not rep.ok
    assert not verify_lifted_identities(L).ok


def test_lifted_identities_sl4():
    assert verify_lifted_identities(realize_lifted_seed(SL4_SPEC)).ok


def test_missing_lift_realization():
    with pytest.raises(ValueError, match="missing lift realization"):
        minor_lifts(CellSpec("A2", (1, 2, 1), {1}))
    from flagcluster.fixtures import b3_lifted

    with pytest.raises(ValueError, match="missing lift realization"):
        verify_lifted_identities(b3_lifted("homogeneous"))


def test_propagated_degree_matches_minimal_degree():
    L = realize_lifted_seed(SL3_SPEC, LiftConvention.HOMOGENEOUS).mutate(1)
    assert L.degrees[0] == lambda_of(n23, {1, 2}, 2)
    # the paper convention gives an inhomogeneous binomial with no minimal-degree meaning
    P = realize_lifted_seed(SL3_SPEC, LiftConvention.PAPER).mutate(1)
    assert P.degrees[0] != lambda_of(n23, {1, 2}, 2)
