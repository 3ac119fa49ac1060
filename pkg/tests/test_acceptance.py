"""Acceptance criteria 1-10, each timed against its runtime budget.

Every criterion prints one ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

from __future__ import annotations

import functools
import io
import json
import random
import sys
import time
from contextlib import redirect_stdout
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flagcluster.cli import main as cli_main  # noqa: E402
from flagcluster.cluster import (  # noqa: E402
    ExtendedExchangeMatrix,
    all_walks,
    check_laurent,
    enumerate_exchange_graph,
    formal_seed,
    mutate_matrix,
    mutate_seed,
    random_walks,
)
from flagcluster.fixtures import B3_DEGREES, B3_SPEC, SL3_SPEC, SL4_SPEC, b3_lifted, full_flag_spec  # noqa: E402
from flagcluster.laurent import LaurentPolynomial  # noqa: E402
from flagcluster.lift import LiftConvention, lift_seed, verify_commutation  # noqa: E402
from flagcluster.schubert import classify_frozen, schubert_seed  # noqa: E402
from flagcluster.sl_oracle import (  # noqa: E402
    a_degree,
    e_dagger,
    generic_matrix,
    realize_lifted_seed,
    realize_seed,
    unitriangular_matrix,
    verify_exchange_identities,
    verify_lifted_identities,
)

from test_lift import PAPER_EXTRA_ROW, solve_b3_degrees  # noqa: E402
from test_schubert import B3_REFERENCE  # noqa: E402

RESULTS: dict[int, str] = {}


def report(number: int, title: str, budget: float):
    """Decorator: time the check, enforce the budget, print one line."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            detail, ok = "", False
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - t0
                ok = elapsed < budget
                if not ok:
                    detail = f"over budget ({elapsed:.2f}s >= {budget}s)"
            except AssertionError as exc:
                elapsed = time.perf_counter() - t0
                detail = f"assertion failed: {exc}"
            line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s / {budget:g}s]  {detail}"
            RESULTS[number] = line
            _emit(line)
            assert ok, line

        return run

    return wrap


_capture = None


def _emit(line: str) -> None:
    if _capture is not None:
        with _capture.global_and_fixture_disabled():
            print(line, flush=True)
    else:
        print(line, flush=True)


@pytest.fixture(autouse=True)
def _uncaptured(request):
    global _capture
    _capture = request.config.pluginmanager.getplugin("capturemanager")
    yield
    _capture = None


def _cli_json(argv) -> tuple[int, dict]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return code, json.loads(buf.getvalue())


@report(1, "B3 cell matrix and frozen split", 1.0)
def test_criterion_01_b3_matrix(tmp_path):
    path = Path(tmp_path) / "b3_spec.json"
    path.write_text(json.dumps({"type": "B3", "word": list(B3_SPEC.word), "J": [3]}))
    code, out = _cli_json(["schubert", str(path), "--paper-order", "--format", "json"])
    assert code == 0
    assert out["rows"] == [1, 2, 4, 3, 5, 6] and out["mutable"] == [1, 2, 4]
    assert out["matrix"] == B3_REFERENCE
    assert classify_frozen(B3_SPEC.word) == ({1, 2, 4}, {3, 5, 6})
    return "6x3 matrix exact; mutable {1,2,4} frozen {3,5,6}"


@report(2, "B3 lifted extra row (paper convention)", 1.0)
def test_criterion_02_b3_lift():
    solutions = solve_b3_degrees()
    assert solutions == [(1, 0, 0, 1, 0, 1)], solutions
    assert tuple(d[2] for d in B3_DEGREES) == solutions[0]
    L = b3_lifted(LiftConvention.PAPER)
    rows = L.matrix.reordered(L.matrix.display_order())
    assert rows.entries.tolist() == B3_REFERENCE + [PAPER_EXTRA_ROW]
    return "degrees (1,0,0,1,0,1) unique; extra row (-1,0,0)"


def _random_extended(rng: random.Random) -> ExtendedExchangeMatrix:
    m = rng.randint(1, 8)
    n = rng.randint(1, m)
    d = [rng.randint(1, 3) for _ in range(n)]
    b = [[0] * n for _ in range(m)]
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            step_ij, step_ji = d[j] // g, d[i] // g
            cmax = 3 // max(step_ij, step_ji)
            c = rng.randint(-cmax, cmax)
            b[i][j], b[j][i] = c * step_ij, -c * step_ji
    for i in range(n, m):
        b[i] = [rng.randint(-3, 3) for _ in range(n)]
    return ExtendedExchangeMatrix.from_rows(b, n)


@report(3, "mutation involution on 1000 random matrices", 10.0)
def test_criterion_03_involution():
    rng = random.Random(3)
    checked = 0
    for _ in range(1000):
        M = _random_extended(rng)
        assert M.entries.min() >= -3 and M.entries.max() <= 3
        for k in M.mutable:
            assert mutate_matrix(mutate_matrix(M, k), k) == M, (M, k)
            checked += 1
    return f"{checked} (matrix, k) pairs"


@report(4, "Laurent phenomenon, depth <= 6", 60.0)
def test_criterion_04_laurent():
    parts = []
    for series, rank in (("A", 2), ("A", 3), ("B", 2)):
        S = schubert_seed(full_flag_spec(series, rank))
        walks = all_walks(S.matrix.mutable, 6)
        rep = check_laurent(S, walks)
        assert rep.ok, rep.violations[:3]
        parts.append(f"{series}{rank}: {len(walks)} walks, {rep.checked} variables")
    return "; ".join(parts)


@report(5, "pentagon closure", 1.0)
def test_criterion_05_pentagon():
    G = enumerate_exchange_graph(formal_seed(ExtendedExchangeMatrix.from_square([[0, 1], [-1, 0]])), 100)
    assert G.complete and len(G) == 5
    return "5 clusters, complete"


@report(6, "type A oracle", 60.0)
def test_criterion_06_type_a():
    S = realize_seed(SL3_SPEC)
    n12, n13, n23 = (LaurentPolynomial.variable(v) for v in ("n12", "n13", "n23"))
    assert S.variables == (n12, n12 * n23 - n13, n13)
    assert mutate_seed(S, 1)[1] == n23
    cols = 0
    for spec in (SL3_SPEC, full_flag_spec("A", 3), full_flag_spec("A", 4)):
        rep = verify_exchange_identities(realize_seed(spec))
        assert rep.ok, rep.violations
        cols += len(rep.columns)
    return f"A2, A3, A4 longest words: {cols} exchange identities"


@report(7, "SL3 lifted identity and paper-sign negative control", 5.0)
def test_criterion_07_lifted_identity():
    g = generic_matrix(3)
    assert len(g[1, 1].variables) == 9
    expected = {1: g.minor((1, 2), (1, 3))}
    assert g[1, 2] * expected[1] == g[1, 1] * g.minor((1, 2), (2, 3)) + g.minor((1, 2), (1, 2)) * g[1, 3]
    hom = verify_lifted_identities(realize_lifted_seed(SL3_SPEC, LiftConvention.HOMOGENEOUS), expected)
    paper = verify_lifted_identities(realize_lifted_seed(SL3_SPEC, LiftConvention.PAPER), expected)
    assert hom.ok, hom.violations
    assert not paper.ok
    return "holds (homogeneous); violated (paper)"


@report(8, "lift commutes with mutation", 60.0)
def test_criterion_08_commutation():
    S = schubert_seed(B3_SPEC)
    walks = random_walks(S.matrix.mutable, 6, 100, 8)
    for conv in LiftConvention:
        rep = verify_commutation(S, B3_DEGREES, B3_SPEC.J, conv, walks, variables=False)
        assert rep.ok and rep.walks == 100, rep.violations[:3]
    T = realize_seed(SL3_SPEC)
    L = realize_lifted_seed(SL3_SPEC, LiftConvention.HOMOGENEOUS)
    # one mutable column, so repeated steps are the only walks of length > 1
    sl3_walks = all_walks(T.matrix.mutable, 4, backtrack=True)
    rep = verify_commutation(T, None, SL3_SPEC.J, "homogeneous", sl3_walks, lifted=L)
    assert rep.ok, rep.violations
    return f"B3: 100 walks x 2 conventions; SL3: {rep.walks} walks with variables"


@report(9, "grading preserved along mutation", 10.0)
def test_criterion_09_grading():
    fixtures = {
        "B3": lift_seed(schubert_seed(B3_SPEC), B3_DEGREES, B3_SPEC.J, "homogeneous"),
        "SL3": realize_lifted_seed(SL3_SPEC, "homogeneous"),
        "SL4": realize_lifted_seed(SL4_SPEC, "homogeneous"),
    }
    for name, L in fixtures.items():
        assert L.is_graded(), (name, L.column_defects())
        for walk in random_walks(L.matrix.mutable, 6, 100, 9):
            M = L.mutate_sequence(walk, variables=False)
            assert M.is_graded(), (name, walk, M.column_defects())
    return "B3, SL3, SL4: 100 walks each"


def _random_cell_poly(rng: random.Random, n: int) -> LaurentPolynomial:
    u = unitriangular_matrix(n)
    gens = [u[a, b] for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    f = LaurentPolynomial.constant(0, gens[0].variables)
    while f.is_zero():
        for _ in range(rng.randint(1, 3)):
            term = LaurentPolynomial.constant(rng.choice([-2, -1, 1, 2, 3]), gens[0].variables)
            for _ in range(rng.randint(0, 3)):
                term = term * rng.choice(gens)
            f = f + term
    return f


@report(10, "degree additivity and Leibniz rule", 30.0)
def test_criterion_10_degrees():
    rng = random.Random(10)
    for _ in range(200):
        n = rng.choice([3, 4])
        f, g = _random_cell_poly(rng, n), _random_cell_poly(rng, n)
        for j in range(1, n):
            assert a_degree(j, f * g) == a_degree(j, f) + a_degree(j, g), (j, f, g)
            assert e_dagger(j, f * g) == e_dagger(j, f) * g + f * e_dagger(j, g), (j, f, g)
    return "200 pairs in SL3/SL4 cell coordinates"


if __name__ == "__main__":
    import tempfile

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                if name.endswith("b3_matrix"):
                    with tempfile.TemporaryDirectory() as d:
                        fn(d)
                else:
                    fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
