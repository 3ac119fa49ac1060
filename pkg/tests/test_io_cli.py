import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagcluster.cli import main
from flagcluster.fixtures import write_fixture_files
from flagcluster.io import SpecError, dumps, fixture_path, load_fixture, parse_spec

from test_schubert import B3_REFERENCE

FIXTURES = [
    "b3_seed.json",
    "b3_lifted_paper.json",
    "b3_lifted_homogeneous.json",
    "sl3_seed.json",
    "sl3_lifted_paper.json",
    "sl3_lifted_homogeneous.json",
    "sl4_seed.json",
    "sl4_lifted_paper.json",
    "sl4_lifted_homogeneous.json",
]

B3 = {"type": "B3", "word": [3, 2, 1, 3, 2, 3], "J": [3], "convention": "paper",
      "degrees": [[0, 0, 1], [0, 0, 0], [0, 0, 0], [0, 0, 1], [0, 0, 0], [0, 0, 1]]}
SL3 = {"schema": "flagcluster/spec@1", "type": {"series": "A", "rank": 2}, "word": [1, 2, 1], "J": [1, 2],
       "realization": "typeA"}


@pytest.fixture
def spec_file(tmp_path):
    def write(data, name="spec.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(p)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shipped_fixtures_regenerate_identically(tmp_path):
    written = write_fixture_files(tmp_path)
    assert sorted(p.name for p in written) == sorted(FIXTURES)
    for p in written:
        assert p.read_text() == fixture_path(p.name).read_text(), p.name


def test_b3_fixture_contents():
    d = load_fixture("b3_lifted_paper.json")
    assert d["rows"] == [1, 2, 4, 3, 5, 6, "J3"]
    assert d["matrix"] == B3_REFERENCE + [[-1, 0, 0]]
    assert d["schema"] == "flagcluster/lifted-seed@1"


def test_example_b3_matches_golden(capsys):
    from pathlib import Path

    code, out, _ = run(["example", "b3"], capsys)
    assert code == 0
    assert out == (Path(__file__).parent / "golden" / "example_b3.txt").read_text()


def test_golden_matrix_is_the_reference_matrix():
    from pathlib import Path

    text = (Path(__file__).parent / "golden" / "example_b3.txt").read_text()
    rows = [line.split("|")[0].split() for line in text.splitlines() if "|" in line]
    rows = [[int(v) for v in r] for r in rows]
    assert rows[:6] == B3_REFERENCE
    assert rows[6:] == B3_REFERENCE + [[-1, 0, 0]]


def test_schubert_command(spec_file, capsys):
    path = spec_file(B3)
    code, out, _ = run(["schubert", path, "--paper-order", "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["matrix"] == B3_REFERENCE
    assert [lab["frozen"] for lab in d["labels"]] == [False, False, True, False, True, True]


def test_lift_command_both_conventions(spec_file, capsys):
    path = spec_file(B3)
    _, out, _ = run(["lift", path, "--paper-order", "--format", "json"], capsys)
    assert json.loads(out)["matrix"][-1] == [-1, 0, 0]
    _, out, _ = run(["lift", path, "--convention", "homogeneous", "--format", "json"], capsys)
    assert json.loads(out)["matrix"][-1] == [1, 0, 0]


def test_mutate_twice_is_identity(spec_file, capsys):
    for data in (B3, SL3):
        path = spec_file(data)
        _, a, _ = run(["mutate", path, "--seq", "1,1"], capsys)
        _, b, _ = run(["mutate", path, "--seq", ""], capsys)
        assert a == b
        _, a, _ = run(["mutate", path, "--lifted", "--seq", "1,1"], capsys)
        _, b, _ = run(["mutate", path, "--lifted"], capsys)
        assert a == b


def test_mutate_sl3(spec_file, capsys):
    code, out, _ = run(["mutate", spec_file(SL3), "--seq", "1"], capsys)
    assert code == 0
    assert json.loads(out)["variables"][0] == "n23"


def test_explore(spec_file, capsys):
    code, out, _ = run(["explore", spec_file(B3), "--max", "500", "--workers", "2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["complete"]
    _, out2, _ = run(["explore", spec_file(B3), "--max", "500"], capsys)
    assert out == out2


@pytest.mark.parametrize(
    "data, suite, extra, expected",
    [
        (SL3, "oracle", [], 0),
        (SL3, "lifted", [], 0),
        (SL3, "lifted", ["--convention", "paper"], 1),
        (B3, "laurent", ["--depth", "3"], 0),
        (B3, "involution", ["--walks", "5"], 0),
        (B3, "grading", ["--walks", "5"], 0),
        (B3, "oracle", [], 2),
    ],
)
def test_verify_exit_codes(spec_file, capsys, data, suite, extra, expected):
    code, out, _ = run(["verify", spec_file(data), "--suite", suite] + extra, capsys)
    assert code == expected
    if expected != 2:
        assert json.loads(out)["ok"] == (expected == 0)


@pytest.mark.parametrize(
    "content",
    [
        "not json",
        {"type": "B3", "word": [3, 3], "J": [3]},
        {"type": "B3", "word": [3, 2], "J": []},
        {"type": "Q3", "word": [1], "J": [1]},
        {"type": "A2", "word": [1], "J": [1], "degrees": [[1, 0], [0, 1]]},
        {"type": "A2", "word": [1], "J": [1], "colour": "red"},
        {"type": "A2", "J": [1]},
        {"schema": "other@2", "type": "A2", "word": [1], "J": [1]},
        {"type": "B2", "word": [1], "J": [1], "realization": "typeA"},
    ],
)
def test_malformed_specs_exit_2(spec_file, capsys, content):
    code, out, err = run(["schubert", spec_file(content)], capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("flagcluster: error:")


def test_input_errors_exit_2(spec_file, capsys):
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["example", "e8"], capsys)[0] == 2
    assert run(["mutate", spec_file(B3), "--seq", "3"], capsys)[0] == 2
    assert run(["mutate", spec_file(B3), "--seq", "a,b"], capsys)[0] == 2
    assert run(["explore", spec_file(B3), "--max", "0"], capsys)[0] == 2
    assert run(["schubert", "/nonexistent/spec.json"], capsys)[0] == 2
    no_degrees = {k: v for k, v in B3.items() if k != "degrees"}
    assert run(["lift", spec_file(no_degrees)], capsys)[0] == 2


def test_non_reduced_word_names_the_precondition(spec_file, capsys):
    _, _, err = run(["schubert", spec_file({"type": "A2", "word": [1, 1], "J": [1]})], capsys)
    assert "not reduced" in err


def test_parse_spec_defaults():
    s = parse_spec({"type": "A2", "word": [1, 2, 1], "J": [1, 2]})
    assert s.convention.value == "homogeneous" and s.degrees is None and s.realization is None
    with pytest.raises(SpecError):
        parse_spec([1, 2])


def test_output_is_byte_deterministic(spec_file):
    path = spec_file(SL3)
    cmd = [sys.executable, "-m", "flagcluster", "verify", path, "--suite", "lifted"]
    a = subprocess.run(cmd, capture_output=True, env={"PYTHONHASHSEED": "1", "PATH": ""}, check=False)
    b = subprocess.run(cmd, capture_output=True, env={"PYTHONHASHSEED": "2", "PATH": ""}, check=False)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_verbosity_goes_to_stderr(spec_file):
    path = spec_file(SL3)
    cmd = [sys.executable, "-m", "flagcluster", "verify", path, "--suite", "lifted", "--convention", "paper"]
    r = subprocess.run(cmd, capture_output=True, env={"FLAGCLUSTER_VERBOSITY": "1", "PATH": ""}, check=False)
    assert r.returncode == 1
    assert b"violation" in r.stderr
    assert json.loads(r.stdout)["ok"] is False


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5),
    lambda children: st.lists(children, max_size=4) | st.dictionaries(st.text(max_size=4), children, max_size=4),
    max_leaves=20,
)


@settings(max_examples=100, deadline=None)
@given(json_values)
def test_dumps_round_trips(value):
    text = dumps(value)
    assert text.endswith("\n")
    assert json.loads(text) == value
