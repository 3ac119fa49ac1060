"""Named cells used throughout the tests, demos and the CLI."""

from __future__ import annotations

from .cartan import DynkinType, cartan_matrix
from .lift import LiftConvention, lift_seed
from .schubert import CellSpec, schubert_seed
from .weyl import longest_word

__all__ = [
    "B3_SPEC",
    "B3_DEGREES",
    "SL3_SPEC",
    "SL4_SPEC",
    "full_flag_spec",
    "b3_lifted",
    "write_fixture_files",
]

# B3, J = {3}: the tail of w0 = s1 s2 s1 s3 s2 s1 s3 s2 s3
B3_SPEC = CellSpec(DynkinType("B", 3), (3, 2, 1, 3, 2, 3), frozenset({3}))

# a_3 of the six cell variables; the unique nonnegative solution making the
# reference extra row (-1, 0, 0) a degree balance (see tests/test_lift.py)
B3_DEGREES = tuple((0, 0, a) for a in (1, 0, 0, 1, 0, 1))

SL3_SPEC = CellSpec(DynkinType("A", 2), (1, 2, 1), frozenset({1, 2}))
SL4_SPEC = CellSpec(DynkinType("A", 3), (1, 2, 1, 3, 2, 1), frozenset({1, 2, 3}))


def full_flag_spec(series: str, rank: int) -> CellSpec:
    """Longest element of the type, ``J = I``."""
    dtype = DynkinType(series, rank)
    return CellSpec(dtype, longest_word(cartan_matrix(dtype)), frozenset(range(1, rank + 1)))


def b3_lifted(conv: LiftConvention | str = LiftConvention.PAPER):
    return lift_seed(schubert_seed(B3_SPEC), B3_DEGREES, B3_SPEC.J, conv)


def write_fixture_files(directory) -> list:
    """Regenerate the JSON fixtures shipped in ``flagcluster/data``."""
    from pathlib import Path

    from .io import dumps, labels_to_list, lifted_to_dict, seed_to_dict
    from .sl_oracle import realize_lifted_seed, realize_seed

    directory = Path(directory)
    written = []

    def put(name, obj):
        path = directory / name
        path.write_text(dumps(obj))
        written.append(path)

    b3 = schubert_seed(B3_SPEC)
    put("b3_seed.json", {**seed_to_dict(b3, b3.matrix.display_order()), "labels": labels_to_list(B3_SPEC)})
    for conv in LiftConvention:
        L = b3_lifted(conv)
        order = L.matrix.display_order()
        put(f"b3_lifted_{conv.value}.json", lifted_to_dict(L, order))
    for name, spec in (("sl3", SL3_SPEC), ("sl4", SL4_SPEC)):
        put(f"{name}_seed.json", {**seed_to_dict(realize_seed(spec)), "labels": labels_to_list(spec)})
        for conv in LiftConvention:
            put(f"{name}_lifted_{conv.value}.json", lifted_to_dict(realize_lifted_seed(spec, conv)))
    return written
