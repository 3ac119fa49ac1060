"""JSON spec files and deterministic seed serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from .cartan import DynkinType
from .cluster import ExtendedExchangeMatrix, Seed
from .lift import LiftConvention, LiftedSeed
from .schubert import CellSpec, variable_labels

__all__ = [
    "SPEC_SCHEMA",
    "SEED_SCHEMA",
    "LIFTED_SCHEMA",
    "SpecFile",
    "SpecError",
    "parse_spec",
    "load_spec",
    "matrix_to_dict",
    "seed_to_dict",
    "lifted_to_dict",
    "dumps",
    "load_fixture",
    "fixture_path",
]

SPEC_SCHEMA = "flagcluster/spec@1"
SEED_SCHEMA = "flagcluster/seed@1"
LIFTED_SCHEMA = "flagcluster/lifted-seed@1"


class SpecError(ValueError):
    """Malformed or invalid spec file."""


@dataclass(frozen=True)
class SpecFile:
    cell: CellSpec
    convention: LiftConvention = LiftConvention.HOMOGENEOUS
    degrees: tuple | None = None
    realization: str | None = None


def parse_spec(data: dict) -> SpecFile:
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    schema = data.get("schema", SPEC_SCHEMA)
    if schema != SPEC_SCHEMA:
        raise SpecError(f"unsupported schema {schema!r}, expected {SPEC_SCHEMA!r}")
    unknown = set(data) - {"schema", "type", "word", "J", "convention", "degrees", "realization"}
    if unknown:
        raise SpecError(f"unknown spec fields {sorted(unknown)}")
    try:
        t = data["type"]
        dtype = DynkinType(t["series"], int(t["rank"])) if isinstance(t, dict) else DynkinType.parse(str(t))
        word = [int(i) for i in data["word"]]
        J = [int(j) for j in data["J"]]
        cell = CellSpec(dtype, tuple(word), frozenset(J))
        conv = LiftConvention(data.get("convention", "homogeneous"))
    except KeyError as exc:
        raise SpecError(f"missing spec field {exc}") from None
    except (TypeError, ValueError, IndexError) as exc:
        raise SpecError(str(exc)) from None
    degrees = data.get("degrees")
    if degrees is not None:
        if len(degrees) != len(word):
            raise SpecError(f"{len(degrees)} degrees for a word of length {len(word)}")
        if any(len(d) != dtype.rank for d in degrees):
            raise SpecError(f"every degree must have {dtype.rank} coordinates")
        degrees = tuple(tuple(int(v) for v in d) for d in degrees)
    realization = data.get("realization")
    if realization not in (None, "typeA"):
        raise SpecError(f"unknown realization {realization!r}")
    if realization == "typeA" and dtype.series != "A":
        raise SpecError("realization typeA needs a type A spec")
    return SpecFile(cell, conv, degrees, realization)


def load_spec(path: str | Path) -> SpecFile:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from None
    return parse_spec(data)


def _label(r):
    return int(r) if isinstance(r, int) else str(r)


def matrix_to_dict(M: ExtendedExchangeMatrix, row_order: Sequence | None = None) -> dict:
    M = M if row_order is None else M.reordered(row_order)
    return {
        "rows": [_label(r) for r in M.row_labels],
        "mutable": [_label(k) for k in M.mutable],
        "matrix": M.entries.tolist(),
    }


def seed_to_dict(S: Seed, row_order: Sequence | None = None) -> dict:
    order = tuple(S.matrix.row_labels if row_order is None else row_order)
    out = {"schema": SEED_SCHEMA}
    out.update(matrix_to_dict(S.matrix, order))
    out["variables"] = [str(S[r]) for r in order]
    return out


def lifted_to_dict(L: LiftedSeed, row_order: Sequence | None = None) -> dict:
    order = tuple(L.matrix.row_labels if row_order is None else row_order)
    deg = dict(zip(L.matrix.row_labels, L.degrees))
    out = {"schema": LIFTED_SCHEMA, "J": list(L.J), "convention": L.convention.value}
    out.update(matrix_to_dict(L.matrix, order))
    out["variables"] = [str(L.seed[r]) for r in order]
    out["degrees"] = [list(deg[r]) for r in order]
    return out


def labels_to_list(cell: CellSpec) -> list[dict]:
    return [
        {
            "position": k,
            "weight_index": lab.weight_index,
            "prefix": list(lab.prefix),
            "resolved_weight": list(lab.resolved_weight),
            "frozen": lab.frozen,
        }
        for k, lab in enumerate(variable_labels(cell), start=1)
    ]


def _render(obj, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_render(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(isinstance(x, (int, float, bool)) or x is None for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _render(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON with two-space indentation; number rows stay on one line."""
    return _render(obj, 0) + "\n"


def fixture_path(name: str):
    return resources.files("flagcluster") / "data" / name


def load_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())
