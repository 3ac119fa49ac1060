"""Command-line front end.

Exit codes: 0 success / no violations, 1 violations found, 2 bad input.
Set ``FLAGCLUSTER_VERBOSITY`` (0-2) for diagnostics on stderr; stdout is
byte-deterministic for a fixed spec and flags.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .cluster import (
    MutationError,
    Seed,
    all_walks,
    check_laurent,
    enumerate_exchange_graph,
    mutate_seed,
    mutate_sequence,
    random_walks,
)
from .fixtures import B3_DEGREES, B3_SPEC
from .io import SpecError, SpecFile, dumps, labels_to_list, lifted_to_dict, load_spec, matrix_to_dict, seed_to_dict
from .lift import LiftConvention, lift_seed, verify_commutation
from .schubert import build_Bw, classify_frozen, schubert_seed, variable_labels
from .weyl import NotReducedError

log = logging.getLogger("flagcluster")

SUITES = ("laurent", "involution", "grading", "oracle", "lifted")


class InputError(Exception):
    pass


def _configure_logging() -> None:
    try:
        level = int(os.environ.get("FLAGCLUSTER_VERBOSITY", "0"))
    except ValueError:
        level = 0
    logging.basicConfig(
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
        level={0: logging.WARNING, 1: logging.INFO}.get(level, logging.DEBUG),
    )


def _parse_seq(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--seq must be comma-separated integers, got {text!r}") from None


def _cell_seed(spec: SpecFile) -> Seed:
    if spec.realization == "typeA":
        from .sl_oracle import realize_seed

        return realize_seed(spec.cell)
    return schubert_seed(spec.cell)


def _degrees(spec: SpecFile):
    if spec.degrees is not None:
        return spec.degrees
    if spec.cell.type.series == "A":
        from .sl_oracle import lambda_of, realize_seed

        S = realize_seed(spec.cell)
        return tuple(lambda_of(x, spec.cell.J, spec.cell.type.rank) for x in S.variables)
    raise InputError(f"degrees are required for type {spec.cell.type} (no type-A realization)")


def _lifted(spec: SpecFile, conv: LiftConvention):
    if spec.realization == "typeA":
        from .sl_oracle import realize_lifted_seed

        return realize_lifted_seed(spec.cell, conv)
    return lift_seed(schubert_seed(spec.cell), _degrees(spec), spec.cell.J, conv)


def _header(spec: SpecFile) -> str:
    c = spec.cell
    return f"type {c.type}  word {list(c.word)}  J {sorted(c.J)}"


def _schubert_text(spec: SpecFile, paper_order: bool) -> str:
    B = build_Bw(spec.cell)
    mutable, frozen = classify_frozen(spec.cell.word)
    lines = [_header(spec), "", "exchange matrix B^w:"]
    lines.append(B.to_text(B.display_order() if paper_order else None))
    lines += ["", f"mutable {sorted(mutable)}  frozen {sorted(frozen)}", "", "variables:"]
    for k, lab in enumerate(variable_labels(spec.cell), start=1):
        lines.append(f"  {k}: {lab}")
    return "\n".join(lines) + "\n"


def _lift_text(spec: SpecFile, conv: LiftConvention, paper_order: bool) -> str:
    L = _lifted(spec, conv)
    order = L.matrix.display_order() if paper_order else None
    deg = dict(zip(L.matrix.row_labels, L.degrees))
    lines = [_header(spec) + f"  convention {conv.value}", "", "lifted exchange matrix:"]
    lines.append(L.matrix.to_text(order))
    lines += ["", "extended cluster:"]
    frozen = set(L.matrix.frozen)
    for r in order or L.matrix.row_labels:
        tag = "frozen" if r in frozen else "mutable"
        lines.append(f"  {r}: {L.seed[r]}  degree {list(deg[r])}  [{tag}]")
    return "\n".join(lines) + "\n"


def cmd_schubert(args, spec: SpecFile) -> int:
    if args.format == "json":
        B = build_Bw(spec.cell)
        out = {"schema": "flagcluster/schubert@1", **matrix_to_dict(B, B.display_order() if args.paper_order else None)}
        out["labels"] = labels_to_list(spec.cell)
        sys.stdout.write(dumps(out))
    else:
        sys.stdout.write(_schubert_text(spec, args.paper_order))
    return 0


def cmd_lift(args, spec: SpecFile) -> int:
    conv = LiftConvention(args.convention or spec.convention)
    if args.format == "json":
        L = _lifted(spec, conv)
        sys.stdout.write(dumps(lifted_to_dict(L, L.matrix.display_order() if args.paper_order else None)))
    else:
        sys.stdout.write(_lift_text(spec, conv, args.paper_order))
    return 0


def cmd_mutate(args, spec: SpecFile) -> int:
    seq = _parse_seq(args.seq)
    if args.lifted:
        L = _lifted(spec, LiftConvention(args.convention or spec.convention))
        bad = [k for k in seq if k not in L.matrix.mutable]
        if bad:
            raise InputError(f"not mutable indices: {bad}")
        try:
            L = L.mutate_sequence(seq)
        except MutationError as exc:
            log.error("%s", exc)
            sys.stdout.write(dumps({"error": str(exc)}))
            return 1
        sys.stdout.write(dumps(lifted_to_dict(L)))
        return 0
    S = _cell_seed(spec)
    bad = [k for k in seq if k not in S.matrix.mutable]
    if bad:
        raise InputError(f"not mutable indices: {bad} (mutable are {list(S.matrix.mutable)})")
    try:
        S = mutate_sequence(S, seq)
    except MutationError as exc:
        log.error("%s", exc)
        sys.stdout.write(dumps({"error": str(exc)}))
        return 1
    sys.stdout.write(dumps(seed_to_dict(S)))
    return 0


def cmd_explore(args, spec: SpecFile) -> int:
    S = _cell_seed(spec)
    G = enumerate_exchange_graph(S, args.max, workers=args.workers)
    out = {
        "schema": "flagcluster/exchange-graph@1",
        "seeds": len(G.seeds),
        "edges": len(G.edges),
        "complete": G.complete,
        "cluster_variables": sorted(str(x) for x in G.cluster_variables()),
    }
    sys.stdout.write(dumps(out))
    return 0


def _suite(args, spec: SpecFile) -> tuple[list[str], dict]:
    suite = args.suite
    S = _cell_seed(spec)
    mutable = S.matrix.mutable
    info: dict = {}
    if suite == "laurent":
        rep = check_laurent(S, all_walks(mutable, args.depth))
        info["variables_checked"] = rep.checked
        return rep.violations, info
    if suite == "involution":
        violations = []
        for walk in [()] + random_walks(mutable, args.depth, args.walks, args.rng_seed):
            T = mutate_sequence(S, walk)
            for k in mutable:
                U = mutate_seed(mutate_seed(T, k), k)
                if U.matrix != T.matrix or U.variables != T.variables:
                    violations.append(f"mu_{k} mu_{k} != id after {walk}")
        info["walks"] = args.walks + 1
        return violations, info
    if suite == "grading":
        L = lift_seed(schubert_seed(spec.cell), _degrees(spec), spec.cell.J, LiftConvention.HOMOGENEOUS)
        walks = [()] + random_walks(mutable, args.depth, args.walks, args.rng_seed)
        rep = verify_commutation(S, None, spec.cell.J, LiftConvention.HOMOGENEOUS, walks, lifted=L, variables=False)
        info["walks"] = rep.walks
        return rep.violations, info
    if spec.cell.type.series != "A":
        raise InputError(f"suite {suite!r} needs a type A spec, got {spec.cell.type}")
    from .sl_oracle import realize_lifted_seed, realize_seed, verify_exchange_identities, verify_lifted_identities

    if suite == "oracle":
        rep = verify_exchange_identities(realize_seed(spec.cell))
        info["columns"] = len(rep.columns)
        return rep.violations, info
    conv = LiftConvention(args.convention or spec.convention)
    try:
        L = realize_lifted_seed(spec.cell, conv)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = verify_lifted_identities(L)
    violations = list(rep.violations)
    if conv is LiftConvention.HOMOGENEOUS:
        walks = all_walks(mutable, min(args.depth, 4))
        crep = verify_commutation(realize_seed(spec.cell), L.degrees[: len(S.variables)], spec.cell.J, conv, walks, lifted=L)
        violations += crep.violations
        info["walks"] = crep.walks
    info["columns"] = len(rep.columns)
    return violations, info


def cmd_verify(args, spec: SpecFile) -> int:
    violations, info = _suite(args, spec)
    out = {"schema": "flagcluster/report@1", "suite": args.suite, "ok": not violations, **info}
    out["violations"] = violations
    sys.stdout.write(dumps(out))
    for v in violations:
        log.info("violation: %s", v)
    return 1 if violations else 0


def cmd_example(args) -> int:
    if args.name != "b3":
        raise InputError(f"unknown example {args.name!r}; available: b3")
    spec = SpecFile(B3_SPEC, LiftConvention.PAPER, B3_DEGREES)
    sys.stdout.write(_schubert_text(spec, paper_order=True))
    sys.stdout.write("\n")
    sys.stdout.write(_lift_text(spec, LiftConvention.PAPER, paper_order=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagcluster", description="Schubert-cell and flag-variety seeds.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_spec(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="JSON spec file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    sp = with_spec("schubert", "print the cell exchange matrix and variable labels")
    sp.add_argument("--paper-order", action="store_true", help="mutable rows first, then frozen")
    sp = with_spec("lift", "print the lifted matrix and extended cluster")
    sp.add_argument("--paper-order", action="store_true")
    sp.add_argument("--convention", choices=[c.value for c in LiftConvention])
    sp = with_spec("mutate", "apply a mutation sequence")
    sp.add_argument("--seq", default="", help="comma-separated mutable labels")
    sp.add_argument("--lifted", action="store_true", help="mutate the lifted seed")
    sp.add_argument("--convention", choices=[c.value for c in LiftConvention])
    sp = with_spec("explore", "enumerate the exchange graph")
    sp.add_argument("--max", type=int, default=100)
    sp.add_argument("--workers", type=int, default=None)
    sp = with_spec("verify", "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--walks", type=int, default=20)
    sp.add_argument("--rng-seed", type=int, default=0)
    sp.add_argument("--convention", choices=[c.value for c in LiftConvention])
    ex = sub.add_parser("example", help="print a built-in example")
    ex.add_argument("name", help="example name (b3)")
    return p


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "example":
            return cmd_example(args)
        if args.command == "explore" and args.max < 1:
            raise InputError("--max must be >= 1")
        spec = load_spec(args.spec)
        return {
            "schubert": cmd_schubert,
            "lift": cmd_lift,
            "mutate": cmd_mutate,
            "explore": cmd_explore,
            "verify": cmd_verify,
        }[args.command](args, spec)
    except (InputError, SpecError, NotReducedError) as exc:
        sys.stderr.write(f"flagcluster: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
