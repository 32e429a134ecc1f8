"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed (non-exact complex,
invalid invariant, inconsistent diagram, failed claim), 2 unreadable input.
Arguments that take a value accept a file name, ``-`` for standard input,
or the JSON (or group string) itself.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import catalog, ck, coeff, grid, homalg, reproduce, sixcomplex
from .abelian import IllDefinedHomomorphism, exists_epimorphism, exists_monomorphism, hom_group
from .jsonio import (
    FormatError,
    complex_from_json,
    complex_to_json,
    diagram_from_json,
    group_from_json,
    group_to_json,
    parse_group_string,
    parse_matrix_text,
    total_from_json,
    total_to_json,
)


class CheckFailed(Exception):
    """A mathematical check failed; reported with exit code 1."""


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip()[:1] in ("{", "[", '"'):
        return arg
    try:
        p = Path(arg)
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return arg


def _json(arg: str) -> Any:
    text = _read(arg)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def _group(arg: str):
    text = _read(arg).strip()
    if text[:1] not in ("{", '"'):
        return parse_group_string(text)
    try:
        return group_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def _emit(args, human: str, payload: Any) -> None:
    print(json.dumps(payload, ensure_ascii=False) if args.json else human)


# ---------------------------------------------------------------------------
# group


def cmd_group(args) -> int:
    G = _group(args.G)
    if args.op == "canon":
        _emit(args, str(G), group_to_json(G))
        return 0
    H = _group(args.H) if args.H is not None else None
    if H is None:
        raise FormatError(f"'group {args.op}' needs two groups")
    if args.op == "hom":
        R = hom_group(G, H)[0]
        _emit(args, str(R), group_to_json(R))
    elif args.op == "ext":
        R = homalg.ext1(G, H)
        _emit(args, str(R), group_to_json(R))
    else:
        verdict = (exists_epimorphism if args.op == "epi" else exists_monomorphism)(G, H)
        _emit(args, str(verdict).lower(), verdict)
    return 0


# ---------------------------------------------------------------------------
# sixterm


def cmd_sixterm(args) -> int:
    c1 = complex_from_json(_json(args.C1))
    c2 = complex_from_json(_json(args.C2)) if args.C2 is not None else None
    if args.op in ("hom", "ext", "sum") and c2 is None:
        raise FormatError(f"'sixterm {args.op}' needs two complexes")
    if args.op == "check":
        chain = sixcomplex.check_chain(c1)
        exact = sixcomplex.check_exact(c1)
        lines = [sixcomplex.render(c1), f"chain: {str(chain).lower()}"]
        lines += [f"node {p}: {'exact' if ok else 'not exact'}" for p, ok in enumerate(exact)]
        _emit(args, "\n".join(lines), {"chain": chain, "exact": exact})
        if not all(exact):
            raise CheckFailed("complex is not exact")
    elif args.op == "hom":
        R = sixcomplex.hom_z6(c1, c2).group
        _emit(args, str(R), group_to_json(R))
    elif args.op == "ext":
        R = sixcomplex.ext1_z6(c1, c2)
        _emit(args, str(R), group_to_json(R))
    else:
        out = sixcomplex.suspend(c1) if args.op == "suspend" else sixcomplex.direct_sum_complex(c1, c2)
        print(json.dumps(complex_to_json(out), ensure_ascii=False))
    return 0


# ---------------------------------------------------------------------------
# total


def cmd_total(args) -> int:
    t1 = total_from_json(_json(args.T1))
    t2 = total_from_json(_json(args.T2)) if args.T2 is not None else None
    if args.op in ("hom-lambda", "sum") and t2 is None:
        raise FormatError(f"'total {args.op}' needs two invariants")
    if args.op == "validate":
        bad = coeff.validate(t1)
        _emit(args, "\n".join(map(str, bad)) or "valid", [v._asdict() for v in bad])
        if bad:
            raise CheckFailed(f"{len(bad)} violations")
    elif args.op == "hom-lambda":
        coeffs = [int(x) for x in args.coeffs.split(",")] if args.coeffs else None
        R = coeff.hom_lambda(t1, t2, coeffs).group
        _emit(args, str(R), group_to_json(R))
    else:
        out = coeff.suspend_total(t1) if args.op == "suspend" else coeff.direct_sum_total(t1, t2)
        print(json.dumps(total_to_json(out), ensure_ascii=False))
    return 0


# ---------------------------------------------------------------------------
# grid, uct, ck, catalog, paper


def cmd_grid(args) -> int:
    spec = diagram_from_json(_json(args.FILE))
    res = grid.solve(spec, homalg.ExtensionConfig(args.bound))
    payload = {"classes": [group_to_json(c) for c in res.classes],
               "unique": res.unique, "consistent": res.consistent}
    lines = [str(c) for c in res.classes] or ["no consistent group"]
    _emit(args, "\n".join(lines), payload)
    if not res.consistent:
        raise CheckFailed("the constraints admit no group")
    return 0


def cmd_uct(args) -> int:
    verdict = homalg.split_test(_group(args.ext), _group(args.hom), _group(args.middle))
    _emit(args, str(verdict), str(verdict))
    return 0


def _vertex_set(text: str, size: int) -> frozenset[int]:
    try:
        vs = frozenset(int(x) - 1 for x in text.replace("{", "").replace("}", "").split(",") if x.strip())
    except ValueError as exc:
        raise FormatError(f"--ideal expects 1-based vertices like 1,2,3: {exc}") from exc
    if any(not 0 <= v < size for v in vs):
        raise FormatError("--ideal mentions a vertex outside the matrix")
    return vs


def _show_set(H) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(H)) + "}"


def cmd_ck(args) -> int:
    try:
        M = ck.CKMatrix.of(parse_matrix_text(_read(args.FILE)))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    cond = ck.condition_check(M)
    ideals = ck.ideal_lattice(M)
    K0, K1 = ck.k_theory(M)
    payload: dict[str, Any] = {
        "condition": cond,
        "ideals": [sorted(v + 1 for v in H) for H in ideals],
        "K0": group_to_json(K0), "K1": group_to_json(K1),
    }
    lines = [f"condition: {str(cond).lower()}",
             f"ideals: {', '.join(_show_set(H) for H in ideals) or 'none'}",
             f"K0 = {K0}", f"K1 = {K1}"]
    if args.ideal:
        H = _vertex_set(args.ideal, M.size)
        if not ck.is_hereditary(M, H):
            raise CheckFailed(f"{_show_set(H)} is not hereditary")
        cx = ck.six_term(M, H)
        payload["six_term"] = complex_to_json(cx)
        lines += [f"six-term sequence for {_show_set(H)}:", sixcomplex.render(cx)]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_catalog(args) -> int:
    try:
        entry = catalog.get(args.name, args.n)
    except catalog.UnknownEntryError as exc:
        raise FormatError(str(exc)) from exc
    print(json.dumps(total_to_json(entry.invariant), ensure_ascii=False))
    return 0


def cmd_paper(args) -> int:
    if args.n < 2:
        raise FormatError("--n must be at least 2")
    claims = reproduce.PIPELINES[args.claim](args.n)
    for c in claims:
        print(c.line())
    failed = [c for c in claims if not c.ok]
    print(f"{'PASS' if not failed else 'FAIL'} {args.claim} n={args.n}: "
          f"{len(claims) - len(failed)}/{len(claims)} claims")
    if failed:
        raise CheckFailed(f"{len(failed)} claims failed")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksix", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="abelian group operations")
    p.add_argument("op", choices=["canon", "hom", "ext", "epi", "mono"])
    p.add_argument("G")
    p.add_argument("H", nargs="?")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("sixterm", help="six-term complex operations")
    p.add_argument("op", choices=["check", "hom", "ext", "suspend", "sum"])
    p.add_argument("C1")
    p.add_argument("C2", nargs="?")
    p.set_defaults(func=cmd_sixterm)

    p = sub.add_parser("total", help="total invariant operations")
    p.add_argument("op", choices=["validate", "hom-lambda", "sum", "suspend"])
    p.add_argument("T1")
    p.add_argument("T2", nargs="?")
    p.add_argument("--coeffs", help="comma-separated coefficient set for hom-lambda")
    p.set_defaults(func=cmd_total)

    p = sub.add_parser("grid", help="solve an exact diagram for its unknown")
    p.add_argument("op", choices=["solve"])
    p.add_argument("FILE")
    p.add_argument("--bound", type=int, default=homalg.ExtensionConfig().enumeration_bound,
                   help="largest Ext group to enumerate")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("uct", help="universal coefficient split test")
    p.add_argument("op", choices=["split-test"])
    p.add_argument("--ext", required=True)
    p.add_argument("--hom", required=True)
    p.add_argument("--middle", required=True)
    p.set_defaults(func=cmd_uct)

    p = sub.add_parser("ck", help="Cuntz-Krieger matrix analysis")
    p.add_argument("op", choices=["analyze"])
    p.add_argument("FILE")
    p.add_argument("--ideal", help="1-based hereditary vertex set, e.g. 1,2,3")
    p.set_defaults(func=cmd_ck)

    p = sub.add_parser("catalog", help="export a stored invariant")
    p.add_argument("op", choices=["show"])
    p.add_argument("name")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("paper", help="reproduce the worked examples")
    p.add_argument("op", choices=["reproduce"])
    p.add_argument("claim", choices=sorted(reproduce.PIPELINES))
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_paper)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FormatError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailed, sixcomplex.NotExactError, grid.InvalidDiagram, grid.UnreducibleError,
            homalg.ExtensionBoundError, IllDefinedHomomorphism) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
