"""JSON forms of groups, maps, complexes, total invariants and diagrams.

Groups are ``{"rank": r, "torsion": [...]}`` or ``{"presentation": rows}``
(one row per generator, one column per relation); a short string such as
``"Z^2 + Z_4"`` or ``"Z ⊕ Z_3"`` is also accepted on input.  Maps are
``{"matrix": rows}``, a bare list of rows, or ``null`` for the zero map.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .abelian import FGAbelianGroup, GroupHom
from .coeff import CoefficientLayer, TotalSixInvariant
from .grid import UNKNOWN, DiagramSpec, Edge
from .matrix import IntMatrix
from .sixcomplex import SixTermComplex


class FormatError(ValueError):
    """Input that does not parse into the expected shape."""


def _int_rows(rows, what: str) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{what}: expected a list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise FormatError(f"{what}: entries must be integers")
    if len({len(r) for r in rows}) > 1:
        raise FormatError(f"{what}: ragged rows")
    return rows


_TERM = re.compile(r"^(?:Z(?:\^(\d+))?|Z_\{?(\d+)\}?(?:\^(\d+))?|0)$")


def parse_group_string(s: str) -> FGAbelianGroup:
    rank, torsion = 0, []
    for term in re.split(r"\s*(?:⊕|\+)\s*", s.strip()):
        m = _TERM.match(term.replace(" ", ""))
        if not m:
            raise FormatError(f"cannot parse group term {term!r}")
        if term.strip() == "0":
            continue
        if m.group(2) is None:
            rank += int(m.group(1) or 1)
        else:
            torsion += [int(m.group(2))] * int(m.group(3) or 1)
    return FGAbelianGroup.from_invariants(rank, tuple(torsion))


def group_from_json(v: Any) -> FGAbelianGroup:
    if isinstance(v, str):
        return parse_group_string(v)
    if not isinstance(v, dict):
        raise FormatError(f"expected a group value, got {v!r}")
    if "presentation" in v:
        rows = _int_rows(v["presentation"], "presentation")
        cols = len(rows[0]) if rows else 0
        return FGAbelianGroup(IntMatrix.from_rows(rows, cols))
    if "rank" in v or "torsion" in v:
        rank, torsion = v.get("rank", 0), v.get("torsion", [])
        if not isinstance(rank, int) or rank < 0 or not all(isinstance(d, int) and d > 0 for d in torsion):
            raise FormatError("rank must be a nonnegative integer and torsion positive integers")
        return FGAbelianGroup.from_invariants(rank, tuple(torsion))
    raise FormatError("a group needs 'rank'/'torsion' or 'presentation'")


def group_to_json(G: FGAbelianGroup, canonical: bool = True) -> dict:
    """Invariant form when ``canonical`` or when the presentation already is canonical."""
    rank, torsion = G.canonical
    if canonical or G == FGAbelianGroup.from_invariants(rank, torsion):
        return {"rank": rank, "torsion": list(torsion)}
    return {"presentation": G.relations.tolist()}


def matrix_from_json(v: Any, rows: int, cols: int) -> IntMatrix | None:
    if v is None:
        return None
    if isinstance(v, dict):
        if "matrix" not in v:
            raise FormatError("a map needs a 'matrix'")
        v = v["matrix"]
    data = _int_rows(v, "matrix")
    if rows == 0 or cols == 0:
        if data and any(data):
            raise FormatError("a map into or out of a group with no generators must be empty")
        return IntMatrix.zeros(rows, cols)
    m = IntMatrix.from_rows(data, len(data[0]) if data else 0)
    if m.shape != (rows, cols):
        raise FormatError(f"matrix has shape {m.shape}, expected {(rows, cols)}")
    return m


def hom_from_json(v: Any, G: FGAbelianGroup, H: FGAbelianGroup) -> GroupHom:
    m = matrix_from_json(v, H.generators, G.generators)
    return GroupHom.zero(G, H) if m is None else GroupHom(G, H, m)


def hom_to_json(f: GroupHom) -> dict:
    return {"matrix": f.matrix.tolist()}


def complex_from_json(v: Any, exact: bool = False) -> SixTermComplex:
    if not isinstance(v, dict) or "groups" not in v:
        raise FormatError("a complex needs 'groups' and 'maps'")
    groups = [group_from_json(g) for g in v["groups"]]
    maps = v.get("maps", [None] * 6)
    if len(groups) != 6 or len(maps) != 6:
        raise FormatError("a complex needs exactly six groups and six maps")
    homs = [hom_from_json(maps[p], groups[p], groups[(p + 1) % 6]) for p in range(6)]
    flag = v.get("exact", exact)
    if not isinstance(flag, bool):
        raise FormatError("'exact' must be true or false")
    return SixTermComplex(tuple(groups), tuple(homs), flag)


def complex_to_json(c: SixTermComplex) -> dict:
    out = {"groups": [group_to_json(g, canonical=False) for g in c.groups],
           "maps": [f.matrix.tolist() for f in c.maps]}
    if c.exact:
        out["exact"] = True
    return out


def total_from_json(v: Any) -> TotalSixInvariant:
    if not isinstance(v, dict) or "integral" not in v:
        raise FormatError("a total invariant needs 'integral'")
    integral = complex_from_json(v["integral"])
    layers = {}
    for key, layer in v.get("coefficients", {}).items():
        try:
            n = int(key)
        except ValueError as exc:
            raise FormatError(f"coefficient key {key!r} is not an integer") from exc
        cx = complex_from_json(layer["complex"])
        rho = [hom_from_json(m, integral.groups[p], cx.groups[p])
               for p, m in enumerate(layer.get("rho", [None] * 6))]
        beta = [hom_from_json(m, cx.groups[p], integral.groups[(p + 3) % 6])
                for p, m in enumerate(layer.get("beta", [None] * 6))]
        layers[n] = CoefficientLayer(cx, tuple(rho), tuple(beta))
    return TotalSixInvariant(integral, layers)


def total_to_json(inv: TotalSixInvariant) -> dict:
    return {"integral": complex_to_json(inv.integral),
            "coefficients": {str(n): {"complex": complex_to_json(L.complex),
                                      "rho": [f.matrix.tolist() for f in L.rho],
                                      "beta": [f.matrix.tolist() for f in L.beta]}
                             for n, L in inv.coefficients.items()}}


def diagram_from_json(v: Any) -> DiagramSpec:
    """``{"nodes": {id: group | null}, "edges": [...], "exact_paths": [...], "unknown": id}``.

    Edges are ``{"src", "dst", "matrix"?}``; an edge without a matrix says
    only that some map exists.  Optional keys: ``quotient_of`` (list of
    groups) and ``exponent_divides`` (integer).
    """
    if not isinstance(v, dict):
        raise FormatError("a diagram must be a JSON object")
    try:
        unknown = v["unknown"]
        nodes = {k: UNKNOWN if (g is None or k == unknown) else group_from_json(g)
                 for k, g in v["nodes"].items()}
        edges = []
        for e in v.get("edges", []):
            src, dst = e["src"], e["dst"]
            if src not in nodes or dst not in nodes:
                raise FormatError(f"edge {src} -> {dst} mentions an undeclared node")
            hom = None
            if "matrix" in e and e["matrix"] is not None:
                if nodes[src] is UNKNOWN or nodes[dst] is UNKNOWN:
                    raise FormatError("maps touching the unknown cannot be given")
                hom = hom_from_json(e["matrix"], nodes[src], nodes[dst])
            edges.append(Edge(src, dst, hom))
        paths = [list(p) for p in v["exact_paths"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed diagram: {exc}") from exc
    return DiagramSpec(nodes, edges, paths, unknown,
                       [group_from_json(g) for g in v.get("quotient_of", [])],
                       v.get("exponent_divides"))


def diagram_to_json(spec: DiagramSpec) -> dict:
    return {
        "nodes": {k: None if g is UNKNOWN else group_to_json(g, canonical=False)
                  for k, g in spec.nodes.items()},
        "edges": [{"src": e.src, "dst": e.dst,
                   **({} if e.hom is None else {"matrix": e.hom.matrix.tolist()})}
                  for e in spec.edges],
        "exact_paths": [list(p) for p in spec.exact_paths],
        "unknown": spec.unknown,
        **({"quotient_of": [group_to_json(g) for g in spec.quotient_of]} if spec.quotient_of else {}),
        **({"exponent_divides": spec.exponent_divides} if spec.exponent_divides else {}),
    }


def parse_matrix_text(text: str) -> list[list[int]]:
    """JSON ``[[...]]`` or whitespace-separated rows of integers."""
    text = text.strip()
    if text.startswith("["):
        return _int_rows(json.loads(text), "matrix")
    try:
        rows = [[int(x) for x in line.replace(",", " ").split()]
                for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    except ValueError as exc:
        raise FormatError(f"matrix text: {exc}") from exc
    return _int_rows(rows, "matrix")
