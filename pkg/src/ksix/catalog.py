"""Stored invariants of the dimension-drop building blocks.

``e_{n,0}`` is ``SM_n -> I_n -> C``; ``e_{n,1}`` is the mapping-cone
extension ``SC -> I_{n,1} -> I_n``.  Integral layers are the standard
K-theory; the mod-n layer (only coefficient ``n`` is stored) comes from the
universal coefficient sequence with the split choice, and every map is the
one forced by exactness, with all free unit choices set to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import ZERO, FGAbelianGroup, GroupHom, cyclic
from .coeff import CoefficientLayer, TotalSixInvariant, direct_sum_total, suspend_total, validate
from .grid import DiagramSpec, Edge, UNKNOWN
from .matrix import IntMatrix
from .sixcomplex import SixTermComplex

NAMES = ("e0", "e1", "Se1", "prop43")
ALIASES = {
    "e_{n,0}": "e0", "e_n0": "e0", "e0": "e0",
    "e_{n,1}": "e1", "e_n1": "e1", "e1": "e1",
    "S e_{n,1}": "Se1", "Se_{n,1}": "Se1", "Se1": "Se1",
    "S e_{p,1} ⊕ e_{p,1} ⊕ e_{p,0}": "prop43", "prop43": "prop43",
}


class UnknownEntryError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    invariant: TotalSixInvariant

    @property
    def integral(self) -> SixTermComplex:
        return self.invariant.integral


def _maps(groups, entries):
    """Six GroupHoms between consecutive ``groups`` from 1x1 entries (None = 0)."""
    out = []
    for p, e in enumerate(entries):
        src, dst = groups[p], groups[(p + 1) % 6]
        out.append(GroupHom.zero(src, dst) if e is None else GroupHom(src, dst, [[e]]))
    return out


def _layer(G, Gn, f_n, rho, beta):
    cx = SixTermComplex(tuple(Gn), tuple(_maps(Gn, f_n)), exact=True)
    r = [GroupHom.zero(G[p], Gn[p]) if rho[p] is None else GroupHom(G[p], Gn[p], [[rho[p]]])
         for p in range(6)]
    b = [GroupHom.zero(Gn[p], G[(p + 3) % 6]) if beta[p] is None
         else GroupHom(Gn[p], G[(p + 3) % 6], [[beta[p]]]) for p in range(6)]
    return CoefficientLayer(cx, r, b)


def _e0(n: int) -> TotalSixInvariant:
    Zn, Zg = cyclic(n), FGAbelianGroup.free(1)
    G = [ZERO, ZERO, Zg, Zg, Zn, ZERO]
    integral = SixTermComplex(tuple(G), tuple(_maps(G, [None, None, n, 1, None, None])), exact=True)
    Gn = [ZERO, Zn, Zn, Zn, Zn, ZERO]
    layer = _layer(G, Gn,
                   f_n=[None, 1, None, 1, None, None],
                   rho=[None, None, 1, 1, 1, None],
                   beta=[None, 1, None, None, None, None])
    return TotalSixInvariant(integral, {n: layer})


def _e1(n: int) -> TotalSixInvariant:
    Zn, Zg = cyclic(n), FGAbelianGroup.free(1)
    G = [ZERO, ZERO, ZERO, Zg, Zg, Zn]
    integral = SixTermComplex(tuple(G), tuple(_maps(G, [None, None, None, n, 1, None])), exact=True)
    Gn = [ZERO, ZERO, Zn, Zn, Zn, Zn]
    layer = _layer(G, Gn,
                   f_n=[None, None, 1, None, 1, None],
                   rho=[None, None, None, 1, 1, 1],
                   beta=[None, None, 1, None, None, None])
    return TotalSixInvariant(integral, {n: layer})


@lru_cache(maxsize=None)
def _build(key: str, n: int) -> TotalSixInvariant:
    if key == "e0":
        return _e0(n)
    if key == "e1":
        return _e1(n)
    if key == "Se1":
        return suspend_total(_e1(n))
    if key == "prop43":
        return direct_sum_total(direct_sum_total(suspend_total(_e1(n)), _e1(n)), _e0(n))
    raise UnknownEntryError(key)


def get(name: str, n: int) -> CatalogEntry:
    """Stored invariant for ``name`` (see ``ALIASES``) at parameter ``n >= 2``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    key = ALIASES.get(name)
    if key is None:
        raise UnknownEntryError(f"unknown catalog entry {name!r}; known: {sorted(NAMES)}")
    inv = _build(key, n)
    bad = validate(inv)
    assert not bad, f"catalog entry {key} fails validation: {bad}"
    return CatalogEntry(key, n, inv)


def ksix(name: str, n: int) -> SixTermComplex:
    return get(name, n).integral


# ---------------------------------------------------------------------------
# exact diagrams from the two worked examples


def nonsplitting_diagram(n: int) -> DiagramSpec:
    """``Z -> Z -> X -> 0`` exact (so ``X`` is cyclic) and ``0 -> Z_n -> X -> Z_n -> 0``."""
    Zg, Zn = FGAbelianGroup.free(1), cyclic(n)
    nodes = {"a": Zg, "b": Zg, "zero": ZERO, "c": ZERO, "s": Zn, "q": Zn, "d": ZERO, "X": UNKNOWN}
    edges = [Edge("a", "b"), Edge("b", "X"), Edge("X", "zero"),
             Edge("c", "s", GroupHom.zero(ZERO, Zn)), Edge("s", "X"), Edge("X", "q"),
             Edge("q", "d", GroupHom.zero(Zn, ZERO))]
    paths = [["a", "b", "X", "zero"], ["c", "s", "X", "q", "d"]]
    return DiagramSpec(nodes, edges, paths, unknown="X")


def nonsurjective_diagram(n: int) -> DiagramSpec:
    """The commuting 4x4 grid with ``X`` in row 2, column 2; rows and columns exact."""
    Zg, Zn = FGAbelianGroup.free(1), cyclic(n)
    red = GroupHom(Zg, Zn, [[1]])
    nodes = {
        "r1c1": ZERO, "r1c2": Zn, "r1c3": Zn,
        "r2c1": Zg, "X": UNKNOWN, "r2c3": Zn,
        "r3c1": Zg, "r3c2": Zg, "r3c3": ZERO,
        "r4c1": Zn, "r4c2": Zn, "r4c3": ZERO,
        "z": ZERO,
    }
    one = GroupHom.identity
    times_n = GroupHom(Zg, Zg, IntMatrix.from_rows([[n]]))
    # edges touching a zero group are implied
    edges = [
        Edge("r1c2", "r1c3", one(Zn)), Edge("r2c1", "X"), Edge("X", "r2c3"),
        Edge("r3c1", "r3c2", one(Zg)), Edge("r4c1", "r4c2", one(Zn)),
        Edge("r2c1", "r3c1", times_n), Edge("r3c1", "r4c1", red),
        Edge("r1c2", "X"), Edge("X", "r3c2"), Edge("r3c2", "r4c2", red),
        Edge("r1c3", "r2c3", one(Zn)),
    ]
    paths = [
        ["z", "r1c1", "r1c2", "r1c3", "z"],
        ["z", "r2c1", "X", "r2c3", "z"],
        ["z", "r3c1", "r3c2", "r3c3", "z"],
        ["z", "r4c1", "r4c2", "r4c3", "z"],
        ["z", "r1c1", "r2c1", "r3c1", "r4c1", "z"],
        ["z", "r1c2", "X", "r3c2", "r4c2", "z"],
        ["z", "r1c3", "r2c3", "r3c3", "r4c3", "z"],
    ]
    return DiagramSpec(nodes, edges, paths, unknown="X")
