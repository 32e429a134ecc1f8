"""Cyclic six-term chain complexes of abelian groups.

A complex has groups ``G_0 .. G_5`` and maps ``f_p : G_p -> G_{p+1}``
(indices mod 6).  Positions 0, 1, 2 hold ``K_0`` of ideal, extension and
quotient; positions 3, 4, 5 hold ``K_1`` of the same three, so ``f_2`` is
the exponential map and ``f_5`` the index map.

Such a complex is the same thing as a module over the path ring of the
oriented 6-cycle with all length-two paths set to zero, which is how
``Ext^1`` is computed here: by a projective presentation in that module
category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    direct_sum,
    direct_sum_hom,
    is_exact_at,
    kernel_image_cokernel,
    preimage_lattice,
)
from .homsystem import HomSolution, HomSystem, Term
from .matrix import IntMatrix, solve_integer_matrix


class NotExactError(ValueError):
    pass


@dataclass(frozen=True)
class SixTermComplex:
    groups: tuple[FGAbelianGroup, ...]
    maps: tuple[GroupHom, ...]
    exact: bool = False

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.groups) != 6 or len(self.maps) != 6:
            raise ValueError("a six-term complex needs six groups and six maps")
        for p, f in enumerate(self.maps):
            if f.domain != self.groups[p] or f.codomain != self.groups[(p + 1) % 6]:
                raise ValueError(f"map f_{p} does not go from G_{p} to G_{(p + 1) % 6}")
        if self.exact:
            bad = [p for p, ok in enumerate(check_exact(self)) if not ok]
            if bad:
                raise NotExactError(f"complex flagged exact fails exactness at nodes {bad}")

    @classmethod
    def build(cls, groups: Sequence[FGAbelianGroup], matrices: Sequence, exact: bool = False) -> SixTermComplex:
        """Complex from groups and generator matrices; ``None`` means zero map."""
        maps = []
        for p in range(6):
            src, dst = groups[p], groups[(p + 1) % 6]
            m = matrices[p]
            maps.append(GroupHom.zero(src, dst) if m is None else GroupHom(src, dst, m))
        return cls(tuple(groups), tuple(maps), exact)

    @classmethod
    def zero(cls) -> SixTermComplex:
        return cls.build([FGAbelianGroup.zero()] * 6, [None] * 6)

    @classmethod
    def skyscraper(cls, v: int, G: FGAbelianGroup) -> SixTermComplex:
        """``G`` concentrated at vertex ``v`` with zero maps."""
        gs = [G if p == v % 6 else FGAbelianGroup.zero() for p in range(6)]
        return cls.build(gs, [None] * 6)

    @classmethod
    def projective(cls, v: int) -> SixTermComplex:
        """Indecomposable projective at ``v``: ``Z`` at ``v`` and ``v+1``, identity arrow."""
        v %= 6
        Zg = FGAbelianGroup.free(1)
        gs = [Zg if p in (v, (v + 1) % 6) else FGAbelianGroup.zero() for p in range(6)]
        mats = [None] * 6
        mats[v] = [[1]]
        return cls.build(gs, mats)

    def with_exact_flag(self) -> SixTermComplex:
        return SixTermComplex(self.groups, self.maps, exact=True)

    def __str__(self) -> str:
        return render(self)


def render(c: SixTermComplex) -> str:
    """Two-row picture of the cyclic sequence in the usual K-theory layout."""
    g = [str(G) for G in c.groups]
    top = f"{g[0]} --f0--> {g[1]} --f1--> {g[2]}"
    bottom = f"{g[5]} <--f4-- {g[4]} <--f3-- {g[3]}"
    w = max(len(top), len(bottom))
    return "\n".join([
        top.rjust(w),
        f"{'^ f5':<{w - 4}}f2 v",
        bottom.rjust(w),
    ])


def check_chain(c: SixTermComplex) -> bool:
    return all((c.maps[(p + 1) % 6] @ c.maps[p]).is_zero() for p in range(6))


def check_exact(c: SixTermComplex) -> list[bool]:
    """Per node ``p``: whether ``im f_{p-1} == ker f_p``."""
    return [is_exact_at(c.maps[(p - 1) % 6], c.maps[p]) for p in range(6)]


def suspend(c: SixTermComplex) -> SixTermComplex:
    """Swap ``K_0`` and ``K_1``: rotate positions by three."""
    return SixTermComplex(tuple(c.groups[(p + 3) % 6] for p in range(6)),
                          tuple(c.maps[(p + 3) % 6] for p in range(6)), c.exact)


def direct_sum_complex(c1: SixTermComplex, c2: SixTermComplex) -> SixTermComplex:
    return SixTermComplex(tuple(direct_sum(a, b) for a, b in zip(c1.groups, c2.groups)),
                          tuple(direct_sum_hom(f, g) for f, g in zip(c1.maps, c2.maps)),
                          c1.exact and c2.exact)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class ComplexHom:
    source: SixTermComplex
    target: SixTermComplex
    components: tuple[GroupHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != 6:
            raise ValueError("a morphism of six-term complexes has six components")
        for p, phi in enumerate(self.components):
            if phi.domain != self.source.groups[p] or phi.codomain != self.target.groups[p]:
                raise ValueError(f"component {p} has the wrong domain or codomain")
        bad = failing_squares(self.source, self.target, self.components)
        if bad:
            raise ValueError(f"naturality squares fail at positions {bad}")

    @classmethod
    def identity(cls, c: SixTermComplex) -> ComplexHom:
        return cls(c, c, tuple(GroupHom.identity(G) for G in c.groups))

    @classmethod
    def zero(cls, c1: SixTermComplex, c2: SixTermComplex) -> ComplexHom:
        return cls(c1, c2, tuple(GroupHom.zero(a, b) for a, b in zip(c1.groups, c2.groups)))

    def __add__(self, other: ComplexHom) -> ComplexHom:
        return ComplexHom(self.source, self.target,
                          tuple(a + b for a, b in zip(self.components, other.components)))

    def __rmul__(self, k: int) -> ComplexHom:
        return ComplexHom(self.source, self.target, tuple(k * a for a in self.components))

    def __matmul__(self, other: ComplexHom) -> ComplexHom:
        return ComplexHom(other.source, self.target,
                          tuple(a @ b for a, b in zip(self.components, other.components)))

    def is_isomorphism(self) -> bool:
        return all(phi.is_isomorphism() for phi in self.components)


def failing_squares(c1: SixTermComplex, c2: SixTermComplex, comps: Sequence[GroupHom]) -> list[int]:
    return [p for p in range(6)
            if comps[(p + 1) % 6] @ c1.maps[p] != c2.maps[p] @ comps[p]]


class HomResult(NamedTuple):
    group: FGAbelianGroup
    basis: list


def add_complex_constraints(system: HomSystem, c1: SixTermComplex, c2: SixTermComplex,
                            variables: Sequence[int], label: str = "") -> None:
    """Require the six unknowns ``variables`` to commute with both complexes."""
    for p in range(6):
        q = (p + 1) % 6
        system.add_constraint(
            c1.groups[p], c2.groups[q],
            [Term(variables[q], pre=c1.maps[p]), Term(variables[p], post=c2.maps[p], coef=-1)],
            label=f"{label}square {p}")


def hom_z6_solution(c1: SixTermComplex, c2: SixTermComplex) -> HomSolution:
    system = HomSystem()
    vs = [system.add_variable(a, b) for a, b in zip(c1.groups, c2.groups)]
    add_complex_constraints(system, c1, c2, vs)
    return system.solve()


def hom_z6(c1: SixTermComplex, c2: SixTermComplex) -> HomResult:
    """Group of chain maps ``c1 -> c2`` and one generator per cyclic summand."""
    sol = hom_z6_solution(c1, c2)
    return HomResult(sol.group, [ComplexHom(c1, c2, b) for b in sol.basis])


# ---------------------------------------------------------------------------
# Ext^1 via a projective presentation


class Presentation(NamedTuple):
    free: SixTermComplex          # P_0, a sum of indecomposable projectives
    cover: tuple[GroupHom, ...]   # P_0 -> c, vertexwise
    kernel: SixTermComplex        # K, vertexwise free
    inclusion: tuple[GroupHom, ...]  # K -> P_0, vertexwise


def projective_presentation(c: SixTermComplex) -> Presentation:
    """``0 -> K -> P_0 -> c -> 0`` with one projective summand per generator.

    At vertex ``v`` the cover is ``Z^{g_v} ⊕ Z^{g_{v-1}} -> G_v``, given by
    ``[I | f_{v-1}]``; the arrow of ``P_0`` sends ``(x, y)`` to ``(0, x)``.
    """
    g = [G.generators for G in c.groups]
    P = [FGAbelianGroup.free(g[v] + g[(v - 1) % 6]) for v in range(6)]
    arrows = []
    for v in range(6):
        w = (v + 1) % 6
        rows = [[0] * (g[v] + g[(v - 1) % 6]) for _ in range(g[w] + g[v])]
        for i in range(g[v]):
            rows[g[w] + i][i] = 1
        arrows.append(GroupHom(P[v], P[w], IntMatrix.from_rows(rows, g[v] + g[(v - 1) % 6])))
    free = SixTermComplex(tuple(P), tuple(arrows))

    cover = []
    for v in range(6):
        F = c.maps[(v - 1) % 6].matrix
        M = IntMatrix.hstack([IntMatrix.identity(g[v]), F], rows=g[v])
        cover.append(GroupHom(P[v], c.groups[v], M))

    bases = [preimage_lattice(pi) for pi in cover]
    K = [FGAbelianGroup.free(B.cols) for B in bases]
    inclusion = tuple(GroupHom(K[v], P[v], bases[v]) for v in range(6))
    karrows = []
    for v in range(6):
        w = (v + 1) % 6
        X = solve_integer_matrix(bases[w], arrows[v].matrix @ bases[v])
        assert X is not None, "kernel of a module map is a submodule"
        karrows.append(GroupHom(K[v], K[w], X))
    return Presentation(free, tuple(cover), SixTermComplex(tuple(K), tuple(karrows)), inclusion)


def ext1_z6(c1: SixTermComplex, c2: SixTermComplex) -> FGAbelianGroup:
    """``Ext^1`` in the category of cyclic six-term complexes.

    Cokernel of the restriction ``Hom(P_0, c2) -> Hom(K, c2)`` along the
    kernel of a projective cover ``P_0 -> c1``.
    """
    pres = projective_presentation(c1)
    on_free = hom_z6_solution(pres.free, c2)
    on_kernel = hom_z6_solution(pres.kernel, c2)
    cols = []
    src = on_free.group
    for j in range(src.generators):
        phi = on_free.element([int(i == j) for i in range(src.generators)])
        restricted = [a @ b for a, b in zip(phi, pres.inclusion)]
        z = on_kernel.coordinates(restricted)
        assert z is not None, "restriction of a chain map is a chain map"
        cols.append(z)
    restriction = GroupHom(src, on_kernel.group, IntMatrix.from_columns(cols, on_kernel.group.generators))
    return kernel_image_cokernel(restriction).cokernel.canonical_group()


# ---------------------------------------------------------------------------
# isomorphism certificates


def find_isomorphism(c1: SixTermComplex, c2: SixTermComplex, bound: int = 1) -> ComplexHom | None:
    """Search chain maps with basis coefficients in ``[-bound, bound]`` for an isomorphism.

    A returned map is a certificate; ``None`` only means none was found in
    the searched box (unless some vertex groups already differ).
    """
    if any(a.canonical != b.canonical for a, b in zip(c1.groups, c2.groups)):
        return None
    sol = hom_z6_solution(c1, c2)
    ranges = [range(-bound, bound + 1) if o == 0 else range(min(o, 2 * bound + 1))
              for o in sol.orders]
    for coeffs in itertools.product(*ranges):
        comps = sol.canonical_element(coeffs)
        if all(phi.is_isomorphism() for phi in comps):
            return ComplexHom(c1, c2, comps)
    return None
