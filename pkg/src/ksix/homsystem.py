"""Solve linear systems whose unknowns are group homomorphisms.

Each unknown ranges over a Hom group ``Hom(S_k, T_k)``; each constraint
asks that a sum of terms ``coef * post ∘ x_k ∘ pre`` vanish in some
``Hom(S_c, T_c)``.  The solution set is the kernel of one assembled map
``⊕ Hom(S_k, T_k) -> ⊕ Hom(S_c, T_c)``, computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    HomSpace,
    direct_sum,
    kernel_image_cokernel,
)
from .matrix import IntMatrix, solve_integer


@dataclass(frozen=True)
class Term:
    var: int
    pre: GroupHom | None = None
    post: GroupHom | None = None
    coef: int = 1


@dataclass
class _Constraint:
    source: FGAbelianGroup
    target: FGAbelianGroup
    terms: list[Term]
    label: str = ""


@dataclass
class HomSystem:
    variables: list[tuple[FGAbelianGroup, FGAbelianGroup]] = field(default_factory=list)
    constraints: list[_Constraint] = field(default_factory=list)

    def add_variable(self, source: FGAbelianGroup, target: FGAbelianGroup) -> int:
        self.variables.append((source, target))
        return len(self.variables) - 1

    def add_constraint(self, source, target, terms: Sequence[Term], label: str = "") -> None:
        for t in terms:
            s, tt = self.variables[t.var]
            if (t.pre.codomain if t.pre else source) != s:
                raise ValueError(f"constraint {label!r}: pre-map does not land in the variable's source")
            if (t.post.domain if t.post else target) != tt:
                raise ValueError(f"constraint {label!r}: post-map does not start at the variable's target")
            if t.pre is not None and t.pre.domain != source:
                raise ValueError(f"constraint {label!r}: pre-map has the wrong domain")
            if t.post is not None and t.post.codomain != target:
                raise ValueError(f"constraint {label!r}: post-map has the wrong codomain")
        self.constraints.append(_Constraint(source, target, list(terms), label))

    def solve(self) -> HomSolution:
        spaces = [HomSpace(s, t) for s, t in self.variables]
        cspaces = [HomSpace(c.source, c.target) for c in self.constraints]
        offsets, o = [], 0
        for sp in spaces:
            offsets.append(o)
            o += sp.size
        coffsets, o = [], 0
        for sp in cspaces:
            coffsets.append(o)
            o += sp.size
        total_c = o

        by_var: dict[int, list[tuple[int, Term]]] = {}
        for ci, c in enumerate(self.constraints):
            for t in c.terms:
                by_var.setdefault(t.var, []).append((ci, t))

        columns = []
        for k, sp in enumerate(spaces):
            for e in sp.basis:
                col = [0] * total_c
                contrib: dict[int, GroupHom] = {}
                for ci, t in by_var.get(k, []):
                    v = e
                    if t.pre is not None:
                        v = v @ t.pre
                    if t.post is not None:
                        v = t.post @ v
                    v = t.coef * v
                    contrib[ci] = contrib[ci] + v if ci in contrib else v
                for ci, v in contrib.items():
                    for s, x in enumerate(cspaces[ci].coordinates(v)):
                        col[coffsets[ci] + s] = x
                columns.append(col)

        D = direct_sum(*(sp.group for sp in spaces))
        C = direct_sum(*(sp.group for sp in cspaces))
        phi = GroupHom(D, C, IntMatrix.from_columns(columns, total_c))
        kic = kernel_image_cokernel(phi)
        return HomSolution(self, spaces, offsets, D, kic.kernel, kic.kernel_inclusion.matrix)


class HomSolution:
    """The solution group of a :class:`HomSystem` with explicit elements.

    ``group`` is the solution group; ``basis`` holds one solution per
    nontrivial cyclic summand of its canonical decomposition (``orders``
    gives the summand orders, 0 for infinite cyclic).
    """

    def __init__(self, system, spaces, offsets, ambient, group, inclusion):
        self.system = system
        self._spaces = spaces
        self._offsets = offsets
        self.ambient = ambient
        self.group: FGAbelianGroup = group
        self._inclusion: IntMatrix = inclusion
        sm = group.smith
        self.orders = [d for d in group.cyclic_orders if d != 1]
        self._canonical_gens = [sm.U_inv.column(i) for i, d in enumerate(group.cyclic_orders) if d != 1]
        self.basis = [self.element(v) for v in self._canonical_gens]

    def element(self, coords: Sequence[int]) -> tuple[GroupHom, ...]:
        """Solution tuple for a vector in the solution group's generators."""
        d = self._inclusion.apply(coords)
        out = []
        for sp, off in zip(self._spaces, self._offsets):
            out.append(sp.element(d[off:off + sp.size]))
        return tuple(out)

    def canonical_element(self, coeffs: Sequence[int]) -> tuple[GroupHom, ...]:
        """Solution ``sum coeffs[i] * basis[i]``."""
        v = [0] * self.group.generators
        for c, g in zip(coeffs, self._canonical_gens):
            v = [a + c * b for a, b in zip(v, g)]
        return self.element(v)

    def ambient_coordinates(self, homs: Sequence[GroupHom]) -> tuple[int, ...]:
        out: list[int] = []
        for sp, h in zip(self._spaces, homs):
            out.extend(sp.coordinates(h))
        return tuple(out)

    def coordinates(self, homs: Sequence[GroupHom]) -> tuple[int, ...] | None:
        """Generator coordinates of a solution tuple, ``None`` if it is not one."""
        d = self.ambient_coordinates(homs)
        A = self.ambient
        M = IntMatrix.hstack([self._inclusion, A.relations], rows=A.generators)
        z = solve_integer(M, d)
        return None if z is None else z[:self._inclusion.cols]

    def canonical_coordinates(self, homs: Sequence[GroupHom]) -> tuple[int, ...] | None:
        z = self.coordinates(homs)
        if z is None:
            return None
        y = self.group.reduce(z)
        return tuple(a for a, d in zip(y, self.group.cyclic_orders) if d != 1)

    def is_solution(self, homs: Sequence[GroupHom]) -> bool:
        return self.coordinates(homs) is not None
