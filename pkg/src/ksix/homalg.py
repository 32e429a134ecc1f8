"""Ext^1 over the integers, extension classes and split verdicts."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    direct_sum,
    is_exact_at,
    is_isomorphic,
    kernel_image_cokernel,
)
from .matrix import IntMatrix, lattice_basis


@dataclass(frozen=True)
class ExtensionConfig:
    enumeration_bound: int = 10_000


class ExtensionBoundError(ValueError):
    def __init__(self, size: int, bound: int):
        super().__init__(f"|Ext^1| = {size} exceeds the enumeration bound {bound}")
        self.size = size
        self.bound = bound


def ext1(A: FGAbelianGroup, B: FGAbelianGroup) -> FGAbelianGroup:
    """``Ext^1_Z(A, B) = ⊕ B / d_i B`` over the invariant factors ``d_i`` of ``A``."""
    parts = []
    for d in A.torsion:
        g = B.generators
        parts.append(FGAbelianGroup(IntMatrix.hstack([B.relations, IntMatrix.identity(g).scale(d)], rows=g)))
    return direct_sum(*parts).canonical_group() if parts else FGAbelianGroup.zero()


@dataclass(frozen=True)
class ExtensionClass:
    """``0 -> B -> X -> A -> 0`` built as a pushout along ``cocycle``.

    ``cocycle`` maps the free group on a basis of the relation lattice of
    ``A`` into ``B``; the middle group is ``(B ⊕ Z^g)`` modulo the pairs
    ``(cocycle(r), -r)``.
    """

    quotient: FGAbelianGroup
    sub: FGAbelianGroup
    cocycle: GroupHom
    middle: FGAbelianGroup
    inclusion: GroupHom
    projection: GroupHom

    @classmethod
    def build(cls, A: FGAbelianGroup, B: FGAbelianGroup, cocycle_matrix) -> ExtensionClass:
        Rb = relation_basis(A)
        R = FGAbelianGroup.free(Rb.cols)
        chi = GroupHom(R, B, cocycle_matrix)
        b, g = B.generators, A.generators
        rel = IntMatrix.vstack([
            IntMatrix.hstack([B.relations, chi.matrix], rows=b),
            IntMatrix.hstack([IntMatrix.zeros(g, B.relations.cols), -Rb], rows=g),
        ], cols=B.relations.cols + Rb.cols)
        X = FGAbelianGroup(rel)
        inc = GroupHom(B, X, IntMatrix.vstack([IntMatrix.identity(b), IntMatrix.zeros(g, b)], cols=b))
        proj = GroupHom(X, A, IntMatrix.hstack([IntMatrix.zeros(g, b), IntMatrix.identity(g)], rows=g))
        return cls(A, B, chi, X, inc, proj)

    def is_exact(self) -> bool:
        """Injective inclusion, exact in the middle, surjective projection."""
        zero_in = GroupHom.zero(FGAbelianGroup.zero(), self.sub)
        zero_out = GroupHom.zero(self.quotient, FGAbelianGroup.zero())
        return (is_exact_at(zero_in, self.inclusion)
                and is_exact_at(self.inclusion, self.projection)
                and is_exact_at(self.projection, zero_out))

    def to_json(self) -> dict:
        from .jsonio import group_to_json

        return {"quotient": group_to_json(self.quotient, canonical=False),
                "sub": group_to_json(self.sub, canonical=False),
                "cocycle": {"matrix": self.cocycle.matrix.tolist()},
                "middle": group_to_json(self.middle)}


def relation_basis(A: FGAbelianGroup) -> IntMatrix:
    return lattice_basis(A.relations)


def ext_cokernel(A: FGAbelianGroup, B: FGAbelianGroup) -> GroupHom:
    """Projection ``Hom(R, B) -> Ext^1(A, B)`` for the presentation ``R -> Z^g -> A``.

    ``Hom(R, B)`` is ``B^k`` (one copy per relation basis vector) and the
    image of ``Hom(Z^g, B) = B^g`` is cut out by restriction.
    """
    Rb = relation_basis(A)
    k, g, b = Rb.cols, A.generators, B.generators
    Bk = direct_sum(*([B] * k))
    Bg = direct_sum(*([B] * g))
    rows = [[0] * (g * b) for _ in range(k * b)]
    for j in range(k):
        for i in range(g):
            c = Rb[i, j]
            if c:
                for t in range(b):
                    rows[j * b + t][i * b + t] = c
    restriction = GroupHom(Bg, Bk, IntMatrix.from_rows(rows, g * b))
    return kernel_image_cokernel(restriction).cokernel_projection


def extension_classes(A: FGAbelianGroup, B: FGAbelianGroup, config: ExtensionConfig = ExtensionConfig()):
    """One :class:`ExtensionClass` per Baer class, in a deterministic order."""
    proj = ext_cokernel(A, B)
    E = proj.codomain
    size = E.order
    if size > config.enumeration_bound:
        raise ExtensionBoundError(size, config.enumeration_bound)
    k, b = relation_basis(A).cols, B.generators
    for v in E.elements():
        C = IntMatrix.from_columns([v[j * b:(j + 1) * b] for j in range(k)], b)
        yield ExtensionClass.build(A, B, C)


def extension_middles(A: FGAbelianGroup, B: FGAbelianGroup,
                      config: ExtensionConfig = ExtensionConfig()) -> dict[tuple, ExtensionClass]:
    """Middle iso-classes of extensions ``0 -> B -> X -> A -> 0``.

    Keys are canonical forms ``(rank, torsion)``; each value is the first
    extension class found with that middle.
    """
    out: dict[tuple, ExtensionClass] = {}
    for e in extension_classes(A, B, config):
        out.setdefault(e.middle.canonical, e)
    return out


class SplitVerdict(enum.Enum):
    NONSPLIT = "Nonsplit"
    SPLIT_POSSIBLE = "SplitPossible"

    def __str__(self):
        return self.value


def split_test(ext: FGAbelianGroup, hom: FGAbelianGroup, middle: FGAbelianGroup) -> SplitVerdict:
    """``Nonsplit`` when ``middle`` is not ``ext ⊕ hom``; otherwise undecided.

    A split sequence ``ext -> middle -> hom`` forces ``middle ≅ ext ⊕ hom``,
    so a mismatch certifies non-splitting.  A match certifies nothing about
    any particular sequence.
    """
    if is_isomorphic(middle, direct_sum(ext, hom)):
        return SplitVerdict.SPLIT_POSSIBLE
    return SplitVerdict.NONSPLIT


def pext_fg_is_zero(A: FGAbelianGroup, B: FGAbelianGroup) -> bool:
    """Pure extensions of a finitely generated group all split, so Pext vanishes."""
    return True
