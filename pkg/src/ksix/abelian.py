"""Finitely generated abelian groups, their elements and homomorphisms.

A group is always a cokernel: ``Z^g`` modulo the lattice spanned by the
columns of a ``g x k`` relation matrix.  Structure (free rank, invariant
factors) comes from the Smith form of that matrix and is computed lazily.

>>> G = FGAbelianGroup.from_invariants(1, [2, 4])
>>> str(G)
'Z ⊕ Z_2 ⊕ Z_4'
>>> str(hom_group(cyclic(4), cyclic(6))[0])
'Z_2'
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

from sympy import factorint

from .matrix import (
    IntMatrix,
    as_matrix,
    kernel_basis,
    lattice_basis,
    lattice_contains,
    smith_decomposition,
    solve_integer_matrix,
)

INFINITY = math.inf


class IllDefinedHomomorphism(ValueError):
    """A matrix does not carry domain relations into codomain relations."""


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^g / (column lattice of relations)``; ``g = relations.rows``."""

    relations: IntMatrix

    # -- construction ---------------------------------------------------
    @classmethod
    def presented(cls, relations, generators: int | None = None) -> FGAbelianGroup:
        rel = as_matrix(relations)
        if generators is not None and rel.rows == 0 and rel.cols == 0:
            rel = IntMatrix.zeros(generators, 0)
        if generators is not None and rel.rows != generators:
            raise ValueError("relation matrix needs one row per generator")
        return cls(rel)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> FGAbelianGroup:
        """``Z^rank ⊕ Z_{t1} ⊕ ...``; torsion orders need not form a chain."""
        if rank < 0 or any(t < 1 for t in torsion):
            raise ValueError("rank must be >= 0 and torsion orders >= 1")
        g = rank + len(torsion)
        cols = []
        for i, t in enumerate(torsion):
            c = [0] * g
            c[rank + i] = t
            cols.append(c)
        return cls(IntMatrix.from_columns(cols, g))

    @classmethod
    def free(cls, rank: int) -> FGAbelianGroup:
        return cls(IntMatrix.zeros(rank, 0))

    @classmethod
    def zero(cls) -> FGAbelianGroup:
        return cls.free(0)

    # -- structure ------------------------------------------------------
    @property
    def generators(self) -> int:
        return self.relations.rows

    @cached_property
    def smith(self):
        return smith_decomposition(self.relations)

    @cached_property
    def cyclic_orders(self) -> tuple[int, ...]:
        """Order of each canonical coordinate (0 = infinite, 1 = trivial)."""
        d = list(self.smith.diagonal)
        return tuple(d + [0] * (self.generators - len(d)))

    @cached_property
    def canonical(self) -> tuple[int, tuple[int, ...]]:
        rank = sum(1 for d in self.cyclic_orders if d == 0)
        return rank, tuple(d for d in self.cyclic_orders if d > 1)

    @property
    def rank(self) -> int:
        return self.canonical[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.canonical[1]

    @property
    def order(self):
        return INFINITY if self.rank else math.prod(self.torsion)

    def is_finite(self) -> bool:
        return self.rank == 0

    def is_trivial(self) -> bool:
        return self.canonical == (0, ())

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def is_cyclic(self) -> bool:
        r, t = self.canonical
        return r + len(t) <= 1

    def canonical_group(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_invariants(*self.canonical)

    def elementary_divisors(self) -> dict[int, list[int]]:
        """Prime -> exponents of the prime-power cyclic summands, descending."""
        out: dict[int, list[int]] = {}
        for d in self.torsion:
            for p, e in factorint(d).items():
                out.setdefault(p, []).append(e)
        return {p: sorted(es, reverse=True) for p, es in out.items()}

    # -- elements -------------------------------------------------------
    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Normal form of ``v`` in canonical coordinates; equal iff congruent."""
        y = self.smith.U.apply(v)
        return tuple(a % d if d else a for a, d in zip(y, self.cyclic_orders))

    def is_relation(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def element(self, coords: Sequence[int]) -> GroupElement:
        return GroupElement(self, tuple(coords))

    def from_canonical(self, y: Sequence[int]) -> tuple[int, ...]:
        return self.smith.U_inv.apply(y)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Every element once, as generator coordinates (finite groups only)."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        ranges = [range(d) if d > 1 else range(1) for d in self.cyclic_orders]
        for y in itertools.product(*ranges):
            yield self.from_canonical(y)

    def __str__(self) -> str:
        return render_invariants(*self.canonical)


def render_invariants(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts += [f"Z_{d}" for d in torsion]
    return " ⊕ ".join(parts) if parts else "0"


def cyclic(n: int) -> FGAbelianGroup:
    """``Z_n``, with ``cyclic(0) = Z``."""
    if n == 0:
        return FGAbelianGroup.free(1)
    return FGAbelianGroup.from_invariants(0, [abs(n)])


Z = FGAbelianGroup.free(1)
ZERO = FGAbelianGroup.zero()


@dataclass(frozen=True, eq=False)
class GroupElement:
    parent: FGAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.parent.generators:
            raise ValueError("coordinate vector has the wrong length")

    def __eq__(self, other):
        if not isinstance(other, GroupElement) or other.parent != self.parent:
            return NotImplemented
        return self.parent.reduce(self.coords) == other.parent.reduce(other.coords)

    def __hash__(self):
        return hash(self.parent.reduce(self.coords))

    def __add__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.parent, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.parent, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return self.parent.is_relation(self.coords)

    def order(self):
        return element_order(self)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism given on generators; ``matrix`` is codomain x domain gens."""

    domain: FGAbelianGroup
    codomain: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.codomain.generators, self.domain.generators):
            raise ValueError(
                f"matrix shape {m.shape} does not fit "
                f"{self.domain.generators} -> {self.codomain.generators} generators")
        bad = [c for c in (m @ self.domain.relations).columns() if not self.codomain.is_relation(c)]
        if bad:
            raise IllDefinedHomomorphism("matrix does not respect the domain relations")

    @classmethod
    def identity(cls, G: FGAbelianGroup) -> GroupHom:
        return cls(G, G, IntMatrix.identity(G.generators))

    @classmethod
    def zero(cls, G: FGAbelianGroup, H: FGAbelianGroup) -> GroupHom:
        return cls(G, H, IntMatrix.zeros(H.generators, G.generators))

    @classmethod
    def multiplication(cls, G: FGAbelianGroup, k: int) -> GroupHom:
        return cls(G, G, IntMatrix.identity(G.generators).scale(k))

    def __call__(self, x) -> GroupElement:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        return GroupElement(self.codomain, self.matrix.apply(coords))

    def __matmul__(self, other: GroupHom) -> GroupHom:
        """Composition ``self ∘ other``."""
        if other.codomain != self.domain:
            raise ValueError("composition of non-composable homomorphisms")
        return GroupHom(other.domain, self.codomain, self.matrix @ other.matrix)

    def _same_ends(self, other: GroupHom):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("homomorphisms have different domain or codomain")

    def __add__(self, other: GroupHom) -> GroupHom:
        self._same_ends(other)
        return GroupHom(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: GroupHom) -> GroupHom:
        self._same_ends(other)
        return GroupHom(self.domain, self.codomain, self.matrix - other.matrix)

    def __neg__(self) -> GroupHom:
        return GroupHom(self.domain, self.codomain, -self.matrix)

    def __rmul__(self, k: int) -> GroupHom:
        return GroupHom(self.domain, self.codomain, self.matrix.scale(k))

    def _key(self):
        return tuple(self.codomain.reduce(c) for c in self.matrix.columns())

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if self.domain != other.domain or self.codomain != other.codomain:
            return False
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def is_zero(self) -> bool:
        return all(self.codomain.is_relation(c) for c in self.matrix.columns())

    def is_injective(self) -> bool:
        return kernel_image_cokernel(self).kernel.is_trivial()

    def is_surjective(self) -> bool:
        return kernel_image_cokernel(self).cokernel.is_trivial()

    def is_isomorphism(self) -> bool:
        kic = kernel_image_cokernel(self)
        return kic.kernel.is_trivial() and kic.cokernel.is_trivial()


class KernelImageCokernel(NamedTuple):
    kernel: FGAbelianGroup
    kernel_inclusion: GroupHom
    image: FGAbelianGroup
    image_inclusion: GroupHom
    cokernel: FGAbelianGroup
    cokernel_projection: GroupHom


def preimage_lattice(f: GroupHom) -> IntMatrix:
    """Basis (columns) of ``{x in Z^a : f(x) = 0}`` in domain generator coordinates."""
    a = f.domain.generators
    K = kernel_basis(IntMatrix.hstack([f.matrix, f.codomain.relations], rows=f.codomain.generators))
    return lattice_basis(K.submatrix(range(a), range(K.cols)))


def kernel_image_cokernel(f: GroupHom) -> KernelImageCokernel:
    A, B = f.domain, f.codomain
    L = preimage_lattice(f)
    rel = solve_integer_matrix(L, A.relations)
    assert rel is not None, "domain relations lie in the kernel lattice"
    ker = FGAbelianGroup(rel)
    im = FGAbelianGroup(L)
    coker = FGAbelianGroup(IntMatrix.hstack([B.relations, f.matrix], rows=B.generators))
    return KernelImageCokernel(
        ker, GroupHom(ker, A, L),
        im, GroupHom(im, B, f.matrix),
        coker, GroupHom(B, coker, IntMatrix.identity(B.generators)),
    )


def image_contains(f: GroupHom, y: Sequence[int]) -> bool:
    """Whether ``y`` (codomain coordinates) lies in the image of ``f``."""
    B = f.codomain
    return lattice_contains(IntMatrix.hstack([f.matrix, B.relations], rows=B.generators), y)


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """``im f == ker g`` for ``A -f-> B -g-> C`` (mutual lattice membership)."""
    if f.codomain != g.domain:
        raise ValueError("maps are not composable")
    if not (g @ f).is_zero():
        return False
    return all(image_contains(f, c) for c in preimage_lattice(g).columns())


def is_isomorphic(G: FGAbelianGroup, H: FGAbelianGroup) -> bool:
    return G.canonical == H.canonical


def exponent(G: FGAbelianGroup):
    """Least ``N >= 1`` with ``N G = 0``; ``math.inf`` when ``G`` is infinite."""
    if G.rank:
        return INFINITY
    return G.torsion[-1] if G.torsion else 1


def element_order(x: GroupElement):
    y = x.parent.reduce(x.coords)
    out = 1
    for a, d in zip(y, x.parent.cyclic_orders):
        if d == 0:
            if a:
                return INFINITY
        elif a:
            out = math.lcm(out, d // math.gcd(a, d))
    return out


# ---------------------------------------------------------------------------
# sums


def direct_sum(*groups: FGAbelianGroup) -> FGAbelianGroup:
    return FGAbelianGroup(IntMatrix.block_diag([G.relations for G in groups]))


def direct_sum_maps(*groups: FGAbelianGroup):
    """``(sum, injections, projections)`` for a block presentation."""
    S = direct_sum(*groups)
    injections, projections = [], []
    offset = 0
    for G in groups:
        g = G.generators
        inj = [[int(i == offset + j) for j in range(g)] for i in range(S.generators)]
        M = IntMatrix.from_rows(inj, g)
        injections.append(GroupHom(G, S, M))
        projections.append(GroupHom(S, G, M.T))
        offset += g
    return S, injections, projections


def direct_sum_hom(*maps: GroupHom) -> GroupHom:
    return GroupHom(direct_sum(*(f.domain for f in maps)), direct_sum(*(f.codomain for f in maps)),
                    IntMatrix.block_diag([f.matrix for f in maps]))


def tensor_cyclic(G: FGAbelianGroup, n: int) -> FGAbelianGroup:
    """``G ⊗ Z_n`` in the same generators."""
    g = G.generators
    return FGAbelianGroup(IntMatrix.hstack([G.relations, IntMatrix.identity(g).scale(n)], rows=g))


def torsion_subgroup(G: FGAbelianGroup, n: int) -> FGAbelianGroup:
    """``{x : n x = 0}``, i.e. ``Tor(G, Z_n)``."""
    return kernel_image_cokernel(GroupHom.multiplication(G, n)).kernel


# ---------------------------------------------------------------------------
# Hom groups


class HomSpace:
    """``Hom(G, H)`` as a presented group with explicit coordinates.

    Both groups are diagonalized; each pair (canonical generator ``i`` of
    ``G``, canonical generator ``j`` of ``H``) contributes one cyclic
    summand generated by the map sending ``i`` to the smallest multiple of
    ``j`` that is allowed by the order of ``i``.
    """

    def __init__(self, G: FGAbelianGroup, H: FGAbelianGroup):
        self.domain, self.codomain = G, H
        a, b = G.cyclic_orders, H.cyclic_orders
        slots = []  # (i, j, step, order)
        for i, ai in enumerate(a):
            if ai == 1:
                continue
            for j, bj in enumerate(b):
                if bj == 1:
                    continue
                if ai == 0:
                    slots.append((i, j, 1, bj))
                elif bj:
                    c = math.gcd(ai, bj)
                    if c > 1:
                        slots.append((i, j, bj // c, c))
        self._slots = slots
        self.group = FGAbelianGroup.from_invariants(0, []) if not slots else FGAbelianGroup(
            IntMatrix.from_columns(
                [[o if k == s else 0 for k in range(len(slots))]
                 for s, (_, _, _, o) in enumerate(slots) if o],
                len(slots)))
        self.basis = [self.element([int(k == s) for k in range(len(slots))]) for s in range(len(slots))]

    @property
    def size(self) -> int:
        return len(self._slots)

    def element(self, coeffs: Sequence[int]) -> GroupHom:
        G, H = self.domain, self.codomain
        X = [[0] * G.generators for _ in range(H.generators)]
        for c, (i, j, step, _) in zip(coeffs, self._slots):
            X[j][i] += c * step
        Xc = IntMatrix.from_rows(X, G.generators)
        return GroupHom(G, H, H.smith.U_inv @ Xc @ G.smith.U)

    def coordinates(self, f: GroupHom) -> tuple[int, ...]:
        if f.domain != self.domain or f.codomain != self.codomain:
            raise ValueError("homomorphism is not in this Hom group")
        Xc = self.codomain.smith.U @ f.matrix @ self.domain.smith.U_inv
        out = []
        for i, j, step, order in self._slots:
            q, r = divmod(Xc[j, i], step)
            assert r == 0, "well-defined maps hit multiples of the slot step"
            out.append(q % order if order else q)
        return tuple(out)


def hom_group(G: FGAbelianGroup, H: FGAbelianGroup) -> tuple[FGAbelianGroup, list[GroupHom]]:
    """``Hom(G, H)`` with a generating list of homomorphisms."""
    space = HomSpace(G, H)
    return space.group, space.basis


# ---------------------------------------------------------------------------
# existence of epimorphisms / monomorphisms


def _layer_counts(G: FGAbelianGroup, p: int, k: int) -> int:
    """Number of invariant factors divisible by ``p^k``."""
    return sum(1 for d in G.torsion if d % p ** k == 0)


def _prime_layers(G: FGAbelianGroup, H: FGAbelianGroup):
    for p, es in (G.elementary_divisors() | H.elementary_divisors()).items():
        top = max(G.elementary_divisors().get(p, [0])[0], H.elementary_divisors().get(p, [0])[0])
        for k in range(1, top + 1):
            yield p, k


def exists_epimorphism(G: FGAbelianGroup, H: FGAbelianGroup) -> bool:
    """Whether some homomorphism ``G -> H`` is onto.

    Decided by counting: onto maps cannot raise the free rank, nor the
    dimension of any layer ``p^(k-1) X / p^k X`` (which is the free rank
    plus the number of invariant factors divisible by ``p^k``).
    """
    if H.rank > G.rank:
        return False
    return all(H.rank + _layer_counts(H, p, k) <= G.rank + _layer_counts(G, p, k)
               for p, k in _prime_layers(G, H))


def exists_monomorphism(G: FGAbelianGroup, H: FGAbelianGroup) -> bool:
    """Whether some homomorphism ``G -> H`` is one-to-one.

    Torsion must land in torsion, so the torsion of ``G`` has to embed in
    that of ``H`` layer by layer, and free rank cannot drop.
    """
    if G.rank > H.rank:
        return False
    return all(_layer_counts(G, p, k) <= _layer_counts(H, p, k) for p, k in _prime_layers(G, H))

