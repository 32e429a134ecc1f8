"""Total six-term invariants: integral layer plus mod-n layers with Bocksteins.

For each coefficient ``n`` a layer carries a six-term complex of mod-n
groups, reductions ``rho_p : G_p -> G^n_p`` and Bocksteins
``beta_p : G^n_p -> G_{p+3}``.  :func:`hom_lambda` solves for all maps of
total invariants commuting with every six-term map, every ``rho`` and
every ``beta`` at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    direct_sum_hom,
    is_exact_at,
    kernel_image_cokernel,
    tensor_cyclic,
)
from .homsystem import HomSolution, HomSystem, Term
from .matrix import IntMatrix
from .sixcomplex import (
    ComplexHom,
    SixTermComplex,
    add_complex_constraints,
    check_chain,
    check_exact,
    direct_sum_complex,
    suspend,
)


@dataclass(frozen=True)
class CoefficientLayer:
    complex: SixTermComplex
    rho: tuple[GroupHom, ...]
    beta: tuple[GroupHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.rho) != 6 or len(self.beta) != 6:
            raise ValueError("a coefficient layer needs six rho and six beta maps")


@dataclass(frozen=True)
class TotalSixInvariant:
    integral: SixTermComplex
    coefficients: Mapping[int, CoefficientLayer] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", dict(sorted(self.coefficients.items())))
        G = self.integral.groups
        for n, layer in self.coefficients.items():
            if n < 2:
                raise ValueError("coefficients must be >= 2")
            for p in range(6):
                r, b = layer.rho[p], layer.beta[p]
                if r.domain != G[p] or r.codomain != layer.complex.groups[p]:
                    raise ValueError(f"rho_{p} for n={n} has the wrong ends")
                if b.domain != layer.complex.groups[p] or b.codomain != G[(p + 3) % 6]:
                    raise ValueError(f"beta_{p} for n={n} has the wrong ends")

    @property
    def coefficient_set(self) -> frozenset[int]:
        return frozenset(self.coefficients)

    def __hash__(self):
        return hash((self.integral, tuple(self.coefficients.items())))


class Violation(NamedTuple):
    kind: str
    position: int
    coefficient: int | None
    detail: str = ""

    def __str__(self):
        where = f"position {self.position}" + (f", n={self.coefficient}" if self.coefficient else "")
        return f"{self.kind} at {where}" + (f": {self.detail}" if self.detail else "")


def bockstein_cycle(inv: TotalSixInvariant, n: int, p: int) -> list[GroupHom]:
    """The six maps ``G_p -n-> G_p -rho-> G^n_p -beta-> G_{p+3} -n-> ... -beta-> G_p``."""
    G = inv.integral.groups
    L = inv.coefficients[n]
    q = (p + 3) % 6
    return [GroupHom.multiplication(G[p], n), L.rho[p], L.beta[p],
            GroupHom.multiplication(G[q], n), L.rho[q], L.beta[q]]


def validate(inv: TotalSixInvariant) -> list[Violation]:
    """Every violated chain, exactness, Bockstein or naturality condition."""
    out: list[Violation] = []

    def complex_checks(c: SixTermComplex, n):
        if not check_chain(c):
            for p in range(6):
                if not (c.maps[(p + 1) % 6] @ c.maps[p]).is_zero():
                    out.append(Violation("chain", p, n))
        if c.exact:
            out.extend(Violation("exactness", p, n) for p, ok in enumerate(check_exact(c)) if not ok)

    complex_checks(inv.integral, None)
    f = inv.integral.maps
    for n, L in inv.coefficients.items():
        complex_checks(L.complex, n)
        fn = L.complex.maps
        for p in range(3):
            cyc = bockstein_cycle(inv, n, p)
            for i in range(6):
                if not is_exact_at(cyc[i - 1], cyc[i]):
                    node = ["G", "G", "G^n", "G", "G", "G^n"][i]
                    pos = p if i < 3 else (p + 3) % 6
                    out.append(Violation("bockstein-exactness", pos, n, f"at {node}_{pos}"))
        for p in range(6):
            q = (p + 1) % 6
            if fn[p] @ L.rho[p] != L.rho[q] @ f[p]:
                out.append(Violation("rho-naturality", p, n))
            if f[(p + 3) % 6] @ L.beta[p] != L.beta[q] @ fn[p]:
                out.append(Violation("beta-naturality", p, n))
    return out


def is_valid(inv: TotalSixInvariant) -> bool:
    return not validate(inv)


class TorsionError(ValueError):
    pass


def total_from_free(c: SixTermComplex, coeffs: Iterable[int]) -> TotalSixInvariant:
    """Total invariant of a complex with torsion-free groups.

    Mod-n groups are ``G_p ⊗ Z_n`` with the induced maps, ``rho`` is
    reduction and ``beta`` vanishes.
    """
    for p, G in enumerate(c.groups):
        if not G.is_torsion_free():
            raise TorsionError(f"G_{p} = {G} has torsion; supply coefficient data explicitly")
    layers = {}
    for n in coeffs:
        gs = [tensor_cyclic(G, n) for G in c.groups]
        modn = SixTermComplex(tuple(gs), tuple(GroupHom(gs[p], gs[(p + 1) % 6], c.maps[p].matrix)
                                               for p in range(6)), c.exact)
        rho = tuple(GroupHom(c.groups[p], gs[p], IntMatrix.identity(c.groups[p].generators))
                    for p in range(6))
        beta = tuple(GroupHom.zero(gs[p], c.groups[(p + 3) % 6]) for p in range(6))
        layers[n] = CoefficientLayer(modn, rho, beta)
    return TotalSixInvariant(c, layers)


def suspend_total(inv: TotalSixInvariant) -> TotalSixInvariant:
    rot = lambda xs: tuple(xs[(p + 3) % 6] for p in range(6))  # noqa: E731
    return TotalSixInvariant(
        suspend(inv.integral),
        {n: CoefficientLayer(suspend(L.complex), rot(L.rho), rot(L.beta))
         for n, L in inv.coefficients.items()})


def direct_sum_total(inv1: TotalSixInvariant, inv2: TotalSixInvariant) -> TotalSixInvariant:
    shared = inv1.coefficient_set & inv2.coefficient_set
    layers = {}
    for n in sorted(shared):
        a, b = inv1.coefficients[n], inv2.coefficients[n]
        layers[n] = CoefficientLayer(
            direct_sum_complex(a.complex, b.complex),
            tuple(direct_sum_hom(x, y) for x, y in zip(a.rho, b.rho)),
            tuple(direct_sum_hom(x, y) for x, y in zip(a.beta, b.beta)))
    return TotalSixInvariant(direct_sum_complex(inv1.integral, inv2.integral), layers)


# ---------------------------------------------------------------------------
# Hom_Lambda


@dataclass(frozen=True)
class LambdaHom:
    source: TotalSixInvariant
    target: TotalSixInvariant
    integral: ComplexHom
    layers: Mapping[int, ComplexHom]

    def __post_init__(self):
        object.__setattr__(self, "layers", dict(sorted(self.layers.items())))
        bad = failing_bockstein_squares(self)
        if bad:
            raise ValueError(f"Bockstein squares fail: {bad}")

    def __add__(self, other: LambdaHom) -> LambdaHom:
        return LambdaHom(self.source, self.target, self.integral + other.integral,
                         {n: self.layers[n] + other.layers[n] for n in self.layers})

    def __rmul__(self, k: int) -> LambdaHom:
        return LambdaHom(self.source, self.target, k * self.integral,
                         {n: k * h for n, h in self.layers.items()})

    @classmethod
    def identity(cls, inv: TotalSixInvariant, coeffs: Iterable[int] | None = None) -> LambdaHom:
        coeffs = inv.coefficient_set if coeffs is None else coeffs
        return cls(inv, inv, ComplexHom.identity(inv.integral),
                   {n: ComplexHom.identity(inv.coefficients[n].complex) for n in coeffs})

    @classmethod
    def zero(cls, inv1, inv2, coeffs: Iterable[int]) -> LambdaHom:
        return cls(inv1, inv2, ComplexHom.zero(inv1.integral, inv2.integral),
                   {n: ComplexHom.zero(inv1.coefficients[n].complex, inv2.coefficients[n].complex)
                    for n in coeffs})

    def all_components(self) -> list[GroupHom]:
        out = list(self.integral.components)
        for h in self.layers.values():
            out.extend(h.components)
        return out


def failing_bockstein_squares(h: LambdaHom) -> list[tuple[str, int, int]]:
    bad = []
    phi = h.integral.components
    for n, psi_c in h.layers.items():
        psi = psi_c.components
        A, B = h.source.coefficients[n], h.target.coefficients[n]
        for p in range(6):
            if psi[p] @ A.rho[p] != B.rho[p] @ phi[p]:
                bad.append(("rho", p, n))
            if phi[(p + 3) % 6] @ A.beta[p] != B.beta[p] @ psi[p]:
                bad.append(("beta", p, n))
    return bad


class MissingCoefficientError(KeyError):
    pass


def _resolve_coeffs(inv1, inv2, coeffs):
    if coeffs is None:
        return sorted(inv1.coefficient_set & inv2.coefficient_set)
    coeffs = sorted(set(coeffs))
    missing = [n for n in coeffs if n not in inv1.coefficients or n not in inv2.coefficients]
    if missing:
        raise MissingCoefficientError(f"coefficients {missing} are not present in both invariants")
    return coeffs


class LambdaHomGroup(NamedTuple):
    group: FGAbelianGroup
    basis: list
    solution: HomSolution
    coefficients: tuple[int, ...]


def hom_lambda(inv1: TotalSixInvariant, inv2: TotalSixInvariant,
               coeffs: Iterable[int] | None = None) -> LambdaHomGroup:
    """All maps of total invariants over the chosen coefficients.

    Unknowns are the six integral components and six components per
    coefficient; constraints are the integral and mod-n six-term squares,
    the ``rho`` squares and the ``beta`` squares.
    """
    coeffs = _resolve_coeffs(inv1, inv2, coeffs)
    system = HomSystem()
    c1, c2 = inv1.integral, inv2.integral
    phi = [system.add_variable(a, b) for a, b in zip(c1.groups, c2.groups)]
    add_complex_constraints(system, c1, c2, phi, label="integral ")
    for n in coeffs:
        A, B = inv1.coefficients[n], inv2.coefficients[n]
        psi = [system.add_variable(a, b) for a, b in zip(A.complex.groups, B.complex.groups)]
        add_complex_constraints(system, A.complex, B.complex, psi, label=f"mod {n} ")
        for p in range(6):
            system.add_constraint(c1.groups[p], B.complex.groups[p],
                                  [Term(psi[p], pre=A.rho[p]), Term(phi[p], post=B.rho[p], coef=-1)],
                                  label=f"rho {p} mod {n}")
            q = (p + 3) % 6
            system.add_constraint(A.complex.groups[p], c2.groups[q],
                                  [Term(phi[q], pre=A.beta[p]), Term(psi[p], post=B.beta[p], coef=-1)],
                                  label=f"beta {p} mod {n}")
    sol = system.solve()
    basis = [_to_lambda(inv1, inv2, coeffs, b) for b in sol.basis]
    return LambdaHomGroup(sol.group, basis, sol, tuple(coeffs))


def _to_lambda(inv1, inv2, coeffs, comps: Sequence[GroupHom]) -> LambdaHom:
    integral = ComplexHom(inv1.integral, inv2.integral, comps[:6])
    layers = {n: ComplexHom(inv1.coefficients[n].complex, inv2.coefficients[n].complex,
                            comps[6 * (i + 1):6 * (i + 2)])
              for i, n in enumerate(coeffs)}
    return LambdaHom(inv1, inv2, integral, layers)


def lambda_element(result: LambdaHomGroup, coeffs: Sequence[int]) -> LambdaHom:
    """``sum coeffs[i] * basis[i]`` as a :class:`LambdaHom`."""
    b = result.basis[0] if result.basis else None
    comps = result.solution.canonical_element(coeffs)
    if b is None:
        raise ValueError("the Hom group is trivial")
    return _to_lambda(b.source, b.target, result.coefficients, comps)


def restriction_to_integral(h: LambdaHom) -> ComplexHom:
    return h.integral


def restriction_map(inv1: TotalSixInvariant, inv2: TotalSixInvariant,
                    coeffs: Iterable[int] | None = None) -> GroupHom:
    """The forgetful map ``Hom_Lambda -> Hom_Z6`` as a homomorphism of solution groups."""
    from .sixcomplex import hom_z6_solution

    lam = hom_lambda(inv1, inv2, coeffs)
    z6 = hom_z6_solution(inv1.integral, inv2.integral)
    src = lam.solution.group
    cols = []
    for j in range(src.generators):
        comps = lam.solution.element([int(i == j) for i in range(src.generators)])
        z = z6.coordinates(comps[:6])
        assert z is not None
        cols.append(z)
    return GroupHom(src, z6.group, IntMatrix.from_columns(cols, z6.group.generators))


def kernel_of_restriction(inv1: TotalSixInvariant, inv2: TotalSixInvariant,
                          coeffs: Iterable[int] | None = None) -> FGAbelianGroup:
    """Elements of ``Hom_Lambda`` whose integral part vanishes."""
    return kernel_image_cokernel(restriction_map(inv1, inv2, coeffs)).kernel.canonical_group()


def is_isomorphism_lambda(h: LambdaHom) -> bool:
    """Whether every component is bijective.

    On genuine invariants an integral isomorphism always promotes (the
    Bockstein sequences and the five lemma force the mod-n parts); the
    assertion below guards that on validated inputs.
    """
    verdict = all(phi.is_isomorphism() for phi in h.all_components())
    if h.integral.is_isomorphism() and not verdict and is_valid(h.source) and is_valid(h.target):
        raise AssertionError("integral isomorphism did not promote on validated invariants")
    return verdict
