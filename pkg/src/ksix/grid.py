"""Resolve one unknown group in a diagram of exact sequences.

Every exact path through the unknown ``X`` is cut down, using kernels
and cokernels of the known maps next to it, to either a short exact
sequence ``0 -> B -> X -> A -> 0`` or a "quotient of C" marker.  The
candidates for ``X`` are the middle groups of the short exact constraints
(enumerated by Baer class), intersected and then filtered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence, Union

from .abelian import FGAbelianGroup, GroupHom, exists_epimorphism, exponent, is_exact_at, kernel_image_cokernel
from .homalg import ExtensionClass, ExtensionConfig, extension_middles


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    hom: GroupHom | None = None  # None: some map exists, not known


@dataclass
class DiagramSpec:
    nodes: Mapping[str, Union[FGAbelianGroup, _Unknown]]
    edges: Sequence[Edge]
    exact_paths: Sequence[Sequence[str]]
    unknown: str
    quotient_of: Sequence[FGAbelianGroup] = field(default_factory=list)
    exponent_divides: int | None = None

    def edge(self, a: str, b: str) -> Edge:
        """Edge ``a -> b``; edges touching a known zero group are implied."""
        for e in self.edges:
            if e.src == a and e.dst == b:
                return e
        ga, gb = self.nodes[a], self.nodes[b]
        if isinstance(ga, FGAbelianGroup) and isinstance(gb, FGAbelianGroup):
            if ga.is_trivial() or gb.is_trivial():
                return Edge(a, b, GroupHom.zero(ga, gb))
        if a == self.unknown or b == self.unknown:
            return Edge(a, b)
        raise InvalidDiagram(f"no edge {a} -> {b}")


class InvalidDiagram(ValueError):
    pass


class UnreducibleError(ValueError):
    def __init__(self, paths: list):
        super().__init__(f"cannot reduce exact paths through the unknown: {paths}")
        self.paths = paths


class ShortExact(NamedTuple):
    sub: FGAbelianGroup
    quotient: FGAbelianGroup
    path: tuple


class QuotientOf(NamedTuple):
    source: FGAbelianGroup
    path: tuple


Constraint = Union[ShortExact, QuotientOf]


def check_spec(spec: DiagramSpec) -> list[str]:
    """Problems with the known part of the diagram (empty when valid)."""
    problems = []
    unknowns = [k for k, v in spec.nodes.items() if v is UNKNOWN]
    if unknowns != [spec.unknown]:
        problems.append(f"exactly one unknown node required, found {unknowns}")
    for e in spec.edges:
        if e.src not in spec.nodes or e.dst not in spec.nodes:
            problems.append(f"edge {e.src} -> {e.dst} mentions an undeclared node")
            continue
        if e.hom is None:
            continue
        if spec.unknown in (e.src, e.dst):
            problems.append(f"edge {e.src} -> {e.dst} touches the unknown but carries a map")
        elif e.hom.domain != spec.nodes[e.src] or e.hom.codomain != spec.nodes[e.dst]:
            problems.append(f"edge {e.src} -> {e.dst} has a map with the wrong ends")
    if problems:
        return problems
    for path in spec.exact_paths:
        for a, b, c in zip(path, path[1:], path[2:]):
            if spec.unknown in (a, b, c):
                continue
            try:
                f, g = spec.edge(a, b).hom, spec.edge(b, c).hom
            except InvalidDiagram as exc:
                problems.append(str(exc))
                continue
            if f is not None and g is not None and not is_exact_at(f, g):
                problems.append(f"known sequence {a} -> {b} -> {c} is not exact at {b}")
    return problems


def _known(spec, node) -> FGAbelianGroup | None:
    g = spec.nodes[node]
    return g if isinstance(g, FGAbelianGroup) else None


def normalize(spec: DiagramSpec) -> list[Constraint]:
    problems = check_spec(spec)
    if problems:
        raise InvalidDiagram("; ".join(problems))
    X = spec.unknown
    out: list[Constraint] = [QuotientOf(C, ()) for C in spec.quotient_of]
    bad = []
    for path in spec.exact_paths:
        path = tuple(path)
        if X not in path:
            continue
        i = path.index(X)
        if path.count(X) > 1 or i == 0 or i == len(path) - 1:
            bad.append(path)
            continue
        # sub side: im(P1 -> X) = P1 / im(P2 -> P1)
        p1 = _known(spec, path[i - 1])
        sub, sub_quotient_of = None, None
        if p1.is_trivial():
            sub = FGAbelianGroup.zero()
        elif i >= 2:
            alpha = spec.edge(path[i - 2], path[i - 1]).hom
            if alpha is not None:
                sub = kernel_image_cokernel(alpha).cokernel.canonical_group()
            else:
                sub_quotient_of = p1
        else:
            sub_quotient_of = p1
        # quotient side: im(X -> N1) = ker(N1 -> N2)
        n1 = _known(spec, path[i + 1])
        quo = None
        if n1.is_trivial():
            quo = FGAbelianGroup.zero()
        elif i + 2 < len(path):
            delta = spec.edge(path[i + 1], path[i + 2]).hom
            if delta is not None:
                quo = kernel_image_cokernel(delta).kernel.canonical_group()
        if quo is None:
            bad.append(path)
        elif sub is not None:
            out.append(ShortExact(sub, quo, path))
        elif quo.is_trivial():
            out.append(QuotientOf(sub_quotient_of, path))
        else:
            bad.append(path)
    if bad:
        raise UnreducibleError(bad)
    return out


@dataclass
class SolveResult:
    classes: list[FGAbelianGroup]
    witnesses: dict[tuple, ExtensionClass]
    constraints: list[Constraint]

    @property
    def consistent(self) -> bool:
        return bool(self.classes)

    @property
    def unique(self) -> bool:
        return len(self.classes) == 1


def satisfies(X: FGAbelianGroup, c: Constraint, config: ExtensionConfig = ExtensionConfig()) -> bool:
    """Independent re-check of one normalized constraint."""
    if isinstance(c, QuotientOf):
        return exists_epimorphism(c.source, X)
    return X.canonical in extension_middles(c.quotient, c.sub, config)


def solve(spec: DiagramSpec, config: ExtensionConfig = ExtensionConfig()) -> SolveResult:
    constraints = normalize(spec)
    sess = [c for c in constraints if isinstance(c, ShortExact)]
    if not sess:
        raise UnreducibleError([c.path for c in constraints])
    candidates: dict[tuple, ExtensionClass] | None = None
    for c in sess:
        middles = extension_middles(c.quotient, c.sub, config)
        candidates = dict(middles) if candidates is None else {
            k: v for k, v in candidates.items() if k in middles}
    keep = {}
    for key, witness in candidates.items():
        X = FGAbelianGroup.from_invariants(*key)
        if not all(exists_epimorphism(c.source, X) for c in constraints if isinstance(c, QuotientOf)):
            continue
        if spec.exponent_divides is not None and (
                X.rank or spec.exponent_divides % exponent(X)):
            continue
        keep[key] = witness
    classes = [FGAbelianGroup.from_invariants(*k) for k in sorted(keep)]
    return SolveResult(classes, keep, constraints)
