"""Brute-force reference computations, independent of the library's
Smith-form machinery.  Finite abelian groups are modelled concretely as
tuples modulo a list of cyclic orders; everything is enumeration.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache


class Finite:
    """``Z_{m_1} x ... x Z_{m_k}``; elements are coded as integers ``0 .. order-1``."""

    def __init__(self, moduli):
        self.moduli = tuple(m for m in moduli if m != 1)
        tuples = list(itertools.product(*(range(m) for m in self.moduli)))
        index = {t: i for i, t in enumerate(tuples)}
        self.elements = list(range(len(tuples)))
        self.zero = 0
        self.table = [[index[tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))]
                       for b in tuples] for a in tuples]
        self.orders = [self._order(a) for a in self.elements]

    @property
    def order(self):
        return len(self.elements)

    def add(self, a, b):
        return self.table[a][b]

    def mul(self, k, a):
        x = 0
        for _ in range(k % self.orders[a]):
            x = self.table[x][a]
        return x

    def _order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def join(self, S, x):
        """Subgroup generated by ``S`` and ``x``: union of the cosets ``S + kx``."""
        T, y = set(S), x
        while y not in S:
            row = self.table[y]
            T.update(row[s] for s in S)
            y = self.table[y][x]
        return frozenset(T)

    def subgroups(self):
        subs = {frozenset([0])}
        frontier = list(subs)
        while frontier:
            S = frontier.pop()
            for x in self.elements:
                if x not in S:
                    T = self.join(S, x)
                    if T not in subs:
                        subs.add(T)
                        frontier.append(T)
        return subs

    def subgroups_isomorphic_to(self, torsion):
        """Subgroups ``K ≅ Z_{b_1} x ...``, built from independent elements of orders ``b_i``."""
        level = {frozenset([0])}
        for b in torsion:
            nxt = set()
            for K in level:
                for x in self.elements:
                    if self.orders[x] == b and x not in K:
                        T = self.join(K, x)
                        if len(T) == len(K) * b:
                            nxt.add(T)
            level = nxt
        return level


def profile(G: Finite, S=None):
    """Multiset of element orders; determines a finite abelian group up to isomorphism."""
    S = G.elements if S is None else S
    return tuple(sorted(Counter(G.orders[x] for x in S).items()))


def quotient_profile(G: Finite, K):
    reps, seen = [], set()
    for x in G.elements:
        if x not in seen:
            seen.update(G.table[x][k] for k in K)
            reps.append(x)
    out = Counter()
    for x in reps:
        k, y = 1, x
        while y not in K:
            y = G.table[y][x]
            k += 1
        out[k] += 1
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def finite(torsion: tuple) -> Finite:
    return Finite(torsion)


@lru_cache(maxsize=None)
def subgroup_profiles(torsion: tuple) -> frozenset:
    G = finite(torsion)
    return frozenset(profile(G, S) for S in G.subgroups())


@lru_cache(maxsize=None)
def quotient_profiles(torsion: tuple) -> frozenset:
    G = finite(torsion)
    return frozenset(quotient_profile(G, S) for S in G.subgroups())


def group_profile(torsion: tuple):
    return profile(finite(torsion))


# ---------------------------------------------------------------------------
# catalogue of small groups


def _chains(n, lo):
    """Invariant-factor chains d_1 | d_2 | ... with product n and d_1 >= lo."""
    if n == 1:
        yield ()
        return
    for d in range(max(lo, 2), n + 1):
        if n % d == 0:
            for rest in _chains(n // d, d):
                if not rest or rest[0] % d == 0:
                    yield (d,) + rest


def groups_up_to(N):
    """Torsion tuples of every abelian group of order ``<= N`` (``()`` is the trivial group)."""
    out = []
    for n in range(1, N + 1):
        out.extend(_chains(n, 2))
    return out


# ---------------------------------------------------------------------------
# homomorphisms between finite groups given by cyclic orders


def hom_count(src: tuple, dst: tuple) -> int:
    """``|Hom(Z_{a_1} x ..., H)|``: each generator goes to an element killed by its order."""
    H = finite(dst)
    out = 1
    for a in src:
        out *= sum(1 for h in H.elements if a % H.orders[h] == 0)
    return out


def exists_epi(src: tuple, dst: tuple) -> bool:
    return group_profile(dst) in quotient_profiles(src)


def exists_mono(src: tuple, dst: tuple) -> bool:
    return group_profile(src) in subgroup_profiles(dst)


def extension_middle_profiles(A: tuple, B: tuple) -> set:
    """Profiles of all ``X`` of order ``|A||B|`` having ``K ≅ B`` with ``X/K ≅ A``."""
    n = math.prod(A) * math.prod(B)
    pa = group_profile(A)
    out = set()
    for X in _chains(n, 2):
        G = finite(X)
        if any(quotient_profile(G, K) == pa for K in G.subgroups_isomorphic_to(B)):
            out.add(group_profile(X))
    return out


# ---------------------------------------------------------------------------
# Cuntz-Krieger: first-return path counting


def first_return_counts(M, max_len):
    """Per vertex, number of closed walks returning to it for the first time (capped at 2)."""
    n = len(M)
    counts = []
    for v in range(n):
        total = 0
        # walks v -> ... -> v not passing v in between, with multiplicities
        layer = Counter({v: 1})
        for _ in range(max_len):
            nxt = Counter()
            for u, c in layer.items():
                for w in range(n):
                    if M[u][w]:
                        if w == v:
                            total += c * M[u][w]
                        else:
                            nxt[w] += c * M[u][w]
            layer = nxt
            if total >= 2 or not layer:
                break
        counts.append(min(total, 2))
    return counts


def condition_by_return_paths(M) -> bool:
    """Every vertex on a cycle has at least two first-return paths."""
    return all(c != 1 for c in first_return_counts(M, 2 * len(M)))


def hereditary_by_enumeration(M):
    n = len(M)
    out = []
    for r in range(1, n):
        for H in itertools.combinations(range(n), r):
            S = set(H)
            if all(w in S for v in S for w in range(n) if M[v][w]):
                out.append(frozenset(S))
    return out


# ---------------------------------------------------------------------------
# six-term complexes with cyclic vertex groups: chain maps and Ext by enumeration


def _hom_cyclic(a, b):
    """Images ``k`` of the generator for maps ``Z_a -> Z_b`` (0 = infinite cyclic)."""
    if b == 1:
        return [0]
    if a == 0:
        return list(range(b))
    return [k for k in range(b) if (a * k) % b == 0]


def chain_map_count(M, N):
    """``|Hom(M, N)|`` for complexes given as (orders, multipliers) with finite ``N``.

    Vertex groups are cyclic: order 0 means ``Z``, 1 means trivial.  The map
    ``v -> v+1`` multiplies the generator by the given integer.
    """
    (ma, mf), (na, nf) = M, N
    choices = [_hom_cyclic(ma[v], na[v]) for v in range(6)]
    count = 0
    for phi in itertools.product(*choices):
        ok = True
        for v in range(6):
            w = (v + 1) % 6
            b = na[w]
            if b == 1:
                continue
            lhs = (phi[w] * mf[v]) % b
            rhs = (nf[v] * phi[v]) % b
            if lhs != rhs:
                ok = False
                break
        count += ok
    return count


def ext1_order_free_source(M, N):
    """``|Ext^1(M, N)|`` for ``M`` with vertex groups ``Z`` or 0 and finite cyclic ``N``.

    Uses the start of the standard resolution of the six-cycle with its
    length-two zero relations: vertices, arrows, relations.  With free
    vertex groups every term is projective, so ``Ext^1`` is the middle
    cohomology of ``C^0 -> C^1 -> C^2`` where ``C^0 = ⊕ Hom(M_v, N_v)``,
    ``C^1 = ⊕ Hom(M_v, N_{v+1})`` and ``C^2 = ⊕ Hom(M_v, N_{v+2})``.
    """
    (ma, mf), (na, nf) = M, N
    assert all(a in (0, 1) for a in ma)

    def hom_vals(v, w):
        return list(range(na[w])) if ma[v] == 0 and na[w] != 1 else [0]

    C0 = list(itertools.product(*(hom_vals(v, v) for v in range(6))))
    C1 = list(itertools.product(*(hom_vals(v, (v + 1) % 6) for v in range(6))))

    def d0(phi):
        out = []
        for v in range(6):
            w = (v + 1) % 6
            b = na[w]
            out.append((phi[w] * mf[v] - nf[v] * phi[v]) % b if b != 1 and ma[v] == 0 else 0)
        return tuple(out)

    def d1(psi):
        out = []
        for v in range(6):
            w, u = (v + 1) % 6, (v + 2) % 6
            b = na[u]
            out.append((nf[w] * psi[v] + psi[w] * mf[v]) % b if b != 1 and ma[v] == 0 else 0)
        return tuple(out)

    zero2 = tuple([0] * 6)
    cocycles = sum(1 for psi in C1 if d1(psi) == zero2)
    boundaries = len({d0(phi) for phi in C0})
    assert all(d1(d0(phi)) == zero2 for phi in C0)
    assert cocycles % boundaries == 0
    return cocycles // boundaries


def diagram_hom_count(src, dst, arrows):
    """Number of families of maps ``Z_{src[i]} -> Z_{dst[i]}`` commuting with every arrow.

    ``arrows`` holds ``(i, j, m, k)``: in the source the generator of node
    ``i`` goes to ``m`` times that of ``j``, in the target to ``k`` times.
    Orders: 0 = ``Z`` (sources only), 1 = trivial.  Backtracking over nodes.
    """
    nodes = len(src)
    choices = [_hom_cyclic(src[i], dst[i]) for i in range(nodes)]
    ready = [[] for _ in range(nodes)]
    for i, j, m, k in arrows:
        ready[max(i, j)].append((i, j, m, k))

    def ok(phi, i, j, m, k):
        b = dst[j]
        return b == 1 or (phi[j] * m - k * phi[i]) % b == 0

    def count(phi):
        t = len(phi)
        if t == nodes:
            return 1
        total = 0
        for x in choices[t]:
            phi.append(x)
            if all(ok(phi, *a) for a in ready[t]):
                total += count(phi)
            phi.pop()
        return total

    return count([])
