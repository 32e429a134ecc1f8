import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ksix import catalog
from ksix.abelian import (
    FGAbelianGroup,
    GroupHom,
    IllDefinedHomomorphism,
    cyclic,
    direct_sum,
    kernel_image_cokernel,
)
from ksix.coeff import (
    CoefficientLayer,
    LambdaHom,
    MissingCoefficientError,
    TorsionError,
    TotalSixInvariant,
    direct_sum_total,
    hom_lambda,
    is_isomorphism_lambda,
    is_valid,
    kernel_of_restriction,
    lambda_element,
    restriction_map,
    restriction_to_integral,
    suspend_total,
    total_from_free,
    validate,
)
from ksix.sixcomplex import ComplexHom, SixTermComplex, check_chain, hom_z6

Z = FGAbelianGroup.free(1)
ZERO = FGAbelianGroup.zero()


def inv(name, n):
    return catalog.get(name, n).invariant


def group_of(a):
    return ZERO if a == 1 else cyclic(a)


def hom_or_none(src, dst, m):
    if src.generators == 0 or dst.generators == 0:
        return GroupHom.zero(src, dst)
    try:
        return GroupHom(src, dst, [[m]])
    except IllDefinedHomomorphism:
        return None


def cyclic_total(orders, mod_orders, f, fn, rho, beta, n):
    """A total invariant with cyclic groups everywhere; maps are given by multipliers.

    Only shapes are enforced, so this exercises the solver on arbitrary data.
    """
    G = [group_of(a) for a in orders]
    Gn = [group_of(a) for a in mod_orders]
    maps = [hom_or_none(G[p], G[(p + 1) % 6], f[p]) for p in range(6)]
    maps_n = [hom_or_none(Gn[p], Gn[(p + 1) % 6], fn[p]) for p in range(6)]
    r = [hom_or_none(G[p], Gn[p], rho[p]) for p in range(6)]
    b = [hom_or_none(Gn[p], G[(p + 3) % 6], beta[p]) for p in range(6)]
    layer = CoefficientLayer(SixTermComplex(tuple(Gn), tuple(maps_n)), r, b)
    return TotalSixInvariant(SixTermComplex(tuple(G), tuple(maps)), {n: layer})


def arrows_of(orders, mod_orders, f, fn, rho, beta):
    """Arrow list on 12 nodes (integral 0..5, mod-n 6..11); trivial ends give multiplier 0."""
    sizes = list(orders) + list(mod_orders)
    out = []
    for p in range(6):
        q = (p + 1) % 6
        out.append((p, q, f[p]))
        out.append((6 + p, 6 + q, fn[p]))
        out.append((p, 6 + p, rho[p]))
        out.append((6 + p, (p + 3) % 6, beta[p]))
    return [(i, j, 0 if sizes[i] == 1 or sizes[j] == 1 else m) for i, j, m in out]


six = lambda s: st.lists(s, min_size=6, max_size=6)  # noqa: E731


def well_defined(m, a, b):
    """Smallest adjustment of ``m`` making ``x m : Z_a -> Z_b`` well defined."""
    if a in (0, 1) or b == 1:
        return m
    return m * (b // math.gcd(a, b)) if (a * m) % b else m


@st.composite
def finite_totals(draw, orders=st.sampled_from([1, 2, 3, 4]), mults=st.integers(0, 3)):
    n = draw(st.sampled_from([2, 3]))
    G, Gn = draw(six(orders)), draw(six(orders))
    f, fn, rho, beta = (draw(six(mults)) for _ in range(4))
    f = [well_defined(f[p], G[p], G[(p + 1) % 6]) for p in range(6)]
    fn = [well_defined(fn[p], Gn[p], Gn[(p + 1) % 6]) for p in range(6)]
    rho = [well_defined(rho[p], G[p], Gn[p]) for p in range(6)]
    beta = [well_defined(beta[p], Gn[p], G[(p + 3) % 6]) for p in range(6)]
    data = (G, Gn, f, fn, rho, beta)
    return data, cyclic_total(*data, n)


def free_complexes():
    return st.tuples(six(st.sampled_from([0, 1])), six(st.integers(-3, 3))).map(
        lambda t: SixTermComplex(
            tuple(group_of(a) if a else Z for a in t[0]),
            tuple(hom_or_none(group_of(t[0][p]) if t[0][p] else Z,
                              group_of(t[0][(p + 1) % 6]) if t[0][(p + 1) % 6] else Z, t[1][p])
                  for p in range(6)))).filter(check_chain)


# -- validation -----------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_catalog_invariants_validate(n):
    for name in catalog.NAMES:
        assert validate(inv(name, n)) == []


def test_zero_invariant_is_valid():
    assert validate(TotalSixInvariant(SixTermComplex.zero())) == []
    assert validate(total_from_free(SixTermComplex.zero(), [2, 3])) == []


def test_dropping_a_bockstein_map_is_flagged():
    n = 3
    e0 = inv("e0", n)
    L = e0.coefficients[n]
    beta = list(L.beta)
    assert not beta[1].is_zero()
    beta[1] = GroupHom.zero(beta[1].domain, beta[1].codomain)
    broken = TotalSixInvariant(e0.integral, {n: CoefficientLayer(L.complex, L.rho, beta)})
    report = validate(broken)
    assert report
    assert all(v.kind == "bockstein-exactness" and v.coefficient == n for v in report)
    assert {v.position for v in report} & {1, 4}


def test_changing_rho_breaks_naturality():
    n = 5
    e1 = inv("e1", n)
    L = e1.coefficients[n]
    rho = list(L.rho)
    rho[4] = GroupHom(rho[4].domain, rho[4].codomain, [[2]])
    report = validate(TotalSixInvariant(e1.integral, {n: CoefficientLayer(L.complex, rho, L.beta)}))
    assert any(v.kind == "rho-naturality" for v in report)


def test_layer_shapes_are_checked():
    e0 = inv("e0", 2)
    L = e0.coefficients[2]
    with pytest.raises(ValueError):
        TotalSixInvariant(e0.integral, {2: CoefficientLayer(L.complex, L.rho[:5], L.beta)})
    with pytest.raises(ValueError):
        TotalSixInvariant(inv("e1", 2).integral, {2: L})


# -- torsion-free inputs ---------------------------------------------------------


def test_total_from_free_example():
    n = 4
    c = SixTermComplex.build([Z] * 6, [None] * 6)
    t = total_from_free(c, [n])
    L = t.coefficients[n]
    assert all(g.canonical == (0, (n,)) for g in L.complex.groups)
    assert all(b.is_zero() for b in L.beta)
    assert is_valid(t)


def test_total_from_free_rejects_torsion():
    with pytest.raises(TorsionError):
        total_from_free(catalog.ksix("e0", 3), [3])


@settings(max_examples=40)
@given(free_complexes(), st.sampled_from([2, 3, 4]))
def test_torsion_free_restriction_is_an_isomorphism(c, n):
    t = total_from_free(c, [n])
    r = restriction_map(t, t)
    assert r.is_isomorphism()
    assert kernel_of_restriction(t, t).is_trivial()
    assert hom_lambda(t, t).group.canonical == hom_z6(c, c).group.canonical


def test_torsion_free_against_catalog_target():
    n = 3
    c = SixTermComplex.build([Z, ZERO, ZERO, Z, ZERO, ZERO], [None] * 6)
    t = total_from_free(c, [n])
    for name in catalog.NAMES:
        target = inv(name, n)
        assert restriction_map(t, target).is_isomorphism(), name


# -- Hom_Lambda ------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 5])
def test_hom_lambda_e1_e0(n):
    res = hom_lambda(inv("e1", n), inv("e0", n), [n])
    assert res.group.canonical == (1, (n, n))
    assert hom_z6(catalog.ksix("e1", n), catalog.ksix("e0", n)).group.canonical == (1, (n,))
    assert kernel_of_restriction(inv("e1", n), inv("e0", n)).canonical == (0, (n,))
    assert restriction_map(inv("e1", n), inv("e0", n)).is_surjective()


@pytest.mark.parametrize("n", [2, 3, 5])
def test_hom_lambda_e0_se1_has_exponent_n(n):
    G = hom_lambda(inv("e0", n), inv("Se1", n)).group
    assert G.is_finite()
    assert all(G.element(x).order() in (1, n) for x in G.elements())


def test_missing_coefficient():
    with pytest.raises(MissingCoefficientError):
        hom_lambda(inv("e0", 2), inv("e0", 3), [2])
    assert hom_lambda(inv("e0", 2), inv("e0", 3)).coefficients == ()


def test_identity_and_basis_squares():
    for name in catalog.NAMES:
        t = inv(name, 3)
        res = hom_lambda(t, t)
        ident = LambdaHom.identity(t)
        assert res.solution.coordinates(ident.all_components()) is not None
        assert restriction_to_integral(ident) == ComplexHom.identity(t.integral)
        for b in res.basis:
            assert isinstance(b, LambdaHom)


def test_lambda_hom_rejects_broken_squares():
    n = 3
    t = inv("e0", n)
    ident = LambdaHom.identity(t)
    with pytest.raises(ValueError):
        LambdaHom(t, t, ident.integral, {n: ComplexHom.zero(t.coefficients[n].complex,
                                                             t.coefficients[n].complex)})


# Part of the acceptance property suite, which runs it.
def check_additivity_on_catalog_triples():
    n = 2
    names = ("e0", "e1", "Se1")
    for a in names:
        for b in names:
            ab = direct_sum_total(inv(a, n), inv(b, n))
            for c in names:
                left = hom_lambda(ab, inv(c, n)).group
                assert left.canonical == direct_sum(hom_lambda(inv(a, n), inv(c, n)).group,
                                                    hom_lambda(inv(b, n), inv(c, n)).group).canonical
                right = hom_lambda(inv(c, n), ab).group
                assert right.canonical == direct_sum(hom_lambda(inv(c, n), inv(a, n)).group,
                                                     hom_lambda(inv(c, n), inv(b, n)).group).canonical


@settings(max_examples=80)
@given(finite_totals(), finite_totals())
def test_hom_lambda_order_by_enumeration(a, b):
    (da, A), (db, B) = a, b
    n_a, n_b = next(iter(A.coefficients)), next(iter(B.coefficients))
    if n_a != n_b:
        return
    src = list(da[0]) + list(da[1])
    dst = list(db[0]) + list(db[1])
    sa, sb = arrows_of(*da), arrows_of(*db)
    arrows = [(i, j, m, k) for (i, j, m), (_, _, k) in zip(sa, sb)]
    assert math.prod(max(x, 1) for x in dst) <= 4 ** 12
    assert hom_lambda(A, B).group.order == oracles.diagram_hom_count(src, dst, arrows)


# -- isomorphisms ----------------------------------------------------------------


def test_is_isomorphism_lambda_examples():
    t = inv("prop43", 3)
    assert is_isomorphism_lambda(LambdaHom.identity(t))
    assert not is_isomorphism_lambda(LambdaHom.zero(t, t, [3]))
    # identity plus a map that vanishes integrally but not on the mod-n layer
    res = hom_lambda(t, t)
    r = restriction_map(t, t)
    ident = LambdaHom.identity(t)
    kic = kernel_image_cokernel(r)
    assert kic.kernel.canonical == (0, (3, 3, 3))
    found = 0
    for k in kic.kernel.elements():
        x = kic.kernel_inclusion(k).coords
        if not res.group.is_relation(x):
            h = lambda_element(res, res.solution.canonical_coordinates(res.solution.element(x)))
            assert h.integral == ComplexHom.zero(t.integral, t.integral)
            assert any(not psi.is_zero() for psi in h.layers[3].components)
            assert is_isomorphism_lambda(ident + h)
            found += 1
    assert found == 3 ** 3 - 1


def test_integral_isomorphisms_promote():
    for name in catalog.NAMES:
        t = inv(name, 2)
        res = hom_lambda(t, t)
        for h in res.basis:
            if h.integral.is_isomorphism():
                assert is_isomorphism_lambda(h)


# -- suspension and sums ---------------------------------------------------------


def test_suspend_total_twice_is_identity():
    for name in catalog.NAMES:
        for n in (2, 3):
            t = inv(name, n)
            assert suspend_total(suspend_total(t)) == t
            assert is_valid(suspend_total(t))


def test_direct_sums_of_valid_invariants_are_valid():
    for a in catalog.NAMES:
        for b in catalog.NAMES:
            assert is_valid(direct_sum_total(inv(a, 3), inv(b, 3)))
