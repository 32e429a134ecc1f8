import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksix import catalog
from ksix.abelian import FGAbelianGroup, GroupHom, cyclic, exists_epimorphism, is_isomorphic
from ksix.grid import (
    UNKNOWN,
    DiagramSpec,
    Edge,
    InvalidDiagram,
    QuotientOf,
    ShortExact,
    UnreducibleError,
    check_spec,
    normalize,
    satisfies,
    solve,
)
from ksix.jsonio import diagram_from_json, diagram_to_json

Z = FGAbelianGroup.free(1)
ZERO = FGAbelianGroup.zero()


def G(rank=0, *torsion):
    return FGAbelianGroup.from_invariants(rank, torsion)


def ses_spec(pairs, **extra):
    """One unknown ``X`` with a short exact path ``0 -> B_i -> X -> A_i -> 0`` per pair."""
    nodes = {"X": UNKNOWN, "z": ZERO}
    paths = []
    for i, (B, A) in enumerate(pairs):
        nodes[f"b{i}"], nodes[f"a{i}"] = B, A
        paths.append(["z", f"b{i}", "X", f"a{i}", "z"])
    return DiagramSpec(nodes, [], paths, unknown="X", **extra)


def canon(res):
    return [g.canonical for g in res.classes]


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_nonsplitting_diagram(n):
    spec = catalog.nonsplitting_diagram(n)
    cons = normalize(spec)
    assert QuotientOf(Z, ("a", "b", "X", "zero")) in cons
    assert any(isinstance(c, ShortExact) and c.sub.canonical == (0, (n,))
               and c.quotient.canonical == (0, (n,)) for c in cons)
    res = solve(spec)
    assert res.unique and canon(res) == [(0, (n * n,))]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_nonsurjective_grid(n):
    spec = catalog.nonsurjective_diagram(n)
    assert check_spec(spec) == []
    cons = normalize(spec)
    shorts = {(c.sub.canonical, c.quotient.canonical) for c in cons if isinstance(c, ShortExact)}
    assert ((0, (n,)), (1, ())) in shorts
    res = solve(spec)
    assert res.unique and canon(res) == [(1, (n,))]


@pytest.mark.parametrize("n", [2, 3])
def test_every_answer_satisfies_every_constraint(n):
    for spec in (catalog.nonsplitting_diagram(n), catalog.nonsurjective_diagram(n)):
        res = solve(spec)
        for X in res.classes:
            assert all(satisfies(X, c) for c in res.constraints)
            w = res.witnesses[X.canonical]
            assert w.is_exact() and is_isomorphic(w.middle, X)


def test_trivial_sub_pins_the_unknown():
    A = G(1, 2, 6)
    res = solve(ses_spec([(ZERO, A)]))
    assert res.unique and canon(res) == [A.canonical]


def test_free_quotient_splits():
    res = solve(ses_spec([(G(0, 4), G(2))]))
    assert canon(res) == [(2, (4,))]


def test_candidates_without_filters():
    n = 3
    res = solve(ses_spec([(cyclic(n), cyclic(n))]))
    assert canon(res) == [(0, (n, n)), (0, (n * n,))]
    assert not res.unique


def test_inconsistent_constraints_give_an_empty_answer():
    res = solve(ses_spec([(cyclic(2), cyclic(2)), (ZERO, cyclic(3))]))
    assert not res.consistent and res.classes == []


def test_structural_filters():
    n = 3
    quot = solve(ses_spec([(cyclic(n), cyclic(n))], quotient_of=[Z]))
    assert canon(quot) == [(0, (n * n,))]
    expo = solve(ses_spec([(cyclic(n), cyclic(n))], exponent_divides=n))
    assert canon(expo) == [(0, (n, n))]


def test_exact_path_of_length_three_pins_the_unknown():
    A = G(0, 2, 4)
    spec = DiagramSpec({"z": ZERO, "y": ZERO, "a": A, "X": UNKNOWN}, [],
                       [["z", "y", "X", "a", "z"]], unknown="X")
    assert canon(solve(spec)) == [A.canonical]


def test_known_maps_are_used_for_kernels_and_cokernels():
    # Z -x4-> Z -> X -> Z -x2-> Z: sub = Z/4, quotient = ker(x2) = 0
    spec = DiagramSpec(
        {"p2": Z, "p1": Z, "X": UNKNOWN, "n1": Z, "n2": Z},
        [Edge("p2", "p1", GroupHom(Z, Z, [[4]])), Edge("n1", "n2", GroupHom(Z, Z, [[2]]))],
        [["p2", "p1", "X", "n1", "n2"]], unknown="X")
    assert [(c.sub.canonical, c.quotient.canonical) for c in normalize(spec)] == [((0, (4,)), (0, ()))]
    assert canon(solve(spec)) == [(0, (4,))]


def test_unreducible_paths_are_reported():
    spec = DiagramSpec({"a": Z, "X": UNKNOWN, "b": Z}, [], [["a", "X", "b"]], unknown="X")
    with pytest.raises(UnreducibleError) as err:
        normalize(spec)
    assert err.value.paths == [("a", "X", "b")]
    edge_end = DiagramSpec({"a": Z, "X": UNKNOWN}, [], [["X", "a"]], unknown="X")
    with pytest.raises(UnreducibleError):
        normalize(edge_end)


def test_invalid_diagrams():
    two_unknowns = DiagramSpec({"X": UNKNOWN, "Y": UNKNOWN}, [], [], unknown="X")
    assert check_spec(two_unknowns)
    with pytest.raises(InvalidDiagram):
        normalize(two_unknowns)
    wrong_ends = DiagramSpec({"a": Z, "b": cyclic(2), "X": UNKNOWN},
                             [Edge("a", "b", GroupHom.identity(Z))], [], unknown="X")
    assert check_spec(wrong_ends)
    not_exact = DiagramSpec({"a": Z, "b": Z, "c": Z, "X": UNKNOWN},
                            [Edge("a", "b", GroupHom.identity(Z)), Edge("b", "c", GroupHom.identity(Z))],
                            [["a", "b", "c"]], unknown="X")
    assert any("not exact" in p for p in check_spec(not_exact))
    missing = DiagramSpec({"a": Z, "b": Z, "c": Z, "X": UNKNOWN}, [], [["a", "b", "c"]], unknown="X")
    assert any("no edge" in p for p in check_spec(missing))


def test_json_round_trip():
    for spec in (catalog.nonsplitting_diagram(3), catalog.nonsurjective_diagram(3),
                 ses_spec([(cyclic(2), cyclic(2))], quotient_of=[Z], exponent_divides=4)):
        back = diagram_from_json(diagram_to_json(spec))
        assert canon(solve(back)) == canon(solve(spec))
        assert diagram_to_json(back) == diagram_to_json(spec)


small = st.sampled_from([G(), G(0, 2), G(0, 3), G(0, 4), G(0, 2, 2), G(1), G(0, 6)])


@settings(max_examples=40)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=3), st.tuples(small, small))
def test_solve_is_monotone(pairs, extra):
    base = set(canon(solve(ses_spec(pairs))))
    more = set(canon(solve(ses_spec(pairs + [extra]))))
    assert more <= base
    for key in more:
        X = FGAbelianGroup.from_invariants(*key)
        assert all(satisfies(X, c) for c in normalize(ses_spec(pairs + [extra])))


@settings(max_examples=30)
@given(small, st.integers(1, 2))
def test_free_quotient_gives_a_single_class(B, r):
    res = solve(ses_spec([(B, G(r))]))
    assert res.unique
    assert exists_epimorphism(res.classes[0], G(r))
