import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from chainpi1.exact import GF, QQ, Ring, AbelianGroupInvariants as A
from chainpi1.pi1 import (FiniteGroupTable, GroupPresentation, GroupTableError, NotReducedError, abelianization,
                          antipode_check, coideal_check, cyclic_group, cyclic_reduce, equivalent_relators,
                          free_reduce, fundamental_group, group_table, grouplike_elements, h0_presentation,
                          hurewicz_check, invert, parse_group_word, shift_consistency, tietze_simplify,
                          todd_coxeter)
from chainpi1.simpset import ACCEPTANCE_BUILTINS, builtin

P = GroupPresentation.from_strings


def test_h0_presentations():
    assert h0_presentation(builtin("circle")).relations == {}
    rp2 = h0_presentation(builtin("rp2"))
    assert rp2.generators == ["a"] and rp2.relations == {"t": {("a",): -2, ("a", "a"): -1}}
    torus = h0_presentation(builtin("torus"))
    assert torus.generators == ["a", "b", "c"] and set(torus.relations) == {"t1", "t2"}
    with pytest.raises(NotReducedError):
        h0_presentation(builtin("delta(2)"))


def test_fundamental_group_examples():
    assert str(fundamental_group(builtin("circle"))) == "<a | >"
    assert fundamental_group(builtin("rp2")).relator_strings() == ["aa"]
    assert fundamental_group(builtin("klein")).relator_strings() == ["abc^-1", "bca^-1"]
    assert fundamental_group(builtin("torus")).relator_strings() == ["abc^-1", "bac^-1"]


def test_tietze_examples():
    assert str(tietze_simplify(fundamental_group(builtin("torus")))) == "<a, b | aba^-1b^-1>"
    assert str(tietze_simplify(fundamental_group(builtin("klein")))) == "<a, b | baba^-1>"
    c = fundamental_group(builtin("circle"))
    assert tietze_simplify(c) == c
    assert tietze_simplify(fundamental_group(builtin("sphere(2)"))).generators == ()


def test_tietze_budget_returns_valid_presentation():
    Q = fundamental_group(builtin("torus"))
    R = tietze_simplify(Q, budget=0)
    assert abelianization(R) == abelianization(Q)


@pytest.mark.parametrize("name", ACCEPTANCE_BUILTINS + ("collapsed_delta(3)",))
def test_hurewicz(name):
    r = hurewicz_check(builtin(name))
    assert r.passed, r.detail


def test_abelianization_examples():
    assert abelianization(fundamental_group(builtin("torus"))) == A(2)
    assert abelianization(fundamental_group(builtin("klein"))) == A(1, (2,))
    assert abelianization(fundamental_group(builtin("wedge_circles(3)"))) == A(3)


def sympy_order(gens, rels):
    F, *xs = free_group(" ".join(gens))
    env = dict(zip(gens, xs))
    words = []
    for r in rels:
        w = F.identity
        for g, e in parse_group_word(r, gens):
            w = w * env[g] ** e
        words.append(w)
    return FpGroup(F, words).order()


FINITE = [
    (("g",), ["ggg"]),
    (("a", "b"), ["aa", "bbb", "abab"]),             # S3
    (("a", "b"), ["aa", "bbbbb", "abab"]),           # D5
    (("a", "b"), ["aa", "bbb", "ababababab"]),        # A5
    (("a", "b"), ["aaaa", "bb a^-1 a^-1", "b^-1 a b a"]),  # Q8
    (("a", "b"), ["a", "b"]),
    (("a", "b"), ["aaa", "bbb", "aba^-1b^-1"]),      # Z/3 x Z/3
]


@pytest.mark.parametrize("gens,rels", FINITE)
def test_todd_coxeter_matches_sympy(gens, rels):
    assert todd_coxeter(P(gens, rels)) == sympy_order(gens, rels)


def test_todd_coxeter_examples():
    assert todd_coxeter(fundamental_group(builtin("rp2"))) == 2
    assert todd_coxeter(fundamental_group(builtin("torus")), 500) is None
    assert todd_coxeter(fundamental_group(builtin("sphere(2)"))) == 1


def test_regular_representation_from_presentation():
    G, images = FiniteGroupTable.from_presentation(P(("a", "b"), ["aa", "bbb", "abab"]))
    assert len(G) == 6 and G.check() is None
    a, b = G.index(images["a"]), G.index(images["b"])
    assert G.mul(a, a) == G.identity and G.mul(b, G.mul(b, b)) == G.identity
    assert G.mul(a, b) != G.mul(b, a)


def test_group_tables():
    assert [len(group_table(n)) for n in ("1", "Z/2", "Z/4", "S3")] == [1, 2, 4, 6]
    with pytest.raises(GroupTableError):
        group_table("A5")
    with pytest.raises(GroupTableError, match="associative|identity|inverse"):
        FiniteGroupTable("bad", ["e", "x", "y"], [[0, 1, 2], [1, 0, 0], [2, 0, 1]])
    G = cyclic_group(3)
    assert FiniteGroupTable.from_json(G.to_json()).table == G.table


@pytest.mark.parametrize("name", ["1", "Z/2", "Z/3", "Z/4", "S3"])
def test_grouplike_elements_are_the_group(name):
    G = group_table(name)
    res = grouplike_elements(G)
    assert sorted(res.elements) == sorted(G.elements) and res.trace
    assert sorted(grouplike_elements(G, QQ).elements) == sorted(G.elements)
    assert sorted(grouplike_elements(G, GF(3)).elements) == sorted(G.elements)


def test_grouplike_refuses_non_domain():
    with pytest.raises(ValueError, match="domain"):
        grouplike_elements(cyclic_group(2), Ring("Zmod", 4))


@pytest.mark.parametrize("name", ["Z/2", "Z/3", "Z/4", "S3"])
def test_antipode(name):
    rep = antipode_check(group_table(name))
    assert rep.passed, rep.text()


def test_antipode_values():
    assert "s(t) = t^2" in antipode_check(cyclic_group(3)).checks[-1].detail
    assert "s(t) = t" in antipode_check(cyclic_group(2)).checks[-1].detail


@pytest.mark.parametrize("name", ["circle", "torus", "rp2", "klein", "sphere(2)", "collapsed_delta(3)"])
def test_shift_consistency_picks_plus(name):
    rep = shift_consistency(builtin(name))
    assert rep.passed and rep.info["shift"] == 1


def test_minus_shift_alone_fails():
    assert not shift_consistency(builtin("rp2"), shifts=(-1,)).passed


@pytest.mark.parametrize("name", ["torus", "rp2", "klein"])
def test_relations_form_a_coideal(name):
    assert coideal_check(builtin(name)).passed


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=8)


@settings(max_examples=200, deadline=None)
@given(letters)
def test_word_reductions(w):
    r = free_reduce(w)
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(r, r[1:]))
    assert free_reduce(list(r) + list(invert(r))) == ()
    c = cyclic_reduce(w)
    assert equivalent_relators(c, invert(c))
    assert equivalent_relators(c, c[1:] + c[:1])


relator = st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from([1, -1])), min_size=1, max_size=6)


@settings(max_examples=80, deadline=None)
@given(st.lists(relator, max_size=3))
def test_tietze_preserves_abelianization(rels):
    Q = GroupPresentation(("a", "b", "c"), tuple(free_reduce(r + [("c", 1), ("a", -1)]) for r in rels))
    assert abelianization(tietze_simplify(Q)) == abelianization(Q)
