import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainpi1 import words as W
from chainpi1.loopbialg import (LoopBialgebra, NotReducedError, check_bialgebra, directions, extract_E1q, nabla)
from chainpi1.simpset import builtin


def tensor(*pairs):
    out = {}
    for (u, v), c in pairs:
        W.add_term(out, (u, v), c)
    return out


def tensor_of(left, right):
    """Expand a product of two polynomials into a tensor."""
    out = {}
    for u, a in left.items():
        for v, b in right.items():
            W.add_term(out, (u, v), a * b)
    return out


def shifted_edge(S, fs):
    # 1 + [e] for a nondegenerate edge, 1 for a degenerate one
    return {(): 1} if fs.is_degenerate else {(): 1, (fs.gen,): 1}


def nabla_triangle_oracle(S, t):
    """([d1 t]+1) ⊗ [t] + [t] ⊗ ([d2 t]+1)([d0 t]+1)."""
    d0, d1, d2 = S.faces[t]
    out = tensor_of(shifted_edge(S, d1), {(t,): 1})
    for k, c in tensor_of({(t,): 1}, W.mul(shifted_edge(S, d2), shifted_edge(S, d0))).items():
        W.add_term(out, k, c)
    return out


@pytest.mark.parametrize("name", ["torus", "rp2", "klein", "collapsed_delta(3)"])
def test_nabla_on_triangles_matches_formula(name):
    S = builtin(name)
    B = LoopBialgebra(S, 1)
    for t in S.gens(2):
        assert B.nabla_word((t,)) == nabla_triangle_oracle(S, t)


def test_nabla_small_cases():
    S = builtin("circle")
    assert nabla(S, ("a",), max_degree=0) == tensor(((("a",), ()), 1), (((), ("a",)), 1), (((("a",), ("a",))), 1))
    assert nabla(S, (), max_degree=0) == {((), ()): 1}
    rp2 = nabla(builtin("rp2"), ("t",), max_degree=1)
    assert rp2 == tensor(((("t",), ()), 1), (((), ("t",)), 1), ((("t",), ("a",)), 2), ((("t",), ("a", "a")), 1))


def test_cube_faces():
    torus = LoopBialgebra(builtin("torus"), 1)
    assert torus.cube_face(("t1",), 0, 0) == ("c",)
    assert torus.cube_face(("t1",), 0, 1) == ("a", "b")
    rp2 = LoopBialgebra(builtin("rp2"), 1)
    assert rp2.cube_face(("t",), 0, 0) == ()
    assert rp2.cube_dim(("a",)) == 0
    with pytest.raises(IndexError):
        rp2.cube_face(("a",), 0, 0)
    # a degenerate 2-dimensional bead kills the face
    s3 = LoopBialgebra(builtin("sphere(3)"), 2)
    assert s3.cube_face(("sigma",), 0, 0) is None


def test_direction_ordering_is_bead_major():
    S = builtin("collapsed_delta(3)")
    beads = [S.simplex("0123"), S.simplex("01"), S.simplex("012")]
    assert directions(beads) == [(0, 1), (0, 2), (2, 1)]


def test_counit():
    B = LoopBialgebra(builtin("circle"), 1)
    assert B.counit(B.unit()) == 1 and B.counit({("a",): 1}) == 0
    left = {v: c for (u, v), c in B.nabla_word(("a",)).items() if u == ()}
    assert left == {("a",): 1}


@pytest.mark.parametrize("name", ["circle", "torus", "rp2", "klein", "sphere(2)", "sphere(3)", "wedge_circles(2)"])
def test_bialgebra_axioms_degree_two(name):
    rep = check_bialgebra(builtin(name), 2)
    assert rep.passed, rep.text()
    assert len(rep.checks) == 5


def test_bialgebra_on_three_simplices():
    rep = check_bialgebra(builtin("collapsed_delta(3)"), 2, max_length=2)
    assert rep.passed, rep.text()


def test_sign_fault_breaks_chain_map_at_triangle():
    rep = check_bialgebra(builtin("rp2"), 3, sign_fault=True)
    assert not rep.passed
    bad = rep.first_failure()
    assert bad.name.startswith("(i)") and bad.witness == "[t]"


@pytest.mark.parametrize("name", ["torus", "rp2", "klein", "collapsed_delta(3)"])
def test_structural_properties(name):
    B = LoopBialgebra(builtin(name), 2, 3)
    for r in (B.check_differential_consistency(), B.check_cubical_identities(2), B.check_grouplike(3),
              B.cube_coproduct_chain_map()):
        assert r.passed, r.line()


def test_other_shift_breaks_chain_map():
    # 1 - [e] is still group-like, but ∇ then fails to commute with D on triangles
    B = LoopBialgebra(builtin("torus"), 1, shift=-1)
    assert B.check_grouplike(2).passed
    rep = check_bialgebra(builtin("torus"), 2, shift=-1)
    assert rep.first_failure().witness == "[t1]"


def test_not_reduced_rejected():
    with pytest.raises(NotReducedError):
        LoopBialgebra(builtin("delta(2)"))


def test_E1q_components():
    S = builtin("torus")
    # q = 1: the [t1] ⊗ [edge] and [edge] ⊗ [t1] terms
    assert extract_E1q(S, "t1", 1) == {("c", ("t1",)): 1, ("t1", ("a",)): 1, ("t1", ("b",)): 1}
    assert extract_E1q(S, "t1", 2) == {("t1", ("a", "b")): 1}
    assert extract_E1q(S, "t1", 3) == {}
    with pytest.raises(ValueError):
        extract_E1q(S, "v", 1)


torus_words = st.lists(st.sampled_from(["a", "b", "c", "t1", "t2"]), max_size=3).map(tuple)


@settings(max_examples=60, deadline=None)
@given(torus_words, torus_words)
def test_nabla_multiplicative_on_random_pairs(u, v):
    B = LoopBialgebra(builtin("torus"), 6, 6)
    lhs = B.nabla_word(u + v)
    rhs = {}
    for (a, b), c in B.nabla_word(u).items():
        for (a2, b2), c2 in B.nabla_word(v).items():
            sign = -1 if B.degree(b) * B.degree(a2) % 2 else 1
            W.add_term(rhs, (a + a2, b + b2), sign * c * c2)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "c"]), max_size=4).map(tuple))
def test_shifted_edge_words_are_grouplike(w):
    B = LoopBialgebra(builtin("klein"), 0, 5)
    s = B.shifted(w)
    assert B.nabla(s) == tensor_of(s, s)
