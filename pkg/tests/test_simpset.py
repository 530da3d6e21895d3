import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainpi1.exact import GF, AbelianGroupInvariants as A
from chainpi1.simpset import (ACCEPTANCE_BUILTINS, FormalSimplex, SimplicialMap, SimplicialSet, SimplicialSetError,
                              builtin, collapse_vertices, delta, from_json, from_cells, to_json)

# cellular homology of each model, worked out by hand
EXPECTED_HOMOLOGY = {
    "point": [A(1)],
    "circle": [A(1), A(1)],
    "sphere(2)": [A(1), A(0), A(1)],
    "sphere(3)": [A(1), A(0), A(0), A(1)],
    "torus": [A(1), A(2), A(1)],
    "rp2": [A(1), A(0, (2,)), A(0)],
    "klein": [A(1), A(1, (2,)), A(0)],
    "wedge_circles(2)": [A(1), A(2)],
    "wedge_circles(3)": [A(1), A(3)],
    "delta(2)": [A(1), A(0), A(0)],
    "delta(3)": [A(1), A(0), A(0), A(0)],
}


@pytest.mark.parametrize("name", sorted(EXPECTED_HOMOLOGY))
def test_builtin_homology(name):
    S = builtin(name)
    assert S.validate()
    C = S.chain_complex()
    assert [C.homology(n) for n in range(S.top_dim + 1)] == EXPECTED_HOMOLOGY[name]


def test_homology_mod_two():
    C = builtin("rp2").chain_complex(GF(2))
    assert [C.homology(n, GF(2)).free_rank for n in range(3)] == [1, 1, 1]


@pytest.mark.parametrize("name", ACCEPTANCE_BUILTINS + ("delta(2)", "delta(3)", "collapsed_delta(3)"))
def test_coalgebra_axioms(name):
    res = builtin(name).coalgebra().check_axioms()
    assert res == {k: None for k in res}


def test_boundary_examples():
    assert builtin("rp2").boundary("t") == {"a": 2}
    assert builtin("circle").boundary("a") == {}
    assert builtin("torus").boundary("t1") == {"b": 1, "c": -1, "a": 1}


def test_aw_on_standard_triangle():
    assert delta(2).aw_coproduct("012") == {("0", "012"): 1, ("01", "12"): 1, ("012", "2"): 1}
    # d1 t is degenerate, so only the middle term of rp2 survives besides the vertex terms
    assert builtin("rp2").aw_coproduct("t") == {("v", "t"): 1, ("a", "a"): 1, ("t", "v"): 1}


def test_validation_accepts_examples():
    for name in ("delta(2)", "rp2", "torus", "klein", "sphere(4)"):
        assert builtin(name).validate().valid


def test_torus_relabelled_face_stays_valid():
    # with a single vertex every edge is a loop, so relabelling a face edge keeps all identities
    bad = from_cells("torus*", {0: [("v", [])], 1: [("a", ["v", "v"]), ("b", ["v", "v"]), ("c", ["v", "v"])],
                               2: [("t1", ["b", "c", "a"]), ("t2", ["a", "c", "c"])]})
    assert bad.validate().valid


def test_validation_reports_violated_identity():
    # delta(2) with d2 of the triangle replaced by the wrong edge
    bad = from_cells("bad", {0: [("0", []), ("1", []), ("2", [])],
                            1: [("01", ["1", "0"]), ("02", ["2", "0"]), ("12", ["2", "1"])],
                            2: [("012", ["12", "02", "02"])]})
    rep = bad.validate()
    assert not rep.valid and rep.generator == "012" and rep.indices == (0, 2)


def test_structural_errors():
    with pytest.raises(SimplicialSetError):
        from_cells("x", {0: [("v", [])], 1: [("a", ["v"])]}).validate()
    with pytest.raises(SimplicialSetError):
        from_cells("x", {0: [("v", [])], 1: [("a", ["v", "w"])]})
    with pytest.raises(SimplicialSetError):
        from_cells("x", {0: [("v", [])], 2: [("t", ["v", "v", "v"])]})
    with pytest.raises(SimplicialSetError):
        builtin("nosuch")


def test_from_json_errors_name_location():
    with pytest.raises(SimplicialSetError, match=r"simplices\[2\]\[0\] \(a\): 2 faces, expected 3"):
        from_json({"simplices": {"0": [{"id": "v"}], "2": [{"id": "a", "faces": ["v", "v"]}]}})
    with pytest.raises(SimplicialSetError, match="simplices"):
        from_json({"name": "x"})
    with pytest.raises(SimplicialSetError, match="dimension key"):
        from_json({"simplices": {"one": []}})


@pytest.mark.parametrize("name", ACCEPTANCE_BUILTINS + ("delta(3)",))
def test_json_round_trip(name):
    S = builtin(name)
    T = from_json(json.loads(json.dumps(to_json(S))))
    assert T.generators == S.generators and T.faces == S.faces


def test_collapse_vertices_is_reduced():
    S = collapse_vertices(delta(3))
    assert S.is_reduced and S.validate()
    # one vertex, six loops, four triangles, one tetrahedron
    assert [len(S.gens(n)) for n in range(4)] == [1, 6, 4, 1]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_degeneracy_words_normalise(n, data):
    # s_i s_j = s_{j+1} s_i for i <= j: both words give the same formal simplex
    i = data.draw(st.integers(0, n))
    j = data.draw(st.integers(i, n))
    a = FormalSimplex.from_word("x", n, [i, j])
    b = FormalSimplex.from_word("x", n, [j + 1, i])
    assert a == b and a.dim == n + 2 and a.is_degenerate


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.data())
def test_simplicial_identities_in_delta(n, data):
    S = delta(n)
    k = data.draw(st.integers(2, n))
    x = data.draw(st.sampled_from(S.gens(k)))
    sx = S.simplex(x)
    j = data.draw(st.integers(1, k))
    i = data.draw(st.integers(0, j - 1))
    assert S.face(S.face(sx, j), i) == S.face(S.face(sx, i), j - 1)


def test_simplicial_map_validation():
    f = SimplicialMap.from_names(builtin("wedge_circles(2)"), builtin("circle"), {"v": "v", "a1": "a", "a2": "s0 v"})
    assert f.validate() is None
    assert f.chain_map() == {"v": {"v": 1}, "a1": {"a": 1}, "a2": {}}
    g = SimplicialMap.from_names(builtin("circle"), builtin("rp2"), {"v": "v", "a": "a"})
    assert g.validate() is None
