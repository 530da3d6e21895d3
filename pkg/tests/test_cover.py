import pytest

from chainpi1.cover import (GroupRealization, RealizationError, augmentation_collapse, check_cover, cover_homology,
                            twisted_complex, twisted_differential, twisting_cochain)
from chainpi1.exact import GF, ChainComplex, AbelianGroupInvariants as A
from chainpi1.pi1 import cyclic_group, group_table
from chainpi1.simpset import FormalSimplex, SimplicialSet, builtin


def antipodal_sphere():
    """Cellular S² with two cells per dimension swapped by the antipodal map."""
    basis = {0: ["p+", "p-"], 1: ["e+", "e-"], 2: ["f+", "f-"]}
    diff = {1: {"e+": {"p-": 1, "p+": -1}, "e-": {"p+": 1, "p-": -1}},
            2: {"f+": {"e+": 1, "e-": 1}, "f-": {"e+": -1, "e-": -1}}}
    return ChainComplex(basis, diff)


def covering_space(R: GroupRealization) -> SimplicialSet:
    """The covering simplicial set itself: one copy of each simplex per group element.

    The copy ``x@g`` starts at the sheet ``g``; its 0-th face starts one edge later,
    on the sheet ``g·ρ(first edge)``.
    """
    S, G = R.S, R.group
    gens, faces = {}, {}
    for n, xs in S.generators.items():
        for x in xs:
            for g in range(len(G)):
                name = f"{x}@{G.elements[g]}"
                gens.setdefault(n, []).append(name)
                if n == 0:
                    continue
                first = G.mul(g, R.element(S.front(S.simplex(x), 1)))
                faces[name] = tuple(FormalSimplex(f"{f.gen}@{G.elements[first if i == 0 else g]}", f.surj)
                                    for i, f in enumerate(S.faces[x]))
    return SimplicialSet(f"cover of {S.name}", gens, faces)


def homology_of(S):
    C = S.chain_complex()
    return [C.homology(n) for n in range(S.top_dim + 1)]


CASES = [
    ("rp2", "Z/2", {"a": "t"}),
    ("torus", "Z/2", {"a": "t", "b": "1", "c": "t"}),
    ("torus", "Z/3", {"a": "t", "b": "t", "c": "t^2"}),
    ("torus", "Z/4", {"a": "t", "b": "t^2", "c": "t^3"}),
    ("klein", "Z/2", {"a": "t", "b": "1", "c": "t"}),
    ("klein", "Z/2", {"a": "1", "b": "t", "c": "t"}),
    ("circle", "Z/3", {"a": "t"}),
    ("wedge_circles(2)", "S3", {"a1": "213", "a2": "132"}),
]


@pytest.mark.parametrize("space,group,images", CASES)
def test_cover_homology_matches_covering_space(space, group, images):
    S = builtin(space)
    R = GroupRealization(S, group_table(group), images)
    E = covering_space(R)
    assert E.validate()
    assert cover_homology(S, R) == homology_of(E)


def test_rp2_universal_cover_is_the_sphere():
    S = builtin("rp2")
    R = GroupRealization(S, cyclic_group(2), {"a": "t"})
    want = [antipodal_sphere().homology(n) for n in range(3)]
    assert want == [A(1), A(0), A(1)]
    assert cover_homology(S, R) == want
    C = twisted_complex(S, R)
    assert [len(C.basis[n]) for n in range(3)] == [2, 2, 2]
    assert check_cover(S, R).passed


def test_universal_realization_from_coset_table():
    S = builtin("rp2")
    R = GroupRealization.universal(S)
    assert len(R.group) == 2 and cover_homology(S, R) == [A(1), A(0), A(1)]


def test_triangle_differential_collapses_to_boundary():
    S = builtin("rp2")
    R = GroupRealization(S, cyclic_group(2), {"a": "t"})
    d = twisted_differential(R, "t", 0)
    assert d == {("a", "1"): 1, ("a", "t"): 1}
    assert augmentation_collapse(S, R).passed


def test_trivial_realizations_give_base_homology():
    for name in ("circle", "sphere(2)", "torus"):
        S = builtin(name)
        R = GroupRealization.trivial(S)
        assert cover_homology(S, R) == homology_of(S)


def test_field_coefficients():
    S = builtin("rp2")
    R = GroupRealization(S, cyclic_group(2), {"a": "t"})
    assert [h.free_rank for h in cover_homology(S, R, GF(2))] == [1, 0, 1]


def test_bad_realizations():
    S = builtin("rp2")
    with pytest.raises(RealizationError) as exc:
        twisted_complex(S, GroupRealization(S, cyclic_group(3), {"a": "t"}))
    assert exc.value.witness == "t"
    with pytest.raises(RealizationError):
        GroupRealization(S, cyclic_group(2), {}).validate()
    with pytest.raises(RealizationError):
        GroupRealization(S, cyclic_group(2), {"a": "t", "z": "1"}).validate()
    rep = check_cover(S, GroupRealization(S, cyclic_group(3), {"a": "t"}))
    assert not rep.passed and rep.first_failure().witness == "t"


def test_twisting_cochain():
    S = builtin("rp2")
    assert twisting_cochain(S, "v") == {}
    assert twisting_cochain(S, "a") == {("a",): 1}
    assert twisting_cochain(S, "t") == {("t",): 1}


@pytest.mark.parametrize("space,group,images", CASES)
def test_euler_characteristic_multiplies(space, group, images):
    S = builtin(space)
    R = GroupRealization(S, group_table(group), images)
    assert check_cover(S, R).passed
