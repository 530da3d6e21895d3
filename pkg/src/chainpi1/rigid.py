"""Necklaces, the rigidification mapping spaces, and the cube-to-simplex map Φ.

A necklace map is a chain of beads ``Δ^{t1} ∨ ... ∨ Δ^{tk} -> S``; its
vertices are numbered globally 0..Σt, the joints being the bead endpoints.
A k-simplex of the mapping space 𝔠(S)(x, y) is represented by a necklace
map together with a flag ``T^0 ⊆ ... ⊆ T^k`` of vertex sets with every
joint in ``T^0``.  Two representatives describe the same simplex of the
colimit iff they have the same canonical form, obtained by

  1. restricting the necklace to the vertices of ``T^k`` and splitting it
     at the vertices of ``T^0`` (so ``T^0`` = joints, ``T^k`` = vertices);
  2. collapsing degenerate beads, merging the vertices they identify,
     until every bead is a nondegenerate simplex.

For ``Δⁿ`` this recovers the nerve of the poset of subsets of
``{i, ..., j}`` containing both ends, which is computed independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .report import CheckResult, Report
from .simpset import FormalSimplex, SimplicialSet, from_cells

Flag = Tuple[Tuple[int, ...], ...]
Cell = Tuple[Tuple[FormalSimplex, ...], Flag]


class BoundError(ValueError):
    pass


# ---------------------------------------------------------------------------
# necklaces and necklace maps


@dataclass(frozen=True)
class Necklace:
    dims: Tuple[int, ...]

    def __post_init__(self):
        if any(t < 1 for t in self.dims):
            raise ValueError("bead dimensions must be >= 1")

    @property
    def num_vertices(self) -> int:
        return sum(self.dims) + 1

    @property
    def joints(self) -> Tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.dims))

    @property
    def inner_count(self) -> int:
        """``V_T - J_T``: the dimension of the necklace's cube."""
        return sum(self.dims) - len(self.dims)

    def __str__(self):
        return " ∨ ".join(f"Δ{t}" for t in self.dims) if self.dims else "Δ0"


@dataclass(frozen=True)
class NecklaceMap:
    beads: Tuple[FormalSimplex, ...]
    x: str
    y: str

    @property
    def necklace(self) -> Necklace:
        return Necklace(tuple(b.dim for b in self.beads))

    def __str__(self):
        if not self.beads:
            return f"{self.x}: Δ0"
        return " ∨ ".join(str(b) for b in self.beads)


def enumerate_necklace_maps(S: SimplicialSet, x: str, y: str, max_beads: int = 4, max_total_dim: int = 4,
                            nondegenerate_only: bool = False, limit: int = 200_000) -> List[NecklaceMap]:
    """All necklace maps from x to y within the bounds, in a fixed order.

    The empty necklace (``Δ0``) is included when ``x == y``.  Beads range over
    all simplices of S of the given dimension (degenerate ones too unless
    ``nondegenerate_only``).
    """
    for v in (x, y):
        if S.dim_of.get(v) != 0:
            raise ValueError(f"{v!r} is not a vertex of {S.name}")
    by_dim: Dict[int, List[Tuple[FormalSimplex, str, str]]] = {}
    for t in range(1, max_total_dim + 1):
        cells = S.simplices(t)
        if nondegenerate_only:
            cells = [c for c in cells if not c.is_degenerate]
        by_dim[t] = [(c, S.vertex_of(c, 0), S.vertex_of(c, t)) for c in cells]
    out: List[NecklaceMap] = []
    if x == y:
        out.append(NecklaceMap((), x, y))
    for k in range(1, max_beads + 1):
        for dims in _compositions_upto(k, max_total_dim):
            def grow(i: int, start: str, acc: Tuple[FormalSimplex, ...]):
                if i == k:
                    if start == y:
                        out.append(NecklaceMap(acc, x, y))
                        if len(out) > limit:
                            raise BoundError(f"more than {limit} necklace maps; lower the bounds")
                    return
                for c, a, b in by_dim[dims[i]]:
                    if a == start:
                        grow(i + 1, b, acc + (c,))
            grow(0, x, ())
    return out


def _compositions_upto(k: int, total: int) -> Iterator[Tuple[int, ...]]:
    for n in range(k, total + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


# ---------------------------------------------------------------------------
# canonical forms of colimit simplices


def _joints(beads: Sequence[FormalSimplex]) -> List[int]:
    return list(itertools.accumulate([0] + [b.dim for b in beads]))


def canonical(S: SimplicialSet, beads: Sequence[FormalSimplex], flag: Sequence[FrozenSet[int]]) -> Cell:
    """Canonical representative of (necklace map, flag) in the colimit."""
    beads = list(beads)
    flag = [frozenset(T) for T in flag]
    joints = _joints(beads)
    if not set(joints) <= flag[0] or any(not a <= b for a, b in zip(flag, flag[1:])):
        raise ValueError("flag must increase and contain every joint")
    if max(flag[-1], default=0) > joints[-1]:
        raise ValueError("flag vertex out of range")
    # 1. restrict to T^k, split at T^0
    top, bottom = sorted(flag[-1]), flag[0]
    pos = {v: i for i, v in enumerate(top)}
    new: List[FormalSimplex] = []
    for b, o in zip(beads, joints):
        local = [v - o for v in top if o <= v <= o + b.dim]
        seg = [local[0]]
        for lv in local[1:]:
            seg.append(lv)
            if lv + o in bottom:
                new.append(S.apply(b, seg))
                seg = [lv]
    beads = new
    flag = [frozenset(pos[v] for v in T) for T in flag]
    # 2. collapse degenerate beads
    while True:
        joints = _joints(beads)
        hit = next(((i, t) for i, b in enumerate(beads) for t in range(b.dim)
                    if b.surj[t] == b.surj[t + 1]), None)
        if hit is None:
            break
        i, t = hit
        b, o = beads[i], joints[i]
        if b.dim == 1:
            beads.pop(i)
        else:
            beads[i] = S.apply(b, [u for u in range(b.dim + 1) if u != t + 1])
        cut = o + t + 1
        flag = [frozenset(v if v < cut else v - 1 for v in T) for T in flag]
    return tuple(beads), tuple(tuple(sorted(T)) for T in flag)


def cell_dim(c: Cell) -> int:
    return len(c[1]) - 1


def is_degenerate_cell(c: Cell) -> bool:
    f = c[1]
    return any(f[i] == f[i + 1] for i in range(len(f) - 1))


def cell_face(S: SimplicialSet, c: Cell, l: int) -> Cell:
    beads, flag = c
    return canonical(S, beads, [frozenset(T) for k, T in enumerate(flag) if k != l])


def fmt_cell(c: Cell) -> str:
    beads, flag = c
    neck = " ∨ ".join(str(b) for b in beads) or "Δ0"
    return f"{neck} | " + " ⊆ ".join("{" + ",".join(map(str, T)) + "}" for T in flag)


def flags_of(beads: Sequence[FormalSimplex], k: int) -> Iterator[Tuple[FrozenSet[int], ...]]:
    """All flags ``J ⊆ T^0 ⊆ ... ⊆ T^k ⊆ V`` on a necklace."""
    joints = _joints(beads)
    J = frozenset(joints)
    inner = [v for v in range(joints[-1] + 1) if v not in J]
    # each inner vertex enters at level 0..k or never (k + 1)
    for levels in itertools.product(range(k + 2), repeat=len(inner)):
        yield tuple(J | {v for v, e in zip(inner, levels) if e <= l} for l in range(k + 1))


@dataclass
class MappingSpace:
    """Bounded model of 𝔠(S)(x, y): canonical cells by dimension."""

    S: SimplicialSet
    x: str
    y: str
    cells: Dict[int, List[Cell]]

    def nondegenerate(self, k: int) -> List[Cell]:
        return [c for c in self.cells.get(k, []) if not is_degenerate_cell(c)]

    def counts(self) -> List[int]:
        return [len(self.nondegenerate(k)) for k in sorted(self.cells)]


def necklace_colimit(S: SimplicialSet, x: str, y: str, max_dim: int = 2, max_beads: int = 4,
                     max_total_dim: int = 4) -> MappingSpace:
    """Simplices of 𝔠(S)(x, y) up to ``max_dim`` reachable from bounded necklaces."""
    maps = enumerate_necklace_maps(S, x, y, max_beads, max_total_dim)
    cells: Dict[int, set] = {k: set() for k in range(max_dim + 1)}
    for m in maps:
        for k in range(max_dim + 1):
            for flag in flags_of(m.beads, k):
                cells[k].add(canonical(S, m.beads, flag))
    return MappingSpace(S, x, y, {k: sorted(v, key=_cell_key) for k, v in cells.items()})


def _cell_key(c: Cell):
    beads, flag = c
    return (len(beads), [(b.dim, b.gen, b.surj) for b in beads], flag)


# ---------------------------------------------------------------------------
# the poset model


def poset_nerve(name: str, elements: Sequence, leq, label=str) -> SimplicialSet:
    """Nerve of a finite poset with nondegenerate simplices the strict chains."""
    cells: Dict[int, list] = {}
    elements = list(elements)

    def chains(prefix):
        yield prefix
        for e in elements:
            if e != prefix[-1] and leq(prefix[-1], e):
                yield from chains(prefix + [e])

    all_chains = [c for e in elements for c in chains([e])]
    for ch in sorted(all_chains, key=lambda c: (len(c), [elements.index(e) for e in c])):
        ident = "<".join(label(e) for e in ch)
        faces = ["<".join(label(e) for e in ch[:i] + ch[i + 1:]) for i in range(len(ch))] if len(ch) > 1 else []
        cells.setdefault(len(ch) - 1, []).append((ident, faces))
    return from_cells(name, cells)


def lurie_poset(n: int, i: int, j: int) -> List[FrozenSet[int]]:
    if not 0 <= i <= j <= n:
        raise ValueError("need 0 <= i <= j <= n")
    inner = list(range(i + 1, j))
    out = []
    for r in range(len(inner) + 1):
        for sub in itertools.combinations(inner, r):
            out.append(frozenset({i, j, *sub}))
    return out


def _set_label(U) -> str:
    return "{" + ",".join(map(str, sorted(U))) + "}"


def lurie_mapping_space(n: int, i: int, j: int) -> SimplicialSet:
    """𝔠(Δⁿ)(i, j) as the nerve of subsets of {i..j} containing i and j."""
    return poset_nerve(f"P({n};{i},{j})", lurie_poset(n, i, j), lambda a, b: a <= b, _set_label)


def cube_poset_nerve(m: int) -> SimplicialSet:
    """Nerve of the poset {0,1}^m, i.e. the simplicial cube (Δ¹)^m."""
    pts = list(itertools.product((0, 1), repeat=m))
    return poset_nerve(f"(Δ1)^{m}", pts, lambda a, b: all(p <= q for p, q in zip(a, b)),
                       lambda p: "".join(map(str, p)) or "*")


def cell_counts(S: SimplicialSet) -> List[int]:
    return [len(S.gens(k)) for k in range(S.top_dim + 1)]


def nerve_isomorphism(A: SimplicialSet, B: SimplicialSet, vertex_map: Dict[str, str]) -> Optional[str]:
    """Check that the vertex map extends to an isomorphism of nerves of posets.

    Both sides must be nerves built by :func:`poset_nerve`, where a simplex
    is named by its chain ``u0<u1<...``.  Returns None or a failure reason.
    """
    if sorted(vertex_map) != sorted(A.vertices) or sorted(vertex_map.values()) != sorted(B.vertices):
        return "vertex map is not a bijection"
    for k in range(max(A.top_dim, B.top_dim) + 1):
        image = set()
        for x in A.gens(k):
            y = "<".join(vertex_map[v] for v in x.split("<"))
            if y not in B.dim_of or B.dim_of[y] != k:
                return f"{x} maps to {y}, not a {k}-simplex of {B.name}"
            for i, f in enumerate(A.faces.get(x, ())):
                g = B.faces[y][i]
                if "<".join(vertex_map[v] for v in f.gen.split("<")) != g.gen:
                    return f"face {i} of {x} not preserved"
            image.add(y)
        if len(image) != len(B.gens(k)):
            return f"not surjective in dimension {k}"
    return None


def lurie_vs_cube(n: int) -> Optional[str]:
    """𝔠(Δⁿ)(0, n) ≅ (Δ¹)^{n-1} via U ↦ indicator of U on {1..n-1}."""
    A = lurie_mapping_space(n, 0, n)
    B = cube_poset_nerve(n - 1)
    vmap = {}
    for U in lurie_poset(n, 0, n):
        bits = "".join("1" if v in U else "0" for v in range(1, n)) or "*"
        vmap[_set_label(U)] = bits
    return nerve_isomorphism(A, B, vmap)


def colimit_vs_lurie(n: int, max_beads: int = 4, max_total_dim: int = 4) -> Report:
    """Compare the necklace colimit for Δⁿ with the poset nerve, dimension by dimension."""
    S = _delta(n)
    top = f"{n}"
    L = lurie_mapping_space(n, 0, n)
    M = necklace_colimit(S, "0", top, max_dim=max(L.top_dim, 0), max_beads=max_beads, max_total_dim=max_total_dim)
    rep = Report(f"necklace colimit vs poset nerve for 𝔠(Δ{n})(0,{n})")

    def to_chain(c: Cell) -> str:
        beads, flag = c
        verts: List[str] = ["0"]
        for b in beads:
            verts += list(S.vertex_list(b))[1:]
        return "<".join(_set_label({int(verts[v]) for v in T}) for T in flag)

    ok = True
    for k in range(L.top_dim + 1):
        mine = M.nondegenerate(k)
        images = [to_chain(c) for c in mine]
        good = sorted(images) == sorted(L.gens(k))
        rep.add(CheckResult(f"dimension {k}: {len(mine)} colimit cells vs {len(L.gens(k))} chains", good,
                            len(mine), None if good else k))
        ok &= good
        if good and k:
            for c in mine:
                for l in range(k + 1):
                    f = cell_face(S, c, l)
                    if not is_degenerate_cell(f) and to_chain(f) != L.faces[to_chain(c)][l].gen:
                        rep.add(CheckResult("faces agree", False, 0, fmt_cell(c)))
                        return rep
    if ok:
        rep.add(CheckResult("faces agree", True, sum(len(M.nondegenerate(k)) for k in range(L.top_dim + 1))))
    rep.info["counts"] = M.counts()
    return rep


def _delta(n: int) -> SimplicialSet:
    from .simpset import delta
    return delta(n)


# ---------------------------------------------------------------------------
# the Eilenberg-Zilber chain of the cube


CubeSimplex = Tuple[Tuple[int, ...], ...]


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return -1 if inv % 2 else 1


def ez_shuffle_chain(n: int, sign_fault: bool = False) -> Dict[CubeSimplex, int]:
    """Signed sum of the n! nondegenerate n-simplices of (Δ¹)^n.

    The simplex of a permutation π walks from 0...0 to 1...1 raising
    coordinate π(1), then π(2), ...; its sign is sgn(π).  ``sign_fault``
    flips the sign of the last term (n >= 2) to exercise the checks.
    """
    out: Dict[CubeSimplex, int] = {}
    perms = list(itertools.permutations(range(n)))
    for k, p in enumerate(perms):
        v = [0] * n
        path = [tuple(v)]
        for c in p:
            v[c] = 1
            path.append(tuple(v))
        s = _perm_sign(p)
        if sign_fault and n >= 2 and k == len(perms) - 1:
            s = -s
        out[tuple(path)] = s
    return out


def simplicial_boundary(chain: Dict[CubeSimplex, int]) -> Dict[CubeSimplex, int]:
    """Normalized boundary in (Δ¹)^n (degenerate simplices dropped)."""
    out: Dict[CubeSimplex, int] = {}
    for s, c in chain.items():
        if len(s) == 1:
            continue
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if any(f[k] == f[k + 1] for k in range(len(f) - 1)):
                continue
            out[f] = out.get(f, 0) + (-1) ** i * c
    return {k: v for k, v in out.items() if v}


def cube_face_inclusion(chain: Dict[CubeSimplex, int], j: int, eps: int) -> Dict[CubeSimplex, int]:
    """Image under (Δ¹)^{n-1} -> (Δ¹)^n inserting ``eps`` at coordinate j (1-based)."""
    return {tuple(v[:j - 1] + (eps,) + v[j - 1:] for v in s): c for s, c in chain.items()}


def check_ez_boundary(n: int, sign_fault: bool = False) -> CheckResult:
    """∂e^n = Σ_j (-1)^{j-1} (δ¹_j - δ⁰_j) e^{n-1}."""
    lhs = simplicial_boundary(ez_shuffle_chain(n, sign_fault))
    rhs: Dict[CubeSimplex, int] = {}
    lower = ez_shuffle_chain(n - 1) if n else {}
    for j in range(1, n + 1):
        sign = 1 if j % 2 else -1
        for eps, e in ((1, sign), (0, -sign)):
            for s, c in cube_face_inclusion(lower, j, eps).items():
                rhs[s] = rhs.get(s, 0) + e * c
    rhs = {k: v for k, v in rhs.items() if v}
    ok = lhs == rhs
    return CheckResult(f"∂e^{n} = Σ ±(δ¹ - δ⁰)e^{n - 1}", ok, len(lhs) + len(rhs), None if ok else n)


# ---------------------------------------------------------------------------
# Φ: cubes of necklaces -> chains on the mapping space


class PhiMap:
    """Φ(η) = (-1)^n Σ_π sgn(π) [η, flag_π] for a necklace map η with n inner vertices.

    The cube vertex picking inner vertices A corresponds to ``T = J ∪ A``; the
    EZ simplex of π is the flag that adds inner vertices in the order π.
    The (-1)^n makes Φ commute with the cube boundary, whose sign convention
    is opposite to the one in :func:`check_ez_boundary`.
    """

    def __init__(self, S: SimplicialSet, sign_fault: bool = False):
        self.S = S
        self.sign_fault = sign_fault

    def __call__(self, beads: Sequence[FormalSimplex]) -> Dict[Cell, int]:
        joints = _joints(beads)
        J = frozenset(joints)
        inner = [v for v in range(joints[-1] + 1) if v not in J]
        n = len(inner)
        sign0 = -1 if n % 2 else 1
        out: Dict[Cell, int] = {}
        for path, s in ez_shuffle_chain(n, self.sign_fault).items():
            flag = [J | {inner[k] for k in range(n) if pt[k]} for pt in path]
            c = canonical(self.S, beads, flag)
            if is_degenerate_cell(c):
                continue
            out[c] = out.get(c, 0) + sign0 * s
        return {k: v for k, v in out.items() if v}

    def on_word(self, w: Sequence[str]) -> Dict[Cell, int]:
        return self(tuple(self.S.simplex(x) for x in w))

    def linear(self, e: Dict[Tuple[str, ...], int]) -> Dict[Cell, int]:
        out: Dict[Cell, int] = {}
        for w, c in e.items():
            for k, v in self.on_word(w).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def boundary(self, chain: Dict[Cell, int]) -> Dict[Cell, int]:
        out: Dict[Cell, int] = {}
        for c, v in chain.items():
            if cell_dim(c) == 0:
                continue
            for l in range(cell_dim(c) + 1):
                f = cell_face(self.S, c, l)
                if not is_degenerate_cell(f):
                    out[f] = out.get(f, 0) + (-1) ** l * v
        return {k: v for k, v in out.items() if v}

    def compose(self, a: Dict[Cell, int], b: Dict[Cell, int]) -> Dict[Cell, int]:
        """Composition in the simplicial category, extended to chains by EZ shuffles."""
        out: Dict[Cell, int] = {}
        for (ba, fa), ca in a.items():
            for (bb, fb), cb in b.items():
                p, q = len(fa) - 1, len(fb) - 1
                shift = sum(x.dim for x in ba)
                for first in itertools.combinations(range(p + q), p):
                    # lattice path: steps in `first` advance the left factor
                    i = j = 0
                    flag = [frozenset(fa[0]) | {v + shift for v in fb[0]}]
                    order = []
                    for step in range(p + q):
                        if step in first:
                            i += 1
                            order.append(0)
                        else:
                            j += 1
                            order.append(1)
                        flag.append(frozenset(fa[i]) | {v + shift for v in fb[j]})
                    sign = _perm_sign(list(first) + [s for s in range(p + q) if s not in first])
                    c = canonical(self.S, ba + bb, flag)
                    if not is_degenerate_cell(c):
                        out[c] = out.get(c, 0) + sign * ca * cb
        return {k: v for k, v in out.items() if v}


def check_phi_algebra_map(S: SimplicialSet, bound: int = 2, max_length: Optional[int] = None,
                          sign_fault: bool = False) -> Report:
    """φ and Φ on cube words of cube dimension <= bound.

    (i) φ is multiplicative and carries the cube boundary to D;
    (ii) Φ commutes with boundaries and is multiplicative on every pair of
    words whose cube dimensions add up to at most the bound.
    """
    from . import words as W
    from .loopbialg import LoopBialgebra

    if bound > 2:
        raise ValueError("check_phi_algebra_map is meant for bound <= 2")
    B = LoopBialgebra(S, max_degree=bound, max_length=max_length)
    Phi = PhiMap(S, sign_fault)
    rep = Report(f"φ and Φ on {S.name} up to cube dimension {bound}")
    cubes = [w for w in B.monomials(bound)]

    n = 0
    bad = None
    for w in cubes:
        for k in range(len(w) + 1):
            n += 1
            if B.phi_word(w) != W.mul(B.phi_word(w[:k]), B.phi_word(w[k:])):
                bad = W.fmt_word(w)
                break
        if bad:
            break
    rep.add(CheckResult("φ multiplicative", bad is None, n, bad))

    n = 0
    bad = None
    for w in cubes:
        n += 1
        if B.phi(B.cube_boundary(w)) != B.om.D(B.phi_word(w)):
            bad = W.fmt_word(w)
            break
    rep.add(CheckResult("D∘φ = φ∘∂□", bad is None, n, bad))

    n = 0
    bad = None
    for w in cubes:
        n += 1
        if Phi.boundary(Phi.on_word(w)) != Phi.linear(B.cube_boundary(w)):
            bad = W.fmt_word(w)
            break
    rep.add(CheckResult("∂∘Φ = Φ∘∂□", bad is None, n, bad))

    n = 0
    bad = None
    for u in cubes:
        for v in cubes:
            if B.cube_dim(u) + B.cube_dim(v) > bound or len(u) + len(v) > B.om.max_length:
                continue
            n += 1
            if Phi.on_word(u + v) != Phi.compose(Phi.on_word(u), Phi.on_word(v)):
                bad = f"{W.fmt_word(u)}·{W.fmt_word(v)}"
                break
        if bad:
            break
    rep.add(CheckResult("Φ multiplicative", bad is None, n, bad))
    return rep
