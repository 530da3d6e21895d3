"""Finitely presented simplicial sets, normalized chains and the
Alexander-Whitney coalgebra.

A simplicial set is given by its nondegenerate simplices ("generators")
and, for each generator of dimension n >= 1, its n + 1 faces as formal
simplices.  A formal simplex is a generator together with a degeneracy,
stored as a monotone surjection ``[n] -> [m]``; the simplex is
``gen ∘ surj``.  Every simplicial operator is applied by composing monotone
maps and factoring the result, so equality of formal simplices is plain
tuple equality.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exact import ChainComplex, ZZ, Ring

DEFAULT_MAX_DIM = 8


class SimplicialSetError(ValueError):
    """Malformed presentation (unknown generator, wrong face dimension, ...)."""


@dataclass(frozen=True, order=True)
class FormalSimplex:
    """``gen ∘ surj``: a possibly degenerate simplex of dimension ``len(surj) - 1``."""

    gen: str
    surj: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def is_degenerate(self) -> bool:
        return self.surj[-1] != self.dim

    def degeneracies(self) -> Tuple[int, ...]:
        """Degeneracy word ``(i1, ..., ik)`` with ``i1 > ... > ik``."""
        s = self.surj
        return tuple(sorted((t for t in range(len(s) - 1) if s[t] == s[t + 1]), reverse=True))

    @classmethod
    def from_word(cls, gen: str, gen_dim: int, word: Sequence[int]) -> "FormalSimplex":
        """Build ``s_{w1} ... s_{wk} gen`` for any degeneracy word."""
        surj = tuple(range(gen_dim + 1))
        # s_j y = y ∘ σ^j; the innermost operator (last in the word) acts first
        for j in reversed(word):
            if not 0 <= j <= len(surj) - 1:
                raise SimplicialSetError(f"degeneracy s{j} out of range in dimension {len(surj) - 1}")
            surj = surj[:j + 1] + surj[j:]
        return cls(gen, surj)

    def __str__(self):
        word = self.degeneracies()
        return " ".join([f"s{j}" for j in word] + [self.gen])


def identity_surj(n: int) -> Tuple[int, ...]:
    return tuple(range(n + 1))


class SimplicialSet:
    """A finite simplicial set presented by generators and formal faces.

    ``generators[n]`` lists the nondegenerate n-simplices in a fixed order;
    ``faces[x]`` is the tuple ``(d_0 x, ..., d_n x)``.
    """

    def __init__(self, name: str, generators: Dict[int, List[str]],
                 faces: Dict[str, Sequence[FormalSimplex]]):
        self.name = name
        self.generators = {n: list(g) for n, g in sorted(generators.items()) if g}
        self.dim_of: Dict[str, int] = {}
        for n, gens in self.generators.items():
            for g in gens:
                if g in self.dim_of:
                    raise SimplicialSetError(f"duplicate generator id {g!r}")
                self.dim_of[g] = n
        self.faces = {x: tuple(f) for x, f in faces.items()}
        self._vertex_cache: Dict[FormalSimplex, Tuple[str, ...]] = {}

    # -- structure -------------------------------------------------------

    @property
    def top_dim(self) -> int:
        return max(self.generators, default=-1)

    @property
    def vertices(self) -> List[str]:
        return self.generators.get(0, [])

    @property
    def is_reduced(self) -> bool:
        return len(self.vertices) == 1

    @property
    def basepoint(self) -> Optional[str]:
        return self.vertices[0] if self.is_reduced else None

    def gens(self, n: int) -> List[str]:
        return self.generators.get(n, [])

    def all_generators(self) -> Iterator[str]:
        for n in sorted(self.generators):
            yield from self.generators[n]

    def simplex(self, gen: str) -> FormalSimplex:
        return FormalSimplex(gen, identity_surj(self.dim_of[gen]))

    # -- simplicial operators --------------------------------------------

    def apply(self, fs: FormalSimplex, theta: Sequence[int]) -> FormalSimplex:
        """Apply the monotone map ``theta: [p] -> [dim fs]`` (as a value tuple)."""
        comp = tuple(fs.surj[t] for t in theta)
        image = sorted(set(comp))
        pos = {v: k for k, v in enumerate(image)}
        outer = tuple(pos[v] for v in comp)
        m = self.dim_of[fs.gen]
        if len(image) == m + 1:
            return FormalSimplex(fs.gen, outer)
        inner = self._restrict(fs.gen, tuple(image))
        return FormalSimplex(inner.gen, tuple(inner.surj[k] for k in outer))

    def _restrict(self, gen: str, image: Tuple[int, ...]) -> FormalSimplex:
        # gen ∘ (injection with the given image), peeling off the largest missing index
        m = self.dim_of[gen]
        missing = [i for i in range(m + 1) if i not in image]
        a = missing[-1]
        face = self.faces[gen][a]
        return self.apply(face, tuple(i if i < a else i - 1 for i in image))

    def face(self, fs: FormalSimplex, i: int) -> FormalSimplex:
        n = fs.dim
        if not 0 <= i <= n or n == 0:
            raise SimplicialSetError(f"face d{i} out of range for a {n}-simplex")
        return self.apply(fs, tuple(t for t in range(n + 1) if t != i))

    def vertex_of(self, fs: FormalSimplex, k: int) -> str:
        return self.apply(fs, (k,)).gen

    def vertex_list(self, fs: FormalSimplex) -> Tuple[str, ...]:
        if fs not in self._vertex_cache:
            self._vertex_cache[fs] = tuple(self.vertex_of(fs, k) for k in range(fs.dim + 1))
        return self._vertex_cache[fs]

    def front(self, fs: FormalSimplex, p: int) -> FormalSimplex:
        return self.apply(fs, tuple(range(p + 1)))

    def back(self, fs: FormalSimplex, q: int) -> FormalSimplex:
        n = fs.dim
        return self.apply(fs, tuple(range(n - q, n + 1)))

    def simplices(self, n: int) -> List[FormalSimplex]:
        """All n-simplices, degenerate ones included, in a fixed order."""
        out = []
        for m in range(min(n, self.top_dim) + 1):
            for g in self.gens(m):
                # monotone surjections [n] -> [m] <-> m-subsets of the n step positions
                for steps in combinations(range(1, n + 1), m):
                    surj, v = [], 0
                    for t in range(n + 1):
                        if t in steps:
                            v += 1
                        surj.append(v)
                    out.append(FormalSimplex(g, tuple(surj)))
        return out

    # -- chains ----------------------------------------------------------

    def boundary(self, gen: str) -> Dict[str, int]:
        """Normalized boundary: alternating sum of faces, degenerate faces dropped."""
        out: Dict[str, int] = {}
        n = self.dim_of[gen]
        if n == 0:
            return out
        for i, f in enumerate(self.faces[gen]):
            if not f.is_degenerate:
                out[f.gen] = out.get(f.gen, 0) + (-1) ** i
        return {k: v for k, v in out.items() if v}

    def aw_coproduct(self, gen: str) -> Dict[Tuple[str, str], int]:
        """Alexander-Whitney diagonal ``sum_p front_p ⊗ back_{n-p}`` in normalized chains."""
        x = self.simplex(gen)
        n = x.dim
        out: Dict[Tuple[str, str], int] = {}
        for p in range(n + 1):
            a, b = self.front(x, p), self.back(x, n - p)
            if not (a.is_degenerate or b.is_degenerate):
                out[a.gen, b.gen] = out.get((a.gen, b.gen), 0) + 1
        return out

    def chain_complex(self, ring: Ring = ZZ) -> ChainComplex:
        return ChainComplex(
            basis={n: list(g) for n, g in self.generators.items()},
            differential={n: {x: self.boundary(x) for x in g} for n, g in self.generators.items()},
            ring=ring,
        )

    def coalgebra(self) -> "DgCoalgebra":
        return DgCoalgebra.of(self)

    # -- validation ------------------------------------------------------

    def validate(self, max_dim: int | None = None) -> "ValidationReport":
        return validate(self, max_dim)

    def __repr__(self):
        counts = ", ".join(f"{len(self.gens(n))}" for n in range(self.top_dim + 1))
        return f"SimplicialSet({self.name!r}, cells=[{counts}])"


@dataclass
class ValidationReport:
    valid: bool
    message: str = "valid"
    generator: Optional[str] = None
    indices: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {"valid": self.valid, "message": self.message, "generator": self.generator,
                "indices": list(self.indices) if self.indices else None}


def _check_formal(S: SimplicialSet, fs: FormalSimplex, expected_dim: int, where: str):
    if fs.gen not in S.dim_of:
        raise SimplicialSetError(f"{where}: unknown generator {fs.gen!r}")
    s = fs.surj
    m = S.dim_of[fs.gen]
    if len(s) - 1 != expected_dim:
        raise SimplicialSetError(f"{where}: face has dimension {len(s) - 1}, expected {expected_dim}")
    if s[0] != 0 or s[-1] != m or any(b - a not in (0, 1) for a, b in zip(s, s[1:])):
        raise SimplicialSetError(f"{where}: {s} is not a surjection onto [{m}]")


def validate(S: SimplicialSet, max_dim: int | None = None) -> ValidationReport:
    """Check the face data and every identity ``d_i d_j = d_{j-1} d_i`` (i < j).

    Structural errors (unknown ids, wrong dimensions) raise
    :class:`SimplicialSetError`; a violated identity is returned as an
    invalid report naming the generator and ``(i, j)``.
    """
    if max_dim is None:
        max_dim = int(os.environ.get("COBAR_MAX_DIM", DEFAULT_MAX_DIM))
    if S.top_dim > max_dim:
        raise SimplicialSetError(f"top dimension {S.top_dim} exceeds the cap {max_dim}")
    for n in sorted(S.generators):
        for x in S.generators[n]:
            fs = S.faces.get(x, ())
            if n == 0:
                if fs:
                    raise SimplicialSetError(f"vertex {x!r} must not have faces")
                continue
            if len(fs) != n + 1:
                raise SimplicialSetError(f"{x!r}: expected {n + 1} faces, got {len(fs)}")
            for i, f in enumerate(fs):
                _check_formal(S, f, n - 1, f"d{i} {x}")
    for n in sorted(S.generators):
        if n < 2:
            continue
        for x in S.generators[n]:
            sx = S.simplex(x)
            for j in range(n + 1):
                dj = S.face(sx, j)
                for i in range(j):
                    lhs = S.face(dj, i)
                    rhs = S.face(S.face(sx, i), j - 1)
                    if lhs != rhs:
                        return ValidationReport(
                            False, f"d{i} d{j} {x} = {lhs} but d{j - 1} d{i} {x} = {rhs}", x, (i, j))
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# builders and the example library


def parse_face(expr: str, dim: int, gens_by_dim: Dict[int, Dict[str, str]]) -> FormalSimplex:
    """Parse ``"s3 s1 gen"`` (or a bare id) as a formal simplex of dimension ``dim``."""
    toks = expr.split()
    if not toks:
        raise SimplicialSetError("empty face expression")
    *word, gid = toks
    idx = []
    for w in word:
        if not (w.startswith("s") and w[1:].isdigit()):
            raise SimplicialSetError(f"bad degeneracy token {w!r} in {expr!r}")
        idx.append(int(w[1:]))
    gdim = dim - len(idx)
    key = gens_by_dim.get(gdim, {}).get(gid)
    if key is None:
        raise SimplicialSetError(f"no {gdim}-dimensional generator {gid!r} (in {expr!r})")
    fs = FormalSimplex.from_word(key, gdim, idx)
    if fs.dim != dim:
        raise SimplicialSetError(f"{expr!r} has dimension {fs.dim}, expected {dim}")
    return fs


def from_cells(name: str, cells: Dict[int, List[Tuple[str, Sequence[str]]]]) -> SimplicialSet:
    """Build from ``{dim: [(id, [face_expr, ...]), ...]}``.

    Ids only need to be unique per dimension; an id reused across
    dimensions is stored as ``id@dim``.
    """
    seen: Dict[str, int] = {}
    for n, items in cells.items():
        ids = [i for i, _ in items]
        if len(set(ids)) != len(ids):
            raise SimplicialSetError(f"duplicate id in dimension {n}")
        for i in ids:
            seen[i] = seen.get(i, 0) + 1
    gens_by_dim: Dict[int, Dict[str, str]] = {}
    generators: Dict[int, List[str]] = {}
    for n, items in sorted(cells.items()):
        for gid, _ in items:
            key = gid if seen[gid] == 1 else f"{gid}@{n}"
            gens_by_dim.setdefault(n, {})[gid] = key
            generators.setdefault(n, []).append(key)
    faces = {}
    for n, items in sorted(cells.items()):
        for gid, fexprs in items:
            key = gens_by_dim[n][gid]
            if n == 0:
                if fexprs:
                    raise SimplicialSetError(f"vertex {gid!r} must not have faces")
                continue
            faces[key] = tuple(parse_face(e, n - 1, gens_by_dim) for e in fexprs)
    return SimplicialSet(name, generators, faces)


def from_json(data) -> SimplicialSet:
    """Parse the JSON file format: ``{"name", "simplices": {"<dim>": [{"id", "faces"}]}}``."""
    if not isinstance(data, dict) or not isinstance(data.get("simplices"), dict):
        raise SimplicialSetError("expected an object with a 'simplices' map")
    cells: Dict[int, list] = {}
    for key, items in data["simplices"].items():
        if not str(key).isdigit():
            raise SimplicialSetError(f"simplices: dimension key {key!r} is not a non-negative integer")
        if not isinstance(items, list):
            raise SimplicialSetError(f"simplices[{key}]: expected a list")
        n = int(key)
        for k, item in enumerate(items):
            where = f"simplices[{key}][{k}]"
            if not isinstance(item, dict) or not isinstance(item.get("id"), str):
                raise SimplicialSetError(f"{where}: expected an object with a string 'id'")
            faces = item.get("faces", [])
            if not isinstance(faces, list) or not all(isinstance(f, str) for f in faces):
                raise SimplicialSetError(f"{where}: 'faces' must be a list of strings")
            if n > 0 and len(faces) != n + 1:
                raise SimplicialSetError(f"{where} ({item['id']}): {len(faces)} faces, expected {n + 1}")
            cells.setdefault(n, []).append((item["id"], faces))
    return from_cells(str(data.get("name", "input")), cells)


def to_json(S: SimplicialSet) -> dict:
    return {"name": S.name, "simplices": {
        str(n): [{"id": x, "faces": [str(f) for f in S.faces.get(x, ())]} for x in gens]
        for n, gens in S.generators.items()}}


def _pt(v="v"):
    return (v, [])


def point() -> SimplicialSet:
    return from_cells("point", {0: [_pt()]})


def circle() -> SimplicialSet:
    return from_cells("circle", {0: [_pt()], 1: [("a", ["v", "v"])]})


def wedge_circles(k: int) -> SimplicialSet:
    if k < 1:
        raise SimplicialSetError("wedge_circles needs k >= 1")
    return from_cells(f"wedge_circles({k})", {0: [_pt()], 1: [(f"a{i}", ["v", "v"]) for i in range(1, k + 1)]})


def sphere(n: int) -> SimplicialSet:
    """``Δ^n / ∂Δ^n``: one vertex and one n-simplex with totally degenerate faces."""
    if n < 2:
        raise SimplicialSetError("sphere(n) needs n >= 2 (use circle for n = 1)")
    deg = " ".join(f"s{j}" for j in range(n - 2, -1, -1))
    return from_cells(f"sphere({n})", {0: [_pt()], n: [("sigma", [f"{deg} v"] * (n + 1))]})


def torus() -> SimplicialSet:
    # faces listed as (d0, d1, d2); edge-path relations ab = c, ba = c
    return from_cells("torus", {
        0: [_pt()],
        1: [("a", ["v", "v"]), ("b", ["v", "v"]), ("c", ["v", "v"])],
        2: [("t1", ["b", "c", "a"]), ("t2", ["a", "c", "b"])],
    })


def rp2() -> SimplicialSet:
    return from_cells("rp2", {
        0: [_pt()],
        1: [("a", ["v", "v"])],
        2: [("t", ["a", "s0 v", "a"])],
    })


def klein() -> SimplicialSet:
    # t1: (d2, d0, d1) = (a, b, c); t2: (d2, d0, d1) = (b, c, a)
    return from_cells("klein", {
        0: [_pt()],
        1: [("a", ["v", "v"]), ("b", ["v", "v"]), ("c", ["v", "v"])],
        2: [("t1", ["b", "c", "a"]), ("t2", ["c", "a", "b"])],
    })


def _subset_name(s: Sequence[int]) -> str:
    return "".join(str(i) for i in s) if max(s, default=0) < 10 else "_".join(map(str, s))


def delta(n: int) -> SimplicialSet:
    """The standard n-simplex; simplices are named by their vertex strings."""
    if n < 0:
        raise SimplicialSetError("delta(n) needs n >= 0")
    cells: Dict[int, list] = {}
    for k in range(n + 1):
        for sub in combinations(range(n + 1), k + 1):
            faces = [_subset_name(sub[:i] + sub[i + 1:]) for i in range(k + 1)] if k else []
            cells.setdefault(k, []).append((_subset_name(sub), faces))
    return from_cells(f"delta({n})", cells)


def collapse_vertices(S: SimplicialSet, name: str | None = None) -> SimplicialSet:
    """Quotient identifying all vertices to one.

    Only valid when no positive-dimensional generator becomes degenerate,
    i.e. when each generator's faces stay formal simplices; edges become
    loops.  ``collapse_vertices(delta(n))`` is a reduced model with cells
    in every dimension up to n.
    """
    v = "v"
    generators = {0: [v]}
    faces = {}
    for n, gens in S.generators.items():
        if n == 0:
            continue
        generators[n] = list(gens)
        for x in gens:
            fl = []
            for f in S.faces[x]:
                if S.dim_of[f.gen] == 0:
                    fl.append(FormalSimplex(v, f.surj))
                else:
                    fl.append(f)
            faces[x] = tuple(fl)
    if v in S.dim_of and S.dim_of[v] != 0:
        raise SimplicialSetError("generator id 'v' is reserved by collapse_vertices")
    return SimplicialSet(name or f"{S.name}/vertices", generators, faces)


BUILTIN_NAMES = ("point", "circle", "sphere(n)", "torus", "rp2", "klein", "wedge_circles(k)", "delta(n)")


def builtin(name: str) -> SimplicialSet:
    """Look up a builtin model such as ``"torus"`` or ``"sphere(3)"``."""
    name = name.strip()
    simple = {"point": point, "circle": circle, "torus": torus, "rp2": rp2, "klein": klein}
    if name in simple:
        return simple[name]()
    param = {"sphere": sphere, "wedge_circles": wedge_circles, "delta": delta,
             "collapsed_delta": lambda n: collapse_vertices(delta(n), f"collapsed_delta({n})")}
    if "(" in name and name.endswith(")"):
        head, arg = name[:-1].split("(", 1)
        if head in param and arg.strip().isdigit():
            return param[head](int(arg))
    raise SimplicialSetError(f"unknown example {name!r}")


ACCEPTANCE_BUILTINS = ("point", "circle", "sphere(2)", "sphere(3)", "torus", "rp2", "klein",
                       "wedge_circles(2)", "wedge_circles(3)")


# ---------------------------------------------------------------------------
# the Alexander-Whitney dg coalgebra


Tensor2 = Dict[Tuple[str, str], int]


def _add(d, k, c):
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


class DgCoalgebra:
    """Normalized chains with differential and coproduct tables over Z."""

    def __init__(self, basis: Dict[int, List[str]], boundary: Dict[str, Dict[str, int]],
                 coproduct: Dict[str, Tensor2], name: str = "C"):
        self.basis = basis
        self.name = name
        self.degree = {b: n for n, bs in basis.items() for b in bs}
        self.boundary_table = boundary
        self.coproduct_table = coproduct

    @classmethod
    def of(cls, S: SimplicialSet) -> "DgCoalgebra":
        return cls({n: list(g) for n, g in S.generators.items()},
                   {x: S.boundary(x) for x in S.all_generators()},
                   {x: S.aw_coproduct(x) for x in S.all_generators()}, name=f"C({S.name})")

    def with_coproduct_term(self, gen: str, term: Tuple[str, str], coef: int) -> "DgCoalgebra":
        """Copy with one coproduct coefficient replaced (fault injection)."""
        cop = {x: dict(t) for x, t in self.coproduct_table.items()}
        cop[gen][term] = coef
        if not coef:
            del cop[gen][term]
        return DgCoalgebra(self.basis, self.boundary_table, cop, self.name + "*")

    @property
    def is_connected(self) -> bool:
        return len(self.basis.get(0, ())) == 1

    def elements(self) -> Iterator[str]:
        for n in sorted(self.basis):
            yield from self.basis[n]

    def d(self, chain: Dict[str, int]) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for x, c in chain.items():
            for y, e in self.boundary_table[x].items():
                _add(out, y, c * e)
        return out

    def delta(self, chain: Dict[str, int]) -> Tensor2:
        out: Tensor2 = {}
        for x, c in chain.items():
            for k, e in self.coproduct_table[x].items():
                _add(out, k, c * e)
        return out

    def counit(self, x: str) -> int:
        return 1 if self.degree[x] == 0 else 0

    def reduced_coproduct(self, x: str) -> Tensor2:
        return {(a, b): c for (a, b), c in self.coproduct_table[x].items()
                if self.degree[a] > 0 and self.degree[b] > 0}

    # -- axiom checks: each returns None or a witness description --------

    def check_d_squared(self):
        for x in self.elements():
            dd = self.d(self.d({x: 1}))
            if dd:
                return {"element": x, "value": _fmt(dd)}
        return None

    def check_coassociativity(self):
        for x in self.elements():
            left: Dict[Tuple[str, str, str], int] = {}
            right: Dict[Tuple[str, str, str], int] = {}
            for (a, b), c in self.coproduct_table[x].items():
                for (a1, a2), e in self.coproduct_table[a].items():
                    _add(left, (a1, a2, b), c * e)
                for (b1, b2), e in self.coproduct_table[b].items():
                    _add(right, (a, b1, b2), c * e)
            if left != right:
                return {"element": x, "value": _fmt(_diff(left, right))}
        return None

    def check_coderivation(self):
        for x in self.elements():
            lhs = self.delta(self.d({x: 1}))
            rhs: Tensor2 = {}
            for (a, b), c in self.coproduct_table[x].items():
                for a2, e in self.boundary_table[a].items():
                    _add(rhs, (a2, b), c * e)
                sign = -1 if self.degree[a] % 2 else 1
                for b2, e in self.boundary_table[b].items():
                    _add(rhs, (a, b2), sign * c * e)
            if lhs != rhs:
                return {"element": x, "value": _fmt(_diff(lhs, rhs))}
        return None

    def check_counit(self):
        for x in self.elements():
            left: Dict[str, int] = {}
            right: Dict[str, int] = {}
            for (a, b), c in self.coproduct_table[x].items():
                if self.counit(a):
                    _add(left, b, c)
                if self.counit(b):
                    _add(right, a, c)
            if left != {x: 1} or right != {x: 1}:
                return {"element": x, "value": {"(eps⊗id)": _fmt(left), "(id⊗eps)": _fmt(right)}}
        return None

    def check_axioms(self) -> Dict[str, Optional[dict]]:
        return {"d_squared": self.check_d_squared(),
                "coassociativity": self.check_coassociativity(),
                "coderivation": self.check_coderivation(),
                "counit": self.check_counit()}


def _diff(a, b):
    out = dict(a)
    for k, v in b.items():
        _add(out, k, -v)
    return out


def _fmt(d) -> str:
    if not d:
        return "0"
    parts = []
    for k in sorted(d, key=str):
        c = d[k]
        key = "⊗".join(k) if isinstance(k, tuple) else str(k)
        parts.append(f"{c:+d}·{key}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# maps


class SimplicialMap:
    """A simplicial map given on generators by formal simplices of the target."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images: Dict[str, FormalSimplex]):
        self.source = source
        self.target = target
        self.images = dict(images)

    @classmethod
    def from_names(cls, source, target, names: Dict[str, str]):
        """Images given as face expressions, e.g. ``{"a1": "a", "a2": "s0 v"}``."""
        by_dim = {n: {g: g for g in gens} for n, gens in target.generators.items()}
        return cls(source, target, {x: parse_face(e, source.dim_of[x], by_dim) for x, e in names.items()})

    def image(self, fs: FormalSimplex) -> FormalSimplex:
        img = self.images[fs.gen]
        return self.target.apply(img, fs.surj)

    def validate(self) -> Optional[str]:
        S, T = self.source, self.target
        for x in S.all_generators():
            if x not in self.images:
                return f"no image for {x!r}"
            if self.images[x].dim != S.dim_of[x]:
                return f"image of {x!r} has the wrong dimension"
            if S.dim_of[x]:
                for i in range(S.dim_of[x] + 1):
                    if self.image(S.face(S.simplex(x), i)) != T.face(self.images[x], i):
                        return f"face d{i} not preserved at {x!r}"
        return None

    def chain_map(self) -> Dict[str, Dict[str, int]]:
        out = {}
        for x in self.source.all_generators():
            img = self.images[x]
            out[x] = {} if img.is_degenerate else {img.gen: 1}
        return out
