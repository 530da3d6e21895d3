"""The cobar construction of a connected dg coalgebra.

Letters are the positive-degree basis elements of the coalgebra; the letter
``[x]`` has degree ``|x| - 1``.  On a letter

    D[x] = -[∂x] + Σ (-1)^{|x'|} [x'|x'']

summed over the reduced coproduct, and D is extended as a derivation
``D(uv) = D(u)v + (-1)^{|u|} u D(v)``.
"""

from __future__ import annotations

import os
from typing import Dict, Iterator, List, Optional, Sequence

from . import words as W
from .exact import ChainComplex, Ring, ZZ
from .report import CheckResult
from .simpset import DgCoalgebra, SimplicialMap, SimplicialSet
from .words import Poly, Word

DEFAULT_MAX_DEGREE = 4


class NotConnectedError(ValueError):
    pass


class NotOneReducedError(ValueError):
    pass


def max_cells() -> int:
    return int(os.environ.get("COBAR_MAX_CELLS", "2000000"))


class CobarAlgebra:
    """ΩC as a dg algebra with a degree- and length-bounded monomial basis."""

    def __init__(self, C: DgCoalgebra, max_degree: int = DEFAULT_MAX_DEGREE,
                 max_length: Optional[int] = None):
        if not C.is_connected:
            raise NotConnectedError(f"{C.name} is not connected (needs exactly one degree-0 basis element)")
        self.C = C
        self.max_degree = max_degree
        self.letters: List[str] = [x for x in C.elements() if C.degree[x] >= 1]
        self.letter_degree: Dict[str, int] = {x: C.degree[x] - 1 for x in self.letters}
        self.has_degree_zero_letters = any(d == 0 for d in self.letter_degree.values())
        if max_length is None:
            max_length = max_degree + 1 if self.has_degree_zero_letters else max_degree
        self.max_length = max_length
        self._dletter = {x: self._letter_differential(x) for x in self.letters}
        self._basis_cache: Dict[tuple, List[Word]] = {}

    # -- grading ---------------------------------------------------------

    def degree(self, w: Word) -> int:
        return sum(self.letter_degree[x] for x in w)

    def elem_degree(self, e: Poly) -> Optional[int]:
        degs = {self.degree(w) for w in e}
        return degs.pop() if len(degs) == 1 else None

    def basis(self, degree: int, max_length: Optional[int] = None) -> List[Word]:
        """Monomials of the given degree with at most ``max_length`` letters."""
        if max_length is None:
            max_length = self.max_length
        key = (degree, max_length)
        if key not in self._basis_cache:
            out: List[Word] = []

            def grow(prefix: Word, deg: int):
                if deg == degree:
                    out.append(prefix)
                if len(prefix) == max_length:
                    return
                for x in self.letters:
                    d = deg + self.letter_degree[x]
                    if d <= degree:
                        grow(prefix + (x,), d)

            grow((), 0)
            out.sort(key=lambda w: (len(w), [self.letters.index(x) for x in w]))
            if len(out) > max_cells():
                raise OverflowError(f"{len(out)} monomials in degree {degree} exceed COBAR_MAX_CELLS")
            self._basis_cache[key] = out
        return self._basis_cache[key]

    def monomials(self, max_degree: Optional[int] = None, max_length: Optional[int] = None) -> Iterator[Word]:
        if max_degree is None:
            max_degree = self.max_degree
        for n in range(max_degree + 1):
            yield from self.basis(n, max_length)

    # -- structure maps --------------------------------------------------

    def _letter_differential(self, x: str) -> Poly:
        out: Poly = {}
        for y, c in self.C.boundary_table[x].items():
            if self.C.degree[y] >= 1:
                W.add_term(out, (y,), -c)
        for (a, b), c in self.C.reduced_coproduct(x).items():
            sign = -1 if self.C.degree[a] % 2 else 1
            W.add_term(out, (a, b), sign * c)
        return out

    def d_letter(self, x: str) -> Poly:
        return self._dletter[x]

    def D_word(self, w: Word) -> Poly:
        out: Poly = {}
        sign = 1
        for i, x in enumerate(w):
            pre, post = w[:i], w[i + 1:]
            for mid, c in self._dletter[x].items():
                W.add_term(out, pre + mid + post, sign * c)
            if self.letter_degree[x] % 2:
                sign = -sign
        return out

    def D(self, e: Poly) -> Poly:
        return W.linear(self.D_word, e)

    @staticmethod
    def mul(a: Poly, b: Poly) -> Poly:
        return W.mul(a, b)

    @staticmethod
    def augmentation(e: Poly) -> int:
        return e.get((), 0)

    unit = staticmethod(lambda: dict(W.ONE))

    # -- checks ----------------------------------------------------------

    def check_D_squared(self, max_degree: Optional[int] = None, max_length: Optional[int] = None) -> CheckResult:
        n = 0
        for w in self.monomials(max_degree, max_length):
            n += 1
            dd = self.D(self.D_word(w))
            if dd:
                return CheckResult("D∘D = 0", False, n, W.fmt_word(w), f"D²{W.fmt_word(w)} = {W.fmt(dd)}")
        return CheckResult("D∘D = 0", True, n)

    def check_derivation(self, max_degree: Optional[int] = None, max_length: Optional[int] = None) -> CheckResult:
        """Leibniz rule on every split of every basis monomial."""
        n = 0
        for w in self.monomials(max_degree, max_length):
            for k in range(len(w) + 1):
                u, v = {w[:k]: 1}, {w[k:]: 1}
                sign = -1 if self.degree(w[:k]) % 2 else 1
                rhs = W.add(W.mul(self.D(u), v), W.scale(W.mul(u, self.D(v)), sign))
                n += 1
                if self.D_word(w) != rhs:
                    return CheckResult("Leibniz rule", False, n, f"{W.fmt_word(w[:k])}·{W.fmt_word(w[k:])}")
        return CheckResult("Leibniz rule", True, n)

    def check_augmentation(self, max_degree: Optional[int] = None, max_length: Optional[int] = None) -> CheckResult:
        n = 0
        for w in self.monomials(max_degree, max_length):
            n += 1
            if self.augmentation(self.D_word(w)):
                return CheckResult("ε∘D = 0", False, n, W.fmt_word(w))
        return CheckResult("ε∘D = 0", True, n)

    def check_filtration(self, max_degree: Optional[int] = None, max_length: Optional[int] = None) -> CheckResult:
        """Each term of D(w) has length len(w) or len(w) + 1."""
        n = 0
        for w in self.monomials(max_degree, max_length):
            n += 1
            for v in self.D_word(w):
                if len(v) not in (len(w), len(w) + 1):
                    return CheckResult("word-length filtration", False, n, W.fmt_word(w))
        return CheckResult("word-length filtration", True, n)

    def chain_complex(self, top: int, ring: Ring = ZZ) -> ChainComplex:
        """Degrees ``0..top`` as a chain complex (only when every degree is finite)."""
        if self.has_degree_zero_letters:
            raise NotOneReducedError("degree-0 letters make every degree infinite-rank; "
                                     "use the pi1 / H0 operations instead")
        basis = {n: self.basis(n, max_length=max(n, 0)) for n in range(top + 1)}
        diff = {n: {w: self.D_word(w) for w in basis[n]} for n in range(top + 1)}
        return ChainComplex(basis, diff, ring)


def cobar(C, max_degree: int = DEFAULT_MAX_DEGREE, max_length: Optional[int] = None) -> CobarAlgebra:
    """Cobar construction of a coalgebra or of the chains on a simplicial set."""
    if isinstance(C, SimplicialSet):
        C = C.coalgebra()
    return CobarAlgebra(C, max_degree, max_length)


def check_D_squared(om: CobarAlgebra, max_degree: Optional[int] = None) -> CheckResult:
    return om.check_D_squared(max_degree)


def loop_homology(S: SimplicialSet, n_max: int, ring: Ring = ZZ):
    """Homology of ΩC(S) in degrees ``0..n_max`` for S without nondegenerate edges."""
    if S.gens(1):
        raise NotOneReducedError(f"{S.name} has nondegenerate 1-simplices; its cobar construction is "
                                 "infinite in each degree (use pi1 / H0 operations instead)")
    om = cobar(S, max_degree=n_max + 1)
    cc = om.chain_complex(n_max + 1, ring)
    return [cc.homology(n, ring) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# functoriality


class MorphismError(ValueError):
    pass


class CoalgebraMorphism:
    """A degree-0 linear map between dg coalgebras, given on basis elements."""

    def __init__(self, source: DgCoalgebra, target: DgCoalgebra, table: Dict[str, Dict[str, int]]):
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_simplicial_map(cls, f: SimplicialMap) -> "CoalgebraMorphism":
        err = f.validate()
        if err:
            raise MorphismError(err)
        return cls(f.source.coalgebra(), f.target.coalgebra(), f.chain_map())

    @classmethod
    def identity(cls, C: DgCoalgebra) -> "CoalgebraMorphism":
        return cls(C, C, {x: {x: 1} for x in C.elements()})

    def __call__(self, chain: Dict[str, int]) -> Dict[str, int]:
        return W.linear(lambda x: self.table[x], chain)

    def compose(self, g: "CoalgebraMorphism") -> "CoalgebraMorphism":
        """``self ∘ g``."""
        return CoalgebraMorphism(g.source, self.target, {x: self(g.table[x]) for x in g.source.elements()})

    def validate(self) -> Optional[str]:
        S, T = self.source, self.target
        for x in S.elements():
            img = self.table.get(x)
            if img is None:
                return f"no image for {x!r}"
            if any(T.degree[y] != S.degree[x] for y in img):
                return f"image of {x!r} is not homogeneous of degree {S.degree[x]}"
            if self(S.d({x: 1})) != T.d(img):
                return f"not a chain map at {x!r}"
            lhs = W.linear(lambda ab: {(a2, b2): c1 * c2 for a2, c1 in self.table[ab[0]].items()
                                       for b2, c2 in self.table[ab[1]].items()}, S.delta({x: 1}))
            if lhs != T.delta(img):
                return f"not comultiplicative at {x!r}"
        return None


class CobarMap:
    """Ωf: letters are mapped linearly and the result extended multiplicatively."""

    def __init__(self, f: CoalgebraMorphism, max_degree: int = DEFAULT_MAX_DEGREE):
        err = f.validate()
        if err:
            raise MorphismError(err)
        self.f = f
        self.source = CobarAlgebra(f.source, max_degree)
        self.target = CobarAlgebra(f.target, max_degree)
        self._letters = {}
        for x in self.source.letters:
            self._letters[x] = {(y,): c for y, c in f.table[x].items()}

    def on_word(self, w: Word) -> Poly:
        return W.product(self._letters[x] for x in w)

    def __call__(self, e: Poly) -> Poly:
        return W.linear(self.on_word, e)

    def check_chain_map(self, max_degree: Optional[int] = None) -> CheckResult:
        n = 0
        for w in self.source.monomials(max_degree):
            n += 1
            if self(self.source.D_word(w)) != self.target.D(self.on_word(w)):
                return CheckResult("Ωf∘D = D∘Ωf", False, n, W.fmt_word(w))
        return CheckResult("Ωf∘D = D∘Ωf", True, n)


def cobar_map(f, max_degree: int = DEFAULT_MAX_DEGREE) -> CobarMap:
    if isinstance(f, SimplicialMap):
        f = CoalgebraMorphism.from_simplicial_map(f)
    return CobarMap(f, max_degree)
