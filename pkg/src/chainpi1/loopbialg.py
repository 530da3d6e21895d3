"""The coproduct ∇ on ΩC(S) coming from the cubical model of the loop space.

A monomial ``[σ1|...|σk]`` is read as the necklace ``Δ^{t1} ∨ ... ∨ Δ^{tk}``
mapped into S bead by bead.  Its cube has one direction per inner vertex of
each bead (bead-major order).  Fixing a direction to 1 splits the bead at
that vertex, fixing it to 0 deletes the vertex.  On the cube basis the
coproduct is the Serre-type shuffle formula

    Δ(σ) = Σ ± ∂⁰_J(σ) ⊗ ∂¹_I(σ)

over ordered partitions ``(I, J)`` of the directions, with the sign of the
shuffle ``(I, J)``.  The dictionary

    φ(bead) = [σ]              if dim σ > 1
    φ(bead) = 1 + shift·[σ]    if dim σ = 1

identifies cube chains with ΩC(S), and ∇ = (φ⊗φ)∘Δ∘φ⁻¹.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import words as W
from .cobar import CobarAlgebra, cobar
from .report import CheckResult, Report
from .simpset import FormalSimplex, SimplicialSet
from .words import Poly, Tensor, Word

Beads = Tuple[FormalSimplex, ...]


class NotReducedError(ValueError):
    pass


# ---------------------------------------------------------------------------
# necklace faces


def directions(beads: Sequence[FormalSimplex]) -> List[Tuple[int, int]]:
    """Cube directions as (bead index, inner vertex), bead-major."""
    return [(i, v) for i, b in enumerate(beads) for v in range(1, b.dim)]


def restrict(S: SimplicialSet, beads: Sequence[FormalSimplex], fixed: Dict[int, int]) -> Beads:
    """The face of the necklace cube with the given directions fixed to 0/1.

    Returns the new necklace with possibly degenerate beads; degenerate
    1-dimensional beads are collapsed (they are identified with the unit).
    """
    out: List[FormalSimplex] = []
    idx = 0
    for b in beads:
        t = b.dim
        current = [0]
        for v in range(1, t):
            val = fixed.get(idx)
            idx += 1
            if val == 1:
                current.append(v)
                out.append(S.apply(b, current))
                current = [v]
            elif val is None:
                current.append(v)
        current.append(t)
        out.append(S.apply(b, current))
    return tuple(x for x in out if not (x.dim == 1 and x.is_degenerate))


def normalize(beads: Iterable[FormalSimplex]) -> Optional[Word]:
    """Normalized cube: ``None`` if some bead is a degenerate simplex of dim >= 2."""
    out = []
    for b in beads:
        if b.is_degenerate:
            if b.dim == 1:
                continue
            return None
        out.append(b.gen)
    return tuple(out)


def _shuffle_sign(I: Sequence[int], J: Sequence[int]) -> int:
    inv = sum(1 for i in I for j in J if i > j)
    return -1 if inv % 2 else 1


class LoopBialgebra:
    """ΩC(S) for reduced S with the cubical coproduct ∇, unit and counit.

    ``shift`` selects the degree-0 dictionary ``ς(e) = 1 + shift·[e]``.
    ``sign_fault`` flips the sign of the ``σ ⊗ ∂¹(all)σ`` shuffle term on
    cubes of positive dimension; it exists to exercise the checks.
    """

    def __init__(self, S: SimplicialSet, max_degree: int = 3, max_length: Optional[int] = None,
                 shift: int = 1, sign_fault: bool = False):
        if not S.is_reduced:
            raise NotReducedError(f"{S.name} is not reduced (needs exactly one vertex)")
        if shift not in (1, -1):
            raise ValueError("shift must be +1 or -1")
        self.S = S
        self.shift = shift
        self.sign_fault = sign_fault
        self.om: CobarAlgebra = cobar(S, max_degree, max_length)
        self.max_degree = max_degree
        self.dim = {x: S.dim_of[x] for x in self.om.letters}
        self._cube_delta: Dict[Word, Tensor] = {}
        self._nabla: Dict[Word, Tensor] = {}
        self._phi: Dict[Word, Poly] = {}
        self._phi_inv: Dict[Word, Poly] = {}

    # -- the cube basis --------------------------------------------------

    def beads(self, w: Word) -> Beads:
        return tuple(self.S.simplex(x) for x in w)

    def cube_dim(self, w: Word) -> int:
        return sum(self.dim[x] - 1 for x in w)

    def cube_face(self, w: Word, j: int, eps: int) -> Optional[Word]:
        """Normalized face ``∂^eps_j`` (``j`` 0-based) of the cube of ``w``."""
        if not 0 <= j < self.cube_dim(w):
            raise IndexError(f"direction {j} out of range for {W.fmt_word(w)}")
        return normalize(restrict(self.S, self.beads(w), {j: eps}))

    def cube_boundary(self, w: Word) -> Poly:
        """``Σ_j (-1)^j (∂¹_j - ∂⁰_j)`` with directions numbered from 1."""
        out: Poly = {}
        b = self.beads(w)
        for j in range(self.cube_dim(w)):
            sign = -1 if (j + 1) % 2 else 1
            f1 = normalize(restrict(self.S, b, {j: 1}))
            f0 = normalize(restrict(self.S, b, {j: 0}))
            if f1 is not None:
                W.add_term(out, f1, sign)
            if f0 is not None:
                W.add_term(out, f0, -sign)
        return out

    def cube_coproduct(self, w: Word) -> Tensor:
        """Shuffle coproduct on a normalized cube."""
        if w in self._cube_delta:
            return self._cube_delta[w]
        b = self.beads(w)
        n = self.cube_dim(w)
        out: Tensor = {}
        for mask in range(1 << n):
            I = [k for k in range(n) if mask >> k & 1]
            J = [k for k in range(n) if not mask >> k & 1]
            left = normalize(restrict(self.S, b, {k: 0 for k in J}))
            if left is None:
                continue
            right = normalize(restrict(self.S, b, {k: 1 for k in I}))
            if right is None:
                continue
            sign = _shuffle_sign(I, J)
            if self.sign_fault and n and not J:
                sign = -sign
            W.add_term(out, (left, right), sign)
        self._cube_delta[w] = out
        return out

    # -- the dictionary --------------------------------------------------

    def phi_word(self, w: Word) -> Poly:
        if w not in self._phi:
            factors = [{(x,): 1} if self.dim[x] > 1 else {(): 1, (x,): self.shift} for x in w]
            self._phi[w] = W.product(factors)
        return self._phi[w]

    def phi(self, e: Poly) -> Poly:
        return W.linear(self.phi_word, e)

    def phi_inv_word(self, w: Word) -> Poly:
        if w not in self._phi_inv:
            s = self.shift
            factors = [{(x,): 1} if self.dim[x] > 1 else {(x,): s, (): -s} for x in w]
            self._phi_inv[w] = W.product(factors)
        return self._phi_inv[w]

    def phi_inv(self, e: Poly) -> Poly:
        return W.linear(self.phi_inv_word, e)

    def phi2(self, t: Tensor) -> Tensor:
        out: Tensor = {}
        for (u, v), c in t.items():
            pu, pv = self.phi_word(u), self.phi_word(v)
            for a, ca in pu.items():
                for b, cb in pv.items():
                    W.add_term(out, (a, b), c * ca * cb)
        return out

    # -- bialgebra structure ---------------------------------------------

    def nabla_word(self, w: Word) -> Tensor:
        if w not in self._nabla:
            acc: Tensor = {}
            for u, c in self.phi_inv_word(w).items():
                for k, e in self.cube_coproduct(u).items():
                    W.add_term(acc, k, c * e)
            self._nabla[w] = self.phi2(acc)
        return self._nabla[w]

    def nabla(self, e: Poly) -> Tensor:
        return W.linear(self.nabla_word, e)

    @staticmethod
    def counit(e: Poly) -> int:
        return e.get((), 0)

    @staticmethod
    def unit() -> Poly:
        return dict(W.ONE)

    def degree(self, w: Word) -> int:
        return self.om.degree(w)

    def D(self, e: Poly) -> Poly:
        return self.om.D(e)

    def D2(self, t: Tensor) -> Tensor:
        """``D⊗1 + 1⊗D`` with the Koszul sign."""
        out: Tensor = {}
        for (u, v), c in t.items():
            for u2, e in self.om.D_word(u).items():
                W.add_term(out, (u2, v), c * e)
            sign = -1 if self.degree(u) % 2 else 1
            for v2, e in self.om.D_word(v).items():
                W.add_term(out, (u, v2), sign * c * e)
        return out

    def shifted(self, w: Word) -> Poly:
        """``ς(w)``: the dictionary applied letter-wise to a word of edges."""
        return W.product({(): 1, (x,): self.shift} for x in w)

    # -- checks ----------------------------------------------------------

    def monomials(self, max_degree=None, max_length=None):
        return self.om.monomials(max_degree, max_length)

    def check_chain_map(self, max_degree=None) -> CheckResult:
        name = "(i) ∇ is a chain map"
        n = 0
        for w in self.monomials(max_degree):
            n += 1
            lhs = self.nabla(self.om.D_word(w))
            rhs = self.D2(self.nabla_word(w))
            if lhs != rhs:
                return CheckResult(name, False, n, W.fmt_word(w), W.fmt(W.sub(lhs, rhs)))
        return CheckResult(name, True, n)

    def check_coassociativity(self, max_degree=None) -> CheckResult:
        name = "(ii) ∇ coassociative"
        n = 0
        for w in self.monomials(max_degree):
            n += 1
            left: dict = {}
            right: dict = {}
            for (u, v), c in self.nabla_word(w).items():
                for (u1, u2), e in self.nabla_word(u).items():
                    W.add_term(left, (u1, u2, v), c * e)
                for (v1, v2), e in self.nabla_word(v).items():
                    W.add_term(right, (u, v1, v2), c * e)
            if left != right:
                return CheckResult(name, False, n, W.fmt_word(w))
        return CheckResult(name, True, n)

    def check_multiplicative(self, max_degree=None) -> CheckResult:
        name = "(iii) ∇ multiplicative"
        n = 0
        for w in self.monomials(max_degree):
            for k in range(len(w) + 1):
                n += 1
                prod = W.tensor_mul(self.nabla_word(w[:k]), self.nabla_word(w[k:]), self.degree)
                if prod != self.nabla_word(w):
                    return CheckResult(name, False, n, f"{W.fmt_word(w[:k])}·{W.fmt_word(w[k:])}")
        return CheckResult(name, True, n)

    def check_counit(self, max_degree=None) -> CheckResult:
        name = "(iv) counit laws"
        n = 0
        for w in self.monomials(max_degree):
            n += 1
            left: Poly = {}
            right: Poly = {}
            for (u, v), c in self.nabla_word(w).items():
                if not u:
                    W.add_term(left, v, c)
                if not v:
                    W.add_term(right, u, c)
            if left != {w: 1} or right != {w: 1}:
                return CheckResult(name, False, n, W.fmt_word(w))
        return CheckResult(name, True, n)

    def check_counit_algebra_map(self, max_degree=None) -> CheckResult:
        name = "(v) ε is an algebra map"
        if self.counit(self.unit()) != 1 or self.nabla_word(()) != {((), ()): 1}:
            return CheckResult(name, False, 0, "1")
        n = 1
        for w in self.monomials(max_degree):
            for k in range(len(w) + 1):
                n += 1
                if self.counit({w: 1}) != self.counit({w[:k]: 1}) * self.counit({w[k:]: 1}):
                    return CheckResult(name, False, n, W.fmt_word(w))
            if self.counit(self.om.D_word(w)):
                return CheckResult(name, False, n, f"ε(D{W.fmt_word(w)}) != 0")
        return CheckResult(name, True, n)

    def check_differential_consistency(self, max_degree=None) -> CheckResult:
        """D agrees with the transported cube boundary φ∘∂_□∘φ⁻¹."""
        name = "D = φ∘∂□∘φ⁻¹"
        n = 0
        for w in self.monomials(max_degree):
            n += 1
            cube = W.linear(self.cube_boundary, self.phi_inv_word(w))
            if self.phi(cube) != self.om.D_word(w):
                return CheckResult(name, False, n, W.fmt_word(w),
                                   f"D = {W.fmt(self.om.D_word(w))}, cubes give {W.fmt(self.phi(cube))}")
        return CheckResult(name, True, n)

    def check_cubical_identities(self, max_degree: int = 3) -> CheckResult:
        """``∂^a_i ∂^b_j = ∂^b_{j-1} ∂^a_i`` for i < j, on raw (unnormalized) faces."""
        name = "cubical identities"
        n = 0
        for w in self.monomials(max_degree):
            b = self.beads(w)
            m = self.cube_dim(w)
            for j in range(m):
                for i in range(j):
                    for a in (0, 1):
                        for e in (0, 1):
                            n += 1
                            lhs = restrict(self.S, restrict(self.S, b, {j: e}), {i: a})
                            rhs = restrict(self.S, restrict(self.S, b, {i: a}), {j - 1: e})
                            both = restrict(self.S, b, {i: a, j: e})
                            if not lhs == rhs == both:
                                return CheckResult(name, False, n, f"{W.fmt_word(w)} i={i} j={j}")
        return CheckResult(name, True, n)

    def check_grouplike(self, max_length: int = 3) -> CheckResult:
        """``∇ς(w) = ς(w)⊗ς(w)`` and ``ε ς(w) = 1`` for words of edges."""
        name = "ς(w) group-like"
        n = 0
        for w in self.om.basis(0, max_length):
            n += 1
            g = self.shifted(w)
            if self.nabla(g) != W.tensor(g, g) or self.counit(g) != 1:
                return CheckResult(name, False, n, W.fmt_word(w))
        return CheckResult(name, True, n)

    def cube_coproduct_chain_map(self, max_degree=None) -> CheckResult:
        """The shuffle coproduct commutes with ∂_□ on the cube basis itself."""
        name = "Δ□ chain map on cubes"
        n = 0
        for w in self.monomials(max_degree):
            n += 1
            lhs = W.linear(self.cube_coproduct, self.cube_boundary(w))
            rhs: Tensor = {}
            for (u, v), c in self.cube_coproduct(w).items():
                for u2, e in self.cube_boundary(u).items():
                    W.add_term(rhs, (u2, v), c * e)
                sign = -1 if self.cube_dim(u) % 2 else 1
                for v2, e in self.cube_boundary(v).items():
                    W.add_term(rhs, (u, v2), sign * c * e)
            if lhs != rhs:
                return CheckResult(name, False, n, W.fmt_word(w))
        return CheckResult(name, True, n)


def nabla(S: SimplicialSet, m: Word | Poly, **kw) -> Tensor:
    B = LoopBialgebra(S, **kw)
    return B.nabla(m if isinstance(m, dict) else {tuple(m): 1})


def check_bialgebra(S: SimplicialSet, max_degree: int = 3, max_length: Optional[int] = None,
                    **kw) -> Report:
    """Check the five dg bialgebra axioms on every monomial up to the bound.

    Stops at the first failing axiom (later axioms are not run).
    """
    B = LoopBialgebra(S, max_degree, max_length, **kw)
    rep = Report(f"dg bialgebra axioms for ΩC({S.name}) up to degree {max_degree}, "
                 f"word length {B.om.max_length}")
    for check in (B.check_chain_map, B.check_coassociativity, B.check_multiplicative,
                  B.check_counit, B.check_counit_algebra_map):
        if not rep.add(check()):
            break
    return rep


def extract_E1q(S: SimplicialSet, sigma: str, q: int, B: Optional[LoopBialgebra] = None) -> Dict[Tuple[str, Word], int]:
    """The component of ∇[σ] in (one letter) ⊗ (words of length q).

    Keys are ``(left letter, right word)``; read as a multilinear map
    ``C -> C ⊗ C^{⊗q}`` on the underlying chains.
    """
    if S.dim_of.get(sigma, 0) < 1:
        raise ValueError(f"{sigma!r} is not a generator of dimension >= 1")
    B = B or LoopBialgebra(S, max_degree=max(S.dim_of[sigma] - 1, 0))
    return {(u[0], v): c for (u, v), c in B.nabla_word((sigma,)).items() if len(u) == 1 and len(v) == q}


def E1q_table(S: SimplicialSet, q_max: int = 3) -> Dict[str, Dict[int, Dict[Tuple[str, Word], int]]]:
    B = LoopBialgebra(S, max_degree=max(S.top_dim - 1, 0))
    return {x: {q: extract_E1q(S, x, q, B) for q in range(q_max + 1)}
            for n in range(1, S.top_dim + 1) for x in S.gens(n)}
