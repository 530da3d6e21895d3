"""Twisted tensor products C(S) ⊗_ι k[G] for finite quotients of π₁.

The twisting cochain ι sends a simplex σ of dimension n >= 1 to the letter
[σ].  A realization ρ: π₁(S) -> G turns a degree-0 letter [e] into
``g_e - 1`` (the inverse of the dictionary ``ς(e) = 1 + [e]``), and

    d_ι(σ⊗g) = ∂σ⊗g + (-1)^n d_nσ ⊗ ρ(ι(back edge of σ))·g

which only sees the back edge because ρ kills letters of positive degree.
Expanding, the last face of σ is translated by the group element of its
back edge.  For the universal realization this computes the homology of
the universal cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exact import AbelianGroupInvariants, ChainComplex, DifferentialError, Ring, ZZ
from .pi1 import FiniteGroupTable, fundamental_group
from .report import CheckResult, Report
from .simpset import FormalSimplex, SimplicialSet
from .words import Poly

Cell = Tuple[str, str]


class RealizationError(ValueError):
    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message)
        self.witness = witness


def twisting_cochain(S: SimplicialSet, sigma: str) -> Poly:
    """``ι(σ) = [σ]`` in ΩC(S); zero on vertices."""
    if S.dim_of[sigma] == 0:
        return {}
    return {(sigma,): 1}


@dataclass
class GroupRealization:
    """Images in a finite group of the edges of a reduced S."""

    S: SimplicialSet
    group: FiniteGroupTable
    edge_images: Dict[str, str]

    def element(self, fs: FormalSimplex) -> int:
        """Group element of a (possibly degenerate) 1-simplex."""
        if fs.dim != 1:
            raise ValueError("element() takes a 1-simplex")
        if fs.is_degenerate:
            return self.group.identity
        return self.group.index(self.edge_images[fs.gen])

    def validate(self) -> None:
        S, G = self.S, self.group
        if not S.is_reduced:
            raise RealizationError(f"{S.name} is not reduced")
        for e in S.gens(1):
            if e not in self.edge_images:
                raise RealizationError(f"no image for edge {e!r}", e)
            G.index(self.edge_images[e])
        extra = set(self.edge_images) - set(S.gens(1))
        if extra:
            raise RealizationError(f"edge map names unknown edges {sorted(extra)}", sorted(extra)[0])
        for t in S.gens(2):
            d0, d1, d2 = S.faces[t]
            if G.mul(self.element(d2), self.element(d0)) != self.element(d1):
                raise RealizationError(f"relation of {t!r} violated: g(d2)·g(d0) != g(d1)", t)

    @classmethod
    def universal(cls, S: SimplicialSet, max_cosets: int = 10_000) -> "GroupRealization":
        """π₁(S) itself via coset enumeration (requires π₁ finite)."""
        G, images = FiniteGroupTable.from_presentation(fundamental_group(S), max_cosets, name=f"pi1({S.name})")
        return cls(S, G, images)

    @classmethod
    def trivial(cls, S: SimplicialSet) -> "GroupRealization":
        from .pi1 import trivial_group
        return cls(S, trivial_group(), {e: "1" for e in S.gens(1)})


def twisted_differential(R: GroupRealization, sigma: str, g: int, twisted: bool = True) -> Dict[Cell, int]:
    S, G = R.S, R.group
    n = S.dim_of[sigma]
    out: Dict[Cell, int] = {}
    if n == 0:
        return out
    s = S.simplex(sigma)
    for i in range(n + 1):
        f = S.face(s, i)
        if f.is_degenerate:
            continue
        h = g
        if twisted and i == n:
            h = G.mul(R.element(S.back(s, 1)), g)
        key = (f.gen, G.elements[h])
        c = out.get(key, 0) + (-1 if i % 2 else 1)
        if c:
            out[key] = c
        else:
            del out[key]
    return out


def twisted_complex(S: SimplicialSet, R: GroupRealization, ring: Ring = ZZ,
                    check: bool = True) -> ChainComplex:
    """``C(S) ⊗_ι k[G]`` with basis ``(σ, g)`` in generator-then-group order."""
    if R.S is not S:
        R = GroupRealization(S, R.group, R.edge_images)
    R.validate()
    G = R.group
    basis: Dict[int, List[Cell]] = {}
    diff: Dict[int, Dict[Cell, Dict[Cell, int]]] = {}
    for n, gens in S.generators.items():
        basis[n] = [(x, G.elements[g]) for x in gens for g in range(len(G))]
        diff[n] = {(x, G.elements[g]): twisted_differential(R, x, g) for x in gens for g in range(len(G))}
    C = ChainComplex(basis, diff, ring)
    if check:
        C.check_square_zero()
    return C


def cover_homology(S: SimplicialSet, R: GroupRealization, ring: Ring = ZZ) -> List[AbelianGroupInvariants]:
    C = twisted_complex(S, R, ring)
    return [C.homology(n, ring) for n in range(S.top_dim + 1)]


def augmentation_collapse(S: SimplicialSet, R: GroupRealization) -> CheckResult:
    """Sending every g to 1 carries d_ι(σ⊗g) to ∂σ, basis element by basis element."""
    name = "augmentation collapses d_ι to ∂"
    n = 0
    for x in S.all_generators():
        for g in range(len(R.group)):
            n += 1
            collapsed: Dict[str, int] = {}
            for (y, _), c in twisted_differential(R, x, g).items():
                collapsed[y] = collapsed.get(y, 0) + c
            collapsed = {y: c for y, c in collapsed.items() if c}
            if collapsed != S.boundary(x):
                return CheckResult(name, False, n, f"{x}⊗{R.group.elements[g]}")
    return CheckResult(name, True, n)


def check_cover(S: SimplicialSet, R: GroupRealization, ring: Ring = ZZ) -> Report:
    rep = Report(f"twisted complex C({S.name}) ⊗ k[{R.group.name}]")
    try:
        R.validate()
    except RealizationError as exc:
        rep.add(CheckResult("realization respects relations", False, 0, exc.witness, str(exc)))
        return rep
    rep.add(CheckResult("realization respects relations", True, len(S.gens(2))))
    C = twisted_complex(S, R, ring, check=False)
    try:
        C.check_square_zero()
        rep.add(CheckResult("d_ι² = 0", True, sum(len(b) for b in C.basis.values())))
    except DifferentialError as exc:
        rep.add(CheckResult("d_ι² = 0", False, 0, str(exc.element), str(exc)))
        return rep
    rep.add(augmentation_collapse(S, R))
    chi = S.chain_complex().euler_characteristic()
    ok = C.euler_characteristic() == len(R.group) * chi
    rep.add(CheckResult("χ = |G|·χ(S)", ok, 1, None if ok else C.euler_characteristic(),
                        f"{C.euler_characteristic()} = {len(R.group)}·{chi}"))
    return rep
