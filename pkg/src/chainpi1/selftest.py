"""The acceptance suite as a runnable report.

Each criterion returns a list of :class:`CheckResult`.  Output contains no
timings unless asked for, so two runs print identical bytes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .cobar import cobar, loop_homology
from .cover import GroupRealization, augmentation_collapse, cover_homology, twisted_complex
from .exact import AbelianGroupInvariants, DifferentialError
from .loopbialg import LoopBialgebra, check_bialgebra
from .pi1 import (abelianization, antipode_check, cyclic_group, fundamental_group, grouplike_elements,
                  group_table, hurewicz_check, shift_consistency, tietze_simplify, todd_coxeter)
from .report import CheckResult
from .rigid import cell_counts, check_phi_algebra_map, colimit_vs_lurie, lurie_mapping_space, lurie_vs_cube
from .simpset import ACCEPTANCE_BUILTINS, builtin

FAULTS = ("aw-sign", "ez-sign", "nabla-sign")


@dataclass
class Criterion:
    number: int
    title: str
    tags: Sequence[str]
    run: Callable[[Optional[str]], List[CheckResult]]


def _crit_coalgebra(fault):
    out = []
    for name in ACCEPTANCE_BUILTINS:
        C = builtin(name).coalgebra()
        if fault == "aw-sign":
            C = _aw_fault(C)
        res = C.check_axioms()
        for axiom, witness in res.items():
            out.append(CheckResult(f"{name}: {axiom}", witness is None, 1, witness))
    return out


def _aw_fault(C):
    """Negate the (top ⊗ vertex) Alexander-Whitney term of the first 2-simplex."""
    for x in C.basis.get(2, []):
        for (a, b), c in C.coproduct_table[x].items():
            if a == x and C.degree[b] == 0:
                return C.with_coproduct_term(x, (a, b), -c)
    return C


def _crit_cobar(fault):
    out = []
    for name in ACCEPTANCE_BUILTINS:
        r = cobar(builtin(name), max_degree=4).check_D_squared()
        r.name = f"{name}: {r.name} up to degree 4"
        out.append(r)
    return out


def _crit_bialgebra(fault):
    out = []
    for name in ("torus", "rp2", "klein"):
        rep = check_bialgebra(builtin(name), 3, sign_fault=(fault == "nabla-sign"))
        for c in rep.checks:
            c.name = f"{name}: {c.name}"
            out.append(c)
    return out


def _crit_cubes(fault):
    out = []
    for name in ACCEPTANCE_BUILTINS:
        S = builtin(name)
        if not S.is_reduced:
            continue
        r = LoopBialgebra(S, 3).check_differential_consistency()
        r.name = f"{name}: {r.name} up to degree 3"
        out.append(r)
    for name in ("circle", "rp2"):
        rep = check_phi_algebra_map(builtin(name), 2, sign_fault=(fault == "ez-sign"))
        for c in rep.checks:
            c.name = f"{name}: {c.name}"
            out.append(c)
    return out


def _crit_pi1(fault):
    out = []
    P = fundamental_group(builtin("circle"))
    ok = P.generators == ("a",) and not P.relators and abelianization(P) == AbelianGroupInvariants(1)
    out.append(CheckResult("circle: <a | > with abelianization Z", ok, 1, None if ok else str(P)))

    P = fundamental_group(builtin("torus"))
    T = tietze_simplify(P)
    ok = T.generators == ("a", "b") and T.relator_strings() == ["aba^-1b^-1"]
    out.append(CheckResult("torus: Tietze gives <a, b | aba^-1b^-1>", ok, 1, None if ok else str(T)))
    ab = abelianization(P)
    out.append(CheckResult("torus: abelianization Z^2", ab == AbelianGroupInvariants(2), 1,
                           None if ab == AbelianGroupInvariants(2) else str(ab)))

    order = todd_coxeter(fundamental_group(builtin("rp2")), 100)
    out.append(CheckResult("rp2: Todd-Coxeter order 2", order == 2, 1, None if order == 2 else order))

    P = fundamental_group(builtin("klein"))
    ab = abelianization(P)
    want = AbelianGroupInvariants(1, (2,))
    out.append(CheckResult("klein: abelianization Z + Z/2", ab == want, 1, None if ab == want else str(ab)))
    T = tietze_simplify(P)
    ok = T.generators == ("a", "b") and T.relator_strings() == ["baba^-1"]
    out.append(CheckResult("klein: Tietze gives <a, b | baba^-1>", ok, 1, None if ok else str(T)))

    P = fundamental_group(builtin("wedge_circles(2)"))
    ok = len(P.generators) == 2 and P.is_free() and tietze_simplify(P) == P
    out.append(CheckResult("wedge_circles(2): free of rank 2", ok, 1, None if ok else str(P)))
    return out


def _crit_hurewicz(fault):
    return [hurewicz_check(builtin(name)) for name in ACCEPTANCE_BUILTINS]


def _crit_hopf(fault):
    out = []
    for gname in ("Z/2", "Z/3", "Z/4", "S3"):
        G = group_table(gname)
        found = grouplike_elements(G).elements
        ok = sorted(found) == sorted(G.elements) and len(found) == len(G)
        out.append(CheckResult(f"Z[{gname}]: group-like elements = G", ok, len(G), None if ok else found))
        rep = antipode_check(G)
        out.append(CheckResult(f"Z[{gname}]: antipode", rep.passed, sum(c.checked for c in rep.checks),
                               None if rep.passed else rep.first_failure().witness))
    for name in ACCEPTANCE_BUILTINS:
        S = builtin(name)
        if not S.gens(2):
            continue
        rep = shift_consistency(S)
        out.append(CheckResult(f"{name}: shift consistency", rep.passed, sum(c.checked for c in rep.checks),
                               None if rep.passed else rep.first_failure().name,
                               f"ς(e) = 1{'+' if rep.info.get('shift') == 1 else '-'}[e]" if rep.passed else None))
    return out


def _crit_adams(fault):
    out = []
    h = loop_homology(builtin("sphere(2)"), 6)
    ok = all(x == AbelianGroupInvariants(1) for x in h)
    out.append(CheckResult("sphere(2): H_n(ΩC) = Z for n = 0..6", ok, len(h), None if ok else [str(x) for x in h]))
    h = loop_homology(builtin("sphere(3)"), 6)
    want = [AbelianGroupInvariants(1 if n % 2 == 0 else 0) for n in range(7)]
    ok = h == want
    out.append(CheckResult("sphere(3): H_n(ΩC) = Z (n even), 0 (n odd), n = 0..6", ok, len(h),
                           None if ok else [str(x) for x in h]))
    return out


def _crit_cover(fault):
    out = []
    S = builtin("rp2")
    R = GroupRealization(S, cyclic_group(2), {"a": "t"})
    try:
        twisted_complex(S, R)
        out.append(CheckResult("rp2 ⊗ Z[Z/2]: d_ι² = 0", True, 6))
    except DifferentialError as exc:
        out.append(CheckResult("rp2 ⊗ Z[Z/2]: d_ι² = 0", False, 0, str(exc.element)))
        return out
    h = cover_homology(S, R)
    want = [AbelianGroupInvariants(1), AbelianGroupInvariants(0), AbelianGroupInvariants(1)]
    out.append(CheckResult("rp2 ⊗ Z[Z/2]: homology (Z, 0, Z)", h == want, 3,
                           None if h == want else [str(x) for x in h]))
    r = augmentation_collapse(S, R)
    r.name = "rp2 ⊗ Z[Z/2]: " + r.name
    out.append(r)
    return out


def _crit_rigid(fault):
    out = []
    L = lurie_mapping_space(2, 0, 2)
    ok = cell_counts(L) == [2, 1] and lurie_vs_cube(2) is None
    out.append(CheckResult("P(2;0,2) is Δ¹", ok, 1, None if ok else cell_counts(L)))
    L = lurie_mapping_space(3, 0, 3)
    ok = cell_counts(L) == [4, 5, 2] and lurie_vs_cube(3) is None
    out.append(CheckResult("P(3;0,3) is the square (Δ¹)²", ok, 1, None if ok else cell_counts(L)))
    for n in (2, 3):
        rep = colimit_vs_lurie(n)
        out.append(CheckResult(f"necklace colimit for Δ{n} matches P({n};0,{n})", rep.passed,
                               sum(c.checked for c in rep.checks),
                               None if rep.passed else rep.first_failure().name, f"cells {rep.info.get('counts')}"))
    return out


def _render(results: List[CheckResult]) -> str:
    return "\n".join(r.line() for r in results)


def _crit_determinism(fault):
    """Two in-process evaluations of the cheaper criteria render identically."""
    picks = (_crit_coalgebra, _crit_pi1, _crit_hopf, _crit_cover, _crit_rigid)
    first = [_render(f(fault)) for f in picks]
    second = [_render(f(fault)) for f in picks]
    ok = first == second
    return [CheckResult("repeated evaluation renders identical text", ok, len(picks))]


CRITERIA: List[Criterion] = [
    Criterion(1, "Coalgebra axioms", ("coalgebra", "simpset"), _crit_coalgebra),
    Criterion(2, "Cobar soundness (D² = 0 to degree 4)", ("cobar",), _crit_cobar),
    Criterion(3, "Dg bialgebra axioms (degree 3)", ("bialgebra", "loopbialg"), _crit_bialgebra),
    Criterion(4, "Cube-face consistency and φ/Φ", ("cubes", "loopbialg", "rigid"), _crit_cubes),
    Criterion(5, "π₁ recovery", ("pi1",), _crit_pi1),
    Criterion(6, "Hurewicz oracle", ("pi1", "hurewicz"), _crit_hurewicz),
    Criterion(7, "Hopf / group-like layer", ("pi1", "hopf"), _crit_hopf),
    Criterion(8, "Loop homology of spheres", ("adams", "cobar"), _crit_adams),
    Criterion(9, "Universal cover of RP²", ("cover",), _crit_cover),
    Criterion(10, "Rigidification cross-check", ("rigid",), _crit_rigid),
    Criterion(11, "Determinism", ("determinism",), _crit_determinism),
]


@dataclass
class SelftestResult:
    number: int
    title: str
    checks: List[CheckResult]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def select(filter_text: Optional[str]) -> List[Criterion]:
    if not filter_text:
        return list(CRITERIA)
    keys = [k.strip() for k in filter_text.split(",") if k.strip()]
    out = []
    for c in CRITERIA:
        if any(k == str(c.number) or k in c.tags for k in keys):
            out.append(c)
    if not out:
        raise ValueError(f"no criterion matches filter {filter_text!r}")
    return out


def run_selftest(filter_text: Optional[str] = None, fault: Optional[str] = None) -> List[SelftestResult]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}")
    results = []
    for c in select(filter_text):
        t0 = time.perf_counter()
        checks = c.run(fault)
        results.append(SelftestResult(c.number, c.title, checks, time.perf_counter() - t0))
    return results


def render(results: List[SelftestResult], timing: bool = False, verbose: bool = False) -> str:
    lines = []
    for r in results:
        head = f"[{'PASS' if r.passed else 'FAIL'}] {r.number:2d}. {r.title} ({len(r.checks)} checks)"
        if timing:
            head += f" [{r.seconds:.2f}s]"
        lines.append(head)
        for c in r.checks:
            if verbose or not c.passed:
                lines.append("      " + c.line())
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} criteria passed")
    return "\n".join(lines)


def to_json(results: List[SelftestResult], timing: bool = False) -> Dict:
    out = []
    for r in results:
        d = {"criterion": r.number, "title": r.title, "passed": r.passed,
             "checks": [c.to_json() for c in r.checks]}
        if timing:
            d["seconds"] = round(r.seconds, 3)
        out.append(d)
    return {"passed": all(r.passed for r in results), "criteria": out}
