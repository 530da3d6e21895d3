"""Command line interface.

Exit codes: 0 success, 1 a requested check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import words as W
from .cobar import NotConnectedError, NotOneReducedError, cobar, loop_homology
from .cover import GroupRealization, RealizationError, check_cover, cover_homology
from .exact import Ring
from .loopbialg import LoopBialgebra, NotReducedError, check_bialgebra, extract_E1q
from .pi1 import (FiniteGroupTable, GroupTableError, abelianization, antipode_check, fundamental_group,
                  group_table, grouplike_elements, h0_presentation, shift_consistency, tietze_simplify,
                  todd_coxeter)
from .pi1 import NotReducedError as Pi1NotReducedError
from .report import Report
from .rigid import BoundError, enumerate_necklace_maps, necklace_colimit
from .selftest import FAULTS, render, run_selftest, to_json
from .simpset import ACCEPTANCE_BUILTINS, BUILTIN_NAMES, SimplicialSetError, builtin, from_json

INPUT_ERRORS = (SimplicialSetError, NotConnectedError, NotOneReducedError, NotReducedError,
                Pi1NotReducedError, GroupTableError, RealizationError, BoundError)


class InputError(Exception):
    pass


def _out(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def load_space(args):
    if getattr(args, "input", None):
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"{args.input}: {exc.strerror}")
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.input}:{exc.lineno}:{exc.colno}: {exc.msg}")
        try:
            S = from_json(data)
        except SimplicialSetError as exc:
            raise InputError(f"{args.input}: {exc}")
        rep = S.validate()
        if not rep:
            raise InputError(f"{args.input}: not a simplicial set: {rep.message}")
        return S
    if getattr(args, "example", None):
        try:
            return builtin(args.example)
        except SimplicialSetError:
            raise InputError(f"unknown example {args.example!r} (see `examples`)")
    raise InputError("give --example NAME or --input FILE")


def _ring(args) -> Ring:
    try:
        return Ring.parse(args.ring)
    except ValueError as exc:
        raise InputError(str(exc))


# ---------------------------------------------------------------------------
# subcommands


def cmd_chains(args) -> int:
    S = load_space(args)
    ring = _ring(args)
    C = S.chain_complex(ring)
    lines = [f"normalized chains of {S.name} over {ring.name}"]
    data = {"name": S.name, "ring": ring.name, "degrees": []}
    for n in range(S.top_dim + 1):
        h = C.homology(n, ring)
        lines.append(f"C_{n}: rank {C.rank_of(n)}  H_{n} = {h.describe(ring)}")
        bd = {x: S.boundary(x) for x in S.gens(n)}
        for x in S.gens(n):
            lines.append(f"  ∂{x} = {W.fmt(bd[x])}")
        data["degrees"].append({"degree": n, "basis": S.gens(n), "boundary": bd, "homology": h.to_json()})
    cc = S.coalgebra().check_axioms()
    ok = all(v is None for v in cc.values())
    for k, v in cc.items():
        lines.append(f"[{'PASS' if v is None else 'FAIL'}] coalgebra {k}" + ("" if v is None else f": {v}"))
    data["coalgebra_checks"] = {k: v is None for k, v in cc.items()}
    _out(args, "\n".join(lines), data)
    return 0 if ok else 1


def cmd_cobar(args) -> int:
    S = load_space(args)
    om = cobar(S, args.max_degree)
    lines = [f"ΩC({S.name}): letters and differential"]
    data = {"name": S.name, "letters": []}
    for x in om.letters:
        lines.append(f"  [{x}] degree {om.letter_degree[x]}: D[{x}] = {W.fmt(om.d_letter(x))}")
        data["letters"].append({"letter": x, "degree": om.letter_degree[x],
                                "D": {W.fmt_word(w): c for w, c in om.d_letter(x).items()}})
    r = om.check_D_squared()
    lines.append(f"  {r.line()} up to degree {args.max_degree}, word length {om.max_length}")
    data["D_squared"] = r.to_json()
    _out(args, "\n".join(lines), data)
    return 0 if r.passed else 1


def _parse_word(text: str) -> tuple:
    text = text.strip().strip("[]")
    return tuple(t.strip() for t in text.split("|") if t.strip()) if text not in ("", "1") else ()


def cmd_nabla(args) -> int:
    S = load_space(args)
    B = LoopBialgebra(S, max_degree=max(args.max_degree, 1))
    if args.word:
        words = [_parse_word(args.word)]
        unknown = [x for x in words[0] if x not in B.dim]
        if unknown:
            raise InputError(f"unknown letters {unknown}")
    else:
        words = [(x,) for x in B.om.letters]
    lines = []
    data = {"name": S.name, "nabla": {}}
    for w in words:
        v = B.nabla_word(w)
        lines.append(f"∇{W.fmt_word(w)} = {W.fmt(v)}")
        data["nabla"][W.fmt_word(w)] = W.fmt(v)
    if args.e1q is not None:
        data["E1q"] = {}
        for x in B.om.letters:
            comp = extract_E1q(S, x, args.e1q, B)
            text = " ".join(f"{c:+d}·[{a}]⊗{W.fmt_word(v)}" for (a, v), c in sorted(comp.items())) or "0"
            lines.append(f"E^(1,{args.e1q})[{x}] = {text}")
            data["E1q"][x] = text
    _out(args, "\n".join(lines), data)
    return 0


def _report_out(args, rep: Report) -> int:
    _out(args, rep.text(), rep.to_json())
    return 0 if rep.passed else 1


def cmd_bialgebra(args) -> int:
    S = load_space(args)
    rep = check_bialgebra(S, args.max_degree, args.max_length)
    if args.with_cubes and rep.passed:
        B = LoopBialgebra(S, args.max_degree, args.max_length)
        rep.add(B.check_differential_consistency())
        rep.add(B.check_cubical_identities(min(args.max_degree, 3)))
        rep.add(B.check_grouplike())
    return _report_out(args, rep)


def cmd_pi1(args) -> int:
    S = load_space(args)
    P = fundamental_group(S)
    h0 = h0_presentation(S)
    lines = [f"π₁({S.name}) = {P}", f"H₀(ΩC) = {h0}"]
    data = {"name": S.name, "presentation": P.to_json(),
            "h0_relations": {t: W.fmt(r) for t, r in h0.relations.items()}}
    status = 0
    if args.abelianization:
        ab = abelianization(P)
        lines.append(f"abelianization: {ab}")
        data["abelianization"] = ab.to_json()
    if args.tietze:
        T = tietze_simplify(P)
        lines.append(f"Tietze: {T}")
        data["tietze"] = T.to_json()
    if args.todd_coxeter is not None:
        order = todd_coxeter(P, args.todd_coxeter)
        lines.append(f"Todd-Coxeter: {'order ' + str(order) if order is not None else 'inconclusive'}"
                     f" (cap {args.todd_coxeter} cosets)")
        data["todd_coxeter"] = order if order is not None else "inconclusive"
    if args.shift_check:
        rep = shift_consistency(S)
        lines.append(rep.text())
        data["shift_consistency"] = rep.to_json()
        status |= 0 if rep.passed else 1
    if args.grouplike_demo:
        G = group_table(args.grouplike_demo)
        ring = _ring(args)
        try:
            res = grouplike_elements(G, ring)
        except ValueError as exc:
            raise InputError(str(exc))
        rep = antipode_check(G, ring)
        lines.append(f"group-like elements of {ring.name}[{G.name}]: {{{', '.join(res.elements)}}}")
        lines += ["  " + t for t in res.trace]
        lines.append(rep.text())
        data["grouplike"] = {"group": G.name, "elements": res.elements, "trace": res.trace,
                             "antipode": rep.to_json()}
        status |= 0 if rep.passed else 1
    _out(args, "\n".join(lines), data)
    return status


def cmd_loop_homology(args) -> int:
    S = load_space(args)
    ring = _ring(args)
    hs = loop_homology(S, args.max_degree, ring)
    lines = [f"H_n(ΩC({S.name}); {ring.name})"] + [f"  H_{n} = {h.describe(ring)}" for n, h in enumerate(hs)]
    _out(args, "\n".join(lines), {"name": S.name, "ring": ring.name, "homology": [h.to_json() for h in hs]})
    return 0


def _load_json_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")


def cmd_cover_homology(args) -> int:
    S = load_space(args)
    ring = _ring(args)
    if args.universal:
        R = GroupRealization.universal(S, args.max_cosets)
    else:
        if args.group_table:
            G = FiniteGroupTable.from_json(_load_json_file(args.group_table))
        elif args.group:
            G = group_table(args.group)
        else:
            raise InputError("give --group-table FILE, --group NAME or --universal")
        if args.edge_map:
            emap = _load_json_file(args.edge_map)
        elif args.edge:
            emap = dict(e.split("=", 1) for e in args.edge)
        else:
            raise InputError("give --edge-map FILE or --edge e=g ...")
        if not isinstance(emap, dict):
            raise InputError("edge map must be a JSON object {edge: element}")
        R = GroupRealization(S, G, {str(k): str(v) for k, v in emap.items()})
    rep = check_cover(S, R, ring)
    lines = [rep.text()]
    data = {"name": S.name, "group": R.group.name, "checks": rep.to_json()}
    if rep.passed:
        hs = cover_homology(S, R, ring)
        lines.append(f"homology of C({S.name}) ⊗_ι {ring.name}[{R.group.name}]:")
        lines += [f"  H_{n} = {h.describe(ring)}" for n, h in enumerate(hs)]
        data["homology"] = [h.to_json() for h in hs]
    _out(args, "\n".join(lines), data)
    return 0 if rep.passed else 1


def cmd_rigidify(args) -> int:
    S = load_space(args)
    x = args.source or S.vertices[0]
    y = args.target or S.vertices[-1]
    for v in (x, y):
        if S.dim_of.get(v) != 0:
            raise InputError(f"{v!r} is not a vertex of {S.name}")
    maps = enumerate_necklace_maps(S, x, y, args.max_beads, args.max_dim, args.nondegenerate)
    M = necklace_colimit(S, x, y, args.cells_dim, args.max_beads, args.max_dim)
    lines = [f"necklace maps {x} -> {y} in {S.name} (at most {args.max_beads} beads, total dimension "
             f"{args.max_dim}): {len(maps)}"]
    if args.list:
        lines += [f"  {m}" for m in maps]
    lines.append(f"nondegenerate cells of 𝔠({S.name})({x},{y}) by dimension: {M.counts()}")
    _out(args, "\n".join(lines), {"name": S.name, "from": x, "to": y, "necklace_maps": len(maps),
                                  "maps": [str(m) for m in maps] if args.list else None,
                                  "cells": M.counts()})
    return 0


def cmd_selftest(args) -> int:
    try:
        results = run_selftest(args.filter, args.inject_fault)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.json:
        print(json.dumps(to_json(results, args.timing), indent=2, ensure_ascii=False))
    else:
        print(render(results, args.timing, args.verbose))
    return 0 if all(r.passed for r in results) else 1


EXAMPLE_COMMANDS = [
    "chains --example torus",
    "cobar --example rp2 --max-degree 3",
    "nabla --example rp2",
    "nabla --example torus --word 't1' --e1q 1",
    "bialgebra-check --example torus --max-degree 3",
    "pi1 --example klein --abelianization --tietze",
    "pi1 --example rp2 --todd-coxeter=100",
    "pi1 --example circle --grouplike-demo=S3",
    "loop-homology --example sphere(3) --max-degree 6",
    "cover-homology --example rp2 --group Z/2 --edge a=t",
    "cover-homology --example rp2 --universal",
    "rigidify --example delta(3) --from 0 --to 3 --max-beads 3 --max-dim 3",
    "selftest --filter pi1",
]


def cmd_examples(args) -> int:
    lines = ["builtin spaces: " + ", ".join(BUILTIN_NAMES),
             "acceptance builtins: " + ", ".join(ACCEPTANCE_BUILTINS),
             "example invocations:"] + [f"  chainpi1 {c}" for c in EXAMPLE_COMMANDS]
    _out(args, "\n".join(lines), {"builtins": list(BUILTIN_NAMES), "commands": EXAMPLE_COMMANDS})
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ring", default="Z", help="coefficients: Z, Q or Fp:<p> (default Z)")
    common.add_argument("--max-degree", type=int, default=4, help="bound for graded computations (default 4)")

    space = argparse.ArgumentParser(add_help=False)
    g = space.add_mutually_exclusive_group()
    g.add_argument("--example", help="builtin space, e.g. torus or sphere(3)")
    g.add_argument("--input", help="JSON simplicial set file")

    p = argparse.ArgumentParser(prog="chainpi1", description="Chains, cobar constructions and π₁ of "
                                "finite simplicial sets.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chains", parents=[common, space], help="normalized chains, homology, coalgebra checks")
    s.set_defaults(func=cmd_chains)

    s = sub.add_parser("cobar", parents=[common, space], help="cobar letters, D and the D² check")
    s.set_defaults(func=cmd_cobar)

    s = sub.add_parser("nabla", parents=[common, space], help="the coproduct ∇ on ΩC")
    s.add_argument("--word", help="monomial such as 'a|t1' (default: every letter)")
    s.add_argument("--e1q", type=int, help="also print the E^(1,q) components for this q")
    s.set_defaults(func=cmd_nabla)

    s = sub.add_parser("bialgebra-check", parents=[common, space], help="dg bialgebra axioms of (ΩC, ∇)")
    s.add_argument("--max-length", type=int, help="word length bound (default max-degree + 1)")
    s.add_argument("--with-cubes", action="store_true", help="also check cube faces against D")
    s.set_defaults(func=cmd_bialgebra)

    s = sub.add_parser("pi1", parents=[common, space], help="fundamental group and H₀(ΩC)")
    s.add_argument("--abelianization", action="store_true")
    s.add_argument("--tietze", action="store_true")
    s.add_argument("--todd-coxeter", type=int, metavar="N", help="coset enumeration with at most N cosets")
    s.add_argument("--grouplike-demo", metavar="GROUP", help="group-likes and antipode of k[GROUP] (Z/n, S3, 1)")
    s.add_argument("--shift-check", action="store_true", help="check the degree-0 dictionary")
    s.set_defaults(func=cmd_pi1)

    s = sub.add_parser("loop-homology", parents=[common, space], help="H_*(ΩC) for spaces without edges")
    s.set_defaults(func=cmd_loop_homology)

    s = sub.add_parser("cover-homology", parents=[common, space], help="homology of C ⊗_ι k[G]")
    s.add_argument("--group-table", metavar="FILE", help="JSON {elements, table}")
    s.add_argument("--group", help="builtin group Z/n, S3 or 1")
    s.add_argument("--edge-map", metavar="FILE", help="JSON {edge: element}")
    s.add_argument("--edge", action="append", metavar="E=G", help="edge image, repeatable")
    s.add_argument("--universal", action="store_true", help="use π₁ itself (Todd-Coxeter)")
    s.add_argument("--max-cosets", type=int, default=10_000)
    s.set_defaults(func=cmd_cover_homology)

    s = sub.add_parser("rigidify", parents=[common, space], help="necklace maps and mapping-space cells")
    s.add_argument("--from", dest="source", help="start vertex (default first)")
    s.add_argument("--to", dest="target", help="end vertex (default last)")
    s.add_argument("--max-beads", type=int, default=4)
    s.add_argument("--max-dim", type=int, default=4, help="bound on the total dimension of the beads")
    s.add_argument("--cells-dim", type=int, default=2, help="top dimension of mapping-space cells")
    s.add_argument("--nondegenerate", action="store_true", help="only nondegenerate beads")
    s.add_argument("--list", action="store_true", help="list the necklace maps")
    s.set_defaults(func=cmd_rigidify)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    s.add_argument("--filter", help="criterion numbers or tags, comma separated (e.g. pi1)")
    s.add_argument("--timing", action="store_true", help="include timings (output no longer reproducible)")
    s.add_argument("--verbose", action="store_true", help="print every check")
    s.add_argument("--inject-fault", choices=FAULTS, help="test hook: corrupt one structure map")
    s.set_defaults(func=cmd_selftest)

    s = sub.add_parser("examples", parents=[common], help="list builtins and example invocations")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv: Optional[List[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
