"""Sparse noncommutative polynomials over Z.

An element is a dict ``{word: coefficient}`` with words as tuples of
letter names and no zero coefficients; the empty word is the unit.
Elements of a tensor square are dicts keyed by pairs of words.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Tuple

Word = Tuple[str, ...]
Poly = Dict[Word, int]
Tensor = Dict[Tuple[Word, Word], int]

ONE: Poly = {(): 1}


def add_term(acc: dict, key, c: int) -> None:
    if not c:
        return
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        del acc[key]


def add(*elems: dict) -> dict:
    out: dict = {}
    for e in elems:
        for k, c in e.items():
            add_term(out, k, c)
    return out


def scale(e: dict, c: int) -> dict:
    return {k: c * v for k, v in e.items()} if c else {}


def sub(a: dict, b: dict) -> dict:
    return add(a, scale(b, -1))


def mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for u, c in a.items():
        for w, e in b.items():
            add_term(out, u + w, c * e)
    return out


def letter(x: str) -> Poly:
    return {(x,): 1}


def product(factors: Iterable[Poly]) -> Poly:
    out = dict(ONE)
    for f in factors:
        out = mul(out, f)
    return out


def tensor(a: Poly, b: Poly) -> Tensor:
    return {(u, w): c * e for u, c in a.items() for w, e in b.items()}


def tensor_mul(a: Tensor, b: Tensor, degree: Callable[[Word], int]) -> Tensor:
    """``(u⊗v)(x⊗y) = (-1)^{|v||x|} ux⊗vy``."""
    out: Tensor = {}
    for (u, v), c in a.items():
        dv = degree(v) % 2
        for (x, y), e in b.items():
            sign = -1 if dv and degree(x) % 2 else 1
            add_term(out, (u + x, v + y), sign * c * e)
    return out


def linear(f: Callable[[Word], dict], e: dict) -> dict:
    """Extend a function on basis words linearly."""
    out: dict = {}
    for k, c in e.items():
        for k2, c2 in f(k).items():
            add_term(out, k2, c * c2)
    return out


def fmt(e: dict) -> str:
    if not e:
        return "0"
    parts = []
    for k in sorted(e, key=lambda k: (len(str(k)), str(k))):
        c = e[k]
        parts.append(f"{c:+d}·{fmt_key(k)}")
    return " ".join(parts)


def fmt_word(w: Word) -> str:
    return "[" + "|".join(w) + "]" if w else "1"


def fmt_key(k) -> str:
    if isinstance(k, tuple) and len(k) == 2 and all(isinstance(p, tuple) for p in k):
        return fmt_word(k[0]) + "⊗" + fmt_word(k[1])
    if isinstance(k, tuple):
        return fmt_word(k)
    return str(k)
