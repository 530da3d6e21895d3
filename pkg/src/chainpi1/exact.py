"""Exact coefficient rings and integer/field linear algebra.

Everything here is exact: integers are Python ints, rationals are
:class:`fractions.Fraction`, residues mod ``n`` are ints in ``range(n)``.
Matrices are stored sparsely and converted to dense lists for elimination,
which is fine at the sizes this package works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple


class Ring:
    """A coefficient ring: ``Z``, ``Q`` or ``Z/n`` (a field when n is prime)."""

    def __init__(self, kind: str, modulus: int | None = None):
        if kind not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "Zmod" and (modulus is None or modulus < 2):
            raise ValueError("Z/n needs n >= 2")
        self.kind = kind
        self.modulus = modulus

    @property
    def name(self) -> str:
        if self.kind == "Zmod":
            return f"Fp:{self.modulus}" if self.is_field else f"Z/{self.modulus}"
        return self.kind

    @property
    def is_field(self) -> bool:
        if self.kind == "Q":
            return True
        if self.kind == "Zmod":
            return _is_prime(self.modulus)
        return False

    @property
    def is_domain(self) -> bool:
        return self.kind in ("Z", "Q") or self.is_field

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        return int(x) % self.modulus

    def inv(self, x):
        if self.kind == "Q":
            return 1 / Fraction(x)
        if self.kind == "Zmod":
            return pow(int(x), -1, self.modulus)
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.modulus) == (other.kind, other.modulus)

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return f"Ring({self.name})"

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Parse ``Z``, ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text == "Z":
            return ZZ
        if text == "Q":
            return QQ
        if text.startswith("Fp:"):
            p = int(text[3:])
            if not _is_prime(p):
                raise ValueError(f"Fp:{p}: {p} is not prime")
            return cls("Zmod", p)
        raise ValueError(f"unknown ring {text!r} (expected Z, Q or Fp:<p>)")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Ring("Zmod", p)


class SparseMatrix:
    """Matrix with entries in ``ring`` stored as ``{(row, col): nonzero}``."""

    def __init__(self, rows: int, cols: int, entries=None, ring: Ring = ZZ):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.entries: Dict[Tuple[int, int], object] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = ring(v)
            if v != 0:
                self.entries[i, j] = v

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ring: Ring = ZZ, ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v != 0}
        return cls(nrows, ncols, entries, ring)

    @classmethod
    def identity(cls, n: int, ring: Ring = ZZ):
        return cls(n, n, {(i, i): 1 for i in range(n)}, ring)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def to_dense(self) -> List[list]:
        out = [[self.ring.zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij):
        return self.entries.get(ij, self.ring.zero)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, object]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: Dict[Tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return SparseMatrix(self.rows, other.cols, acc, self.ring)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.ring)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, {self.ring.name})"


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """``Z^free_rank`` plus cyclic torsion summands in divisibility order."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be >= 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} not in divisibility order")
        object.__setattr__(self, "torsion", t)

    def __str__(self):
        return self.describe()

    def describe(self, ring: "Ring | None" = None) -> str:
        """Human form; over a field the free part is written with the field's name."""
        base = "Z"
        if ring is not None and ring.is_field:
            base = "Q" if ring.kind == "Q" else f"F{ring.modulus}"
        parts = []
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# ---------------------------------------------------------------------------
# Smith normal form


def _min_nonzero(A, t, rows, cols):
    best = None
    for i in rows:
        row = A[i]
        for j in cols:
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(M: SparseMatrix):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` and ``U``, ``V`` unimodular.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    Pivoting takes the smallest absolute value in the active block.
    """
    if M.ring != ZZ:
        raise ValueError("smith_normal_form works over Z")
    m, n = M.shape
    A = M.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in A:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        piv = _min_nonzero(A, t, range(t, m), range(t, n))
        if piv is None:
            break
        _, i, j = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    return (SparseMatrix.from_dense(A, ZZ, n), SparseMatrix.from_dense(U, ZZ, m),
            SparseMatrix.from_dense(V, ZZ, n))


def invariant_factors(M: SparseMatrix) -> Tuple[int, ...]:
    D, _, _ = smith_normal_form(M)
    return tuple(D[i, i] for i in range(min(D.shape)) if D[i, i])


def determinant(M: SparseMatrix):
    """Fraction-free (Bareiss) determinant of a square matrix over Z."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M: SparseMatrix) -> int:
    """Rank over the matrix ring's fraction field (Z) or over the field itself."""
    ring = M.ring
    if ring == ZZ:
        return len(invariant_factors(M))
    if not ring.is_field:
        raise ValueError(f"rank over {ring.name} is not defined here")
    A = [[ring(v) for v in row] for row in M.to_dense()]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ring.inv(A[r][c])
        A[r] = [ring(v * inv) for v in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [ring(a - f * b) for a, b in zip(A[i], A[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# chain complexes


class DifferentialError(ValueError):
    """Raised when a differential does not square to zero."""

    def __init__(self, degree, element, value):
        self.degree = degree
        self.element = element
        self.value = value
        super().__init__(f"d∘d != 0 on {element!r} in degree {degree}: {value}")


@dataclass
class ChainComplex:
    """Bounded chain complex of free modules with labelled bases.

    ``differential[n][b]`` is the boundary of basis element ``b`` of degree
    ``n`` as a dict over the basis of degree ``n - 1``.
    """

    basis: Dict[int, List[Hashable]]
    differential: Dict[int, Dict[Hashable, Dict[Hashable, int]]]
    ring: Ring = ZZ
    _index: Dict[int, Dict[Hashable, int]] = field(default_factory=dict, repr=False)

    def rank_of(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def index(self, n: int) -> Dict[Hashable, int]:
        if n not in self._index:
            self._index[n] = {b: i for i, b in enumerate(self.basis.get(n, ()))}
        return self._index[n]

    def boundary(self, n: int, b) -> Dict[Hashable, int]:
        return self.differential.get(n, {}).get(b, {})

    def matrix(self, n: int, ring: Ring | None = None) -> SparseMatrix:
        ring = ring or self.ring
        rows = self.index(n - 1)
        entries = {}
        for j, b in enumerate(self.basis.get(n, ())):
            for a, c in self.boundary(n, b).items():
                entries[rows[a], j] = c
        return SparseMatrix(self.rank_of(n - 1), self.rank_of(n), entries, ring)

    def check_square_zero(self):
        """Raise :class:`DifferentialError` at the first basis element with d∘d != 0."""
        for n in sorted(self.basis):
            for b in self.basis[n]:
                acc: Dict[Hashable, object] = {}
                for a, c in self.boundary(n, b).items():
                    for z, c2 in self.boundary(n - 1, a).items():
                        acc[z] = self.ring(acc.get(z, 0) + c * c2)
                acc = {z: c for z, c in acc.items() if c != 0}
                if acc:
                    raise DifferentialError(n, b, acc)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(b) for n, b in self.basis.items())

    def homology(self, n: int, ring: Ring | None = None) -> AbelianGroupInvariants:
        return homology(self, n, ring)


def homology(C: ChainComplex, n: int, ring: Ring | None = None) -> AbelianGroupInvariants:
    """``ker d_n / im d_{n+1}``.

    Over Z the result carries torsion from the Smith normal form of
    ``d_{n+1}``; over a field the free rank is the dimension.
    """
    ring = ring or C.ring
    C.check_square_zero()
    dim = C.rank_of(n)
    if ring == ZZ:
        out_rank = rank(C.matrix(n, ZZ)) if n - 1 in C.basis and dim else 0
        factors = invariant_factors(C.matrix(n + 1, ZZ)) if C.rank_of(n + 1) and dim else ()
        return AbelianGroupInvariants(dim - out_rank - len(factors),
                                      tuple(d for d in factors if d > 1))
    if not ring.is_field:
        raise ValueError(f"homology over {ring.name} is not supported")
    out_rank = rank(C.matrix(n, ring)) if n - 1 in C.basis and dim else 0
    in_rank = rank(C.matrix(n + 1, ring)) if C.rank_of(n + 1) and dim else 0
    return AbelianGroupInvariants(dim - out_rank - in_rank)
