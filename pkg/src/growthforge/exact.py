"""Exact integer linear algebra: matrices, polynomials and lattices.

Python ints are the arbitrary-precision scalars; nothing in this module ever
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DivisorNotMonic,
    DivisorZero,
    NotSquare,
    NotUnimodular,
)

__all__ = [
    "IntMatrix",
    "IntPolynomial",
    "Lattice",
    "matrix_arithmetic",
    "poly_divide",
    "hnf",
    "hnf_with_transform",
    "integer_kernel",
    "hnf_saturate",
]


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([[0] * ncols for _ in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def columns(self):
        return tuple(zip(*self.rows))

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.columns())

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([-a for a in r] for r in self.rows)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix([c * a for a in r] for r in self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(
            [sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows
        )

    __mul__ = __matmul__

    def apply(self, v: Sequence[int]) -> tuple:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def trace(self) -> int:
        self._require_square()
        return sum(self.rows[i][i] for i in range(self.nrows))

    def _require_square(self):
        if not self.is_square:
            raise NotSquare(f"matrix of shape {self.shape} is not square")

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        self._require_square()
        n = self.nrows
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            prev = pivot
        return sign * m[n - 1][n - 1]

    @property
    def is_unimodular(self) -> bool:
        return self.is_square and self.det() in (1, -1)

    def inverse(self) -> IntMatrix:
        self._require_square()
        d = self.det()
        if d not in (1, -1):
            raise NotUnimodular(f"determinant {d} is not +1 or -1")
        n = self.nrows
        aug = [
            [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.rows)
        ]
        for col in range(n):
            piv = next(i for i in range(col, n) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        out = []
        for row in aug:
            entries = row[n:]
            # unimodular => adjugate/det is integral
            assert all(x.denominator == 1 for x in entries)
            out.append([int(x) for x in entries])
        return IntMatrix(out)

    def __pow__(self, k: int) -> IntMatrix:
        self._require_square()
        if k < 0:
            return self.inverse() ** (-k)
        result = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result


def matrix_arithmetic(a: IntMatrix, b: IntMatrix | None = None, op: str = "multiply", k: int = 1):
    """Dispatch ``multiply``, ``add``, ``power`` (uses ``k``) or ``inverse``."""
    if op == "multiply":
        return a @ b
    if op == "add":
        return a + b
    if op == "power":
        return a ** k
    if op == "inverse":
        return a.inverse()
    raise ValueError(f"unknown matrix operation {op!r}")


class IntPolynomial:
    """Integer polynomial, coefficients stored highest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        self.coeffs = tuple(c[i:])

    @classmethod
    def from_low(cls, coeffs_low_first: Iterable[int]) -> IntPolynomial:
        return cls(reversed(list(coeffs_low_first)))

    @classmethod
    def x_power(cls, n: int, c: int = 1) -> IntPolynomial:
        return cls([c] + [0] * n)

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def low_first(self) -> list:
        return list(reversed(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - i
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.low_first(), other.low_first()
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial.from_low([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: IntPolynomial):
        return poly_divide(self, other)

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def at_matrix(self, a: IntMatrix) -> IntMatrix:
        """Evaluate at a square matrix by Horner's rule."""
        n = a.nrows
        acc = IntMatrix.zero(n, n)
        ident = IntMatrix.identity(n)
        for c in self.coeffs:
            acc = acc @ a + ident.scale(c)
        return acc

    def derivative(self) -> IntPolynomial:
        n = self.degree
        return IntPolynomial(c * (n - i) for i, c in enumerate(self.coeffs[:-1]))

    def reversed(self) -> IntPolynomial:
        """``x^deg * p(1/x)``; drops trailing zeros' contribution to degree."""
        return IntPolynomial(reversed(self.coeffs))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide by content, normalized to a positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)


def poly_divide(p: IntPolynomial, q: IntPolynomial):
    """Divide ``p`` by monic ``q``; returns ``(quotient, remainder)``."""
    if q.is_zero:
        raise DivisorZero("division by the zero polynomial")
    if not q.is_monic:
        raise DivisorNotMonic(f"divisor {q} is not monic")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        return IntPolynomial([]), p
    quot = []
    for i in range(len(rem) - dq):
        c = rem[i]
        quot.append(c)
        if c:
            for j in range(1, dq + 1):
                rem[i + j] -= c * q.coeffs[j]
    return IntPolynomial(quot), IntPolynomial(rem[len(rem) - dq:] if dq else [])


def pseudo_remainder(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    rem = p
    lc = q.leading
    dq = q.degree
    while not rem.is_zero and rem.degree >= dq:
        shift = rem.degree - dq
        rem = rem * lc - q * IntPolynomial.x_power(shift, rem.leading)
    return rem


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Gcd over the rationals, returned primitive with positive leading term."""
    a, b = p.primitive(), q.primitive()
    while not b.is_zero:
        a, b = b, pseudo_remainder(a, b).primitive()
    return a


# ---------------------------------------------------------------------------
# Lattices

def _reduce_rows(rows: list, ncols: int, track: list | None = None) -> list:
    """Row-style Hermite normal form in place.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.  When
    ``track`` is given, the same row operations are applied to it.
    """
    m = len(rows)
    piv_row = 0
    pivots = []

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        if track is not None:
            track[i], track[j] = track[j], track[i]

    def axpy(dst, src, q):
        # row[dst] -= q * row[src]
        rows[dst] = [a - q * b for a, b in zip(rows[dst], rows[src])]
        if track is not None:
            track[dst] = [a - q * b for a, b in zip(track[dst], track[src])]

    for col in range(ncols):
        if piv_row >= m:
            break
        while True:
            nz = [i for i in range(piv_row, m) if rows[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            swap(piv_row, best)
            done = True
            for i in range(piv_row + 1, m):
                if rows[i][col]:
                    axpy(i, piv_row, rows[i][col] // rows[piv_row][col])
                    if rows[i][col]:
                        done = False
            if done:
                break
        if all(rows[i][col] == 0 for i in range(piv_row, m)):
            continue
        if rows[piv_row][col] < 0:
            rows[piv_row] = [-a for a in rows[piv_row]]
            if track is not None:
                track[piv_row] = [-a for a in track[piv_row]]
        p = rows[piv_row][col]
        for i in range(piv_row):
            q = rows[i][col] // p
            if q:
                axpy(i, piv_row, q)
        pivots.append(col)
        piv_row += 1
    return pivots


def hnf(vectors: Iterable[Sequence[int]], ncols: int) -> list:
    """Nonzero rows of the row Hermite normal form of ``vectors``."""
    rows = [list(v) for v in vectors]
    pivots = _reduce_rows(rows, ncols)
    return [tuple(r) for r in rows[: len(pivots)]]


def hnf_with_transform(vectors: Sequence[Sequence[int]], ncols: int):
    """Return ``(H, U)`` with ``U @ M == H``, ``U`` unimodular, ``H`` in HNF.

    ``H`` keeps its zero rows so that ``U`` stays square.
    """
    rows = [list(v) for v in vectors]
    m = len(rows)
    track = [[int(i == j) for j in range(m)] for i in range(m)]
    _reduce_rows(rows, ncols, track)
    return [tuple(r) for r in rows], [tuple(r) for r in track]


def integer_kernel(vectors: Sequence[Sequence[int]], ambient_rank: int) -> list:
    """Basis of ``{x in Z^r : <w, x> = 0 for all w in vectors}``."""
    if not vectors:
        return [tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank)]
    # columns of the vector matrix, one row per ambient coordinate
    cols = [[v[j] for v in vectors] for j in range(ambient_rank)]
    h, u = hnf_with_transform(cols, len(vectors))
    return [u[i] for i, row in enumerate(h) if not any(row)]


class Lattice:
    """A sublattice of ``Z^r`` held in row Hermite normal form."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, basis: Iterable[Sequence[int]] = ()):
        self.ambient_rank = ambient_rank
        self.basis = tuple(hnf(basis, ambient_rank))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Lattice(rank={self.rank}, basis={[list(b) for b in self.basis]})"

    def __contains__(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length differs from ambient rank")
        for row in self.basis:
            col = next(j for j, a in enumerate(row) if a)
            q, r = divmod(v[col], row[col])
            if r:
                return False
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def complement_functionals(self) -> list:
        """Rows ``K`` with ``ker(x -> K x) == self`` when ``self`` is saturated."""
        return integer_kernel(self.basis, self.ambient_rank)


def hnf_saturate(vectors: Iterable[Sequence[int]], ambient_rank: int) -> Lattice:
    """Smallest primitive sublattice of ``Z^r`` containing ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_rank:
            raise DimensionMismatch(f"vector {v} does not have length {ambient_rank}")
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return Lattice(ambient_rank)
    # saturation = double orthogonal complement
    functionals = integer_kernel(vectors, ambient_rank)
    return Lattice(ambient_rank, integer_kernel(functionals, ambient_rank))


def right_inverse(k_rows: Sequence[Sequence[int]], ambient_rank: int) -> list:
    """Integer ``C`` (as rows of ``C^T``) with ``K @ C == I``.

    Requires the rows of ``K`` to span a saturated lattice.
    """
    cols = [[row[j] for row in k_rows] for j in range(ambient_rank)]
    h, u = hnf_with_transform(cols, len(k_rows))
    s = len(k_rows)
    for i in range(s):
        if h[i] != tuple(int(i == j) for j in range(s)):
            raise NotUnimodular("functionals do not span a saturated lattice")
    return [u[i] for i in range(s)]
