"""Exact linear algebra and polynomial arithmetic over GF(2).

Bit vectors, matrix rows and polynomial coefficients are all packed into
Python integers: bit i of the mask is entry i (or the coefficient of x^i).
All semantics are defined by that indexed-bit model; the packing only buys
speed in the exhaustive search loops elsewhere in the package.

State vectors are row vectors and multiply transition matrices on the
right (``vec_mat``), so repeated stepping composes as v * T^t.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), entry i stored at mask bit i."""

    mask: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.mask < 0 or self.mask >> self.length:
            raise ValueError("mask has bits beyond the stated length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        mask = 0
        n = 0
        for b in bits:
            if b & 1:
                mask |= 1 << n
            n += 1
        return cls(mask, n)

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"bit index {i} out of range for length {self.length}")
        return (self.mask >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.mask ^ other.mask, self.length)

    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    def weight(self) -> int:
        return self.mask.bit_count()

    def __str__(self) -> str:
        return "".join(str(b) for b in self)

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


@dataclass(frozen=True)
class BitMatrix:
    """rows x cols matrix over GF(2); row i packed at row_masks[i]."""

    rows: int
    cols: int
    row_masks: tuple[int, ...]

    def __post_init__(self):
        if len(self.row_masks) != self.rows:
            raise ValueError("row count mismatch")
        top = 1 << self.cols
        if any(not 0 <= r < top for r in self.row_masks):
            raise ValueError("row mask has bits beyond cols")

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "BitMatrix":
        vecs = [BitVector.from_bits(r) for r in rows]
        if not vecs:
            return cls(0, 0, ())
        cols = vecs[0].length
        if any(v.length != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(len(vecs), cols, tuple(v.mask for v in vecs))

    def row(self, i: int) -> BitVector:
        return BitVector(self.row_masks[i], self.cols)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("entry out of range")
        return (self.row_masks[i] >> j) & 1

    def column_mask(self, j: int) -> int:
        m = 0
        for i in range(self.rows):
            m |= ((self.row_masks[i] >> j) & 1) << i
        return m

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows,
                         tuple(self.column_mask(j) for j in range(self.cols)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __pow__(self, t: int) -> "BitMatrix":
        return mat_pow(self, t)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Exact GF(2) matrix product; requires a.cols == b.rows."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    brows = b.row_masks
    for ra in a.row_masks:
        acc = 0
        r = ra
        while r:
            low = r & -r
            acc ^= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def mat_pow(m: BitMatrix, t: int) -> BitMatrix:
    """m^t by repeated squaring; m^0 is the identity."""
    if not m.is_square():
        raise ValueError("power of a non-square matrix")
    if t < 0:
        raise ValueError("negative exponent")
    result = BitMatrix.identity(m.rows)
    base = m
    while t:
        if t & 1:
            result = mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return result


def vec_mat(v: BitVector, m: BitMatrix) -> BitVector:
    """Row vector times matrix: (v * m)."""
    if v.length != m.rows:
        raise ValueError("dimension mismatch")
    acc = 0
    r = v.mask
    rows = m.row_masks
    while r:
        low = r & -r
        acc ^= rows[low.bit_length() - 1]
        r ^= low
    return BitVector(acc, m.cols)


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    """Matrix times column vector: (m * v)."""
    if v.length != m.cols:
        raise ValueError("dimension mismatch")
    acc = 0
    for i, row in enumerate(m.row_masks):
        acc |= ((row & v.mask).bit_count() & 1) << i
    return BitVector(acc, m.rows)


class SolveOutcome(enum.Enum):
    """Reportable non-unique outcomes of linear system solving."""

    NO_SOLUTION = "no-solution"
    UNDERDETERMINED = "underdetermined"


def solve_linear_system(a: BitMatrix, rhs: BitVector) -> BitVector | SolveOutcome:
    """Solve a*x = rhs over GF(2).

    Returns the unique solution when there is one.  Rank deficiency is
    data, not an error: an inconsistent system yields NO_SOLUTION, a
    consistent one with free variables yields UNDERDETERMINED.
    """
    if a.rows != rhs.length:
        raise ValueError("rhs length does not match row count")
    # Gaussian elimination on [A | b] with b carried in a parallel mask.
    rows = list(a.row_masks)
    b = [(rhs.mask >> i) & 1 for i in range(a.rows)]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(a.cols):
        sel = None
        for i in range(r, a.rows):
            if (rows[i] >> c) & 1:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        b[r], b[sel] = b[sel], b[r]
        for i in range(a.rows):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
                b[i] ^= b[r]
        pivot_of_col[c] = r
        r += 1
    for i in range(r, a.rows):
        if b[i]:
            return SolveOutcome.NO_SOLUTION
    if len(pivot_of_col) < a.cols:
        return SolveOutcome.UNDERDETERMINED
    x = 0
    for c, i in pivot_of_col.items():
        x |= b[i] << c
    return BitVector(x, a.cols)


def invert(m: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    rows = list(m.row_masks)
    aug = [1 << i for i in range(n)]
    r = 0
    for c in range(n):
        sel = next((i for i in range(r, n) if (rows[i] >> c) & 1), None)
        if sel is None:
            raise ValueError("singular matrix")
        rows[r], rows[sel] = rows[sel], rows[r]
        aug[r], aug[sel] = aug[sel], aug[r]
        for i in range(n):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
                aug[i] ^= aug[r]
        r += 1
    return BitMatrix(n, n, tuple(aug))


def rank(m: BitMatrix) -> int:
    rows = [r for r in m.row_masks if r]
    rk = 0
    while rows:
        piv = min(rows, key=lambda r: r & -r)
        rows.remove(piv)
        low = piv & -piv
        rows = [r ^ piv if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rk += 1
    return rk


# ---------------------------------------------------------------------------
# Binary polynomials


def _degree(mask: int) -> int:
    # degree of a nonzero coefficient mask
    return mask.bit_length() - 1


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = _degree(b)
    q = 0
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _poly_mul(a: int, b: int) -> int:
    c = 0
    while a:
        if a & 1:
            c ^= b
        a >>= 1
        b <<= 1
    return c


def _poly_mulmod(a: int, b: int, mod: int) -> int:
    # operands already reduced below mod's degree
    dm = _degree(mod)
    c = 0
    while a:
        if a & 1:
            c ^= b
        a >>= 1
        b <<= 1
        if b >> dm & 1:
            b ^= mod
    return c


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a


@dataclass(frozen=True)
class BinaryPolynomial:
    """Polynomial over GF(2); coefficient of x^i at mask bit i.

    The zero polynomial has no degree: ``degree`` is None rather than a
    sentinel integer, so accidental arithmetic on it fails loudly.
    """

    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise ValueError("negative coefficient mask")

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "BinaryPolynomial":
        mask = 0
        for d in degrees:
            mask ^= 1 << d
        return cls(mask)

    @property
    def degree(self) -> int | None:
        return None if self.mask == 0 else _degree(self.mask)

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def coefficient(self, i: int) -> int:
        return (self.mask >> i) & 1

    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(_poly_mul(self.mask, other.mask))

    def __divmod__(self, other: "BinaryPolynomial") -> tuple["BinaryPolynomial", "BinaryPolynomial"]:
        q, r = _poly_divmod(self.mask, other.mask)
        return BinaryPolynomial(q), BinaryPolynomial(r)

    def __floordiv__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return divmod(self, other)[1]

    def reciprocal(self, width: int | None = None) -> "BinaryPolynomial":
        """Coefficients reversed over ``width``+1 slots (default: degree+1)."""
        if width is None:
            if self.is_zero:
                return self
            width = _degree(self.mask)
        out = 0
        for i in range(width + 1):
            if (self.mask >> i) & 1:
                out |= 1 << (width - i)
        return BinaryPolynomial(out)

    def __str__(self) -> str:
        if self.mask == 0:
            return "0"
        terms = []
        for i in range(_degree(self.mask), -1, -1):
            if (self.mask >> i) & 1:
                terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"BinaryPolynomial(0x{self.mask:x})"


def poly_gcd(a: BinaryPolynomial, b: BinaryPolynomial) -> BinaryPolynomial:
    """Greatest common divisor; monic automatically over GF(2)."""
    return BinaryPolynomial(_poly_gcd(a.mask, b.mask))


def poly_pow_mod(base: BinaryPolynomial, e: int, mod: BinaryPolynomial) -> BinaryPolynomial:
    """base^e reduced modulo mod."""
    if mod.is_zero:
        raise ZeroDivisionError("reduction by the zero polynomial")
    if e < 0:
        raise ValueError("negative exponent")
    if mod.mask == 1:
        return BinaryPolynomial(0)
    b = _poly_divmod(base.mask, mod.mask)[1]
    r = 1
    while e:
        if e & 1:
            r = _poly_mulmod(r, b, mod.mask)
        e >>= 1
        if e:
            b = _poly_mulmod(b, b, mod.mask)
    return BinaryPolynomial(r)
