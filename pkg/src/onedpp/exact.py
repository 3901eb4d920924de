"""Exact arithmetic kernels: rationals, truncated Laurent series, matrices.

Conventions used throughout the package:

* all scalar arithmetic is done with `fractions.Fraction`; floats appear
  only in the statistics layer,
* a Laurent series stores finitely many coefficients together with an
  explicit truncation `order`: coefficients of z^m are exact for every
  m < order, and nothing is claimed beyond it.  `order = None` marks a
  series that is exact everywhere (a Laurent polynomial).  Operations
  that would need unknown coefficients raise `TruncationError` instead
  of silently padding zeros,
* matrices are dense, immutable and rational; determinants go through a
  fraction-free Bareiss elimination after clearing denominators row by
  row, so intermediate swell stays polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class TruncationError(ArithmeticError):
    """A coefficient beyond the known order of a series was requested."""


class SingularSeriesError(ArithmeticError):
    """Reciprocal of a series that is zero as far as it is known."""


class DimensionError(ValueError):
    """Matrix dimensions do not admit the requested operation."""


class SingularMatrixError(ArithmeticError):
    """Inverse of a matrix with determinant zero."""


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, "num/den" strings and Fractions to Fraction.

    >>> rat("9/256")
    Fraction(9, 256)
    >>> rat(3)
    Fraction(3, 1)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as "num/den" (integers as plain "num")."""
    return str(Fraction(value))


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class LaurentSeries:
    """Finitely many exact Laurent coefficients plus a truncation order.

    Invariants: `coeffs[0]` is nonzero (leading zeros are folded into
    `min_degree`), and when `order` is an integer,
    `len(coeffs) == order - min_degree`.
    """

    min_degree: int
    coeffs: tuple[Fraction, ...]
    order: int | None

    # -- construction ------------------------------------------------

    @staticmethod
    def make(coeffs: Iterable[RationalLike], min_degree: int = 0,
             order: int | None = None) -> "LaurentSeries":
        cs = [rat(c) for c in coeffs]
        if order is not None:
            want = order - min_degree
            if want < 0:
                raise ValueError("order lies below min_degree")
            if len(cs) > want:
                cs = cs[:want]
            else:
                cs.extend([Fraction(0)] * (want - len(cs)))
        # strip leading zeros into min_degree
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        min_degree += lead
        cs = cs[lead:]
        if order is None:
            while cs and cs[-1] == 0:
                cs.pop()
        if not cs:
            min_degree = order if order is not None else 0
        return LaurentSeries(min_degree, tuple(cs), order)

    @staticmethod
    def zero() -> "LaurentSeries":
        return LaurentSeries.make(())

    @staticmethod
    def one() -> "LaurentSeries":
        return LaurentSeries.make((1,))

    @staticmethod
    def monomial(coefficient: RationalLike, degree: int) -> "LaurentSeries":
        return LaurentSeries.make((coefficient,), min_degree=degree)

    # -- inspection --------------------------------------------------

    def coefficient(self, m: int) -> Fraction:
        """Exact coefficient of z^m; fails loudly past the known order."""
        if self.order is not None and m >= self.order:
            raise TruncationError(
                f"coefficient of z^{m} unknown: series truncated at order {self.order}")
        k = m - self.min_degree
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        """True when every stored coefficient vanishes."""
        return not self.coeffs

    def valuation(self) -> int:
        """Degree of the lowest nonzero known coefficient."""
        if not self.coeffs:
            raise SingularSeriesError("zero series has no valuation")
        return self.min_degree

    def known_range(self) -> tuple[int, int | None]:
        return self.min_degree, self.order

    # -- ring operations ---------------------------------------------

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.min_degree,
                             tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = _min_order(self.order, other.order)
        lows = [s.min_degree for s in (self, other) if s.coeffs]
        if not lows:
            return LaurentSeries.make((), order=order, min_degree=order or 0)
        lo = min(lows)
        hi = order
        if hi is None:
            hi = max(s.min_degree + len(s.coeffs) for s in (self, other))
        cs = [self._known(m) + other._known(m) for m in range(lo, hi)]
        return LaurentSeries.make(cs, min_degree=lo, order=order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def _known(self, m: int) -> Fraction:
        # like coefficient() but never raises; used where the caller has
        # already bounded m by the combined order
        k = m - self.min_degree
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            orders = []
            if self.is_zero() and self.order is not None:
                orders.append(self.order + (other.min_degree if other.coeffs else 0))
            if other.is_zero() and other.order is not None:
                orders.append(other.order + (self.min_degree if self.coeffs else 0))
            order = None
            if self.order is not None or other.order is not None:
                order = min(orders) if orders else _min_order(self.order, other.order)
            return LaurentSeries.make((), order=order, min_degree=order or 0)
        order = _min_order(
            None if self.order is None else self.order + other.min_degree,
            None if other.order is None else other.order + self.min_degree)
        lo = self.min_degree + other.min_degree
        hi = order
        if hi is None:
            hi = (self.min_degree + len(self.coeffs) - 1
                  + other.min_degree + len(other.coeffs) - 1 + 1)
        cs = []
        for m in range(lo, hi):
            acc = Fraction(0)
            # i ranges over stored coefficients of self with j = m - i stored in other
            i_lo = max(self.min_degree, m - (other.min_degree + len(other.coeffs) - 1))
            i_hi = min(self.min_degree + len(self.coeffs) - 1, m - other.min_degree)
            for i in range(i_lo, i_hi + 1):
                acc += self.coeffs[i - self.min_degree] * other.coeffs[m - i - other.min_degree]
            cs.append(acc)
        return LaurentSeries.make(cs, min_degree=lo, order=order)

    def scale(self, c: RationalLike) -> "LaurentSeries":
        c = rat(c)
        if c == 0:
            return LaurentSeries.make((), order=self.order, min_degree=self.order or 0)
        return LaurentSeries(self.min_degree,
                             tuple(c * x for x in self.coeffs), self.order)

    def scale_argument(self, c: RationalLike) -> "LaurentSeries":
        """Substitute z -> c*z for a nonzero rational c."""
        c = rat(c)
        if c == 0:
            raise ValueError("argument scale must be nonzero")
        cs = [x * c ** (self.min_degree + k) for k, x in enumerate(self.coeffs)]
        return LaurentSeries(self.min_degree, tuple(cs), self.order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z^k."""
        return LaurentSeries(self.min_degree + k, self.coeffs,
                             None if self.order is None else self.order + k)

    def truncated(self, order: int) -> "LaurentSeries":
        new_order = order if self.order is None else min(order, self.order)
        return LaurentSeries.make(self.coeffs, min_degree=self.min_degree,
                                  order=new_order)

    def reciprocal(self, order: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse, exact up to the requested order.

        For input with valuation d and truncation order O the best
        achievable output order is O - 2d; asking for more raises
        `TruncationError`.  Exact polynomial input needs an explicit
        target order unless it is a monomial.

        >>> s = LaurentSeries.make((2, -1), min_degree=1)  # 2z - z^2
        >>> t = s.reciprocal(order=3)
        >>> [str(t.coefficient(m)) for m in range(-1, 3)]
        ['1/2', '1/4', '1/8', '1/16']
        """
        if self.is_zero():
            raise SingularSeriesError("series is zero as far as it is known")
        d = self.valuation()
        lead = self.coeffs[0]
        if self.order is None and len(self.coeffs) == 1:
            out = LaurentSeries.monomial(1 / lead, -d)
            return out if order is None else out.truncated(order)
        best = None if self.order is None else self.order - 2 * d
        if order is None:
            if best is None:
                raise ValueError("exact input: a target order is required")
            order = best
        if best is not None and order > best:
            raise TruncationError(
                f"reciprocal known only to order {best}, requested {order}")
        terms = order + d  # number of unit-series coefficients needed
        if terms <= 0:
            return LaurentSeries.make((), order=order, min_degree=order)
        # invert the unit part v = self / (lead * z^d), v_0 = 1
        v = [self._known(d + k) / lead for k in range(terms)]
        w = [Fraction(0)] * terms
        w[0] = Fraction(1)
        for m in range(1, terms):
            acc = Fraction(0)
            for i in range(1, m + 1):
                if v[i]:
                    acc += v[i] * w[m - i]
            w[m] = -acc
        cs = [x / lead for x in w]
        return LaurentSeries.make(cs, min_degree=-d, order=order)

    def coefficients(self, lo: int, hi: int) -> list[Fraction]:
        """Exact coefficients of z^lo .. z^hi inclusive."""
        return [self.coefficient(m) for m in range(lo, hi + 1)]


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix over the rationals (row-major storage)."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RationalLike]]) -> "RationalMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionError("ragged rows")
            flat.extend(rat(x) for x in row)
        return RationalMatrix(r, c, tuple(flat))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def at(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionError(f"index ({i}, {j}) out of range")
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return RationalMatrix(self.rows, self.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in subtraction")
        return RationalMatrix(self.rows, self.cols,
                              tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: RationalLike) -> "RationalMatrix":
        c = rat(c)
        return RationalMatrix(self.rows, self.cols,
                              tuple(c * x for x in self.entries))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            arow = a[i]
            row = []
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    if arow[k]:
                        acc += arow[k] * b[k][j]
                row.append(acc)
            out.append(row)
        return RationalMatrix.from_rows(out)

    def power(self, k: int) -> "RationalMatrix":
        if self.rows != self.cols:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse().power(-k)
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.at(i, i) for i in range(self.rows)), Fraction(0))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self.at(i, j) for j in col_idx] for i in row_idx])

    def det(self) -> Fraction:
        """Determinant via denominator clearing + Bareiss elimination.

        >>> RationalMatrix.from_rows([[2, 6, 9], [1, 5, 8], [0, 1, 4]]).det()
        Fraction(9, 1)
        """
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        denom = Fraction(1)
        m: list[list[int]] = []
        for row in self.to_rows():
            lcm = 1
            for x in row:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            denom *= lcm
            m.append([int(x * lcm) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return Fraction(0)
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            pkk = m[k][k]
            for i in range(k + 1, n):
                mik = m[i][k]
                row_i, row_k = m[i], m[k]
                for j in range(k + 1, n):
                    row_i[j] = (pkk * row_i[j] - mik * row_k[j]) // prev
                row_i[k] = 0
            prev = pkk
        return Fraction(sign * m[n - 1][n - 1]) / denom

    def inverse(self) -> "RationalMatrix":
        """Exact inverse by Gauss-Jordan; raises on singular input."""
        if self.rows != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        inv = RationalMatrix.identity(n).to_rows()
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return RationalMatrix.from_rows(inv)
