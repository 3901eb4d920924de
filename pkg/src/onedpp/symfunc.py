"""Partitions, ribbon shapes and specialized skew Schur determinants.

Shapes are tuples of weakly decreasing nonnegative integers.  A 0/1
pattern of length n-1 corresponds to a ribbon (border strip) of size n;
evaluating the skew Schur function of that ribbon in the elementary
basis, with e_i sent to a chosen scalar sequence, is one of the two
determinant routes to pattern probabilities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import RationalMatrix, rat


def partition(parts: Sequence[int]) -> tuple[int, ...]:
    """Validate weakly decreasing nonnegative parts, dropping trailing zeros."""
    ps = list(parts)
    if any(p < 0 for p in ps):
        raise ValueError("negative part in partition")
    if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
        raise ValueError("parts must be weakly decreasing")
    while ps and ps[-1] == 0:
        ps.pop()
    return tuple(ps)


def conjugate(shape: Sequence[int]) -> tuple[int, ...]:
    """Transpose of the Young diagram.

    >>> conjugate((3, 1))
    (2, 1, 1)
    """
    lam = partition(shape)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    lam, mu = partition(outer), partition(inner)
    if len(mu) > len(lam):
        return False
    return all(mu[i] <= lam[i] for i in range(len(mu)))


def ribbon_shape(n: int, subset: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Skew shape (lam, mu) of the ribbon carved out by a position subset.

    `subset` is a set of positions in 1..n-1 (strictly increasing); the
    resulting lam/mu both have k+1 rows (mu padded with zeros) and
    lam/mu is a connected border strip with n cells.
    """
    s = sorted(subset)
    if s and not (1 <= s[0] and s[-1] <= n - 1):
        raise ValueError(f"subset must lie in 1..{n - 1}")
    if len(set(s)) != len(s):
        raise ValueError("subset has repeated positions")
    k = len(s)
    ext = [0] + s + [n]
    lam = tuple(n - ext[i - 1] - k + i - 1 for i in range(1, k + 2))
    mu = tuple(n - ext[i] - k + i - 1 for i in range(1, k + 2))
    return lam, mu


def skew_schur_e(lam: Sequence[int], mu: Sequence[int],
                 e_values: Sequence[Fraction]) -> Fraction:
    """det(e_{lam_i - mu_j - i + j}) with e_r specialized to e_values[r].

    This is the dual Jacobi-Trudi determinant: with symbolic e_r it
    equals the skew Schur function of the conjugate shape lam'/mu'.
    Indices r < 0 contribute 0 and r = 0 contributes 1 regardless of
    the supplied values.
    """
    lam = tuple(lam)
    mu = tuple(mu) + (0,) * (len(lam) - len(mu))
    if len(mu) != len(lam):
        raise ValueError("inner shape has more rows than outer shape")
    vals = [rat(v) for v in e_values]
    k = len(lam)

    def e_at(r: int) -> Fraction:
        if r < 0:
            return Fraction(0)
        if r == 0:
            return Fraction(1)
        if r >= len(vals):
            raise ValueError(f"e_{r} required but only {len(vals)} values supplied")
        return vals[r]

    m = [[e_at(lam[i] - mu[j] - (i + 1) + (j + 1)) for j in range(k)]
         for i in range(k)]
    return RationalMatrix.from_rows(m).det()


def elementary_symmetric(values: Sequence[Fraction], max_deg: int) -> list[Fraction]:
    """e_0..e_max_deg of the given finite value list (zero past len(values))."""
    vals = [rat(v) for v in values]
    e = [Fraction(0)] * (max_deg + 1)
    e[0] = Fraction(1)
    top = 0
    for v in vals:
        top = min(top + 1, max_deg)
        for r in range(top, 0, -1):
            e[r] += v * e[r - 1]
    return e


def complete_homogeneous(values: Sequence[Fraction], max_deg: int) -> list[Fraction]:
    """h_0..h_max_deg via the reciprocal identity H(z) E(-z) = 1."""
    e = elementary_symmetric(values, max_deg)
    h = [Fraction(0)] * (max_deg + 1)
    h[0] = Fraction(1)
    for r in range(1, max_deg + 1):
        acc = Fraction(0)
        for i in range(1, r + 1):
            if e[i]:
                acc += (-1) ** (i - 1) * e[i] * h[r - i]
        h[r] = acc
    return h
