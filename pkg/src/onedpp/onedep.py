"""Stationary and finite one-dependent 0/1 processes via determinants.

A process on positions 1..n-1 (n is the `horizon`) can be specified four
ways, all interconvertible where it makes sense:

* `StationaryA`: run probabilities a_i = P(X_1 = ... = X_{i-1} = 1),
  a_1 = 1.  Pattern probabilities are determinants indexed by the ZERO
  positions of the pattern,
* `StationaryE`: a scalar sequence e_0 = 1, e_1 > 0, e_2, ... whose
  Toeplitz band matrix drives determinants indexed by the ONE positions,
* `TableE`: the non-stationary version, a triangular table e(i, j) for
  0 <= i < j <= n,
* `IntervalRho`: correlations rho([x, y)) of intervals of positions.

Because the two determinant conventions index complementary sets, the
pattern helpers are named `zeros_of` and `support_of`; nothing in the
API passes an untagged position set.

Kernels: `kernel_stationary` returns the Toeplitz kernel k(m) with
k(-1) = 1/e_1 > 0 (the generating function identity
khat(z) = 1/(1 - 1/ehat(z))).  `kernel_general` implements the
inclusion-exclusion normal form whose first subdiagonal is -1; for
stationary input the two agree after conjugating by (-1)^position,
and every correlation minor is invariant under such conjugations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .exact import (
    DimensionError,
    LaurentSeries,
    RationalLike,
    RationalMatrix,
    TruncationError,
    rat,
    rat_str,
)


class InvalidSpecError(ValueError):
    """Spec data violates a structural requirement."""


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class PatternSpec:
    """A full 0/1 configuration on positions 1..horizon-1."""

    horizon: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise InvalidSpecError("horizon must be at least 1")
        if len(self.bits) != self.horizon - 1:
            raise InvalidSpecError(
                f"expected {self.horizon - 1} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise InvalidSpecError("pattern bits must be 0 or 1")

    @staticmethod
    def from_bits(bits: Iterable[int]) -> "PatternSpec":
        bs = tuple(int(b) for b in bits)
        return PatternSpec(len(bs) + 1, bs)

    @staticmethod
    def from_string(text: str) -> "PatternSpec":
        return PatternSpec.from_bits(int(c) for c in text)

    @staticmethod
    def from_support(horizon: int, ones: Iterable[int]) -> "PatternSpec":
        """Pattern with ones exactly at the given 1-based positions."""
        pos = set(ones)
        if not pos <= set(range(1, horizon)):
            raise InvalidSpecError(f"positions must lie in 1..{horizon - 1}")
        return PatternSpec(horizon, tuple(1 if i in pos else 0
                                          for i in range(1, horizon)))

    @staticmethod
    def from_zeros(horizon: int, zeros: Iterable[int]) -> "PatternSpec":
        pos = set(zeros)
        if not pos <= set(range(1, horizon)):
            raise InvalidSpecError(f"positions must lie in 1..{horizon - 1}")
        return PatternSpec(horizon, tuple(0 if i in pos else 1
                                          for i in range(1, horizon)))

    def reversed(self) -> "PatternSpec":
        return PatternSpec(self.horizon, self.bits[::-1])

    def as_string(self) -> str:
        return "".join(str(b) for b in self.bits)


def support_of(pattern: PatternSpec) -> tuple[int, ...]:
    """1-based positions carrying a one (the occupied sites)."""
    return tuple(i + 1 for i, b in enumerate(pattern.bits) if b == 1)


def zeros_of(pattern: PatternSpec) -> tuple[int, ...]:
    """1-based positions carrying a zero."""
    return tuple(i + 1 for i, b in enumerate(pattern.bits) if b == 0)


def all_patterns(horizon: int) -> Iterable[PatternSpec]:
    for bits in itertools.product((0, 1), repeat=horizon - 1):
        yield PatternSpec(horizon, bits)


# ---------------------------------------------------------------------------
# process specifications


@dataclass(frozen=True)
class StationaryA:
    """Run-probability data a_1 = 1, a_2, ..., a_L (a[i-1] holds a_i).

    `exact_tail` asserts a_i = 0 for every i > L; otherwise queries past
    L raise TruncationError.
    """

    a: tuple[Fraction, ...]
    horizon: int
    exact_tail: bool = False

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise InvalidSpecError("horizon must be at least 1")
        if not self.a or self.a[0] != 1:
            raise InvalidSpecError("a_1 must equal 1")
        if any(not (0 <= x <= 1) for x in self.a):
            raise InvalidSpecError("run probabilities must lie in [0, 1]")

    @staticmethod
    def make(a: Sequence[RationalLike], horizon: int,
             exact_tail: bool = False) -> "StationaryA":
        return StationaryA(tuple(rat(x) for x in a), horizon, exact_tail)

    def a_value(self, i: int) -> Fraction:
        if i < 0:
            return Fraction(0)
        if i == 0:
            return Fraction(1)
        if i <= len(self.a):
            return self.a[i - 1]
        if self.exact_tail:
            return Fraction(0)
        raise TruncationError(f"a_{i} not stored (only {len(self.a)} terms)")

    def a_series(self) -> LaurentSeries:
        order = None if self.exact_tail else len(self.a) + 1
        return LaurentSeries.make(self.a, min_degree=1, order=order)


@dataclass(frozen=True)
class StationaryE:
    """Toeplitz determinant data e_0 = 1, e_1 > 0, e_2, ... (e[j] holds e_j)."""

    e: tuple[Fraction, ...]
    horizon: int
    exact_tail: bool = False

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise InvalidSpecError("horizon must be at least 1")
        if not self.e or self.e[0] != 1:
            raise InvalidSpecError("e_0 must equal 1")
        if len(self.e) < 2 or self.e[1] <= 0:
            raise InvalidSpecError("e_1 must be positive")

    @staticmethod
    def make(e: Sequence[RationalLike], horizon: int,
             exact_tail: bool = False) -> "StationaryE":
        return StationaryE(tuple(rat(x) for x in e), horizon, exact_tail)

    def e_value(self, j: int) -> Fraction:
        if j < 0:
            return Fraction(0)
        if j < len(self.e):
            return self.e[j]
        if self.exact_tail:
            return Fraction(0)
        raise TruncationError(f"e_{j} not stored (only {len(self.e)} terms)")

    def e_series(self) -> LaurentSeries:
        order = None if self.exact_tail else len(self.e)
        return LaurentSeries.make(self.e, min_degree=0, order=order)


class TableE:
    """Triangular table e(i, j), 0 <= i < j <= horizon, e(i, i+1) > 0.

    Inside pattern determinants the diagonal convention e(i, i) = 1 and
    e(i, j) = 0 for i > j applies automatically.
    """

    def __init__(self, horizon: int,
                 table: Mapping[tuple[int, int], RationalLike]):
        if horizon < 1:
            raise InvalidSpecError("horizon must be at least 1")
        self.horizon = horizon
        self._map: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in table.items():
            if not (0 <= i < j <= horizon):
                raise InvalidSpecError(f"entry ({i}, {j}) outside 0 <= i < j <= {horizon}")
            self._map[(i, j)] = rat(v)
        for i in range(horizon + 1):
            for j in range(i + 1, horizon + 1):
                if (i, j) not in self._map:
                    raise InvalidSpecError(f"missing table entry ({i}, {j})")
        for i in range(horizon):
            if self._map[(i, i + 1)] <= 0:
                raise InvalidSpecError(f"e({i}, {i + 1}) must be positive")

    def e_entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(1)
        if i > j:
            return Fraction(0)
        return self._map[(i, j)]

    def normalizer(self) -> Fraction:
        """h(n) = 1 / (e(0,1) e(1,2) ... e(n-1,n))."""
        prod = Fraction(1)
        for i in range(self.horizon):
            prod *= self._map[(i, i + 1)]
        return 1 / prod

    def items(self) -> list[tuple[int, int, Fraction]]:
        return sorted((i, j, v) for (i, j), v in self._map.items())


class IntervalRho:
    """Correlations rho([x, y)) for every interval of positions.

    Keys are pairs 1 <= x < y <= horizon denoting positions x..y-1; the
    empty interval has correlation 1 implicitly.  One-dependence makes
    these determine rho of every finite set via the block product rule.
    """

    def __init__(self, horizon: int,
                 rho: Mapping[tuple[int, int], RationalLike]):
        if horizon < 1:
            raise InvalidSpecError("horizon must be at least 1")
        self.horizon = horizon
        self._map: dict[tuple[int, int], Fraction] = {}
        for (x, y), v in rho.items():
            if not (1 <= x < y <= horizon):
                raise InvalidSpecError(f"interval ({x}, {y}) outside 1 <= x < y <= {horizon}")
            self._map[(x, y)] = rat(v)
        for x in range(1, horizon + 1):
            for y in range(x + 1, horizon + 1):
                if (x, y) not in self._map:
                    raise InvalidSpecError(f"missing interval rho({x}, {y})")

    def rho_interval(self, x: int, y: int) -> Fraction:
        """rho of positions x..y-1; y == x gives the empty product 1."""
        if y == x:
            return Fraction(1)
        if not (1 <= x < y <= self.horizon):
            raise InvalidSpecError(f"interval ({x}, {y}) out of range")
        return self._map[(x, y)]

    def items(self) -> list[tuple[int, int, Fraction]]:
        return sorted((x, y, v) for (x, y), v in self._map.items())


StationarySpec = Union[StationaryA, StationaryE]
OneDepSpec = Union[StationaryA, StationaryE, TableE, IntervalRho]


# ---------------------------------------------------------------------------
# conversions


def to_stationary_a(spec: StationarySpec, terms: int | None = None) -> StationaryA:
    """Run probabilities of a stationary spec (identity on StationaryA)."""
    if isinstance(spec, StationaryA):
        return spec
    e1 = spec.e[1]
    ehat = spec.e_series()
    # ahat(z) = 1/ehat(-z/e_1) - 1; the 1/e_1 rescaling normalizes e_1 to 1,
    # which leaves all pattern probabilities unchanged
    flipped = ehat.scale_argument(-Fraction(1) / e1)
    if terms is None:
        if spec.exact_tail:
            raise ValueError("exact-tail input: pass the number of terms wanted")
        terms = len(spec.e) - 1
    ahat = flipped.reciprocal(order=terms + 1) - LaurentSeries.one()
    return StationaryA.make(ahat.coefficients(1, terms), spec.horizon)


def to_stationary_e(spec: StationarySpec, terms: int | None = None) -> StationaryE:
    """Canonical e-sequence (e_1 = 1) of a stationary spec.

    StationaryE input is returned unchanged; StationaryA input goes
    through ehat(z) = 1/(1 + ahat(-z)).
    """
    if isinstance(spec, StationaryE):
        return spec
    ahat = spec.a_series()
    if terms is None:
        if spec.exact_tail:
            raise ValueError("exact-tail input: pass the number of terms wanted")
        terms = len(spec.a)
    denom = LaurentSeries.one() + ahat.scale_argument(-1)
    ehat = denom.reciprocal(order=terms + 1)
    return StationaryE.make(ehat.coefficients(0, terms), spec.horizon)


def to_table(spec: StationarySpec, horizon: int | None = None) -> TableE:
    """Toeplitz table e(i, j) = e_{j-i} on 0..horizon."""
    n = spec.horizon if horizon is None else horizon
    if isinstance(spec, StationaryA):
        spec = to_stationary_e(spec, terms=n)
    table = {(i, j): spec.e_value(j - i)
             for i in range(n + 1) for j in range(i + 1, n + 1)}
    return TableE(n, table)


def to_interval_rho(spec: OneDepSpec) -> IntervalRho:
    """Interval correlations of any spec variant."""
    n = spec.horizon
    if isinstance(spec, IntervalRho):
        return spec
    if isinstance(spec, (StationaryA, StationaryE)):
        a = spec if isinstance(spec, StationaryA) else to_stationary_a(spec, terms=n)
        rho = {(x, y): a.a_value(y - x + 1)
               for x in range(1, n + 1) for y in range(x + 1, n + 1)}
        return IntervalRho(n, rho)
    kernel, _ = kernel_from_table(spec)
    rho = {(x, y): kernel.minor(range(x, y))
           for x in range(1, n + 1) for y in range(x + 1, n + 1)}
    return IntervalRho(n, rho)


# ---------------------------------------------------------------------------
# pattern probabilities and correlations


def _bordered(sites: Sequence[int], horizon: int) -> list[int]:
    s = sorted(sites)
    if any(not 1 <= x <= horizon - 1 for x in s):
        raise InvalidSpecError(f"positions must lie in 1..{horizon - 1}")
    if len(set(s)) != len(s):
        raise InvalidSpecError("repeated position")
    return [0] + s + [horizon]


def pattern_probability(spec: OneDepSpec, pattern: PatternSpec) -> Fraction:
    """Probability of observing the full pattern.

    The determinant is indexed by `zeros_of(pattern)` for run-probability
    specs and by `support_of(pattern)` for e-type specs; interval specs
    go through inclusion-exclusion over the correlations.
    """
    if pattern.horizon != spec.horizon:
        raise DimensionError(
            f"pattern horizon {pattern.horizon} != spec horizon {spec.horizon}")
    n = spec.horizon
    if isinstance(spec, StationaryA):
        s = _bordered(zeros_of(pattern), n)
        k = len(s) - 2
        m = [[spec.a_value(s[j + 1] - s[i]) for j in range(k + 1)]
             for i in range(k + 1)]
        return RationalMatrix.from_rows(m).det()
    if isinstance(spec, StationaryE):
        s = _bordered(support_of(pattern), n)
        k = len(s) - 2

        def toeplitz(i: int, j: int) -> Fraction:
            # diagonal convention: e(u, u) = 1, e(u, v) = 0 for u > v
            d = s[j + 1] - s[i]
            if d == 0:
                return Fraction(1)
            if d < 0:
                return Fraction(0)
            return spec.e_value(d)

        m = [[toeplitz(i, j) for j in range(k + 1)] for i in range(k + 1)]
        det = RationalMatrix.from_rows(m).det()
        return det * spec.e[1] ** (-n)
    if isinstance(spec, TableE):
        s = _bordered(support_of(pattern), n)
        k = len(s) - 2
        m = [[spec.e_entry(s[i], s[j + 1]) for j in range(k + 1)]
             for i in range(k + 1)]
        return RationalMatrix.from_rows(m).det() * spec.normalizer()
    if isinstance(spec, IntervalRho):
        ones = support_of(pattern)
        others = [x for x in range(1, n) if x not in set(ones)]
        total = Fraction(0)
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                total += (-1) ** r * correlation(spec, ones + extra)
        return total
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def _blocks(sites: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs of consecutive integers as (start, length)."""
    s = sorted(sites)
    out: list[tuple[int, int]] = []
    i = 0
    while i < len(s):
        j = i
        while j + 1 < len(s) and s[j + 1] == s[j] + 1:
            j += 1
        out.append((s[i], j - i + 1))
        i = j + 1
    return out


def correlation(spec: OneDepSpec, sites: Sequence[int]) -> Fraction:
    """rho(A) = P(X_x = 1 for every x in A)."""
    sites = sorted(sites)
    if not sites:
        return Fraction(1)
    _bordered(sites, spec.horizon)  # validation only
    if isinstance(spec, (StationaryA, StationaryE)):
        a = spec if isinstance(spec, StationaryA) else \
            to_stationary_a(spec, terms=max(ln for _, ln in _blocks(sites)) + 1)
        prod = Fraction(1)
        for _, length in _blocks(sites):
            prod *= a.a_value(length + 1)
        return prod
    if isinstance(spec, IntervalRho):
        prod = Fraction(1)
        for start, length in _blocks(sites):
            prod *= spec.rho_interval(start, start + length)
        return prod
    kernel, _ = kernel_from_table(spec)
    return kernel.minor(sites)


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class StationaryKernel:
    """Toeplitz kernel values k(m), exact on lo..hi; k(m) = 0 for m <= -2."""

    lo: int
    hi: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.lo > -1:
            raise InvalidSpecError("kernel range must include m = -1")
        if len(self.values) != self.hi - self.lo + 1:
            raise InvalidSpecError("value count does not match range")

    def at(self, m: int) -> Fraction:
        if m <= -2:
            return Fraction(0)
        if self.lo <= m <= self.hi:
            return self.values[m - self.lo]
        raise TruncationError(f"k({m}) outside computed range {self.lo}..{self.hi}")

    def conjugated(self, c: RationalLike) -> "StationaryKernel":
        """Diagonal conjugation k(m) -> c^m k(m); correlations unchanged."""
        c = rat(c)
        if c == 0:
            raise ValueError("conjugation scalar must be nonzero")
        return StationaryKernel(self.lo, self.hi,
                                tuple(c ** m * v for m, v in
                                      zip(range(self.lo, self.hi + 1), self.values)))

    def to_dense(self, horizon: int) -> "DenseKernel":
        pos = tuple(range(1, horizon))
        m = [[self.at(y - x) for y in pos] for x in pos]
        return DenseKernel(pos, RationalMatrix.from_rows(m))


@dataclass(frozen=True)
class DenseKernel:
    """Kernel matrix over an explicit tuple of positions."""

    positions: tuple[int, ...]
    matrix: RationalMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != len(self.positions) or self.matrix.cols != len(self.positions):
            raise DimensionError("kernel matrix shape mismatch")

    def at(self, x: int, y: int) -> Fraction:
        ix = self.positions.index(x)
        iy = self.positions.index(y)
        return self.matrix.at(ix, iy)

    def minor(self, sites: Iterable[int]) -> Fraction:
        """det K restricted to `sites`; this is rho(sites) for a valid kernel."""
        idx = [self.positions.index(x) for x in sorted(sites)]
        return self.matrix.submatrix(idx, idx).det()

    def conjugated(self, c: RationalLike) -> "DenseKernel":
        c = rat(c)
        if c == 0:
            raise ValueError("conjugation scalar must be nonzero")
        m = [[c ** (x - y) * self.at(x, y) for y in self.positions]
             for x in self.positions]
        return DenseKernel(self.positions, RationalMatrix.from_rows(m))


def kernel_stationary(spec: StationarySpec, lo: int = -1, hi: int | None = None) -> StationaryKernel:
    """Toeplitz kernel with khat(z) = 1/(1 - 1/ehat(z)), so k(-1) = 1/e_1.

    Correlations are principal minors: rho(A) = det[k(y - x)]_{x,y in A}.
    The stored coefficient length bounds the range; asking past it
    raises TruncationError.
    """
    if hi is None:
        hi = spec.horizon - 2 if spec.horizon >= 2 else 0
    if lo > -1:
        raise ValueError("lo must be at most -1")
    if isinstance(spec, StationaryA):
        # 1/ehat = 1 + ahat(-z) exactly, so khat = -1/ahat(-z)
        ahat = spec.a_series().scale_argument(-1)
        khat = -ahat.reciprocal(order=hi + 1) if ahat.order is None \
            else -ahat.reciprocal(order=min(hi + 1, ahat.order - 2 * ahat.valuation()))
    else:
        ehat = spec.e_series()
        inv = ehat.reciprocal(order=hi + 3 if ehat.order is None else ehat.order)
        s = LaurentSeries.one() - inv
        khat = s.reciprocal(order=hi + 1) if s.order is None \
            else s.reciprocal(order=min(hi + 1, s.order - 2))
    values = khat.coefficients(lo, hi)  # raises TruncationError when short
    return StationaryKernel(lo, hi, tuple(values))


def kernel_general(rho: IntervalRho, x: int, y: int) -> Fraction:
    """Normal-form kernel entry from interval correlations.

    K(x, y) = 0 for x - y >= 2, -1 for x - y = 1, and for x <= y an
    alternating sum over chains x = l_0 < ... < l_r = y + 1 of products
    of interval correlations.  Minors reproduce rho exactly.
    """
    if x - y >= 2:
        return Fraction(0)
    if x - y == 1:
        return Fraction(-1)
    interior = range(x + 1, y + 1)
    total = Fraction(0)
    for r in range(len(interior) + 1):
        for cut in itertools.combinations(interior, r):
            chain = [x, *cut, y + 1]
            prod = Fraction(1)
            for a, b in zip(chain, chain[1:]):
                prod *= rho.rho_interval(a, b)
            total += (-1) ** r * prod
    return total


def kernel_dense(rho: IntervalRho) -> DenseKernel:
    """Normal-form kernel on all positions 1..horizon-1."""
    pos = tuple(range(1, rho.horizon))
    m = [[kernel_general(rho, x, y) for y in pos] for x in pos]
    return DenseKernel(pos, RationalMatrix.from_rows(m))


def kernel_from_table(spec: TableE) -> tuple[DenseKernel, Fraction]:
    """Kernel and normalizer from a triangular table.

    With E the upper triangular matrix E[i][j] = e(i, j+1) (0-based,
    zero below the diagonal), K(x, y) = delta_{x,y} + (E^{-1})_{x, y+1}
    on positions 1..horizon-1, and h(n) = 1/det E.
    """
    n = spec.horizon
    rows = [[spec.e_entry(i, j + 1) if i <= j else Fraction(0)
             for j in range(n)] for i in range(n)]
    einv = RationalMatrix.from_rows(rows).inverse()
    pos = tuple(range(1, n))
    m = [[(Fraction(1) if x == y else Fraction(0)) + einv.at(x - 1, y)
          for y in pos] for x in pos]
    return DenseKernel(pos, RationalMatrix.from_rows(m)), spec.normalizer()


# ---------------------------------------------------------------------------
# closure operations


def particle_hole(spec: StationarySpec, terms: int | None = None) -> StationaryA:
    """Complemented process (ones and zeros swapped) on the same horizon.

    Generating functions: R(z) = 1 + sum_j a_j z^j maps to 1/R(-z).
    """
    a = spec if isinstance(spec, StationaryA) else \
        to_stationary_a(spec, terms=terms if terms is not None else len(spec.e) - 1)
    if terms is None:
        # an exact tail lets us expand as far as the horizon needs
        terms = max(len(a.a), spec.horizon) if a.exact_tail else len(a.a)
    big_r = LaurentSeries.one() + a.a_series()
    flipped = big_r.scale_argument(-1)
    dual = flipped.reciprocal(order=terms + 1) if flipped.order is None \
        else flipped.reciprocal(order=min(terms + 1, flipped.order))
    return StationaryA.make(dual.coefficients(1, terms), spec.horizon)


def particle_hole_dense(kernel: DenseKernel, region: Iterable[int]) -> DenseKernel:
    """Complementation on a region: swap ones and zeros at those positions.

    Block form: with N the region, rows/cols outside N keep K, the
    (N, outside) block flips sign and the (N, N) block becomes I - K.
    Minors then give mixed correlations: det over A equals the chance of
    ones on A outside N together with zeros on A inside N.
    """
    inside = set(region)
    if not inside <= set(kernel.positions):
        raise DimensionError("region must be a subset of the kernel positions")
    rows = []
    for x in kernel.positions:
        row = []
        for y in kernel.positions:
            v = kernel.at(x, y)
            if x in inside and y in inside:
                row.append((Fraction(1) if x == y else Fraction(0)) - v)
            elif x in inside:
                row.append(-v)
            else:
                row.append(v)
        rows.append(row)
    return DenseKernel(kernel.positions, RationalMatrix.from_rows(rows))


def _as_a(spec: StationarySpec, terms: int) -> StationaryA:
    return spec if isinstance(spec, StationaryA) else to_stationary_a(spec, terms=terms)


def intersect(specs: Sequence[StationarySpec], *, independent: bool) -> StationaryA:
    """Sitewise AND of independent processes: run probabilities multiply.

    The caller must assert independence explicitly; without it the
    construction is meaningless and the call is refused.
    """
    if not independent:
        raise ValueError("intersection requires independent component processes")
    if not specs:
        raise ValueError("need at least one spec")
    horizons = {s.horizon for s in specs}
    if len(horizons) != 1:
        raise DimensionError(f"mismatched horizons {sorted(horizons)}")
    terms = min(len(s.a) if isinstance(s, StationaryA) else len(s.e) - 1
                for s in specs)
    # once any factor has an exact zero tail the product does too
    exact = any(isinstance(s, StationaryA) and s.exact_tail and len(s.a) <= terms
                for s in specs)
    parts = [_as_a(s, terms) for s in specs]
    merged = [Fraction(1)] * terms
    for part in parts:
        for i in range(terms):
            merged[i] *= part.a_value(i + 1)
    return StationaryA.make(merged, horizons.pop(), exact_tail=exact)


def union(specs: Sequence[StationarySpec], *, independent: bool) -> StationaryA:
    """Sitewise OR of independent processes, via complement of AND of complements."""
    if not independent:
        raise ValueError("union requires independent component processes")
    duals = [particle_hole(s) for s in specs]
    return particle_hole(intersect(duals, independent=independent))


# ---------------------------------------------------------------------------
# validation and serialization


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checked: int
    failures: tuple[tuple[int, str, Fraction], ...]  # (horizon, pattern, value)


def validate_spec(spec: OneDepSpec, max_n: int) -> ValidationReport:
    """Existence check: every pattern determinant up to horizon max_n is >= 0.

    A nonnegative answer for all of them certifies that the data defines
    a genuine one-dependent process on horizons up to max_n.
    """
    failures: list[tuple[int, str, Fraction]] = []
    checked = 0
    for n in range(1, max_n + 1):
        if isinstance(spec, StationaryA):
            probe: OneDepSpec = StationaryA(spec.a, n, spec.exact_tail)
        elif isinstance(spec, StationaryE):
            probe = StationaryE(spec.e, n, spec.exact_tail)
        elif n == spec.horizon:
            probe = spec
        else:
            continue
        for pattern in all_patterns(n):
            value = pattern_probability(probe, pattern)
            checked += 1
            if value < 0:
                failures.append((n, pattern.as_string(), value))
    return ValidationReport(not failures, checked, tuple(failures))


def spec_to_json(spec: OneDepSpec) -> dict:
    """JSON-ready document; rationals serialize as "num/den" strings."""
    if isinstance(spec, StationaryA):
        return {"variant": "stationary_a", "horizon": spec.horizon,
                "exact_tail": spec.exact_tail,
                "a": [rat_str(x) for x in spec.a]}
    if isinstance(spec, StationaryE):
        return {"variant": "stationary_e", "horizon": spec.horizon,
                "exact_tail": spec.exact_tail,
                "e": [rat_str(x) for x in spec.e]}
    if isinstance(spec, TableE):
        return {"variant": "table_e", "horizon": spec.horizon,
                "entries": [[i, j, rat_str(v)] for i, j, v in spec.items()]}
    if isinstance(spec, IntervalRho):
        return {"variant": "interval_rho", "horizon": spec.horizon,
                "rho": [[x, y, rat_str(v)] for x, y, v in spec.items()]}
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def spec_from_json(doc: dict) -> OneDepSpec:
    variant = doc.get("variant")
    horizon = int(doc["horizon"])
    if variant == "stationary_a":
        return StationaryA.make(doc["a"], horizon, bool(doc.get("exact_tail", False)))
    if variant == "stationary_e":
        return StationaryE.make(doc["e"], horizon, bool(doc.get("exact_tail", False)))
    if variant == "table_e":
        return TableE(horizon, {(int(i), int(j)): v for i, j, v in doc["entries"]})
    if variant == "interval_rho":
        return IntervalRho(horizon, {(int(x), int(y)): v for x, y, v in doc["rho"]})
    raise InvalidSpecError(f"unknown spec variant {variant!r}")


def spec_json_text(spec: OneDepSpec) -> str:
    return json.dumps(spec_to_json(spec), sort_keys=True, indent=2)
