"""Connectivity set of a uniform permutation as a determinantal process.

For a permutation of {1..n}, position i is a connectivity point when
the first i values are a permutation of {1..i}.  Including the free
endpoints 0 and n, the points form a Markov chain from 0 to n whose
step law involves counts of indecomposable permutations, and the whole
point process is determinantal with an explicit kernel.  It is NOT
one-dependent (the gap at distance two is strict for n >= 4), which is
what makes it a useful contrast case.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import LaurentSeries, RationalMatrix
from .onedep import DenseKernel


def indecomposable_counts(max_n: int) -> list[int]:
    """f(0..max_n) with sum f(n) x^n = 1 - 1/(sum n! x^n).

    >>> indecomposable_counts(5)
    [0, 1, 1, 3, 13, 71]
    """
    fact = LaurentSeries.make(
        [Fraction(math.factorial(m)) for m in range(max_n + 1)], order=max_n + 1)
    series = LaurentSeries.one() - fact.reciprocal(order=max_n + 1)
    out = []
    for m in range(max_n + 1):
        value = series.coefficient(m)
        if value.denominator != 1:
            raise ArithmeticError("indecomposable count came out non-integral")
        out.append(int(value))
    return out


@lru_cache(maxsize=None)
def _indecomposable(k: int) -> int:
    return indecomposable_counts(k)[k]


@dataclass(frozen=True)
class ConnectivityModel:
    """The connectivity point process on {0, 1, ..., n}."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")

    # -- Markov chain ------------------------------------------------

    def step_probability(self, i: int, j: int) -> Fraction:
        """Chance the next connectivity point after i is j."""
        if not (0 <= i < j <= self.n):
            return Fraction(0)
        return Fraction(math.factorial(self.n - j) * _indecomposable(j - i),
                        math.factorial(self.n - i))

    def p_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(
            [[self.step_probability(i, j) for j in range(self.n + 1)]
             for i in range(self.n + 1)])

    def q_entry(self, i: int, j: int) -> Fraction:
        """Q = P + P^2 + ... in closed form: 1/C(n-i, n-j) above the diagonal."""
        if not (0 <= i < j <= self.n):
            return Fraction(0)
        return Fraction(1, math.comb(self.n - i, self.n - j))

    def q_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(
            [[self.q_entry(i, j) for j in range(self.n + 1)]
             for i in range(self.n + 1)])

    def q_matrix_by_summation(self) -> RationalMatrix:
        """P + P^2 + ... + P^n; the chain is nilpotent so the sum is finite."""
        p = self.p_matrix()
        acc = p
        term = p
        for _ in range(self.n - 1):
            term = term @ p
            acc = acc + term
        return acc

    # -- determinantal structure --------------------------------------

    def kernel(self) -> DenseKernel:
        """K(x, y) = delta_{0,x} + Q(0, x) - Q(y, x) on positions 0..n.

        Minors over any site set reproduce the probability that all
        those sites are connectivity points.
        """
        pos = tuple(range(self.n + 1))
        rows = [[(Fraction(1) if x == 0 else Fraction(0))
                 + self.q_entry(0, x) - self.q_entry(y, x)
                 for y in pos] for x in pos]
        return DenseKernel(pos, RationalMatrix.from_rows(rows))

    def point_probability(self, sites: Iterable[int]) -> Fraction:
        """P(every site is a connectivity point), by counting permutations.

        With interior sites s_1 < ... < s_k the count factors as
        s_1! (s_2 - s_1)! ... (n - s_k)!.
        """
        interior = sorted(set(sites) - {0, self.n})
        if any(not 0 < s < self.n for s in interior):
            raise ValueError(f"sites must lie in 0..{self.n}")
        cuts = [0] + interior + [self.n]
        count = 1
        for a, b in zip(cuts, cuts[1:]):
            count *= math.factorial(b - a)
        return Fraction(count, math.factorial(self.n))

    def expected_interior_points(self) -> Fraction:
        """E(number of connectivity points strictly between 0 and n)."""
        return sum((Fraction(1, math.comb(self.n, i)) for i in range(1, self.n)),
                   Fraction(0))

    def dependence_gap(self) -> tuple[Fraction, Fraction]:
        """(joint, product) for sites {1, 3}; these differ for n >= 4,
        so the process is not one-dependent despite being determinantal."""
        joint = self.point_probability((1, 3))
        product = self.point_probability((1,)) * self.point_probability((3,))
        return joint, product

    # -- trajectories --------------------------------------------------

    def trajectory_probability(self, trajectory: Sequence[int]) -> Fraction:
        if trajectory[0] != 0 or trajectory[-1] != self.n:
            raise ValueError("trajectory must run from 0 to n")
        prob = Fraction(1)
        for a, b in zip(trajectory, trajectory[1:]):
            prob *= self.step_probability(a, b)
        return prob

    def all_trajectories(self) -> Iterable[tuple[int, ...]]:
        for bits in itertools.product((0, 1), repeat=self.n - 1):
            yield (0, *(i for i, b in enumerate(bits, start=1) if b), self.n)

    def simulate(self, seed: int, reps: int = 1) -> list[tuple[int, ...]]:
        """Sample connectivity-point trajectories.

        Each step uses one uniform draw against exact rational cumulative
        weights, so the only approximation is the 2^-53 grid of the draw.
        """
        rng = random.Random(seed)
        out = []
        for _ in range(reps):
            path = [0]
            while path[-1] != self.n:
                i = path[-1]
                u = Fraction(rng.random())
                acc = Fraction(0)
                nxt = self.n
                for j in range(i + 1, self.n + 1):
                    acc += self.step_probability(i, j)
                    if u < acc:
                        nxt = j
                        break
                path.append(nxt)
            out.append(tuple(path))
        return out
