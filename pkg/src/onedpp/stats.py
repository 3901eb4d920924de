"""Counting statistics of determinantal 0/1 processes, exact and sampled.

The number N of ones has generating polynomial det(I + (x-1)K); its
coefficients are the exact law of N, the mean is tr K and the variance
tr(K - K^2).  Floats enter only here: the normal-approximation report
(the CLT bound sup |F - Phi| <= 0.80/sigma for kernels with real
spectrum) and the seeded Monte Carlo samplers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import (
    AlternatingDescents,
    CarriesBaseB,
    GenericPoints,
    IidTrials,
    MallowsDescents,
    ProcessName,
    UniformDescents,
    model_string,
)
from .exact import RationalMatrix, rat_str
from .onedep import DenseKernel


@dataclass(frozen=True)
class CountPolynomial:
    """coeffs[j] = P(N = j); evaluate() gives E(x^N)."""

    coeffs: tuple[Fraction, ...]

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def mean(self) -> Fraction:
        return sum((Fraction(j) * c for j, c in enumerate(self.coeffs)), Fraction(0))

    def variance(self) -> Fraction:
        mu = self.mean()
        return sum((c * (Fraction(j) - mu) ** 2 for j, c in enumerate(self.coeffs)),
                   Fraction(0))


def _interpolate(values: Sequence[Fraction]) -> list[Fraction]:
    """Exact coefficients of the polynomial through (t, values[t]), t = 0..d."""
    d = len(values) - 1
    coeffs = [Fraction(0)] * (d + 1)
    for t, y in enumerate(values):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for s in range(d + 1):
            if s == t:
                continue
            # multiply basis polynomial by (x - s)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                nxt[p] -= c * s
                nxt[p + 1] += c
            basis = nxt
            denom *= t - s
        scale = y / denom
        for p, c in enumerate(basis):
            coeffs[p] += scale * c
    return coeffs


def count_polynomial(kernel: DenseKernel) -> CountPolynomial:
    """det(I + (x-1)K) recovered exactly by interpolation at x = 0..d."""
    d = len(kernel.positions)
    ident = RationalMatrix.identity(d)
    values = [ (ident + kernel.matrix.scale(Fraction(t - 1))).det()
               for t in range(d + 1)]
    coeffs = _interpolate(values)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return CountPolynomial(tuple(coeffs))


def count_moments(kernel: DenseKernel) -> tuple[Fraction, Fraction]:
    """(mean, variance) of N as (tr K, tr(K - K^2))."""
    k = kernel.matrix
    mean = k.trace()
    return mean, mean - (k @ k).trace()


def normal_cdf(t: float) -> float:
    """Standard normal CDF via erfc; absolute error well under 1e-12."""
    return 0.5 * math.erfc(-t / math.sqrt(2.0))


@dataclass(frozen=True)
class NormalApproxReport:
    mean: Fraction
    variance: Fraction
    approx_mean: float
    approx_stddev: float
    sup_distance: float
    bound: float
    within_bound: bool
    unimodal: bool
    mode_distance: float

    def as_dict(self) -> dict:
        return {"mean": rat_str(self.mean), "variance": rat_str(self.variance),
                "approx_mean": self.approx_mean,
                "approx_stddev": self.approx_stddev,
                "sup_distance": self.sup_distance, "bound": self.bound,
                "within_bound": self.within_bound, "unimodal": self.unimodal,
                "mode_distance": self.mode_distance}


def normal_approx_report(poly: CountPolynomial) -> NormalApproxReport:
    """Compare the exact law of N with the matching normal distribution.

    The sup distance between the step CDF and Phi is attained at a jump,
    approaching from one side or the other, so both one-sided values are
    checked at every support point.
    """
    probs = poly.coeffs
    total = sum(probs, Fraction(0))
    if total != 1 or any(p < 0 for p in probs):
        raise ValueError("coefficients do not form a probability law")
    mu = poly.mean()
    var = poly.variance()
    sigma = math.sqrt(float(var))
    sup = 0.0
    cdf = Fraction(0)
    for j, p in enumerate(probs):
        z = (j - float(mu)) / sigma
        phi = normal_cdf(z)
        sup = max(sup, abs(float(cdf) - phi))        # left limit at the jump
        cdf += p
        sup = max(sup, abs(float(cdf) - phi))        # value at the jump
    rises = [j for j in range(1, len(probs)) if probs[j] > probs[j - 1]]
    peak = max(rises) if rises else 0
    unimodal = all(probs[j] <= probs[j - 1] for j in range(peak + 1, len(probs)))
    top = max(probs)
    mode_distance = min(abs(j - float(mu)) for j, p in enumerate(probs) if p == top)
    bound = 0.80 / sigma
    return NormalApproxReport(mu, var, float(mu), sigma, sup, bound,
                              sup <= bound, unimodal, mode_distance)


def eulerian_numbers(n: int) -> list[int]:
    """A(n, j) = permutations of n letters with j descents.

    >>> eulerian_numbers(4)
    [1, 11, 11, 1]
    """
    row = [1]
    for size in range(2, n + 1):
        row = [(j + 1) * (row[j] if j < len(row) else 0)
               + (size - j) * (row[j - 1] if j >= 1 else 0)
               for j in range(size)]
    return row


# ---------------------------------------------------------------------------
# samplers


@dataclass(frozen=True)
class SimulationResult:
    model: str
    horizon: int
    reps: int
    seed: int
    pattern_counts: dict[str, int]

    def frequency(self, bits: Sequence[int]) -> float:
        key = "".join(str(b) for b in bits)
        return self.pattern_counts.get(key, 0) / self.reps

    def site_rate(self, position: int) -> float:
        hits = sum(c for pattern, c in self.pattern_counts.items()
                   if pattern[position - 1] == "1")
        return hits / self.reps

    def pair_rate(self, position_a: int, position_b: int) -> float:
        hits = sum(c for pattern, c in self.pattern_counts.items()
                   if pattern[position_a - 1] == "1" and pattern[position_b - 1] == "1")
        return hits / self.reps

    def count_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for pattern, c in self.pattern_counts.items():
            k = pattern.count("1")
            hist[k] = hist.get(k, 0) + c
        return hist

    def standard_error(self, p: float) -> float:
        return math.sqrt(max(p * (1 - p), 1e-300) / self.reps)


def _descent_bits(seq: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if seq[i] > seq[i + 1] else 0 for i in range(len(seq) - 1))


def _mallows_permutation(n: int, q: float, rng: random.Random) -> list[int]:
    # sequential insertion: value i goes j places from the right end with
    # probability proportional to q^j, adding j inversions
    perm: list[int] = []
    for i in range(1, n + 1):
        weights = [q ** j for j in range(i)]
        total = sum(weights)
        u = rng.random() * total
        acc = 0.0
        spot = i - 1
        for j, w in enumerate(weights):
            acc += w
            if u < acc:
                spot = j
                break
        perm.insert(len(perm) - spot, i)
    return perm


def simulate_process(name: ProcessName, horizon: int, reps: int,
                     seed: int) -> SimulationResult:
    """Seeded sampler for the models with a direct probabilistic story."""
    rng = random.Random(seed)
    n = horizon
    counts: dict[str, int] = {}

    def record(bits: tuple[int, ...]) -> None:
        key = "".join(str(b) for b in bits)
        counts[key] = counts.get(key, 0) + 1

    if isinstance(name, CarriesBaseB):
        b = name.b
        for _ in range(reps):
            digits = [rng.randrange(b) for _ in range(n)]
            record(_descent_bits(digits))
    elif isinstance(name, IidTrials):
        cums = []
        acc = 0.0
        for p in name.p:
            acc += float(p)
            cums.append(acc)
        for _ in range(reps):
            vals = []
            for _ in range(n):
                u = rng.random()
                vals.append(next(i for i, c in enumerate(cums) if u < c or i == len(cums) - 1))
            record(_descent_bits(vals))
    elif isinstance(name, UniformDescents):
        base = list(range(n))
        for _ in range(reps):
            rng.shuffle(base)
            record(_descent_bits(base))
    elif isinstance(name, MallowsDescents):
        q = float(name.q)
        for _ in range(reps):
            record(_descent_bits(_mallows_permutation(n, q, rng)))
    elif isinstance(name, AlternatingDescents):
        base = list(range(n))
        for _ in range(reps):
            rng.shuffle(base)
            bits = tuple((1 if base[i] > base[i + 1] else 0) if i % 2 == 0
                         else (1 if base[i] < base[i + 1] else 0)
                         for i in range(n - 1))
            record(bits)
    elif isinstance(name, GenericPoints):
        m = name.n
        symbols = m + 1  # symbol 0 is the star
        for _ in range(reps):
            ys = [rng.randrange(symbols) for _ in range(n)]
            bits = []
            for a, b2 in zip(ys, ys[1:]):
                if a == 0:
                    bits.append(0)
                elif b2 == 0 or b2 == a % m + 1:
                    bits.append(1)
                else:
                    bits.append(0)
            record(tuple(bits))
    else:
        raise ValueError(f"no sampler for model {type(name).__name__}")
    return SimulationResult(model_string(name), horizon, reps, seed, counts)


@dataclass(frozen=True)
class UniformSumReport:
    n: int
    reps: int
    seed: int
    histogram: dict[int, int]
    expected: dict[int, Fraction]
    z_scores: dict[int, float]
    pathwise_match: bool

    def max_abs_z(self) -> float:
        return max(abs(z) for z in self.z_scores.values())


def uniform_sum_report(n: int, reps: int, seed: int) -> UniformSumReport:
    """Check floor(U_1 + ... + U_n) against the Eulerian law A(n, j)/n!.

    Each sample also verifies the pathwise identity: the integer part of
    the sum equals the number of descents of the running sums mod 1.
    """
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    pathwise = True
    for _ in range(reps):
        total = 0.0
        partial = []
        for _ in range(n):
            total += rng.random()
            partial.append(total % 1.0)
        j = int(total)
        descents = sum(1 for i in range(n - 1) if partial[i] > partial[i + 1])
        if descents != j:
            pathwise = False
        hist[j] = hist.get(j, 0) + 1
    counts = eulerian_numbers(n)
    fact = math.factorial(n)
    expected = {j: Fraction(counts[j], fact) for j in range(n)}
    z = {}
    for j in range(n):
        p = float(expected[j])
        se = math.sqrt(p * (1 - p) / reps)
        z[j] = (hist.get(j, 0) / reps - p) / se
    return UniformSumReport(n, reps, seed, hist, expected, z, pathwise)


@dataclass(frozen=True)
class EigenReport:
    eigenvalues: tuple[complex, ...]
    max_imag: float
    max_residual: float
    all_real: bool
    in_unit_interval: bool


def numeric_eigenvalues(kernel: DenseKernel, tol: float = 1e-9) -> EigenReport:
    """Float spectrum of the kernel with eigenpair residuals (report only).

    The zero eigenspace is deflated exactly first: the characteristic
    polynomial is interpolated in rational arithmetic and its trailing
    zero coefficients count the algebraic multiplicity of 0.  Float
    eigensolvers split a defective zero into spurious +-sqrt(eps) pairs,
    which would otherwise drown a 1e-9 tolerance.
    """
    d = len(kernel.positions)
    ident = RationalMatrix.identity(d)
    char = _interpolate([(ident.scale(Fraction(t)) - kernel.matrix).det()
                         for t in range(d + 1)])
    zeros = 0
    while zeros < d and char[zeros] == 0:
        zeros += 1
    m = np.array([[float(x) for x in row] for row in kernel.matrix.to_rows()])
    values, vectors = np.linalg.eig(m)
    residual = 0.0
    for idx in range(len(values)):
        v = vectors[:, idx]
        residual = max(residual, float(np.max(np.abs(m @ v - values[idx] * v))))
    # replace the `zeros` smallest-magnitude values with exact zeros
    order = np.argsort(np.abs(values))
    values[order[:zeros]] = 0.0
    values = values[np.argsort(values.real)]
    max_imag = float(np.max(np.abs(values.imag))) if len(values) else 0.0
    all_real = max_imag <= tol
    in_unit = bool(all_real and np.all(values.real >= -tol)
                   and np.all(values.real <= 1 + tol))
    return EigenReport(tuple(complex(v) for v in values), max_imag,
                       residual, all_real, in_unit)
