"""Brute-force pattern distributions for every catalog model.

Everything here enumerates sample spaces directly (digit strings,
permutations, signed permutations, lattice paths) and tallies exact
rational weights.  No determinants, no generating functions: these are
the reference answers the determinant formulas are tested against.
Enumeration size is guarded by an explicit budget.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .catalog import (
    AlternatingDescents,
    BinomialPosetUnion,
    BrentiRelation,
    CarriesBaseB,
    GenericPoints,
    IidTrials,
    MallowsDescents,
    ProcessName,
    TypeBDescents,
    UniformDescents,
    q_integer,
)
from .groupcarries import CentralExtensionSetup, h_table


class EnumerationBudgetError(RuntimeError):
    """The sample space is larger than the allowed enumeration budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_states: int = 10_000_000

    def check(self, states: int, what: str) -> None:
        if states > self.max_states:
            raise EnumerationBudgetError(
                f"{what} needs {states} states, budget is {self.max_states}")


Distribution = dict[tuple[int, ...], Fraction]


def descent_bits(seq: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if seq[i] > seq[i + 1] else 0 for i in range(len(seq) - 1))


def _tally(dist: Distribution, bits: tuple[int, ...], weight: Fraction) -> None:
    dist[bits] = dist.get(bits, Fraction(0)) + weight


def _finish(dist: Distribution, horizon: int) -> Distribution:
    total = sum(dist.values(), Fraction(0))
    if total != 1:
        raise ArithmeticError(f"oracle weights sum to {total}, not 1")
    for bits in itertools.product((0, 1), repeat=horizon - 1):
        dist.setdefault(bits, Fraction(0))
    return dist


def _inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
               if perm[i] > perm[j])


def _mallows_weights(n: int, q: Fraction) -> tuple[list[tuple[tuple[int, ...], Fraction]], Fraction]:
    z = Fraction(1)
    for i in range(1, n + 1):
        z *= q_integer(i, q)
    items = [(perm, q ** _inversions(perm) / z)
             for perm in itertools.permutations(range(1, n + 1))]
    return items, z


def oracle_distribution(name: ProcessName, horizon: int,
                        budget: OracleBudget | None = None) -> Distribution:
    """Exact law of the full 0/1 pattern on positions 1..horizon-1."""
    budget = budget or OracleBudget()
    n = horizon
    dist: Distribution = {}
    if isinstance(name, CarriesBaseB):
        budget.check(name.b ** n, "digit strings")
        weight = Fraction(1, name.b ** n)
        for digits in itertools.product(range(name.b), repeat=n):
            _tally(dist, descent_bits(digits), weight)
    elif isinstance(name, IidTrials):
        budget.check(len(name.p) ** n, "value strings")
        for vals in itertools.product(range(len(name.p)), repeat=n):
            w = Fraction(1)
            for v in vals:
                w *= name.p[v]
            _tally(dist, descent_bits(vals), w)
    elif isinstance(name, UniformDescents):
        budget.check(math.factorial(n), "permutations")
        weight = Fraction(1, math.factorial(n))
        for perm in itertools.permutations(range(n)):
            _tally(dist, descent_bits(perm), weight)
    elif isinstance(name, MallowsDescents):
        budget.check(math.factorial(n), "permutations")
        items, _ = _mallows_weights(n, Fraction(name.q))
        for perm, w in items:
            _tally(dist, descent_bits(perm), w)
    elif isinstance(name, AlternatingDescents):
        budget.check(math.factorial(n), "permutations")
        weight = Fraction(1, math.factorial(n))
        for perm in itertools.permutations(range(n)):
            bits = tuple((1 if perm[i] > perm[i + 1] else 0) if i % 2 == 0
                         else (1 if perm[i] < perm[i + 1] else 0)
                         for i in range(n - 1))
            _tally(dist, bits, weight)
    elif isinstance(name, TypeBDescents):
        m = name.n
        if horizon != m + 1:
            raise ValueError(f"type B with n = {m} fixes horizon {m + 1}")
        budget.check(math.factorial(m) * 2 ** m, "signed permutations")
        weight = Fraction(1, math.factorial(m) * 2 ** m)

        def rank(u: int) -> int:
            # order 1 < 2 < ... < m < -m < ... < -1
            return u if u > 0 else 2 * m + 1 - abs(u)

        for perm in itertools.permutations(range(1, m + 1)):
            for signs in itertools.product((1, -1), repeat=m):
                w = [s * v for s, v in zip(signs, perm)]
                bits = tuple(1 if rank(w[i]) > rank(w[i + 1]) else 0
                             for i in range(m - 1))
                bits += (1 if w[-1] < 0 else 0,)
                _tally(dist, bits, weight)
        return _finish(dist, horizon)
    elif isinstance(name, BinomialPosetUnion):
        budget.check(math.factorial(n) ** name.r, "permutation tuples")
        items, _ = _mallows_weights(n, Fraction(name.q))
        for combo in itertools.product(items, repeat=name.r):
            w = Fraction(1)
            bits = [0] * (n - 1)
            for perm, pw in combo:
                w *= pw
                for i, b in enumerate(descent_bits(perm)):
                    bits[i] |= b
            _tally(dist, tuple(bits), w)
    elif isinstance(name, BrentiRelation):
        size = len(name.theta)
        budget.check(size ** n, "value strings")
        for vals in itertools.product(range(1, size + 1), repeat=n):
            w = Fraction(1)
            for v in vals:
                w *= name.theta[v - 1]
            bits = tuple(0 if (vals[i], vals[i + 1]) in name.relation else 1
                         for i in range(n - 1))
            _tally(dist, bits, w)
    elif isinstance(name, GenericPoints):
        m = name.n
        budget.check((m + 1) ** n, "symbol strings")
        weight = Fraction(1, (m + 1) ** n)
        for ys in itertools.product(range(m + 1), repeat=n):
            bits = []
            for a, b in zip(ys, ys[1:]):
                if a == 0:
                    bits.append(0)
                elif b == 0 or b == a % m + 1:
                    bits.append(1)
                else:
                    bits.append(0)
            _tally(dist, tuple(bits), weight)
    else:
        raise TypeError(f"no oracle for {type(name).__name__}")
    return _finish(dist, horizon)


def oracle_group_distribution(setup: CentralExtensionSetup, horizon: int,
                              budget: OracleBudget | None = None) -> Distribution:
    """Carry-pattern law by enumerating all remainder strings."""
    budget = budget or OracleBudget()
    f = setup.index
    budget.check(f ** horizon, "remainder strings")
    ident = setup.group.identity
    h = h_table(setup)
    weight = Fraction(1, f ** horizon)
    dist: Distribution = {}
    for rs in itertools.product(range(f), repeat=horizon):
        bits = tuple(1 if h[(rs[i], rs[i + 1])] != ident else 0
                     for i in range(horizon - 1))
        _tally(dist, bits, weight)
    return _finish(dist, horizon)


def oracle_connectivity_distribution(n: int,
                                     budget: OracleBudget | None = None
                                     ) -> Distribution:
    """Law of the interior connectivity indicators of a uniform permutation."""
    budget = budget or OracleBudget()
    budget.check(math.factorial(n), "permutations")
    weight = Fraction(1, math.factorial(n))
    dist: Distribution = {}
    for perm in itertools.permutations(range(n)):
        top = -1
        bits = []
        for i in range(n - 1):
            top = max(top, perm[i])
            bits.append(1 if top == i else 0)
        _tally(dist, tuple(bits), weight)
    return _finish(dist, n)


def oracle_correlations(dist: Mapping[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    """rho(A) for every site subset, as a superset sum over the pattern law.

    Keys are sorted tuples of 1-based positions.
    """
    some = next(iter(dist))
    m = len(some)
    arr = [Fraction(0)] * (1 << m)
    for bits, p in dist.items():
        mask = 0
        for i, b in enumerate(bits):
            if b:
                mask |= 1 << i
        arr[mask] += p
    for i in range(m):
        bit = 1 << i
        for mask in range(1 << m):
            if not mask & bit:
                arr[mask] += arr[mask | bit]
    out: dict[tuple[int, ...], Fraction] = {}
    for mask in range(1 << m):
        sites = tuple(i + 1 for i in range(m) if mask & (1 << i))
        out[sites] = arr[mask]
    return out


def oracle_mallows_normalizer(n: int, q: Fraction) -> tuple[Fraction, Fraction]:
    """(sum of q^inv over all permutations, product formula) for cross-checking."""
    direct = sum((q ** _inversions(p) for p in itertools.permutations(range(n))),
                 Fraction(0))
    _, z = _mallows_weights(n, q)
    return direct, z
