"""Named one-dependent processes and their determinant data.

Every entry produces a spec from `onedep`:

* base-b addition carries         -> StationaryE, e_j = C(j+b-1, b-1)
* descents of a uniform permutation -> StationaryE, e_j = 1/j!
* Mallows(q) descents             -> StationaryE, e_j = 1/[j]_q!
* descents of iid trials          -> StationaryE, e_j = h_j(p)
* alternating descents            -> StationaryE, e_j = E_j/j!
* type B descents                 -> TableE (the last column mixes in
                                     the sign condition at position n)
* union of r independent Mallows descent sets -> StationaryE, e_j = 1/([j]_q!)^r
* two-row relation processes      -> StationaryE, e_j = weighted path counts
* generic points                  -> StationaryA, a_i = 2n/(n+1)^i

CLI model strings parse with `parse_model` ("carries:b=10",
"descents:mallows:q=1/2", ...).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import LaurentSeries, RationalLike, rat, rat_str
from .onedep import StationaryA, StationaryE, StationaryKernel, TableE
from .symfunc import complete_homogeneous


@dataclass(frozen=True)
class CarriesBaseB:
    b: int


@dataclass(frozen=True)
class UniformDescents:
    pass


@dataclass(frozen=True)
class MallowsDescents:
    q: Fraction


@dataclass(frozen=True)
class IidTrials:
    p: tuple[Fraction, ...]


@dataclass(frozen=True)
class AlternatingDescents:
    pass


@dataclass(frozen=True)
class TypeBDescents:
    n: int


@dataclass(frozen=True)
class BinomialPosetUnion:
    q: Fraction
    r: int


@dataclass(frozen=True)
class BrentiRelation:
    relation: frozenset[tuple[int, int]]
    theta: tuple[Fraction, ...]


@dataclass(frozen=True)
class GenericPoints:
    n: int


ProcessName = Union[CarriesBaseB, UniformDescents, MallowsDescents, IidTrials,
                    AlternatingDescents, TypeBDescents, BinomialPosetUnion,
                    BrentiRelation, GenericPoints]


def q_integer(k: int, q: Fraction) -> Fraction:
    """[k]_q = 1 + q + ... + q^(k-1); works at q = 1."""
    return sum((q ** i for i in range(k)), Fraction(0))


def q_factorial(k: int, q: Fraction) -> Fraction:
    prod = Fraction(1)
    for i in range(1, k + 1):
        prod *= q_integer(i, q)
    return prod


def euler_numbers(count: int) -> list[int]:
    """E_0, E_1, ... with sum E_j z^j / j! = tan z + sec z.

    >>> euler_numbers(6)
    [1, 1, 1, 2, 5, 16]
    """
    sin = LaurentSeries.make(
        [Fraction(0) if m % 2 == 0 else Fraction((-1) ** (m // 2), math.factorial(m))
         for m in range(count)], order=count)
    cos = LaurentSeries.make(
        [Fraction((-1) ** (m // 2), math.factorial(m)) if m % 2 == 0 else Fraction(0)
         for m in range(count)], order=count)
    f = (LaurentSeries.one() + sin) * cos.reciprocal(order=count)
    out = []
    for j in range(count):
        value = f.coefficient(j) * math.factorial(j)
        if value.denominator != 1:
            raise ArithmeticError(f"tangent number E_{j} came out non-integral")
        out.append(int(value))
    return out


def bernoulli_kernel(hi: int) -> StationaryKernel:
    """Toeplitz kernel of uniform descents in the normal form k(-1) = -1.

    khat(z) = 1/(1 - e^z); k(0) = 1/2, k(1) = -1/12, even positive
    indices vanish.  `kernel_stationary` on the uniform-descent spec
    returns the same kernel conjugated by (-1)^m.
    """
    s = LaurentSeries.make(
        [Fraction(0)] + [Fraction(-1, math.factorial(m)) for m in range(1, hi + 4)],
        order=hi + 4)
    khat = s.reciprocal(order=hi + 1)
    return StationaryKernel(-1, hi, tuple(khat.coefficients(-1, hi)))


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def brenti_e_values(relation: frozenset[tuple[int, int]],
                    theta: Sequence[Fraction], terms: int) -> list[Fraction]:
    """e_j = total theta-weight of length-j paths whose steps stay in the relation."""
    th = [rat(t) for t in theta]
    n = len(th)
    out = [Fraction(1)]
    weights = list(th)
    out.append(sum(weights, Fraction(0)))
    for _ in range(2, terms + 1):
        weights = [th[z] * sum(weights[y] for y in range(n) if (y + 1, z + 1) in relation)
                   for z in range(n)]
        out.append(sum(weights, Fraction(0)))
    return out


def build(name: ProcessName, horizon: int, terms: int | None = None):
    """Spec for a catalog process at the given horizon.

    `terms` controls how many stationary coefficients are materialized
    (defaults comfortably cover pattern and kernel queries at `horizon`).
    """
    if terms is None:
        terms = max(horizon + 2, 8)
    if isinstance(name, CarriesBaseB):
        if name.b < 2:
            raise ValueError("base must be at least 2")
        e = [Fraction(_binom(j + name.b - 1, name.b - 1)) for j in range(terms + 1)]
        return StationaryE.make(e, horizon)
    if isinstance(name, UniformDescents):
        e = [Fraction(1, math.factorial(j)) for j in range(terms + 1)]
        return StationaryE.make(e, horizon)
    if isinstance(name, MallowsDescents):
        if name.q <= 0:
            raise ValueError("q must be positive")
        e = [1 / q_factorial(j, rat(name.q)) for j in range(terms + 1)]
        return StationaryE.make(e, horizon)
    if isinstance(name, IidTrials):
        p = [rat(x) for x in name.p]
        if sum(p) != 1 or any(x < 0 for x in p):
            raise ValueError("p must be a probability vector")
        return StationaryE.make(complete_homogeneous(p, terms), horizon)
    if isinstance(name, AlternatingDescents):
        en = euler_numbers(terms + 1)
        e = [Fraction(en[j], math.factorial(j)) for j in range(terms + 1)]
        return StationaryE.make(e, horizon)
    if isinstance(name, TypeBDescents):
        if horizon != name.n + 1:
            raise ValueError(f"type B with n = {name.n} fixes horizon {name.n + 1}")
        return type_b_table(name.n)
    if isinstance(name, BinomialPosetUnion):
        if name.q <= 0 or name.r < 1:
            raise ValueError("need q > 0 and r >= 1")
        e = [1 / q_factorial(j, rat(name.q)) ** name.r for j in range(terms + 1)]
        return StationaryE.make(e, horizon)
    if isinstance(name, BrentiRelation):
        p = [rat(x) for x in name.theta]
        if sum(p) != 1 or any(x < 0 for x in p):
            raise ValueError("theta must be a probability vector")
        return StationaryE.make(brenti_e_values(name.relation, p, terms), horizon)
    if isinstance(name, GenericPoints):
        if name.n < 1:
            raise ValueError("need at least one point value")
        return StationaryA.make(generic_points_a(name.n, terms), horizon)
    raise TypeError(f"unknown process {name!r}")


def type_b_table(n: int) -> TableE:
    """Signed-permutation descent table on horizon n + 1.

    Positions 1..n-1 compare adjacent values in the order
    1 < 2 < ... < n < -n < ... < -1; position n fires when the last
    value is negative, which contributes the 2^{-(n-i)} column.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    table: dict[tuple[int, int], Fraction] = {}
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            if j <= n:
                table[(i, j)] = Fraction(1, math.factorial(j - i))
            else:
                table[(i, j)] = Fraction(1, 2 ** (n - i) * math.factorial(n - i))
    return TableE(n + 1, table)


def carries_a_spec(b: int, horizon: int) -> StationaryA:
    """Run-probability form of base-b carries: a_i = C(b, i)/b^i, zero past b."""
    if b < 2:
        raise ValueError("base must be at least 2")
    a = [Fraction(_binom(b, i), b ** i) for i in range(1, b + 1)]
    return StationaryA.make(a, horizon, exact_tail=True)


def descents_a_values(terms: int) -> list[Fraction]:
    """Run probabilities of uniform descents: a_i = 1/i!."""
    return [Fraction(1, math.factorial(i)) for i in range(1, terms + 1)]


def generic_points_a(n: int, terms: int) -> list[Fraction]:
    """Run probabilities 1, 2n/(n+1)^2, 2n/(n+1)^3, ..."""
    return [Fraction(1)] + [Fraction(2 * n, (n + 1) ** i) for i in range(2, terms + 1)]


# ---------------------------------------------------------------------------
# CLI model strings


def parse_model(text: str) -> ProcessName:
    """Parse strings like "carries:b=10" or "descents:mallows:q=1/2".

    >>> parse_model("descents:iid:p=1/4,1/4,1/2")
    IidTrials(p=(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)))
    """
    parts = text.strip().split(":")
    kind = parts[0]

    def kv(part: str, key: str) -> str:
        k, _, v = part.partition("=")
        if k != key or not v:
            raise ValueError(f"expected {key}=<value> in model string {text!r}")
        return v

    try:
        if kind == "carries" and len(parts) == 2:
            return CarriesBaseB(int(kv(parts[1], "b")))
        if kind == "genericpoints" and len(parts) == 2:
            return GenericPoints(int(kv(parts[1], "n")))
        if kind == "poset" and len(parts) == 3:
            return BinomialPosetUnion(rat(kv(parts[1], "q")), int(kv(parts[2], "r")))
        if kind == "descents" and len(parts) >= 2:
            sub = parts[1]
            if sub == "uniform" and len(parts) == 2:
                return UniformDescents()
            if sub == "alternating" and len(parts) == 2:
                return AlternatingDescents()
            if sub == "mallows" and len(parts) == 3:
                return MallowsDescents(rat(kv(parts[2], "q")))
            if sub == "iid" and len(parts) == 3:
                return IidTrials(tuple(rat(x) for x in kv(parts[2], "p").split(",")))
            if sub == "typeB" and len(parts) == 3:
                return TypeBDescents(int(kv(parts[2], "n")))
    except ValueError as exc:
        raise ValueError(f"bad model string {text!r}: {exc}") from None
    raise ValueError(f"unrecognized model string {text!r}")


def model_string(name: ProcessName) -> str:
    if isinstance(name, CarriesBaseB):
        return f"carries:b={name.b}"
    if isinstance(name, UniformDescents):
        return "descents:uniform"
    if isinstance(name, MallowsDescents):
        return f"descents:mallows:q={rat_str(name.q)}"
    if isinstance(name, IidTrials):
        return "descents:iid:p=" + ",".join(rat_str(x) for x in name.p)
    if isinstance(name, AlternatingDescents):
        return "descents:alternating"
    if isinstance(name, TypeBDescents):
        return f"descents:typeB:n={name.n}"
    if isinstance(name, BinomialPosetUnion):
        return f"poset:q={rat_str(name.q)}:r={name.r}"
    if isinstance(name, GenericPoints):
        return f"genericpoints:n={name.n}"
    raise ValueError(f"{type(name).__name__} has no model string")


def default_horizon(name: ProcessName, horizon: int) -> int:
    """Horizon to use when a CLI request passes n for a type-B model."""
    if isinstance(name, TypeBDescents):
        return name.n + 1
    return horizon
