"""Carries when adding uniform elements of a group up a central subgroup.

Setup: a finite group G with a central subgroup N and a chosen
transversal (one representative per coset, identity representing N).
Adding a column of uniform coset representatives and reducing each
partial product to its representative leaves a sequence of carries in
N; the indicator of a nontrivial carry is a stationary one-dependent
0/1 process whose run probabilities come from a 0/1 transfer matrix.

Groups are Cayley tables over indices 0..order-1; validation checks the
full axioms and reports a violating triple on failure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .onedep import StationaryA


class GroupStructureError(ValueError):
    """Cayley table or extension data fails a group axiom."""


class BudgetError(RuntimeError):
    """Requested exact computation exceeds the allowed state budget."""


@dataclass(frozen=True)
class FiniteGroup:
    """Validated Cayley table; table[g][h] is the product g*h."""

    table: tuple[tuple[int, ...], ...]
    identity: int

    @staticmethod
    def from_table(rows: Sequence[Sequence[int]]) -> "FiniteGroup":
        n = len(rows)
        table = tuple(tuple(r) for r in rows)
        if any(len(r) != n for r in table):
            raise GroupStructureError("Cayley table must be square")
        if any(not 0 <= x < n for r in table for x in r):
            raise GroupStructureError("table entries must be element indices")
        identity = None
        for e in range(n):
            if all(table[e][g] == g and table[g][e] == g for g in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupStructureError("no identity element")
        for g in range(n):
            if len(set(table[g])) != n or len({table[h][g] for h in range(n)}) != n:
                raise GroupStructureError(f"row or column {g} is not a permutation")
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        raise GroupStructureError(
                            f"associativity fails at triple ({a}, {b}, {c})")
        return FiniteGroup(table, identity)

    @property
    def order(self) -> int:
        return len(self.table)

    def mult(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.table[g].index(self.identity)

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        for g in elements:
            acc = self.table[acc][g]
        return acc

    def is_central(self, elements: Iterable[int]) -> bool:
        return all(self.table[x][g] == self.table[g][x]
                   for x in elements for g in range(self.order))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_table([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) gets index a*|H| + b."""
    m = h.order
    rows = []
    for a in range(g.order):
        for b in range(m):
            rows.append([g.mult(a, c) * m + h.mult(b, d)
                         for c in range(g.order) for d in range(m)])
    return FiniteGroup.from_table(rows)


def quaternion_group() -> FiniteGroup:
    """Units {1, i, j, k, -1, -i, -j, -k} with index s*4 + u."""
    third = {(1, 2): 3, (2, 3): 1, (3, 1): 2}

    def mult_units(u: int, v: int) -> tuple[int, int]:
        if u == 0:
            return 0, v
        if v == 0:
            return 0, u
        if u == v:
            return 1, 0
        if (u, v) in third:
            return 0, third[(u, v)]
        return 1, third[(v, u)]

    rows = []
    for s1 in range(2):
        for u1 in range(4):
            row = []
            for s2 in range(2):
                for u2 in range(4):
                    s, u = mult_units(u1, u2)
                    row.append(((s1 + s2 + s) % 2) * 4 + u)
            rows.append(row)
    return FiniteGroup.from_table(rows)


def dihedral8_group() -> FiniteGroup:
    """Order 8 dihedral group; element (a, b) = index b*4 + a obeys
    (a1, b1)(a2, b2) = ((-1)^{b2} a1 + a2 mod 4, b1 xor b2)."""
    rows = []
    for b1 in range(2):
        for a1 in range(4):
            row = []
            for b2 in range(2):
                for a2 in range(4):
                    a = (a1 * (-1) ** b2 + a2) % 4
                    row.append(((b1 + b2) % 2) * 4 + a)
            rows.append(row)
    return FiniteGroup.from_table(rows)


@dataclass(frozen=True)
class CentralExtensionSetup:
    """Group, central subgroup and coset representatives (identity first)."""

    group: FiniteGroup
    subgroup: tuple[int, ...]
    reps: tuple[int, ...]

    @staticmethod
    def make(group: FiniteGroup, subgroup: Iterable[int],
             reps: Iterable[int]) -> "CentralExtensionSetup":
        sub = tuple(sorted(set(subgroup)))
        if group.identity not in sub:
            raise GroupStructureError("subgroup must contain the identity")
        for x in sub:
            for y in sub:
                if group.mult(x, y) not in sub:
                    raise GroupStructureError(
                        f"subgroup not closed: {x}*{y} escapes")
        if not group.is_central(sub):
            bad = next(x for x in sub if any(
                group.mult(x, g) != group.mult(g, x) for g in range(group.order)))
            raise GroupStructureError(f"subgroup element {bad} is not central")
        rs = tuple(reps)
        if group.order != len(sub) * len(rs):
            raise GroupStructureError("representative count must equal the index")
        seen: dict[int, int] = {}
        for r in rs:
            for x in sub:
                g = group.mult(x, r)
                if g in seen:
                    raise GroupStructureError(
                        f"representatives {seen[g]} and {r} share a coset")
                seen[g] = r
        if len(seen) != group.order:
            raise GroupStructureError("representatives do not cover the group")
        if group.identity not in rs:
            raise GroupStructureError("identity must represent its own coset")
        setup = CentralExtensionSetup(group, sub, rs)
        if rs[setup.coset_of(group.identity)] != group.identity:
            raise GroupStructureError("identity coset must be represented by the identity")
        return setup

    @property
    def index(self) -> int:
        return len(self.reps)

    def coset_of(self, g: int) -> int:
        """Index into `reps` of the coset containing g."""
        for c, r in enumerate(self.reps):
            if self.group.mult(g, self.group.inverse(r)) in set(self.subgroup):
                return c
        raise GroupStructureError(f"element {g} in no coset")  # unreachable

    def coset_table(self) -> list[list[int]]:
        return [[self.coset_of(self.group.mult(self.reps[i], self.reps[j]))
                 for j in range(self.index)] for i in range(self.index)]


def factor_set(setup: CentralExtensionSetup) -> dict[tuple[int, int], int]:
    """f(sigma, tau) = t(sigma tau)^{-1} t(sigma) t(tau), an element of N."""
    g = setup.group
    out: dict[tuple[int, int], int] = {}
    sub = set(setup.subgroup)
    for i, r in enumerate(setup.reps):
        for j, s in enumerate(setup.reps):
            prod = g.mult(r, s)
            target = setup.reps[setup.coset_of(prod)]
            f = g.mult(g.inverse(target), prod)
            if f not in sub:
                raise GroupStructureError("factor set escaped the subgroup")
            out[(i, j)] = f
    return out


def h_table(setup: CentralExtensionSetup) -> dict[tuple[int, int], int]:
    """Carry h(r, r') between consecutive remainders (as coset indices).

    h(i, i') = f(i, tau) where tau is the coset of t_i^{-1} t_{i'}: the
    unique digit coset stepping remainder i to remainder i'.
    """
    g = setup.group
    f = factor_set(setup)
    out: dict[tuple[int, int], int] = {}
    for i, r in enumerate(setup.reps):
        for ip, rp in enumerate(setup.reps):
            tau = setup.coset_of(g.mult(g.inverse(r), rp))
            out[(i, ip)] = f[(i, tau)]
    return out


def _transfer_matrices(setup: CentralExtensionSetup) -> tuple[list[list[int]], list[list[int]]]:
    ident = setup.group.identity
    h = h_table(setup)
    f = setup.index
    m0 = [[0] * f for _ in range(f)]
    m1 = [[0] * f for _ in range(f)]
    for (i, j), carry in h.items():
        (m1 if carry != ident else m0)[i][j] = 1
    return m0, m1


def carries_pattern_distribution(setup: CentralExtensionSetup, horizon: int,
                                 max_states: int = 10_000_000
                                 ) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the carry indicators over all patterns of the horizon.

    Counts remainder strings with a 0/1 transfer matrix per position, so
    the cost is 2^(horizon-1) * index^2 rather than index^horizon.
    """
    f = setup.index
    cost = 2 ** (horizon - 1) * f * f * max(horizon - 1, 1)
    if cost > max_states:
        raise BudgetError(f"pattern table needs ~{cost} operations, over {max_states}")
    m0, m1 = _transfer_matrices(setup)
    total = Fraction(f) ** horizon
    out: dict[tuple[int, ...], Fraction] = {}
    for bits in itertools.product((0, 1), repeat=horizon - 1):
        vec = [1] * f
        for b in reversed(bits):
            m = m1 if b else m0
            vec = [sum(m[i][j] * vec[j] for j in range(f)) for i in range(f)]
        out[bits] = Fraction(sum(vec)) / total
    return out


def run_probabilities(setup: CentralExtensionSetup, count: int) -> list[Fraction]:
    """a_1 = 1, a_2 = P(one carry), ..., a_count via powers of the
    all-carries transfer matrix."""
    f = setup.index
    _, m1 = _transfer_matrices(setup)
    out = [Fraction(1)]
    vec = [1] * f
    for i in range(2, count + 1):
        vec = [sum(m1[r][j] * vec[j] for j in range(f)) for r in range(f)]
        out.append(Fraction(sum(vec), f ** i))
    return out


def to_spec(setup: CentralExtensionSetup, horizon: int,
            terms: int | None = None) -> StationaryA:
    """Run-probability spec of the carry process."""
    if terms is None:
        terms = max(horizon, 2)
    return StationaryA.make(run_probabilities(setup, terms), horizon)


def carries_trace(setup: CentralExtensionSetup,
                  digits: Sequence[int]) -> tuple[list[int], list[int]]:
    """Remainders and carries for an explicit column of representative digits.

    Returns (remainders, carries) as element indices; carries has one
    entry fewer than the digit column.
    """
    g = setup.group
    reps = set(setup.reps)
    if any(d not in reps for d in digits):
        raise GroupStructureError("digits must be coset representatives")
    remainders: list[int] = []
    carries: list[int] = []
    acc = None
    for d in digits:
        if acc is None:
            acc = d
            remainders.append(acc)
            continue
        prod = g.mult(acc, d)
        acc = setup.reps[setup.coset_of(prod)]
        carries.append(g.mult(prod, g.inverse(acc)))
        remainders.append(acc)
    return remainders, carries


def simulate_carries(setup: CentralExtensionSetup, length: int,
                     seed: int) -> tuple[list[int], list[int]]:
    """Add `length` uniform representative digits; seeded and reproducible."""
    rng = random.Random(seed)
    digits = [setup.reps[rng.randrange(setup.index)] for _ in range(length)]
    return carries_trace(setup, digits)


def empirical_run_rate(setup: CentralExtensionSetup, run_length: int,
                       reps: int, seed: int) -> float:
    """Monte Carlo estimate of a_{run_length+1} = P(run_length carries in a row)."""
    rng = random.Random(seed)
    ident = setup.group.identity
    h = h_table(setup)
    f = setup.index
    hits = 0
    for _ in range(reps):
        r = rng.randrange(f)
        ok = True
        for _ in range(run_length):
            rp = rng.randrange(f)
            if h[(r, rp)] == ident:
                ok = False
                break
            r = rp
        hits += ok
    return hits / reps


# ---------------------------------------------------------------------------
# presets and serialization


def q8_setup() -> CentralExtensionSetup:
    """Quaternions over {1, -1} with representatives 1, i, j, k."""
    return CentralExtensionSetup.make(quaternion_group(), (0, 4), (0, 1, 2, 3))


def d8_setup() -> CentralExtensionSetup:
    """Order 8 dihedral group over its center, representatives 1, x, y, z."""
    return CentralExtensionSetup.make(dihedral8_group(), (0, 2), (0, 4, 5, 1))


def cyclic_extension(modulus: int, width: int) -> CentralExtensionSetup:
    """Z/modulus over the multiples of `width`, representatives 0..width-1.

    Carries fire exactly when two representatives sum past the width,
    which for width = b recovers ordinary base-b addition columns.
    """
    if modulus % width != 0:
        raise GroupStructureError("width must divide the modulus")
    g = cyclic_group(modulus)
    sub = tuple(range(0, modulus, width))
    return CentralExtensionSetup.make(g, sub, tuple(range(width)))


def elementary_abelian_setup(reps: Sequence[int]) -> CentralExtensionSetup:
    """C2 x C2 x C2 over the diagonal {000, 111} with caller-chosen reps."""
    c2 = cyclic_group(2)
    g = direct_product(direct_product(c2, c2), c2)
    return CentralExtensionSetup.make(g, (0, 7), tuple(reps))


def setup_to_json(setup: CentralExtensionSetup) -> dict:
    return {"order": setup.group.order,
            "table": [list(r) for r in setup.group.table],
            "subgroup": list(setup.subgroup),
            "reps": list(setup.reps)}


def setup_from_json(doc: dict) -> CentralExtensionSetup:
    table = doc["table"]
    if len(table) != int(doc["order"]):
        raise GroupStructureError("declared order does not match the table")
    group = FiniteGroup.from_table(table)
    return CentralExtensionSetup.make(group, doc["subgroup"], doc["reps"])
