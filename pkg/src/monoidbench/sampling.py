"""Seeded random instances: monoids, ideals, homs, A-sets, valuations.

Everything is driven by an explicit ``random.Random`` seed so that test
suites and acceptance runs are reproducible.  Table monoids are sampled
from a closed family (cyclic groups, truncated free monoids, meet chains,
products) and randomized through quotients and submonoid closures, which
keeps every draw a genuine commutative pointed monoid.
"""

from __future__ import annotations

import itertools
import random
from typing import List, Optional

from .asets import ASet, aset_via_hom, regular_aset, wedge
from .errors import BenchError, DegenerateLocalization, UnsupportedQuotient
from .ideals import Ideal, all_ideals, ideal_generate, zero_ideal
from .monoids import (
    BOTTOM,
    LatticeMonoid,
    Monoid,
    MonoidHom,
    TableMonoid,
    cyclic_group_monoid,
    power_hom,
    quotient_by_ideal,
    truncated_free_monoid,
    two_element_monoid,
)
from .valuations import Valuation, lattice_valuation
from .ordgroups import ZERO

GEN_NAMES = ("x", "y", "z", "w")
INV_NAMES = ("u", "v")


def chain_meet_monoid(m: int) -> TableMonoid:
    """A total order of m elements under min: bottom is 0, top is 1."""
    if m < 2:
        raise BenchError("chains need at least bottom and top")
    heights = [0, m - 1] + list(range(1, m - 1))
    names = ["0", "1"] + [f"c{i}" for i in range(1, m - 1)]
    by_height = {h: i for i, h in enumerate(heights)}
    table = [
        [by_height[min(heights[i], heights[j])] for j in range(m)] for i in range(m)
    ]
    return TableMonoid(tuple(names), tuple(tuple(r) for r in table))


def product_monoid(A: TableMonoid, B: TableMonoid) -> TableMonoid:
    pairs = [(0, 0), (A.one, B.one)] + [
        (i, j)
        for i in A.elements()
        for j in B.elements()
        if (i, j) not in ((0, 0), (A.one, B.one))
    ]
    pos = {p: k for k, p in enumerate(pairs)}
    names = tuple(f"{A.names[i]}|{B.names[j]}" for i, j in pairs)
    table = tuple(
        tuple(pos[(A.table[i1][i2], B.table[j1][j2])] for (i2, j2) in pairs)
        for (i1, j1) in pairs
    )
    return TableMonoid(names, table)


def submonoid(A: TableMonoid, gens) -> TableMonoid:
    keep = sorted(A.submonoid_closure(gens) | {0})
    keep.remove(0)
    keep.remove(A.one)
    keep = [0, A.one] + keep
    pos = {e: i for i, e in enumerate(keep)}
    names = tuple(A.names[e] for e in keep)
    table = tuple(tuple(pos[A.table[x][y]] for y in keep) for x in keep)
    return TableMonoid(names, table)


def random_table_ideal(rng: random.Random, A: TableMonoid) -> Ideal:
    k = rng.randint(0, 2)
    gens = [rng.randrange(A.size) for _ in range(k)]
    return ideal_generate(A, gens)


def random_lattice_ideal(
    rng: random.Random, A: LatticeMonoid, max_gens: int = 3, coord: int = 3
) -> Ideal:
    k = rng.randint(0, max_gens)
    gens = []
    for _ in range(k):
        vec = tuple(rng.randint(0, coord) for _ in range(A.a)) + tuple(
            rng.randint(-coord, coord) for _ in range(A.b)
        )
        gens.append(vec)
    return ideal_generate(A, gens)


def random_ideal(rng: random.Random, A: Monoid) -> Ideal:
    if isinstance(A, TableMonoid):
        return random_table_ideal(rng, A)
    return random_lattice_ideal(rng, A)


def table_monoid_pool(seed: int, count: int, max_size: int = 7) -> List[TableMonoid]:
    """Seeded pool of table monoids of bounded size."""
    rng = random.Random(seed)
    base = [
        two_element_monoid(),
        cyclic_group_monoid(2),
        cyclic_group_monoid(3),
        truncated_free_monoid(2),
        truncated_free_monoid(3),
        truncated_free_monoid(4),
        chain_meet_monoid(3),
        chain_meet_monoid(4),
        product_monoid(two_element_monoid(), cyclic_group_monoid(2)),
        product_monoid(truncated_free_monoid(2), two_element_monoid()),
    ]
    base = [A for A in base if A.size <= max_size]
    pool: List[TableMonoid] = []
    seen = set()
    attempts = 0
    while len(pool) < count and attempts < count * 60:
        attempts += 1
        A = rng.choice(base)
        roll = rng.random()
        try:
            if roll < 0.35:
                B, _ = quotient_by_ideal(A, random_table_ideal(rng, A))
            elif roll < 0.6:
                k = rng.randint(1, max(1, A.size - 1))
                gens = [rng.randrange(A.size) for _ in range(k)]
                B = submonoid(A, gens)
            elif roll < 0.75 and A.size * 2 <= max_size:
                B = product_monoid(A, two_element_monoid())
            else:
                B = A
        except BenchError:
            continue
        if B.size > max_size or B.is_trivial:
            continue
        key = (B.names, B.table)
        if key in seen and rng.random() < 0.8:
            continue
        seen.add(key)
        pool.append(B)
    while len(pool) < count:
        pool.append(rng.choice(base))
    return pool[:count]


def lattice_monoid_pool(seed: int, count: int, max_a: int = 3, max_b: int = 2) -> List[LatticeMonoid]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a = rng.randint(0, max_a)
        b = rng.randint(0, max_b)
        if a + b == 0:
            a = 1
        out.append(LatticeMonoid(GEN_NAMES[:a], INV_NAMES[:b]))
    return out


def random_hom(rng: random.Random, pool: List[TableMonoid], lattice_pool: List[LatticeMonoid]) -> MonoidHom:
    """A seeded structural hom: power endomorphisms, quotient and
    localization maps, basepoint inclusions, lattice matrices."""
    kind = rng.randrange(6)
    if kind == 0:
        A = rng.choice(pool)
        return power_hom(A, rng.randint(1, 3))
    if kind == 1:
        A = rng.choice(pool)
        try:
            _, f = quotient_by_ideal(A, random_table_ideal(rng, A))
            return f
        except BenchError:
            return power_hom(A, 1)
    if kind == 2:
        A = rng.choice(pool)
        T = two_element_monoid()
        return MonoidHom(T, A, elem_map=(0, A.one))
    if kind == 3:
        S = rng.choice(lattice_pool)
        T = rng.choice(lattice_pool)
        imgs = []
        for g in S.names:
            vec = tuple(rng.randint(0, 2) for _ in range(T.a)) + tuple(
                rng.randint(-2, 2) for _ in range(T.b)
            )
            if g in S.invertible:
                vec = (0,) * T.a + vec[T.a :]
            imgs.append(vec)
        return MonoidHom(S, T, gen_map=tuple(imgs))
    if kind == 4:
        S = rng.choice(lattice_pool)
        A = rng.choice(pool)
        units = sorted(A.unit_indices())
        imgs = []
        for g in S.names:
            if g in S.invertible:
                imgs.append(rng.choice(units))
            else:
                imgs.append(rng.randrange(A.size))
        return MonoidHom(S, A, gen_map=tuple(imgs))
    A = rng.choice(pool)
    from .monoids import localize

    for _ in range(4):
        s = rng.randrange(A.size)
        try:
            _, f = localize(A, [s])
            return f
        except DegenerateLocalization:
            continue
    return power_hom(A, 2)


def random_aset(rng: random.Random, A: TableMonoid, max_size: int = 6) -> ASet:
    """Cyclic quotient A-sets, occasionally wedged."""
    try:
        _, f = quotient_by_ideal(A, random_table_ideal(rng, A))
        M = aset_via_hom(f)
    except BenchError:
        M = regular_aset(A)
    if M.size <= max_size // 2 and rng.random() < 0.5:
        try:
            _, f2 = quotient_by_ideal(A, random_table_ideal(rng, A))
            N = aset_via_hom(f2)
            if M.size + N.size - 1 <= max_size:
                M = wedge(M, N)
        except BenchError:
            pass
    if M.size > max_size:
        M = regular_aset(A) if A.size <= max_size else M
    return M


def random_lattice_valuation(
    rng: random.Random,
    A: LatticeMonoid,
    rank: Optional[int] = None,
    coord: int = 5,
    zero_prob: float = 0.25,
) -> Valuation:
    if rank is None:
        rank = rng.randint(0, 3)
    images = {}
    for g in A.names:
        if g in A.free and rng.random() < zero_prob:
            images[g] = ZERO
        else:
            images[g] = tuple(rng.randint(-coord, coord) for _ in range(rank))
    return lattice_valuation(A, images, rank=rank)


def random_subbasis_space(rng: random.Random, n_points: int = 5, n_sets: int = 4):
    from .topology import SubbasisSpace

    points = tuple(f"p{i}" for i in range(n_points))
    sets = tuple(
        frozenset(p for p in points if rng.random() < 0.5) for _ in range(n_sets)
    )
    return SubbasisSpace(points, sets)
