"""Ideals of pointed monoids: arithmetic, primality, radical, and MSpec.

Table ideals are explicit pointed element sets; lattice ideals are monomial,
given by a minimal antichain of exponent vectors over the free coordinates
(invertible coordinates never matter for membership).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .errors import InvalidElement, InvalidMonoid, NotProper, ResourceBound
from .monoids import BOTTOM, LatticeMonoid, Monoid, TableMonoid
from .topology import FiniteSpace, export_dot, hasse_edges

MSPEC_TABLE_GUARD = 16


def _minimalize(gens: Iterable[tuple]) -> tuple:
    """Minimal antichain under componentwise <=, sorted for canonical form."""
    uniq = sorted(set(gens))
    out = []
    for g in uniq:
        if not any(
            h != g and all(a <= b for a, b in zip(h, g)) for h in uniq
        ):
            out.append(g)
    return tuple(sorted(out))


@dataclass(frozen=True)
class Ideal:
    """A-stable pointed subset in canonical form."""

    owner: Monoid
    elems: frozenset = None  # table case: element indices including 0
    gens: tuple = None  # lattice case: minimal monomial generators (free part)

    def __post_init__(self):
        if isinstance(self.owner, TableMonoid):
            if self.elems is None or 0 not in self.elems:
                raise InvalidMonoid("table ideal must contain the basepoint")
            A = self.owner
            for x in self.elems:
                A.check_elem(x)
                for a in A.elements():
                    if A.table[a][x] not in self.elems:
                        raise InvalidMonoid(
                            f"not A-stable: {A.names[a]}*{A.names[x]} escapes"
                        )
        else:
            if self.gens is None:
                raise InvalidMonoid("lattice ideal needs a generator tuple")
            a = self.owner.a
            for g in self.gens:
                if len(g) != a or any(c < 0 for c in g):
                    raise InvalidMonoid("generator is not a free-part vector")
            if self.gens != _minimalize(self.gens):
                raise InvalidMonoid("generators not in minimal canonical form")

    def contains(self, x) -> bool:
        A = self.owner
        A.check_elem(x)
        if isinstance(A, TableMonoid):
            return x in self.elems
        if x is BOTTOM:
            return True
        fp = x[: A.a]
        return any(all(c >= g for c, g in zip(fp, gen)) for gen in self.gens)

    @property
    def is_zero(self) -> bool:
        if isinstance(self.owner, TableMonoid):
            return self.elems == frozenset({0})
        return not self.gens

    @property
    def is_unit_ideal(self) -> bool:
        if isinstance(self.owner, TableMonoid):
            return self.owner.one in self.elems
        return any(all(c == 0 for c in g) for g in self.gens)

    def label(self) -> str:
        """Canonical display label."""
        A = self.owner
        if isinstance(A, TableMonoid):
            return "{" + ",".join(A.names[i] for i in sorted(self.elems)) + "}"
        names = []
        for g in self.gens:
            parts = [
                f"{n}^{e}" if e > 1 else n for n, e in zip(A.free, g) if e > 0
            ]
            names.append("*".join(parts) if parts else "1")
        return "<" + ",".join(names) + ">"


def zero_ideal(A: Monoid) -> Ideal:
    if isinstance(A, TableMonoid):
        return Ideal(A, elems=frozenset({0}))
    return Ideal(A, gens=())


def unit_ideal(A: Monoid) -> Ideal:
    if isinstance(A, TableMonoid):
        return Ideal(A, elems=frozenset(A.elements()))
    return Ideal(A, gens=((0,) * A.a,))


def ideal_generate(A: Monoid, gens) -> Ideal:
    """Smallest ideal containing the given elements."""
    if isinstance(A, TableMonoid):
        out = {0}
        for g in gens:
            A.check_elem(g)
            for a in A.elements():
                out.add(A.table[a][g])
        return Ideal(A, elems=frozenset(out))
    vecs = []
    for g in gens:
        A.check_elem(g)
        if g is BOTTOM:
            continue
        vecs.append(tuple(g[: A.a]))
    return Ideal(A, gens=_minimalize(vecs))


def ideal_membership(I: Ideal, x) -> bool:
    return I.contains(x)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_owner(I, J)
    if isinstance(I.owner, TableMonoid):
        return Ideal(I.owner, elems=I.elems | J.elems)
    return Ideal(I.owner, gens=_minimalize(I.gens + J.gens))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    _same_owner(I, J)
    if isinstance(I.owner, TableMonoid):
        return Ideal(I.owner, elems=I.elems & J.elems)
    gens = [
        tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens
    ]
    return Ideal(I.owner, gens=_minimalize(gens))


def _same_owner(I: Ideal, J: Ideal):
    if I.owner != J.owner:
        raise InvalidElement("ideals of different monoids")


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_owner(I, J)
    A = I.owner
    if isinstance(A, TableMonoid):
        return Ideal(
            A, elems=frozenset(A.table[x][y] for x in I.elems for y in J.elems) | {0}
        )
    gens = [tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens]
    return Ideal(A, gens=_minimalize(gens))


def ideal_power(I: Ideal, n: int) -> Ideal:
    """I^n = all n-fold products; n >= 1 (the I-topology module owns I^0 = A)."""
    if n < 1:
        raise InvalidElement("ideal_power requires n >= 1")
    out = I
    for _ in range(n - 1):
        out = ideal_product(out, I)
    return out


def bracket_power(I: Ideal, n: int) -> Ideal:
    """I^[n] = {a x^n : a in A, x in I} = ideal generated by n-th powers."""
    if n < 1:
        raise InvalidElement("bracket_power requires n >= 1")
    A = I.owner
    if isinstance(A, TableMonoid):
        return Ideal(
            A,
            elems=frozenset(
                A.table[a][A.power(x, n)] for a in A.elements() for x in I.elems
            )
            | {0},
        )
    return Ideal(A, gens=_minimalize(tuple(n * c for c in g) for g in I.gens))


def radical(I: Ideal) -> Ideal:
    """Elements with some power in I.

    Lattice: generated by the 0/1 support indicators of the generators.
    Table: per-element power search; powers of x repeat within |A| steps,
    so exponents up to |A| decide membership.
    """
    A = I.owner
    if isinstance(A, TableMonoid):
        out = set()
        for x in A.elements():
            p = A.one
            for _ in range(A.size):
                p = A.table[p][x]
                if p in I.elems:
                    out.add(x)
                    break
        return Ideal(A, elems=frozenset(out) | {0})
    return Ideal(
        A, gens=_minimalize(tuple(1 if c > 0 else 0 for c in g) for g in I.gens)
    )


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {x : Jx inside I}."""
    _same_owner(I, J)
    A = I.owner
    if isinstance(A, TableMonoid):
        out = frozenset(
            x
            for x in A.elements()
            if all(A.table[s][x] in I.elems for s in J.elems)
        )
        return Ideal(A, elems=out | {0})
    if not J.gens:  # (I : {0}) = A
        return unit_ideal(A)
    pieces = []
    for w in J.gens:
        shifted = _minimalize(
            tuple(max(c - d, 0) for c, d in zip(g, w)) for g in I.gens
        )
        pieces.append(Ideal(A, gens=shifted))
    out = pieces[0]
    for p in pieces[1:]:
        out = ideal_intersect(out, p)
    return out


def is_prime(I: Ideal) -> bool:
    """Is the complement multiplicatively closed?  Errors on the unit ideal."""
    A = I.owner
    if I.is_unit_ideal:
        raise NotProper("the unit ideal is not prime")
    if isinstance(A, TableMonoid):
        comp = [x for x in A.elements() if x not in I.elems]
        return all(A.table[x][y] not in I.elems for x in comp for y in comp)
    # monomial primes are exactly the faces p_S = <e_i : i in S>
    return all(sum(g) == 1 for g in I.gens)


def prime_of_support(A: LatticeMonoid, support) -> Ideal:
    """p_S for a set of free generator names or indices."""
    idx = set()
    for s in support:
        i = A.free.index(s) if isinstance(s, str) else int(s)
        if not 0 <= i < A.a:
            raise InvalidElement(f"not a free coordinate: {s!r}")
        idx.add(i)
    gens = tuple(
        tuple(1 if j == i else 0 for j in range(A.a)) for i in sorted(idx)
    )
    return Ideal(A, gens=_minimalize(gens))


def minimal_generators(I: Ideal) -> list:
    """A minimal generating list, as monoid elements.

    Table case: one representative per source class of the mutual-generation
    preorder (y generates x when x = a*y); the basepoint is generated by
    everything and never appears.
    """
    A = I.owner
    if isinstance(A, LatticeMonoid):
        return [g + (0,) * A.b for g in I.gens]
    members = sorted(I.elems)
    generates = {
        y: {A.table[a][y] for a in A.elements()} for y in members
    }
    klass = {}
    for x in members:
        klass[x] = frozenset(
            y for y in members if x in generates[y] and y in generates[x]
        )
    out = []
    for x in members:
        if x == 0:
            continue
        strictly_above = [
            y for y in members if x in generates[y] and y not in klass[x]
        ]
        if strictly_above:
            continue  # not a source class
        if min(klass[x]) == x:
            out.append(x)
    return out


def is_rad_finite(I: Ideal) -> tuple:
    """Always true in the supported families; witness shares the radical."""
    A = I.owner
    witness = ideal_generate(A, minimal_generators(I))
    return True, witness


def units(A: Monoid):
    """A^x and the maximal ideal m_A = complement of the units."""
    if isinstance(A, TableMonoid):
        ux = A.unit_indices()
        m = Ideal(A, elems=frozenset(x for x in A.elements() if x not in ux) | {0})
        return tuple(sorted(A.names[u] for u in ux)), m
    desc = {"group_rank": A.b, "generators": list(A.invertible)}
    return desc, maximal_ideal(A)


def maximal_ideal(A: Monoid) -> Ideal:
    if isinstance(A, TableMonoid):
        return units(A)[1]
    return prime_of_support(A, range(A.a))


def all_ideals(A: TableMonoid, guard: int = MSPEC_TABLE_GUARD) -> List[Ideal]:
    """Every ideal of a table monoid, canonically ordered."""
    if A.size > guard:
        raise ResourceBound(f"ideal enumeration capped at size {guard}")
    rest = [x for x in A.elements() if x != 0]
    out = []
    for r in range(len(rest) + 1):
        for comb in itertools.combinations(rest, r):
            cand = frozenset(comb) | {0}
            if all(A.table[a][x] in cand for x in cand for a in A.elements()):
                out.append(Ideal(A, elems=cand))
    out.sort(key=lambda I: (len(I.elems), sorted(I.elems)))
    return out


def mspec(A: Monoid, guard: int = MSPEC_TABLE_GUARD):
    """All primes plus the Zariski space (closed sets V(I), basis D(x)).

    Returns (primes, space, labels) with labels aligned to primes.
    """
    if isinstance(A, TableMonoid):
        primes = [
            I
            for I in all_ideals(A, guard)
            if not I.is_unit_ideal and is_prime(I)
        ]
        labels = [p.label() for p in primes]
        lab = dict(zip(labels, primes))
        subbasis = [
            frozenset(l for l in labels if not lab[l].contains(x))
            for x in A.elements()
        ]
        space = FiniteSpace.from_subbasis(labels, subbasis)
        return primes, space, labels
    primes = []
    for r in range(A.a + 1):
        for comb in itertools.combinations(range(A.a), r):
            primes.append(prime_of_support(A, comb))
    primes.sort(key=lambda p: (len(p.gens), p.gens))
    labels = [p.label() for p in primes]
    lab = dict(zip(labels, primes))
    subbasis = []
    for i in range(A.a):
        e = tuple(1 if j == i else 0 for j in range(A.rank))
        subbasis.append(frozenset(l for l in labels if not lab[l].contains(e)))
    space = FiniteSpace.from_subbasis(labels, subbasis)
    return primes, space, labels


def mspec_poset_json(A: Monoid) -> dict:
    primes, space, labels = mspec(A)
    return {
        "points": labels,
        "covers": [[x, y] for x, y in hasse_edges(space)],
    }


def mspec_dot(A: Monoid) -> str:
    _, space, _ = mspec(A)
    return export_dot(space, "mspec")
