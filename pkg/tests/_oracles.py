"""Independent brute-force oracles used to cross-check closed forms.

These deliberately avoid the production decision paths: closures are probed
through bounded power searches, convex subgroups through bounded word
enumeration, feasibility through grid scans.
"""

from __future__ import annotations

import itertools

from monoidbench.ideals import Ideal, bracket_power, ideal_power
from monoidbench.monoids import BOTTOM, LatticeMonoid, TableMonoid
from monoidbench.ordgroups import ZERO, lex_le, lex_lt, vmul, vpow


def lattice_box(A: LatticeMonoid, degree: int):
    """All elements with free coordinates in [0, degree] and invertible in
    [-degree, degree] (bottom excluded)."""
    ranges = [range(degree + 1)] * A.a + [range(-degree, degree + 1)] * A.b
    return [tuple(v) for v in itertools.product(*ranges)]


def elem_power(A, x, n):
    if isinstance(A, TableMonoid):
        return A.power(x, n)
    return A.power(x, n)


def frobenius_member_oracle(I: Ideal, x, bound: int) -> bool:
    """x in I^Frob iff some n <= bound has x^n in I^[n]."""
    A = I.owner
    for n in range(1, bound + 1):
        if bracket_power(I, n).contains(elem_power(A, x, n)):
            return True
    return False


def integral_member_oracle(I: Ideal, x, bound: int) -> bool:
    """x in I^int iff some n <= bound has x^n in I^n."""
    A = I.owner
    for n in range(1, bound + 1):
        if ideal_power(I, n).contains(elem_power(A, x, n)):
            return True
    return False


def tight_member_oracle(I: Ideal, x, bound: int, mult_degree: int = 6) -> bool:
    """Bounded version of: some nonzero a has a x^n in I^[n] for all n >> 0.

    Checks the window [bound // 2, bound]; one-sided (may over-accept when
    the window is too short), which is why it is a cross-check only.
    """
    A = I.owner
    lo = max(1, bound // 2)
    if isinstance(A, LatticeMonoid):
        candidates = lattice_box(A, mult_degree)
    else:
        candidates = [a for a in A.elements() if a != 0]
    for a in candidates:
        ok = True
        for n in range(lo, bound + 1):
            val = A.mul(a, elem_power(A, x, n))
            if not bracket_power(I, n).contains(val):
                ok = False
                break
        if ok:
            return True
    return False


def radical_member_oracle(I: Ideal, x, bound: int) -> bool:
    A = I.owner
    return any(I.contains(elem_power(A, x, n)) for n in range(1, bound + 1))


def table_ideal_from_set(A: TableMonoid, xs) -> frozenset:
    return frozenset(xs) | {0}


def words_reach(vectors, h, max_len: int) -> bool:
    """Is -t <= h <= t for t a product of at most max_len members of the
    generating set and its inverses?"""
    gens = [tuple(v) for v in vectors] + [tuple(-c for c in v) for v in vectors]
    if not gens:
        return all(c == 0 for c in h)
    frontier = {tuple(0 for _ in h)}
    seen = set(frontier)
    for _ in range(max_len):
        nxt = set()
        for t in frontier:
            for g in gens:
                s = tuple(a + b for a, b in zip(t, g))
                if s not in seen:
                    seen.add(s)
                    nxt.add(s)
        frontier = nxt
        if not frontier:
            break
    return any(
        lex_le(tuple(-c for c in t), h) and lex_le(h, t) for t in seen
    )


def cofinal_refutation_oracle(g, members, power_bound: int) -> bool:
    """Bounded reading of cofinality: every listed member is eventually
    undercut by a power of g with exponent <= power_bound."""
    if g is ZERO:
        return True
    for h in members:
        if not any(lex_lt(vpow(g, n), h) for n in range(1, power_bound + 1)):
            return False
    return True


def subgroup_members_in_box(basis, rank: int, box: int):
    """All members of the span with coefficients in [-box, box]."""
    if not basis:
        return [(0,) * rank]
    out = set()
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(basis)):
        v = [0] * rank
        for c, row in zip(coeffs, basis):
            for j, e in enumerate(row):
                v[j] += c * e
        out.add(tuple(v))
    return sorted(out)
