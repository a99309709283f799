"""Finite topological spaces, hull-kernel subbases, and spectrality checkers.

Points are opaque string labels.  A ``FiniteSpace`` materializes its full
open-set family (guarded at 2^20 opens); a ``SubbasisSpace`` keeps only a
subbasis and materializes on demand.  On finite sets every ultrafilter is
principal, so the ultrafilter-style checkers quantify over points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import InvalidMonoid, ResourceBound

OPENS_GUARD = 2 ** 20


def _close_under(sets, op, guard):
    family = set(sets)
    frontier = list(family)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(family):
                c = op(a, b)
                if c not in family:
                    family.add(c)
                    nxt.append(c)
                    if len(family) > guard:
                        raise ResourceBound("open-set family exceeds the size guard")
        frontier = nxt
    return family


@dataclass(frozen=True)
class FiniteSpace:
    """Explicit finite topology; opens closed under union and intersection."""

    points: tuple
    opens: frozenset

    def __post_init__(self):
        pts = frozenset(self.points)
        if len(self.points) != len(pts):
            raise InvalidMonoid("duplicate point labels")
        if frozenset() not in self.opens or pts not in self.opens:
            raise InvalidMonoid("topology must contain the empty and full sets")
        for u in self.opens:
            if not u <= pts:
                raise InvalidMonoid("open set contains a foreign point")

    @classmethod
    def from_open_family(cls, points, opens, guard: int = OPENS_GUARD) -> "FiniteSpace":
        pts = tuple(points)
        base = {frozenset(o) for o in opens}
        base.add(frozenset())
        base.add(frozenset(pts))
        fam = _close_under(base, frozenset.union, guard)
        fam = _close_under(fam, frozenset.intersection, guard)
        fam = _close_under(fam, frozenset.union, guard)
        return cls(pts, frozenset(fam))

    @classmethod
    def from_subbasis(cls, points, subbasis, guard: int = OPENS_GUARD) -> "FiniteSpace":
        pts = tuple(points)
        basis = {frozenset(pts), frozenset()}
        basis.update(frozenset(s) for s in subbasis)
        basis = _close_under(basis, frozenset.intersection, guard)
        fam = _close_under(basis, frozenset.union, guard)
        return cls(pts, frozenset(fam))

    @classmethod
    def discrete(cls, points) -> "FiniteSpace":
        pts = tuple(points)
        opens = frozenset(
            frozenset(c)
            for r in range(len(pts) + 1)
            for c in itertools.combinations(pts, r)
        )
        return cls(pts, opens)

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def validate_closure(self):
        """Check closure under binary union/intersection (quadratic; call on
        untrusted input, not on internally generated families)."""
        fam = self.opens
        for a in fam:
            for b in fam:
                if a | b not in fam or a & b not in fam:
                    raise InvalidMonoid("open family not closed under union/intersection")

    def closed_sets(self) -> frozenset:
        full = frozenset(self.points)
        return frozenset(full - u for u in self.opens)

    def closure_of(self, x) -> frozenset:
        full = frozenset(self.points)
        out = full
        for u in self.opens:
            if x not in u:
                out = out - u
        return out


def specialization_order(X: FiniteSpace) -> Dict[str, frozenset]:
    """x <= y iff y lies in the closure of {x}; returns x -> {y : x <= y}."""
    return {x: X.closure_of(x) for x in X.points}


def is_t0(X: FiniteSpace) -> bool:
    order = specialization_order(X)
    for x, y in itertools.combinations(X.points, 2):
        if (y in order[x]) and (x in order[y]):
            return False
    return True


@dataclass(frozen=True)
class HochsterReport:
    t0: bool
    quasi_compact: bool
    qc_basis_closed_under_intersection: bool
    unique_generic_points: bool
    detail: tuple = ()

    @property
    def spectral(self) -> bool:
        return (
            self.t0
            and self.quasi_compact
            and self.qc_basis_closed_under_intersection
            and self.unique_generic_points
        )


def hochster_check(X: FiniteSpace) -> HochsterReport:
    """Evaluate Hochster's four conditions on a finite space.

    Finite spaces are quasi-compact and every open is quasi-compact, so the
    whole topology is a qc basis closed under intersection; both conditions
    are reported as unconditionally true.  Irreducible closed sets are the
    point closures (any closed set with two minimal specialization classes
    splits into proper closed pieces), checked with witnesses.
    """
    t0 = is_t0(X)
    order = specialization_order(X)
    detail = []
    unique = True
    seen = set()
    for x in X.points:
        cl = order[x]
        if cl in seen:
            continue
        seen.add(cl)
        generics = [y for y in X.points if order[y] == cl]
        if len(generics) != 1:
            unique = False
            detail.append(("multiple-generics", tuple(sorted(generics))))
    return HochsterReport(t0, True, True, unique, tuple(detail))


def patch_topology(X: FiniteSpace, guard: int = OPENS_GUARD) -> FiniteSpace:
    """Refinement generated by the opens and their complements.

    On a finite space every open is quasi-compact, so this is the patch
    (constructible) topology; it is discrete exactly when X is T0.
    """
    full = frozenset(X.points)
    sub = set(X.opens) | {full - u for u in X.opens}
    return FiniteSpace.from_subbasis(X.points, sub, guard)


def hasse_edges(X: FiniteSpace) -> List[tuple]:
    """Covering specializations x -> y (x < y with nothing strictly between)."""
    order = specialization_order(X)

    def lt(a, b):
        return a != b and b in order[a] and not (a in order[b])

    edges = []
    for x in X.points:
        for y in X.points:
            if lt(x, y) and not any(lt(x, z) and lt(z, y) for z in X.points):
                edges.append((x, y))
    return sorted(edges)


def export_dot(X: FiniteSpace, name: str = "specialization") -> str:
    lines = [f"digraph {name} {{"]
    for p in sorted(X.points):
        lines.append(f'  "{p}";')
    for x, y in hasse_edges(X):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SubbasisSpace:
    """Finite point set with a distinguished open subbasis."""

    points: tuple
    subbasis: tuple  # tuple of frozensets

    def __post_init__(self):
        pts = frozenset(self.points)
        for s in self.subbasis:
            if not s <= pts:
                raise InvalidMonoid("subbasis set contains a foreign point")

    def footprint(self, x) -> frozenset:
        return frozenset(i for i, s in enumerate(self.subbasis) if x in s)

    def materialize(self, guard: int = OPENS_GUARD) -> FiniteSpace:
        return FiniteSpace.from_subbasis(self.points, self.subbasis, guard)

    def is_t0(self) -> bool:
        """T0 of the generated topology: subbasis footprints separate points."""
        seen = {}
        for x in self.points:
            fp = self.footprint(x)
            if fp in seen:
                return False
            seen[fp] = x
        return True

    def restrict(self, keep) -> "SubbasisSpace":
        keep_set = frozenset(keep)
        return SubbasisSpace(
            tuple(p for p in self.points if p in keep_set),
            tuple(s & keep_set for s in self.subbasis),
        )


def hull_kernel_space(universe, family) -> SubbasisSpace:
    """Hull-kernel topology on a family of subsets of a finite universe.

    Subbasis D(x) = {R in family : x not in R} for each x; the general
    D(T) = {R : T not a subset of R} is the union of the D(x) for x in T,
    so singletons generate the same topology.  Family members are labelled
    canonically as "{a,b}" with sorted member names.
    """
    universe = tuple(universe)
    labelled = [(subset_label(r), frozenset(r)) for r in family]
    if len({lab for lab, _ in labelled}) != len(labelled):
        raise InvalidMonoid("family members must be distinct")
    labelled.sort(key=lambda t: (len(t[1]), t[0]))
    points = tuple(lab for lab, _ in labelled)
    subbasis = tuple(
        frozenset(lab for lab, r in labelled if x not in r) for x in universe
    )
    return SubbasisSpace(points, subbasis)


def subset_label(subset) -> str:
    return "{" + ",".join(sorted(subset)) + "}"


def ultrafilter_criterion(X: SubbasisSpace) -> Tuple[bool, Dict[str, str]]:
    """Finocchiaro-style criterion at principal ultrafilters.

    For the principal ultrafilter at x the candidate set is the class of
    points with the same subbasis footprint as x, which contains x itself;
    the criterion therefore certifies rather than decides, and the witness
    map records one member per point.
    """
    witness = {}
    for x in X.points:
        fp = X.footprint(x)
        members = [z for z in X.points if X.footprint(z) == fp]
        if not members:
            return False, {}
        witness[x] = members[0]
    return True, witness


def patch_closed_check(X: SubbasisSpace, Y: Iterable[str]) -> bool:
    """Is Y closed in the patch topology, at principal-ultrafilter scale?

    For y in Y the principal ultrafilter candidate set is the footprint
    class of y inside X; Y is patch closed iff every class stays in Y.
    """
    Y = frozenset(Y)
    for y in Y:
        fp = X.footprint(y)
        for z in X.points:
            if X.footprint(z) == fp and z not in Y:
                return False
    return True
