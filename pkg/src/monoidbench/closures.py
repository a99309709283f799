"""Closure operations on ideals and A-subsets, with persistence checkers.

Seven operations are provided: identity, indiscrete, radical, Frobenius,
tight, integral, and a-saturation.  Evaluators use exact closed forms where
one is known (lattice Frobenius/tight collapse to the identity, integral
closure is a rational Newton-region membership) and cycle-certified bounded
searches on finite tables; every report records the certificate used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .asets import ASet, enumerate_asubsets, sset_space
from .errors import DomainError, InvalidElement
from .ideals import (
    Ideal,
    all_ideals,
    bracket_power,
    colon,
    ideal_generate,
    ideal_power,
    maximal_ideal,
    minimal_generators,
    radical,
    unit_ideal,
)
from .linsolve import LinearSystem, rational_feasible
from .monoids import BOTTOM, LatticeMonoid, Monoid, MonoidHom, TableMonoid, is_cancellative, localize
from .topology import SubbasisSpace, patch_closed_check, subset_label

CLOSURE_NAMES = (
    "identity",
    "indiscrete",
    "radical",
    "frobenius",
    "tight",
    "integral",
    "saturation",
)


@dataclass(frozen=True)
class ClosureOp:
    """A named closure operation, optionally parameterized.

    ``aux`` is the saturation parameter: an Ideal, or the string "maximal"
    meaning the maximal ideal of whichever monoid the operation is applied
    in (the persistence theorem's setting).  ``base`` marks finite-type-ified
    operations.
    """

    name: str
    aux: object = None
    base: Optional["ClosureOp"] = None

    def applicable(self, A: Monoid) -> Tuple[bool, str]:
        if self.base is not None:
            return self.base.applicable(A)
        if self.name == "tight":
            if not is_cancellative(A):
                return False, "tight closure needs a cancellative owner"
            return True, ""
        if self.name == "saturation" and isinstance(self.aux, Ideal):
            if self.aux.owner != A:
                return False, "saturation parameter belongs to another monoid"
        return True, ""

    def label(self) -> str:
        if self.base is not None:
            return self.base.label() + "_f"
        if self.name == "saturation":
            aux = "m" if self.aux == "maximal" else self.aux.label()
            return f"saturation[{aux}]"
        return self.name


def identity_closure() -> ClosureOp:
    return ClosureOp("identity")


def indiscrete_closure() -> ClosureOp:
    return ClosureOp("indiscrete")


def radical_closure() -> ClosureOp:
    return ClosureOp("radical")


def frobenius_closure() -> ClosureOp:
    return ClosureOp("frobenius")


def tight_closure() -> ClosureOp:
    return ClosureOp("tight")


def integral_closure() -> ClosureOp:
    return ClosureOp("integral")


def saturation_closure(aux="maximal") -> ClosureOp:
    return ClosureOp("saturation", aux=aux)


def standard_closures(aux="maximal") -> tuple:
    return (
        identity_closure(),
        indiscrete_closure(),
        radical_closure(),
        frobenius_closure(),
        tight_closure(),
        integral_closure(),
        saturation_closure(aux),
    )


def apply_closure(cl: ClosureOp, I: Ideal) -> Ideal:
    return apply_closure_report(cl, I)[0]


def apply_closure_report(cl: ClosureOp, I: Ideal) -> Tuple[Ideal, dict]:
    A = I.owner
    ok, why = cl.applicable(A)
    if not ok:
        raise DomainError(why)
    if cl.base is not None:
        return _finite_type_close(cl.base, I)
    if cl.name == "identity":
        return I, {"method": "identity"}
    if cl.name == "indiscrete":
        return unit_ideal(A), {"method": "indiscrete"}
    if cl.name == "radical":
        return radical(I), {"method": "support-indicator" if isinstance(A, LatticeMonoid) else "power-cycle"}
    if cl.name == "frobenius":
        return _frobenius_close(I)
    if cl.name == "tight":
        return _tight_close(I)
    if cl.name == "integral":
        return _integral_close(I)
    if cl.name == "saturation":
        return _saturation_close(I, _resolve_aux(cl, A))
    raise DomainError(f"unknown closure {cl.name}")


def _resolve_aux(cl: ClosureOp, A: Monoid) -> Ideal:
    if cl.aux == "maximal" or cl.aux is None:
        return maximal_ideal(A)
    return cl.aux


def _frobenius_close(I: Ideal) -> Tuple[Ideal, dict]:
    A = I.owner
    if isinstance(A, LatticeMonoid):
        # n*x >= n*g iff x >= g, so the bracket-power condition collapses
        return I, {"method": "lattice-closed-form"}
    bound = A.size * A.size
    out = set(I.elems)
    brackets = {}
    for x in A.elements():
        if x in out:
            continue
        p = A.one
        for n in range(1, bound + 1):
            p = A.table[p][x]
            if n not in brackets:
                brackets[n] = bracket_power(I, n)
            if p in brackets[n].elems:
                out.add(x)
                break
    return Ideal(A, elems=frozenset(out)), {
        "method": "bounded-search",
        "bound": bound,
        "bound_reason": "index+period of every element is at most |A|",
    }


def _tight_close(I: Ideal) -> Tuple[Ideal, dict]:
    A = I.owner
    if isinstance(A, LatticeMonoid):
        # pigeonhole over the finitely many generators forces x >= some g
        return I, {"method": "lattice-closed-form"}
    # cancellative finite monoid: the nonzero part is a group, so the only
    # ideals are {0} and A and both are tightly closed
    return I, {"method": "finite-cancellative-classification"}


def in_integral_closure(I: Ideal, x) -> bool:
    """Membership in I^int.

    Lattice: exact rational Newton-region feasibility (a rational witness
    scales to an integer one by homogeneity).  Table: bounded power search
    with the chain-stabilization certificate.
    """
    A = I.owner
    A.check_elem(x)
    if I.contains(x):
        return True
    if isinstance(A, LatticeMonoid):
        if x is BOTTOM:
            return True
        if not I.gens:
            return False
        fp = x[: A.a]
        r = len(I.gens)
        system = LinearSystem(r)
        for i in range(r):
            unit = [0] * r
            unit[i] = 1
            system.add_ge(unit, 0)
        system.add_eq([1] * r, -1)
        for c in range(A.a):
            system.add_ge([-g[c] for g in I.gens], fp[c])
        return rational_feasible(system).feasible
    chain = _power_chain(I)
    bound = len(chain) + A.size
    p = A.one
    for n in range(1, bound + 1):
        p = A.table[p][x]
        In = chain[min(n, len(chain)) - 1]
        if p in In.elems:
            return True
    return False


def _power_chain(I: Ideal) -> list:
    """I, I^2, ... until the descending chain stabilizes."""
    chain = [I]
    while True:
        nxt = ideal_power(I, len(chain) + 1)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def _integral_close(I: Ideal) -> Tuple[Ideal, dict]:
    A = I.owner
    if isinstance(A, LatticeMonoid):
        if not I.gens:
            return I, {"method": "newton-region", "box": []}
        bounds = [max(g[c] for g in I.gens) for c in range(A.a)]
        cands = []
        for v in itertools.product(*(range(b + 1) for b in bounds)):
            if in_integral_closure(I, v + (0,) * A.b):
                cands.append(v)
        from .ideals import _minimalize

        out = Ideal(A, gens=_minimalize(cands))
        return out, {
            "method": "newton-region",
            "box": bounds,
            "box_reason": "minimal members are clipped by the generator maxima",
        }
    chain = _power_chain(I)
    out = {x for x in A.elements() if in_integral_closure(I, x)}
    return Ideal(A, elems=frozenset(out) | {0}), {
        "method": "bounded-search",
        "bound": len(chain) + A.size,
        "chain_length": len(chain),
    }


def _saturation_close(I: Ideal, a_ideal: Ideal) -> Tuple[Ideal, dict]:
    steps = 0
    cur = I
    while True:
        nxt = colon(cur, a_ideal)
        steps += 1
        if nxt == cur:
            return cur, {
                "method": "colon-iteration",
                "steps": steps,
                "termination": "ascending chain stabilized",
            }
        cur = nxt


def _finite_type_close(base: ClosureOp, I: Ideal) -> Tuple[Ideal, dict]:
    """cl_f(I) = union of cl(L) over finitely generated sub-ideals L.

    Finite owners: honest enumeration of all sub-ideals.  Lattice owners:
    every monomial ideal is finitely generated (Dickson), so L = I attains
    the union.
    """
    A = I.owner
    if isinstance(A, LatticeMonoid):
        out, cert = apply_closure_report(base, I)
        cert = dict(cert)
        cert["finite_type"] = "I itself is finitely generated"
        return out, cert
    union = {0}
    count = 0
    for L in all_ideals(A):
        if L.elems <= I.elems:
            union |= apply_closure(base, L).elems
            count += 1
    return Ideal(A, elems=frozenset(union)), {
        "finite_type": "union over all sub-ideals",
        "sub_ideals": count,
    }


def finite_type_ify(cl: ClosureOp) -> ClosureOp:
    if cl.base is not None:
        return cl
    return ClosureOp(cl.name + "_f", aux=cl.aux, base=cl)


# A-subset closures, used by the fixed-point spaces.

def close_asubset(cl: ClosureOp, M: ASet, N: frozenset) -> frozenset:
    """Apply a closure to an A-subset of M (labels in, labels out).

    Frobenius/tight/integral/radical are ideal notions; they apply when M is
    the monoid acting on itself.  Identity, indiscrete, and saturation make
    sense for every finite A-set.
    """
    base = cl.base if cl.base is not None else cl
    if base.name == "identity":
        return N
    if base.name == "indiscrete":
        return frozenset(M.elements)
    if M.is_self:
        A = M.monoid
        idx = {name: i for i, name in enumerate(M.elements)}
        ideal = Ideal(A, elems=frozenset(idx[x] for x in N))
        out = apply_closure(cl, ideal)
        return frozenset(M.elements[i] for i in out.elems)
    if base.name != "saturation":
        raise DomainError(
            f"{base.name} closure needs the monoid acting on itself"
        )
    a_ideal = _resolve_aux(base, M.monoid)
    gens = minimal_generators(a_ideal)
    idx = {name: i for i, name in enumerate(M.elements)}
    cur = frozenset(idx[x] for x in N)
    while True:
        nxt = frozenset(
            i
            for i in range(M.size)
            if all(M.act(g, y) in cur for g in gens for y in M.orbit(i))
        )
        if nxt == cur:
            return frozenset(M.elements[i] for i in cur)
        cur = nxt


def fixed_point_space(cl: ClosureOp, M: ASet):
    """SSet^cl(M|A) as a hull-kernel subspace, plus the patch-closed flag."""
    space, legend = sset_space(M)
    fixed = [
        lab for lab, subset in legend.items() if close_asubset(cl, M, subset) == subset
    ]
    fixed.sort(key=lambda lab: (len(legend[lab]), lab))
    sub = space.restrict(fixed)
    flag = patch_closed_check(space, fixed)
    return sub, flag, tuple(fixed)


# Persistence and localization.

def pushforward_ideal(f: MonoidHom, I: Ideal) -> Ideal:
    """The ideal of the target generated by the image of I."""
    return ideal_generate(f.target, [f.apply(x) for x in minimal_generators(I)])


def ideal_le(I: Ideal, J: Ideal) -> bool:
    if I.owner != J.owner:
        raise InvalidElement("ideals of different monoids")
    if isinstance(I.owner, TableMonoid):
        return I.elems <= J.elems
    return all(J.contains(g + (0,) * I.owner.b) for g in I.gens)


def persistence_check(cl: ClosureOp, f: MonoidHom, I: Ideal):
    """Does phi(I^cl)B lie inside (phi(I)B)^cl?  Returns (bool, witness)."""
    if I.owner != f.source:
        raise InvalidElement("ideal does not live in the hom's source")
    for side in (f.source, f.target):
        ok, why = cl.applicable(side)
        if not ok:
            raise DomainError(why)
    lhs = pushforward_ideal(f, apply_closure(cl, I))
    rhs = apply_closure(cl, pushforward_ideal(f, I))
    if ideal_le(lhs, rhs):
        return True, None
    B = f.target
    if isinstance(B, TableMonoid):
        bad = min(lhs.elems - rhs.elems)
        return False, B.names[bad]
    bad = next(g for g in lhs.gens if not rhs.contains(g + (0,) * B.b))
    return False, bad


def localization_check(cl: ClosureOp, A: Monoid, S, I: Ideal):
    """Does the closure commute with localization at S?  Exact equality."""
    L, f = localize(A, S)
    ok, why = cl.applicable(L)
    if not ok:
        raise DomainError(why)
    lhs = pushforward_ideal(f, apply_closure(cl, I))
    rhs = apply_closure(cl, pushforward_ideal(f, I))
    return lhs == rhs, {"localized": L, "lhs": lhs, "rhs": rhs}
