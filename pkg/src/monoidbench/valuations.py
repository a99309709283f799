"""Valuations on pointed monoids with values in lex Z^k adjoined zero.

Lattice-monoid valuations are stored by generator images; finite-monoid
valuations are forced to be trivial (powers cycle, ordered groups are
torsion free), and the validator rejects anything else with a powerable
witness.  Equivalence, characteristic subgroups, and the divisibility
relation are decided exactly via rational lex-sign feasibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import BenchError, DomainError, InvalidElement, RelationAxiomError
from .ideals import Ideal, is_prime, minimal_generators, prime_of_support, zero_ideal
from .linsolve import LinearSystem, rational_feasible
from .monoids import (
    BOTTOM,
    LatticeMonoid,
    Monoid,
    MonoidHom,
    TableMonoid,
    group_completion,
    quotient_by_ideal,
)
from .ordgroups import (
    ZERO,
    ConvexSubgroup,
    Subgroup,
    ValueElem,
    convex_subgroup_generated,
    lex_cmp,
    lex_le,
    lex_lt,
    make_convex,
    subgroup_generated,
    trivial_convex,
    vmul,
    vpow,
    whole_convex,
)


@dataclass(frozen=True)
class Valuation:
    """A multiplicative map A -> Z^rank_lex adjoined ZERO.

    ``images`` (lattice owners) is aligned with ``owner.names``;
    ``table_vals`` (table owners) with element indices.
    """

    owner: Monoid
    rank: int
    images: tuple = None
    table_vals: tuple = None

    def __post_init__(self):
        if isinstance(self.owner, LatticeMonoid):
            if self.images is None or len(self.images) != self.owner.rank:
                raise InvalidElement("need one value per generator")
            for g, img in zip(self.owner.names, self.images):
                if img is ZERO:
                    if g in self.owner.invertible:
                        raise InvalidElement(
                            f"invertible generator {g} cannot map to zero"
                        )
                elif len(img) != self.rank:
                    raise InvalidElement("image has the wrong rank")
        else:
            if self.table_vals is None or len(self.table_vals) != self.owner.size:
                raise InvalidElement("need one value per element")
            for img in self.table_vals:
                if img is not ZERO and len(img) != self.rank:
                    raise InvalidElement("value has the wrong rank")

    def identity_value(self) -> tuple:
        return (0,) * self.rank


def lattice_valuation(A: LatticeMonoid, images: Dict[str, object], rank: Optional[int] = None) -> Valuation:
    vals = []
    if rank is None:
        rank = next(
            (len(v) for v in images.values() if v is not ZERO and v is not None), 0
        )
    for g in A.names:
        if g not in images or images[g] is None or images[g] is ZERO:
            vals.append(ZERO)
        else:
            vals.append(tuple(images[g]))
    return Valuation(A, rank, images=tuple(vals))


def trivial_valuation(p: Ideal) -> Valuation:
    """Rank-0 valuation: identity off the prime, zero on it."""
    if not is_prime(p):
        raise DomainError("trivial valuations require a prime ideal")
    A = p.owner
    if isinstance(A, TableMonoid):
        vals = tuple(ZERO if x in p.elems else () for x in A.elements())
        return Valuation(A, 0, table_vals=vals)
    imgs = []
    for g in A.names:
        vec = A.gen_vector(g)
        imgs.append(ZERO if p.contains(vec) else ())
    return Valuation(A, 0, images=tuple(imgs))


def evaluate(v: Valuation, x) -> ValueElem:
    A = v.owner
    A.check_elem(x)
    if isinstance(A, TableMonoid):
        return v.table_vals[x]
    if x is BOTTOM:
        return ZERO
    acc = v.identity_value()
    for e, img in zip(x, v.images):
        if e == 0:
            continue
        if img is ZERO:
            return ZERO
        acc = vmul(acc, vpow(img, e))
    return acc


@dataclass(frozen=True)
class ValuationReport:
    ok: bool
    problems: tuple
    certificate: tuple = ()


def is_valid_valuation(v: Valuation) -> ValuationReport:
    """Check the valuation laws.

    Finite owners additionally get the torsion conclusion enforced: every
    nonzero value must be the identity, since x^m = x^(m+p) forces
    p * v(x) = 0 in a torsion-free ordered group.  The certificate lists
    the power-cycle witnesses used.
    """
    A = v.owner
    problems = []
    cert = []
    if isinstance(A, TableMonoid):
        if v.table_vals[0] is not ZERO:
            problems.append("v(0) must be zero")
        if not A.is_trivial and v.table_vals[A.one] != v.identity_value():
            problems.append("v(1) must be the identity")
        for x in A.elements():
            for y in range(x, A.size):
                lhs = v.table_vals[A.table[x][y]]
                rhs = vmul(v.table_vals[x], v.table_vals[y])
                if lex_cmp(lhs, rhs) != 0:
                    problems.append(
                        f"v({A.names[x]}*{A.names[y]}) != v({A.names[x]})v({A.names[y]})"
                    )
        for x in A.elements():
            val = v.table_vals[x]
            if val is not ZERO and val != v.identity_value():
                m, p = A.power_cycle(x)
                problems.append(
                    f"nonzero value at {A.names[x]} must be the identity"
                )
                cert.append((A.names[x], m, p))
        return ValuationReport(not problems, tuple(problems), tuple(cert))
    for g, img in zip(A.names, v.images):
        if g in A.invertible and img is ZERO:
            problems.append(f"invertible generator {g} maps to zero")
    return ValuationReport(not problems, tuple(problems))


def supp(v: Valuation) -> Ideal:
    """v^{-1}(zero); always a prime ideal."""
    A = v.owner
    if isinstance(A, TableMonoid):
        return Ideal(A, elems=frozenset(x for x in A.elements() if v.table_vals[x] is ZERO))
    names = [g for g, img in zip(A.names, v.images) if img is ZERO]
    return prime_of_support(A, names)


def value_group(v: Valuation) -> Subgroup:
    A = v.owner
    if isinstance(A, TableMonoid):
        vecs = [val for val in v.table_vals if val is not ZERO]
    else:
        vecs = [img for img in v.images if img is not ZERO]
    return Subgroup.generated(v.rank, vecs)


def _nonsupport_columns(v: Valuation) -> Tuple[list, list]:
    """Images of the non-support generators plus their 'free?' flags."""
    A = v.owner
    cols, free_flags = [], []
    for g, img in zip(A.names, v.images):
        if img is ZERO:
            continue
        cols.append(img)
        free_flags.append(g in A.free)
    return cols, free_flags


def _reach_system(cols, free_flags, rank, prefix, offset=None, strict_at=None, equal_all=False):
    """Feasibility skeleton: offset + sum(t_i * cols_i) with the first
    ``prefix`` coordinates zero, optionally strictly positive at one index
    or zero everywhere; free generators get t_i >= 0."""
    system = LinearSystem(len(cols))
    off = offset if offset is not None else (0,) * rank
    upto = rank if equal_all else prefix
    for c in range(upto):
        system.add_eq([col[c] for col in cols], off[c])
    if strict_at is not None:
        system.add_ge([col[strict_at] for col in cols], off[strict_at], strict=True)
    for i, is_free in enumerate(free_flags):
        if is_free:
            unit = [0] * len(cols)
            unit[i] = 1
            system.add_ge(unit, 0)
    return system


def char_subgroup(v: Valuation) -> ConvexSubgroup:
    """Convex subgroup of the value group generated by the values >= 1.

    Closed form: Gamma_v cut at (lambda* - 1), where lambda* is the least
    leading index of a lex-positive achievable value; each prefix question
    is a homogeneous rational feasibility problem (rational witnesses scale
    to integers).
    """
    gamma = value_group(v)
    A = v.owner
    if isinstance(A, TableMonoid):
        # valid finite-owner valuations are trivial: nothing exceeds 1
        return trivial_convex(gamma)
    cols, free_flags = _nonsupport_columns(v)
    if not cols:
        return trivial_convex(gamma)
    for lam in range(1, v.rank + 1):
        system = _reach_system(cols, free_flags, v.rank, lam - 1, strict_at=lam - 1)
        if rational_feasible(system).feasible:
            return make_convex(gamma, lam - 1)
    return trivial_convex(gamma)


def char_subgroup_members_oracle(v: Valuation, box: int = 4) -> set:
    """Brute-force cross-check: {g : v(x)^-1 <= g <= v(x), v(x) >= 1} over a
    bounded exponent box (test support, not the production path)."""
    one = v.identity_value()
    cols, free_flags = _nonsupport_columns(v)
    vals = set()
    val_ranges = [range(0, box + 1) if f else range(-box, box + 1) for f in free_flags]
    for exps in itertools.product(*val_ranges):
        val = one
        for e, col in zip(exps, cols):
            val = vmul(val, vpow(col, e))
        if lex_le(one, val):
            vals.add(val)
    members = set()
    gamma = value_group(v)
    # group members take integer coefficients of both signs
    grp_ranges = [range(-box, box + 1)] * len(cols)
    for val in vals:
        neg = tuple(-c for c in val)
        for exps in itertools.product(*grp_ranges):
            g = one
            for e, col in zip(exps, cols):
                g = vmul(g, vpow(col, e))
            if gamma.contains(g) and lex_le(neg, g) and lex_le(g, val):
                members.add(g)
    return members


def induced_on_completion(v: Valuation) -> Valuation:
    """The valuation vbar on the group completion of A/supp(v)."""
    A = v.owner
    if isinstance(A, LatticeMonoid):
        keep = [
            (g, img)
            for g, img in zip(A.names, v.images)
            if img is not ZERO
        ]
        free_kept = tuple(g for g, _ in keep if g in A.free)
        B = LatticeMonoid((), free_kept + A.invertible)
        imgs = {g: img for g, img in keep}
        return Valuation(
            B, v.rank, images=tuple(imgs[g] for g in B.names)
        )
    Q, _ = quotient_by_ideal(A, supp(v))
    G, _ = group_completion(Q)
    return trivial_valuation(zero_ideal(G))


def valuation_monoid_membership(v: Valuation, z) -> bool:
    """Is z in A(v) = {x in (A/supp v)^+ : vbar(x) <= 1}?"""
    vbar = induced_on_completion(v)
    return lex_le(evaluate(vbar, z), vbar.identity_value())


def in_max_ideal_of_valuation_monoid(v: Valuation, z) -> bool:
    vbar = induced_on_completion(v)
    return lex_lt(evaluate(vbar, z), vbar.identity_value())


def _sign_mismatch_delta(v: Valuation, w: Valuation, shared_gens: list) -> Optional[tuple]:
    """A generator-exponent difference vector whose value sign differs
    between v and w, or None when the lex-sign cells agree everywhere."""
    A = v.owner
    vcols = [v.images[A.index(g)] for g in shared_gens]
    wcols = [w.images[A.index(g)] for g in shared_gens]
    n = len(shared_gens)
    if n == 0:
        return None

    def cells(cols, rank):
        # (kind, lam): kind "eq" or "pos"/"neg" at 1-based lambda
        out = [("eq", None)]
        for lam in range(1, rank + 1):
            out.append(("pos", lam))
            out.append(("neg", lam))
        return out

    def add_cell(system, cols, rank, kind, lam, sign):
        if kind == "eq":
            for c in range(rank):
                system.add_eq([col[c] for col in cols], 0)
        else:
            for c in range(lam - 1):
                system.add_eq([col[c] for col in cols], 0)
            coeffs = [col[lam - 1] for col in cols]
            if (kind == "pos") != (sign < 0):
                system.add_ge(coeffs, 0, strict=True)
            else:
                system.add_ge([-c for c in coeffs], 0, strict=True)

    # mismatch: value(v, delta) >= 0 but value(w, delta) < 0, either way round
    for first, fcols, frank, second, scols, srank in (
        ("v", vcols, v.rank, "w", wcols, w.rank),
        ("w", wcols, w.rank, "v", vcols, v.rank),
    ):
        for kind, lam in cells(fcols, frank):
            if kind == "neg":
                continue  # >= 0 side: eq or pos
            for lam2 in range(1, srank + 1):
                system = LinearSystem(n)
                add_cell(system, fcols, frank, kind, lam, +1)
                # second valuation strictly negative at lam2
                for c in range(lam2 - 1):
                    system.add_eq([col[c] for col in scols], 0)
                system.add_ge([-col[lam2 - 1] for col in scols], 0, strict=True)
                rep = rational_feasible(system)
                if rep.feasible:
                    denom = 1
                    for q in rep.witness:
                        denom = denom * q.denominator // _gcd(denom, q.denominator)
                    return tuple(int(q * denom) for q in rep.witness)
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def are_equivalent(v: Valuation, w: Valuation) -> bool:
    return equivalence_witness(v, w) is None


def equivalence_witness(v: Valuation, w: Valuation):
    """None when equivalent; otherwise a pair (x, y) of elements with
    v(x) <= v(y) but not w(x) <= w(y) (or the converse)."""
    if v.owner != w.owner:
        raise InvalidElement("valuations on different monoids")
    A = v.owner
    if isinstance(A, TableMonoid):
        for x in A.elements():
            for y in A.elements():
                if lex_le(v.table_vals[x], v.table_vals[y]) != lex_le(
                    w.table_vals[x], w.table_vals[y]
                ):
                    return x, y
        return None
    sv = {g for g, img in zip(A.names, v.images) if img is ZERO}
    sw = {g for g, img in zip(A.names, w.images) if img is ZERO}
    if sv != sw:
        g = sorted(sv ^ sw)[0]
        return A.gen_vector(g), BOTTOM
    shared = [g for g in A.names if g not in sv]
    delta = _sign_mismatch_delta(v, w, shared)
    if delta is None:
        return None
    x = [0] * A.rank
    y = [0] * A.rank
    for g, d in zip(shared, delta):
        i = A.index(g)
        if g in A.free:
            if d >= 0:
                y[i] = d
            else:
                x[i] = -d
        else:
            y[i] = d
    x, y = tuple(x), tuple(y)
    # orient the witness so the mismatch is visible as stated
    if lex_le(evaluate(v, x), evaluate(v, y)) != lex_le(evaluate(w, x), evaluate(w, y)):
        return x, y
    return y, x


def restrict(v: Valuation, H: ConvexSubgroup) -> Valuation:
    """v|_H: keep values inside H, send the rest to zero.

    Requires H convex inside the value group with the characteristic
    subgroup contained in H.  Then a product of generator values lies in H
    exactly when every factor does: factors >= 1 sit in the characteristic
    subgroup, and convexity walks the < 1 factors in one by one, so the
    generator-image representation stays faithful.
    """
    gamma = value_group(v)
    if H.ambient != gamma:
        raise DomainError("subgroup does not live in the value group")
    if not char_subgroup(v).subgroup_le(H):
        raise DomainError("restriction needs the characteristic subgroup inside H")
    A = v.owner
    if isinstance(A, TableMonoid):
        vals = tuple(
            val if val is ZERO or H.contains(val) else ZERO for val in v.table_vals
        )
        return Valuation(A, v.rank, table_vals=vals)
    imgs = tuple(
        img if img is ZERO or H.contains(img) else ZERO for img in v.images
    )
    return Valuation(A, v.rank, images=imgs)


def canonicalize(v: Valuation) -> Valuation:
    """Equivalence-class representative.

    Finite owners: the trivial valuation of the support.  Lattice owners:
    re-coordinatize values by their coefficients over the HNF basis of the
    value group; with positive pivots ordered left to right this is an
    order isomorphism onto lex Z^dim.
    """
    A = v.owner
    if isinstance(A, TableMonoid):
        return trivial_valuation(supp(v))
    gamma = value_group(v)
    imgs = []
    for img in v.images:
        if img is ZERO:
            imgs.append(ZERO)
        else:
            imgs.append(gamma.coords(img))
    return Valuation(A, gamma.dim, images=tuple(imgs))


# Divisibility relations (finite owners) and reconstruction.


@dataclass(frozen=True)
class DivRelation:
    """Boolean matrix over A x A: entry (x, y) says v(x) <= v(y)."""

    owner: TableMonoid
    matrix: tuple

    def holds(self, x: int, y: int) -> bool:
        return self.matrix[x][y]


class DivOracle:
    """Comparator oracle for lattice owners (the matrix would be infinite)."""

    def __init__(self, v: Valuation):
        self.valuation = v

    def divides(self, x, y) -> bool:
        return lex_le(evaluate(self.valuation, x), evaluate(self.valuation, y))


def relation_of(v: Valuation):
    A = v.owner
    if isinstance(A, LatticeMonoid):
        return DivOracle(v)
    matrix = tuple(
        tuple(lex_le(v.table_vals[x], v.table_vals[y]) for y in A.elements())
        for x in A.elements()
    )
    return DivRelation(A, matrix)


def check_relation_axioms(rel: DivRelation) -> List[tuple]:
    """Violations of the five reconstruction axioms, with witnesses.

    The relation reads x|y as v(x) <= v(y), so the cancellation guard and
    the nondegeneracy axiom sit on the "divides zero" side: (4) cancels c
    with c not dividing 0, and (5) demands that 1 does not divide 0.
    """
    A = rel.owner
    m = rel.matrix
    out = []
    n = A.size
    for a in range(n):
        for b in range(n):
            if not (m[a][b] or m[b][a]):
                out.append((1, (A.names[a], A.names[b])))
    for a in range(n):
        for b in range(n):
            if not m[a][b]:
                continue
            for c in range(n):
                if m[b][c] and not m[a][c]:
                    out.append((2, (A.names[a], A.names[b], A.names[c])))
                ac, bc = A.table[a][c], A.table[b][c]
                if not m[ac][bc]:
                    out.append((3, (A.names[a], A.names[b], A.names[c])))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not m[c][0] and m[A.table[a][c]][A.table[b][c]] and not m[a][b]:
                    out.append((4, (A.names[a], A.names[b], A.names[c])))
    if n > 1 and m[A.one][0]:
        out.append((5, (A.names[A.one], A.names[0])))
    return out


def valuation_from_relation(A: TableMonoid, rel: DivRelation) -> Valuation:
    """Rebuild the valuation a relation came from.

    Runs the reconstruction: mutual-divisibility classes, the cancellative
    totally ordered monoid of nonzero classes, its group of fractions, and
    a -> [a]/1.  On a finite monoid power cycles force every nonzero class
    to the identity, so the result lands in canonical trivial form; the
    round trip against the input matrix is verified before returning.
    """
    if rel.owner != A:
        raise InvalidElement("relation belongs to another monoid")
    violations = check_relation_axioms(rel)
    if violations:
        axiom, witness = violations[0]
        raise RelationAxiomError(axiom, witness)
    m = rel.matrix
    support = frozenset(a for a in A.elements() if m[a][0])
    classes: List[frozenset] = []
    for a in A.elements():
        if a in support:
            continue
        k = frozenset(
            b for b in A.elements() if b not in support and m[a][b] and m[b][a]
        )
        if k not in classes:
            classes.append(k)
    if len(classes) > 1:
        raise BenchError(
            "reconstruction found a nontrivial class; axiom checker incomplete"
        )
    p = Ideal(A, elems=support)
    if not is_prime(p):
        raise BenchError("reconstructed support is not prime")
    result = trivial_valuation(p)
    back = relation_of(result)
    if back.matrix != rel.matrix:
        raise BenchError("round trip failed after reconstruction")
    return result
