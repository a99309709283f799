"""Spv(A) basic opens, Spv(A,I), the retraction, I-topologies, continuity.

Lattice owners are handled pointwise (their spectra are infinite); finite
owners get the whole space.  The characteristic-subgroup case analysis
follows the greatest-convex-subgroup construction: the convex subgroup
generated by the largest generator value, unless a value of the ideal
already meets the characteristic subgroup.  Affine feasibility questions
are answered by an exact rational relaxation whose witness is folded back
to an integer one by bumping the offset generator's own exponent; every
answer is re-verified before use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from .errors import (
    BenchError,
    DomainError,
    InvalidElement,
    NotSeparated,
    PreconditionError,
)
from .ideals import (
    Ideal,
    ideal_generate,
    ideal_power,
    minimal_generators,
    mspec,
    radical,
)
from .linsolve import integer_feasible, rational_feasible
from .monoids import BOTTOM, LatticeMonoid, Monoid, MonoidHom, TableMonoid
from .ordgroups import (
    ZERO,
    ConvexSubgroup,
    convex_subgroup_generated,
    is_cofinal,
    lex_le,
    lex_lt,
    whole_convex,
)
from .topology import SubbasisSpace
from .valuations import (
    Valuation,
    _nonsupport_columns,
    _reach_system,
    canonicalize,
    char_subgroup,
    evaluate,
    is_valid_valuation,
    restrict,
    supp,
    value_group,
)


def basic_open_contains(v: Valuation, x, y) -> bool:
    """Is v in the basic open {w : w(x) <= w(y) != 0}?"""
    vy = evaluate(v, y)
    return vy is not ZERO and lex_le(evaluate(v, x), vy)


def spv_enumerate(A: TableMonoid):
    """All points of Spv(A) (trivial valuations <-> primes) with the
    subbasis of basic opens.  Returns (points, space, labels)."""
    from .valuations import trivial_valuation

    if not isinstance(A, TableMonoid):
        raise DomainError("spv_enumerate materializes finite owners only")
    primes, _, labels = mspec(A)
    points = [trivial_valuation(p) for p in primes]
    by_label = dict(zip(labels, points))
    sets = set()
    for x in A.elements():
        for y in A.elements():
            sets.add(
                frozenset(
                    lab
                    for lab in labels
                    if basic_open_contains(by_label[lab], x, y)
                )
            )
    subbasis = tuple(sorted(sets, key=lambda s: (len(s), sorted(s))))
    return points, SubbasisSpace(tuple(labels), subbasis), list(labels)


def spv_functor(f: MonoidHom, v: Valuation) -> Valuation:
    """Pull a point of Spv(target) back to Spv(source): v o f, canonical."""
    if v.owner != f.target:
        raise InvalidElement("valuation does not live on the hom's target")
    S = f.source
    if isinstance(S, TableMonoid):
        vals = tuple(evaluate(v, f.apply(x)) for x in S.elements())
        w = Valuation(S, v.rank, table_vals=vals)
        report = is_valid_valuation(w)
        if not report.ok:
            raise BenchError(f"pullback failed validity: {report.problems}")
        return canonicalize(w)
    imgs = tuple(evaluate(v, f.apply(S.gen_vector(g))) for g in S.names)
    return canonicalize(Valuation(S, v.rank, images=imgs))


def _offset_exponents(v: Valuation, elem) -> list:
    """Exponents of elem over the non-support generators, aligned with the
    feasibility columns (support exponents must vanish for a nonzero value)."""
    A = v.owner
    out = []
    for g, img in zip(A.names, v.images):
        if img is ZERO:
            continue
        out.append(elem[A.index(g)])
    return out


def _verify_reach(v: Valuation, offset, exps, prefix, strict_at=None, equal_all=False) -> bool:
    cols, _ = _nonsupport_columns(v)
    total = list(offset)
    for e, col in zip(exps, cols):
        for c in range(len(total)):
            total[c] += e * col[c]
    upto = len(total) if equal_all else prefix
    if any(total[c] != 0 for c in range(upto)):
        return False
    if strict_at is not None and total[strict_at] <= 0:
        return False
    return True


def _affine_reach(v: Valuation, offset, offset_elem, prefix, strict_at=None, equal_all=False) -> bool:
    """Is offset + (an achievable value) zero on the prefix (and positive at
    strict_at / zero everywhere)?  The offset is itself a generator value,
    so a rational witness t scales to the integer witness D*t plus (D-1)
    copies of the offset element; the integer witness is re-verified, with
    branch-and-bound as a fallback."""
    cols, free_flags = _nonsupport_columns(v)
    if not cols:
        upto = len(offset) if equal_all else prefix
        ok = all(offset[c] == 0 for c in range(upto))
        if strict_at is not None:
            ok = ok and offset[strict_at] > 0
        return ok
    system = _reach_system(
        cols, free_flags, v.rank, prefix, offset=offset, strict_at=strict_at, equal_all=equal_all
    )
    rep = rational_feasible(system)
    if not rep.feasible:
        return False
    denom = 1
    for q in rep.witness:
        denom = denom * q.denominator // _gcd(denom, q.denominator)
    gexp = _offset_exponents(v, offset_elem)
    cand = [
        int(q * denom) + (denom - 1) * e for q, e in zip(rep.witness, gexp)
    ]
    if _verify_reach(v, tuple(denom * c for c in offset), cand, prefix, strict_at, equal_all):
        return True
    # the scaled offset is (denom)x the original; verify against it directly
    return integer_feasible(system).feasible


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def c_gamma_I(v: Valuation, I: Ideal) -> ConvexSubgroup:
    """cGamma_v(I): the whole value group when v(I) = {0}; the
    characteristic subgroup when v(I) meets it; otherwise the convex
    subgroup generated by the largest generator value."""
    if I.owner != v.owner:
        raise InvalidElement("ideal lives on a different monoid")
    gamma = value_group(v)
    gens = minimal_generators(I)
    vals = [(g, evaluate(v, g)) for g in gens]
    nonzero = [(g, val) for g, val in vals if val is not ZERO]
    if not nonzero:
        return whole_convex(gamma)
    cg = char_subgroup(v)
    if isinstance(v.owner, TableMonoid):
        # trivial valuations: the characteristic subgroup is the whole
        # (trivial) value group and v(I) meets it
        return cg
    if cg.is_whole:
        return cg
    for g, val in nonzero:
        if _affine_reach(v, val, g, prefix=cg.cut):
            return cg
    h = max((val for _, val in nonzero), key=lambda t: tuple(t))
    return convex_subgroup_generated(gamma, [h])


def in_spv_A_I(v: Valuation, I: Ideal) -> bool:
    """Membership in Spv(A,I), by both equivalent criteria; they must agree."""
    gamma = value_group(v)
    cg = char_subgroup(v)
    if cg.is_whole:
        crit_iii = True
    else:
        whole = whole_convex(gamma)
        crit_iii = all(
            is_cofinal(evaluate(v, g), whole) for g in minimal_generators(I)
        )
    crit_i = c_gamma_I(v, I).is_whole
    if crit_i != crit_iii:
        raise BenchError("Spv(A,I) criteria disagree; decision procedure bug")
    return crit_i


def retract(v: Valuation, I: Ideal) -> Valuation:
    """r(v) = v restricted to cGamma_v(I), in canonical form."""
    H = c_gamma_I(v, I)
    if not char_subgroup(v).subgroup_le(H):
        raise BenchError("cGamma_v(I) lost the characteristic subgroup")
    return canonicalize(restrict(v, H))


def basis_R_member(v: Valuation, y, xs, I: Ideal) -> bool:
    """Membership in the basis set {v in Spv(A,I) : v(x_i) <= v(y) != 0}.

    Requires I inside the radical of <xs> and v in Spv(A,I)."""
    A = v.owner
    rad = radical(ideal_generate(A, list(xs)))
    for g in minimal_generators(I):
        if not rad.contains(g):
            raise PreconditionError("I is not inside the radical of <xs>")
    if not in_spv_A_I(v, I):
        raise PreconditionError("valuation is not a point of Spv(A,I)")
    return all(basic_open_contains(v, x, y) for x in xs)


def basis_R_intersection_params(A: Monoid, params1, params2):
    """Product parameters realizing the intersection of two basis sets.

    For (y; x_1..x_n) and (y'; x'_1..x'_m) the intersection is cut out by
    (y y'; all pairwise products of {y} u xs with {y'} u xs' except y y');
    the mixed products x_i y' and y x'_j make the reduction exact, and the
    radical precondition passes to the product family through the pure
    x_i x'_j terms."""
    y1, xs1 = params1
    y2, xs2 = params2
    fam1 = [y1] + list(xs1)
    fam2 = [y2] + list(xs2)
    prods = []
    for i, u in enumerate(fam1):
        for j, w in enumerate(fam2):
            if i == 0 and j == 0:
                continue
            p = A.mul(u, w)
            if p not in prods:
                prods.append(p)
    return A.mul(y1, y2), tuple(prods)


def retract_preimage_check(y, xs, I: Ideal, sample: Iterable[Valuation]):
    """Lemma-style preimage law: v lies in the Spv(A)-shaped set W exactly
    when r(v) lies in the basis set U.  Returns (ok, counterexample)."""
    for v in sample:
        in_W = all(basic_open_contains(v, x, y) for x in xs)
        rv = retract(v, I)
        in_U = basis_R_member(rv, y, xs, I)
        if in_W != in_U:
            return False, v
    return True, None


@dataclass(frozen=True)
class ITopology:
    """The topology on a monoid where opens either avoid 0 or absorb some
    ideal power (I^0 = A by convention)."""

    owner: Monoid
    ideal: Ideal

    def __post_init__(self):
        if self.ideal.owner != self.owner:
            raise InvalidElement("ideal lives on a different monoid")

    def power_chain(self) -> list:
        chain = [self.ideal]
        while True:
            nxt = ideal_power(self.ideal, len(chain) + 1)
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)


def is_open_in_Itop(T: ITopology, U) -> bool:
    """Explicit subsets of finite owners only."""
    A = T.owner
    if not isinstance(A, TableMonoid):
        raise DomainError("explicit open tests need a finite owner")
    Uset = frozenset(A.check_elem(u) for u in U)
    if 0 not in Uset:
        return True
    if Uset == frozenset(A.elements()):
        return True  # n = 0 works
    return any(P.elems <= Uset for P in T.power_chain())


def metric_d(T: ITopology, a, b) -> Fraction:
    """The 1/2^n ultrametric; requires the ideal powers to meet in {0}."""
    A = T.owner
    if not isinstance(A, TableMonoid):
        raise DomainError("the metric needs a finite owner")
    chain = T.power_chain()
    if chain[-1].elems != frozenset({0}):
        raise NotSeparated("ideal powers do not intersect in {0}")
    A.check_elem(a)
    A.check_elem(b)
    if a == b:
        return Fraction(0)
    n = 0
    for k, P in enumerate(chain, start=1):
        if a in P.elems and b in P.elems:
            n = k
        else:
            break
    return Fraction(1, 2 ** n)


def is_top_nilpotent(T: ITopology, x) -> bool:
    """x^n -> 0 in the I-topology, i.e. x lies in the radical of I."""
    return radical(T.ideal).contains(x)


def _reaches_nonneg(v: Valuation, val, gexp) -> bool:
    """Can val plus an achievable value become lex >= 0?"""
    for lam in range(1, v.rank + 1):
        if _affine_reach(v, val, gexp, prefix=lam - 1, strict_at=lam - 1):
            return True
    return _affine_reach(v, val, gexp, prefix=v.rank, equal_all=True)


def is_continuous(v: Valuation, I: Ideal) -> bool:
    """Continuity for the I-topology: membership in Spv(A,I) plus
    v(x) < 1 for every x in I; the universal condition is decided exactly."""
    if I.owner != v.owner:
        raise InvalidElement("ideal lives on a different monoid")
    if not in_spv_A_I(v, I):
        return False
    A = v.owner
    one = v.identity_value()
    if isinstance(A, TableMonoid):
        return all(lex_lt(v.table_vals[x], one) for x in I.elems)
    for g in minimal_generators(I):
        val = evaluate(v, g)
        if val is ZERO:
            continue
        if _reaches_nonneg(v, val, g):
            return False
    return True


def continuous_by_open_preimage(v: Valuation, I: Ideal) -> bool:
    """Criterion (i) on finite owners: v is continuous as a map into
    Gamma_v adjoined zero with its order topology, evaluated exhaustively."""
    A = v.owner
    if not isinstance(A, TableMonoid):
        raise DomainError("open-preimage evaluation needs a finite owner")
    gamma = value_group(v)
    if gamma.dim != 0:
        raise BenchError("finite-owner valuations must have trivial value group")
    one = v.identity_value()
    group_members = [one]
    achieved = set(v.table_vals)
    space = sorted(achieved | {one}, key=lambda t: 0 if t is ZERO else 1)
    T = ITopology(A, I)

    def value_open(U) -> bool:
        if ZERO not in U:
            return True
        return any(
            all(val in U for val in achieved if val is not ZERO and lex_lt(val, g))
            for g in group_members
        )

    for r in range(len(space) + 1):
        for comb in itertools.combinations(space, r):
            U = set(comb)
            if not value_open(U):
                continue
            pre = [x for x in A.elements() if v.table_vals[x] in U]
            if not is_open_in_Itop(T, pre):
                return False
    return True


def cont_space(A: TableMonoid, I: Ideal):
    """Continuous points of Spv(A) with the induced subbasis, plus the
    verification that the complement is the union of the {1 <= v(x)} opens."""
    points, space, labels = spv_enumerate(A)
    flags = [is_continuous(v, I) for v in points]
    cont_labels = [lab for lab, f in zip(labels, flags) if f]
    sub = space.restrict(cont_labels)
    one = ()
    complement = {lab for lab, f in zip(labels, flags) if not f}
    union = set()
    witnesses = {}
    for x in sorted(I.elems):
        piece = {
            lab
            for lab, v in zip(labels, points)
            if v.table_vals[x] is not ZERO and lex_le(one, v.table_vals[x])
        }
        union |= piece
        witnesses[A.names[x]] = sorted(piece)
        # {1 <= v(x)} is the basic open Spv(1/x), so it is open in Spv(A,I)
        if frozenset(piece) not in set(space.subbasis):
            raise BenchError("complement piece is not a basic open")
    verification = {
        "complement_is_union_of_value_ge_one_opens": union == complement,
        "pieces": witnesses,
    }
    cont_points = [v for v, f in zip(points, flags) if f]
    return cont_points, sub, cont_labels, verification
