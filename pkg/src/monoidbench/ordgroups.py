"""Lexicographically ordered Z^k and its subgroup lattice.

Value elements live in Gamma_* = Z^k_lex with an adjoined basepoint ZERO
that sits strictly below every vector.  Subgroups are integer row spans in
Hermite normal form; convex subgroups of lex Z^k are exactly the suffix
subgroups (first j coordinates zero), so a convex subgroup of a value group
is represented by the group plus a canonical suffix cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError


class ZeroValue:
    """Basepoint of Gamma_*; absorbs multiplication, below every vector."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "zero"


ZERO = ZeroValue()

ValueElem = Union[tuple, ZeroValue]


def lex_cmp(u: ValueElem, v: ValueElem) -> int:
    """Total order on Gamma_*: ZERO below everything, vectors lexicographic."""
    if u is ZERO and v is ZERO:
        return 0
    if u is ZERO:
        return -1
    if v is ZERO:
        return 1
    if len(u) != len(v):
        raise DomainError(f"rank mismatch: {len(u)} vs {len(v)}")
    if u == v:
        return 0
    return -1 if u < v else 1


def lex_le(u, v) -> bool:
    return lex_cmp(u, v) <= 0


def lex_lt(u, v) -> bool:
    return lex_cmp(u, v) < 0


def vmul(u: ValueElem, v: ValueElem) -> ValueElem:
    """Product in Gamma_* (vector addition; ZERO absorbing)."""
    if u is ZERO or v is ZERO:
        return ZERO
    return tuple(a + b for a, b in zip(u, v))


def vpow(u: ValueElem, n: int) -> ValueElem:
    if u is ZERO:
        return ZERO
    return tuple(n * a for a in u)


def vinv(u: ValueElem) -> ValueElem:
    if u is ZERO:
        raise DomainError("zero has no inverse in Gamma_*")
    return tuple(-a for a in u)


def leading_index(v: Sequence[int]) -> Optional[int]:
    """1-based index of the first nonzero coordinate; None for the zero vector."""
    for i, c in enumerate(v):
        if c != 0:
            return i + 1
    return None


def _hnf(rows: Iterable[Sequence[int]], rank: int) -> tuple:
    """Row-style Hermite normal form: positive pivots left to right,
    entries above each pivot reduced into [0, pivot)."""
    mat = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(rank):
        carrier = None
        rest = []
        for row in mat:
            if row[col] != 0:
                if carrier is None:
                    carrier = row
                else:
                    # gcd-chain the two rows on this column
                    a, b = carrier[col], row[col]
                    while b:
                        q = a // b
                        carrier = [x - q * y for x, y in zip(carrier, row)]
                        carrier, row = row, carrier
                        a, b = carrier[col], row[col]
                    rest.append(row)
            else:
                rest.append(row)
        if carrier is not None:
            if carrier[col] < 0:
                carrier = [-x for x in carrier]
            basis.append(carrier)
            mat = [r for r in rest if any(r)]
        else:
            mat = rest
    # reduce entries above each pivot
    for i in reversed(range(len(basis))):
        piv_col = next(j for j, c in enumerate(basis[i]) if c != 0)
        piv = basis[i][piv_col]
        for j in range(i):
            q = basis[j][piv_col] // piv
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return tuple(tuple(r) for r in basis)


@dataclass(frozen=True)
class Subgroup:
    """Finitely generated subgroup of Z^rank, canonical HNF basis."""

    rank: int
    basis: tuple

    @classmethod
    def generated(cls, rank: int, vectors: Iterable[Sequence[int]]) -> "Subgroup":
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != rank:
                raise DomainError("vector rank mismatch")
        return cls(rank, _hnf(vecs, rank))

    @classmethod
    def trivial(cls, rank: int) -> "Subgroup":
        return cls(rank, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return not self.basis

    def pivots(self) -> tuple:
        """0-based pivot columns of the HNF basis, ascending."""
        return tuple(next(j for j, c in enumerate(r) if c != 0) for r in self.basis)

    def min_leading_index(self) -> Optional[int]:
        """Smallest 1-based leading index over nonzero members (None if trivial).

        For an echelon basis this is the first pivot column + 1.
        """
        if self.is_trivial:
            return None
        return self.pivots()[0] + 1

    def coords(self, vec: Sequence[int]) -> Optional[tuple]:
        """Coefficients of vec over the basis, or None if not a member."""
        v = list(vec)
        if len(v) != self.rank:
            raise DomainError("vector rank mismatch")
        out = []
        for row in self.basis:
            piv = next(j for j, c in enumerate(row) if c != 0)
            c = v[piv]
            if c % row[piv] != 0:
                return None
            q = c // row[piv]
            out.append(q)
            v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        return tuple(out)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coords(vec) is not None

    def from_coords(self, coeffs: Sequence[int]) -> tuple:
        v = [0] * self.rank
        for q, row in zip(coeffs, self.basis):
            for j, c in enumerate(row):
                v[j] += q * c
        return tuple(v)

    def suffix_intersection(self, j: int) -> "Subgroup":
        """Members whose first j coordinates vanish.

        With an echelon basis these are spanned by the rows with pivot >= j.
        """
        return Subgroup(self.rank, tuple(r for r in self.basis if all(c == 0 for c in r[:j])))

    def subgroup_le(self, other: "Subgroup") -> bool:
        return all(other.contains(r) for r in self.basis)


def subgroup_generated(vectors: Iterable[Sequence[int]], rank: Optional[int] = None) -> Subgroup:
    vecs = [tuple(v) for v in vectors]
    if rank is None:
        if not vecs:
            raise DomainError("cannot infer rank from no vectors")
        rank = len(vecs[0])
    return Subgroup.generated(rank, vecs)


@dataclass(frozen=True)
class ConvexSubgroup:
    """Convex subgroup of a value group: ambient intersected with a suffix cut.

    ``cut`` is canonical: the smallest j with ambient /\\ suffix(j) equal to
    the subgroup.
    """

    ambient: Subgroup
    cut: int

    @property
    def group(self) -> Subgroup:
        return self.ambient.suffix_intersection(self.cut)

    @property
    def is_trivial(self) -> bool:
        return self.group.is_trivial

    @property
    def is_whole(self) -> bool:
        return self.group == self.ambient

    def contains(self, vec) -> bool:
        return self.group.contains(vec)

    def subgroup_le(self, other: "ConvexSubgroup") -> bool:
        if self.ambient != other.ambient:
            raise DomainError("convex subgroups of different ambient groups")
        return self.cut >= other.cut


def make_convex(ambient: Subgroup, raw_cut: int) -> ConvexSubgroup:
    """Canonicalize the cut: smallest j giving the same intersection."""
    target = ambient.suffix_intersection(raw_cut)
    j = raw_cut
    while j > 0 and ambient.suffix_intersection(j - 1) == target:
        j -= 1
    return ConvexSubgroup(ambient, j)


def whole_convex(ambient: Subgroup) -> ConvexSubgroup:
    return make_convex(ambient, 0)


def trivial_convex(ambient: Subgroup) -> ConvexSubgroup:
    return make_convex(ambient, ambient.rank)


def convex_subgroup_generated(gamma: Subgroup, vectors: Iterable[Sequence[int]]) -> ConvexSubgroup:
    """Smallest convex-in-gamma subgroup containing the given members."""
    leads = []
    for v in vectors:
        if not gamma.contains(v):
            raise DomainError(f"{tuple(v)} is not a member of the ambient group")
        li = leading_index(v)
        if li is not None:
            leads.append(li)
    if not leads:
        return trivial_convex(gamma)
    return make_convex(gamma, min(leads) - 1)


def is_cofinal(g: ValueElem, H: ConvexSubgroup) -> bool:
    """Does some power of g drop below every member of H?

    Closed form: ZERO always; the identity never; a vector iff its leading
    coordinate is negative and its leading index is at most the minimal
    leading index of H (no constraint when H is trivial).
    """
    if g is ZERO:
        return True
    li = leading_index(g)
    if li is None:
        return False
    if g[li - 1] > 0:
        return False
    bound = H.group.min_leading_index()
    return bound is None or li <= bound
