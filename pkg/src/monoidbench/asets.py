"""Finite A-sets, their A-subsets, and the hull-kernel spaces SSet and Id.

An A-set is a finite pointed set with an action of a monoid A.  Over a table
monoid the action is a full table (one endomap per monoid element); over a
lattice monoid it is one endomap per generator, pairwise commuting, with
bijective maps for invertible generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .errors import DomainError, InvalidElement, InvalidMonoid, ResourceBound
from .monoids import BOTTOM, LatticeMonoid, Monoid, MonoidHom, TableMonoid
from .topology import SubbasisSpace, hull_kernel_space, subset_label

ASUBSET_GUARD = 12


@dataclass(frozen=True)
class ASet:
    monoid: Monoid
    elements: tuple  # labels; index 0 is the basepoint
    action_table: tuple = None  # table owner: per monoid element, an endomap
    gen_action: tuple = None  # lattice owner: per generator, an endomap
    is_self: bool = False  # the monoid acting on itself by multiplication

    def __post_init__(self):
        n = len(self.elements)
        if n == 0 or len(set(self.elements)) != n:
            raise InvalidMonoid("A-set needs distinct labels and a basepoint")
        A = self.monoid
        if isinstance(A, TableMonoid):
            if self.action_table is None or len(self.action_table) != A.size:
                raise InvalidMonoid("action table must cover every monoid element")
            for row in self.action_table:
                if len(row) != n or any(not 0 <= v < n for v in row):
                    raise InvalidMonoid("endomap out of range")
            if any(v != 0 for v in self.action_table[0]):
                raise InvalidMonoid("0_A must send everything to the basepoint")
            if A.size > 1 and any(
                self.action_table[A.one][i] != i for i in range(n)
            ):
                raise InvalidMonoid("1 must act as the identity")
            if any(row[0] != 0 for row in self.action_table):
                raise InvalidMonoid("the basepoint must be fixed by every element")
            for a in A.elements():
                for b in A.elements():
                    ab = A.table[a][b]
                    for i in range(n):
                        if self.action_table[ab][i] != self.action_table[a][self.action_table[b][i]]:
                            raise InvalidMonoid("action is not associative")
        else:
            if self.gen_action is None or len(self.gen_action) != A.rank:
                raise InvalidMonoid("need one endomap per generator")
            for row in self.gen_action:
                if len(row) != n or any(not 0 <= v < n for v in row):
                    raise InvalidMonoid("endomap out of range")
                if row[0] != 0:
                    raise InvalidMonoid("the basepoint must be fixed")
            for i, gi in enumerate(self.gen_action):
                for gj in self.gen_action[i + 1 :]:
                    if any(gi[gj[x]] != gj[gi[x]] for x in range(n)):
                        raise InvalidMonoid("generator endomaps must commute")
            for g, row in zip(A.names, self.gen_action):
                if g in A.invertible and len(set(row)) != n:
                    raise InvalidMonoid(f"invertible generator {g} must act bijectively")

    @property
    def size(self) -> int:
        return len(self.elements)

    def _gen_power(self, row, e: int, i: int) -> int:
        if e >= 0:
            for _ in range(e):
                i = row[i]
            return i
        inv = [0] * len(row)
        for src, dst in enumerate(row):
            inv[dst] = src
        for _ in range(-e):
            i = inv[i]
        return i

    def act(self, a, i: int):
        """Image of element index i under the action of a."""
        if not 0 <= i < self.size:
            raise InvalidElement("A-set element index out of range")
        A = self.monoid
        if isinstance(A, TableMonoid):
            A.check_elem(a)
            return self.action_table[a][i]
        A.check_elem(a)
        if a is BOTTOM:
            return 0
        for row, e in zip(self.gen_action, a):
            if e:
                i = self._gen_power(row, e, i)
        return i

    def orbit(self, i: int) -> frozenset:
        """A.i as a set of element indices (always includes the basepoint)."""
        A = self.monoid
        if isinstance(A, TableMonoid):
            return frozenset(self.action_table[a][i] for a in A.elements())
        seen = {0, i}
        frontier = [i]
        while frontier:
            x = frontier.pop()
            for g, row in zip(self.monoid.names, self.gen_action):
                nxts = [row[x]]
                if g in self.monoid.invertible:
                    nxts.append(self._gen_power(row, -1, x))
                for y in nxts:
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return frozenset(seen)


def regular_aset(A: TableMonoid) -> ASet:
    """A acting on itself by multiplication; A-subsets are the ideals."""
    if not isinstance(A, TableMonoid):
        raise DomainError("the regular A-set needs a finite monoid")
    return ASet(A, A.names, action_table=A.table, is_self=True)


def aset_via_hom(f: MonoidHom) -> ASet:
    """The target of a hom into a table monoid, as an A-set over the source."""
    T = f.target
    if not isinstance(T, TableMonoid):
        raise DomainError("finite A-sets only")
    S = f.source
    if isinstance(S, TableMonoid):
        tbl = tuple(
            tuple(T.table[f.apply(a)][x] for x in T.elements()) for a in S.elements()
        )
        return ASet(S, T.names, action_table=tbl)
    rows = tuple(
        tuple(T.table[f.apply(S.gen_vector(g))][x] for x in T.elements())
        for g in S.names
    )
    return ASet(S, T.names, gen_action=rows)


def wedge(M: ASet, N: ASet) -> ASet:
    """One-point union at the basepoint (labels are prefixed to stay unique)."""
    if M.monoid != N.monoid:
        raise InvalidElement("wedge needs a common acting monoid")
    labels = ("0",) + tuple(f"l.{x}" for x in M.elements[1:]) + tuple(
        f"r.{x}" for x in N.elements[1:]
    )

    def mix(rowm, rown):
        out = [0]
        out.extend(0 if v == 0 else v for v in rowm[1:])
        off = M.size - 1
        out.extend(0 if v == 0 else v + off for v in rown[1:])
        return tuple(out)

    A = M.monoid
    if isinstance(A, TableMonoid):
        tbl = tuple(
            mix(M.action_table[a], N.action_table[a]) for a in A.elements()
        )
        return ASet(A, labels, action_table=tbl)
    rows = tuple(mix(m, n) for m, n in zip(M.gen_action, N.gen_action))
    return ASet(A, labels, gen_action=rows)


def is_asubset(M: ASet, sub: frozenset) -> bool:
    """Indices sub form a pointed action-stable subset."""
    if 0 not in sub:
        return False
    A = M.monoid
    if isinstance(A, TableMonoid):
        return all(M.action_table[a][i] in sub for a in A.elements() for i in sub)
    for g, row in zip(A.names, M.gen_action):
        for i in sub:
            if row[i] not in sub:
                return False
            if g in A.invertible and M._gen_power(row, -1, i) not in sub:
                return False
    return True


def enumerate_asubsets(M: ASet, bound: int = ASUBSET_GUARD) -> List[frozenset]:
    """All A-subsets as frozensets of labels, ordered by (size, labels)."""
    if M.size > bound:
        raise ResourceBound(f"A-set larger than the enumeration bound {bound}")
    rest = range(1, M.size)
    found = []
    for r in range(M.size):
        for comb in itertools.combinations(rest, r):
            cand = frozenset(comb) | {0}
            if is_asubset(M, cand):
                found.append(frozenset(M.elements[i] for i in cand))
    found.sort(key=lambda s: (len(s), subset_label(s)))
    return found


def sset_space(M: ASet) -> Tuple[SubbasisSpace, Dict[str, frozenset]]:
    """Hull-kernel space on SSet(M|A), plus label -> subset legend."""
    subs = enumerate_asubsets(M)
    space = hull_kernel_space(M.elements, subs)
    legend = {subset_label(s): s for s in subs}
    return space, legend


def sset_proper_space(M: ASet) -> Tuple[SubbasisSpace, Dict[str, frozenset]]:
    """SSet(M|A) minus the full subset M (spectral for finitely generated M,
    which every finite M is)."""
    space, legend = sset_space(M)
    full = subset_label(frozenset(M.elements))
    trimmed = space.restrict([p for p in space.points if p != full])
    legend = {k: v for k, v in legend.items() if k != full}
    return trimmed, legend


def id_space(A: TableMonoid):
    return sset_space(regular_aset(A))


def id_proper_space(A: TableMonoid):
    return sset_proper_space(regular_aset(A))


def is_finitely_generated(M: ASet, N: Iterable[str]) -> Tuple[bool, frozenset]:
    """Always true for finite A-sets; the witness is a minimal generating
    subset (one representative per source class of the action preorder)."""
    labels = tuple(N)
    index = {x: i for i, x in enumerate(M.elements)}
    ids = [index[x] for x in labels]
    if 0 not in ids:
        raise InvalidElement("an A-subset contains the basepoint")
    sub = frozenset(ids)
    if not is_asubset(M, sub):
        raise InvalidElement("not an A-subset")
    orbit = {i: M.orbit(i) & sub for i in sub}
    klass = {
        i: frozenset(j for j in sub if j in orbit[i] and i in orbit[j]) for i in sub
    }
    witness = []
    for i in sorted(sub):
        if i == 0:
            continue
        if any(i in orbit[j] and j not in klass[i] for j in sub):
            continue
        if min(klass[i]) == i:
            witness.append(i)
    return True, frozenset(M.elements[i] for i in witness)
