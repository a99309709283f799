"""Pointed commutative monoids: the multiplication-table and lattice families.

Every monoid here is commutative, has an identity 1 and an absorbing
basepoint 0.  Two computable families are supported:

* ``TableMonoid`` -- a finite monoid given by its full multiplication
  table; index 0 is the basepoint, index 1 the identity.
* ``LatticeMonoid`` -- N^a x Z^b with an adjoined basepoint ``BOTTOM``;
  multiplication is coordinatewise addition of exponent vectors.

All values are immutable; every operation is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateLocalization,
    InvalidElement,
    InvalidHom,
    InvalidMonoid,
    NotTorsionFree,
    ResourceBound,
    UnsupportedQuotient,
)


class Bottom:
    """The absorbing basepoint of a lattice monoid."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "bottom"


BOTTOM = Bottom()

LatticeElem = Union[tuple, Bottom]
Elem = Union[int, tuple, Bottom]


@dataclass(frozen=True)
class TableMonoid:
    """Finite pointed monoid given by its multiplication table.

    ``names[i]`` labels element ``i``; ``table[i][j]`` is the index of the
    product.  Index 0 is the basepoint, index 1 the identity.  The trivial
    monoid (0 = 1) is the one-element table and is flagged via
    ``is_trivial``.
    """

    names: tuple
    table: tuple

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise InvalidMonoid("empty table monoid")
        if len(set(self.names)) != n:
            raise InvalidMonoid("duplicate element names")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InvalidMonoid("table is not square of the right size")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise InvalidMonoid("table entry out of range")
        if any(self.table[0][j] != 0 for j in range(n)):
            raise InvalidMonoid("row of 0 must be constantly 0")
        if n > 1 and any(self.table[1][j] != j for j in range(n)):
            raise InvalidMonoid("row of 1 must be the identity permutation")
        for i in range(n):
            for j in range(i, n):
                if self.table[i][j] != self.table[j][i]:
                    raise InvalidMonoid(
                        f"not commutative at ({self.names[i]},{self.names[j]})"
                    )
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise InvalidMonoid(
                            "not associative at "
                            f"({self.names[i]},{self.names[j]},{self.names[k]})"
                        )

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 0 if self.is_trivial else 1

    def elements(self):
        return range(self.size)

    def check_elem(self, x) -> int:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.size:
            raise InvalidElement(f"{x!r} is not an element index of this monoid")
        return x

    def mul(self, x: int, y: int) -> int:
        self.check_elem(x)
        self.check_elem(y)
        return self.table[x][y]

    def power(self, x: int, n: int) -> int:
        self.check_elem(x)
        if n < 0:
            raise InvalidElement("negative power in a table monoid")
        acc = self.one
        for _ in range(n):
            acc = self.table[acc][x]
        return acc

    def power_cycle(self, x: int):
        """Return (m, p) with x^m = x^(m+p), m >= 1, p >= 1 minimal-ish.

        m + p <= size + 1 always, so both are <= size.
        """
        seen = {}
        cur = x
        n = 1
        while cur not in seen:
            seen[cur] = n
            cur = self.table[cur][x]
            n += 1
        return seen[cur], n - seen[cur]

    def is_unit(self, x: int) -> bool:
        self.check_elem(x)
        return any(self.table[x][y] == self.one for y in range(self.size))

    def inverse(self, x: int) -> int:
        for y in range(self.size):
            if self.table[x][y] == self.one:
                return y
        raise InvalidElement(f"{self.names[x]} is not a unit")

    def unit_indices(self) -> frozenset:
        return frozenset(x for x in range(self.size) if self.is_unit(x))

    def submonoid_closure(self, gens: Iterable[int]) -> frozenset:
        """Smallest multiplicatively closed subset containing gens and 1."""
        out = {self.one}
        frontier = list(out | {self.check_elem(g) for g in gens})
        out.update(frontier)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    c = self.table[a][b]
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(out)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidElement(f"no element named {name!r}") from None


@dataclass(frozen=True)
class LatticeMonoid:
    """N^a x Z^b with adjoined basepoint.

    ``free`` names the a coordinates constrained to be >= 0; ``invertible``
    names the b unconstrained coordinates.  Elements are integer vectors of
    length a+b, or ``BOTTOM``.
    """

    free: tuple
    invertible: tuple

    def __post_init__(self):
        names = self.free + self.invertible
        if len(set(names)) != len(names):
            raise InvalidMonoid("duplicate generator names")

    @property
    def a(self) -> int:
        return len(self.free)

    @property
    def b(self) -> int:
        return len(self.invertible)

    @property
    def rank(self) -> int:
        return self.a + self.b

    @property
    def names(self) -> tuple:
        return self.free + self.invertible

    @property
    def one(self):
        return (0,) * self.rank

    @property
    def zero(self):
        return BOTTOM

    @property
    def is_trivial(self) -> bool:
        return False

    def check_elem(self, x):
        if x is BOTTOM:
            return x
        if (
            not isinstance(x, tuple)
            or len(x) != self.rank
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in x)
        ):
            raise InvalidElement(f"{x!r} is not a vector of rank {self.rank}")
        if any(c < 0 for c in x[: self.a]):
            raise InvalidElement(f"{x!r} has a negative free coordinate")
        return x

    def mul(self, x, y):
        self.check_elem(x)
        self.check_elem(y)
        if x is BOTTOM or y is BOTTOM:
            return BOTTOM
        return tuple(u + v for u, v in zip(x, y))

    def power(self, x, n: int):
        self.check_elem(x)
        if x is BOTTOM:
            return BOTTOM
        if n < 0:
            if any(c != 0 for c in x[: self.a]):
                raise InvalidElement("negative power of a non-unit")
        return tuple(n * c for c in x)

    def is_unit(self, x) -> bool:
        self.check_elem(x)
        return x is not BOTTOM and all(c == 0 for c in x[: self.a])

    def gen_vector(self, name: str):
        i = self.index(name)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidElement(f"no generator named {name!r}") from None

    def free_part(self, x) -> tuple:
        self.check_elem(x)
        if x is BOTTOM:
            raise InvalidElement("bottom has no free part")
        return x[: self.a]


Monoid = Union[TableMonoid, LatticeMonoid]


def mul(A: Monoid, x, y):
    """Product of two elements; basepoint absorbing."""
    return A.mul(x, y)


def is_cancellative(A: Monoid) -> bool:
    """True iff ab = ac implies b = c for all nonzero a.

    Exhaustive for table monoids; lattice monoids cancel by construction.
    """
    if isinstance(A, LatticeMonoid):
        return True
    if A.is_trivial:
        return True
    for a in range(1, A.size):
        seen = {}
        for b in range(A.size):
            p = A.table[a][b]
            if p in seen and seen[p] != b:
                return False
            seen[p] = b
    return True


def _monomial_name(names: Sequence[str], vec: Sequence[int]) -> str:
    parts = []
    for g, e in zip(names, vec):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def quotient_by_ideal(A: Monoid, I) -> tuple:
    """Rees quotient A/I together with the canonical surjection.

    Elements of I collapse to 0; everything else is untouched.  For lattice
    monoids the complement must be finite: group rank 0 and a pure power of
    every free generator inside I.
    """
    from .ideals import Ideal  # cycle-free: used for isinstance only

    if not isinstance(I, Ideal) or I.owner != A:
        raise InvalidElement("ideal does not belong to this monoid")
    if isinstance(A, TableMonoid):
        keep = [i for i in A.elements() if i == 0 or not I.contains(i)]
        names = tuple(A.names[i] for i in keep)
        pos = {e: i for i, e in enumerate(keep)}

        def cls(e):
            return 0 if (e != 0 and I.contains(e)) or e == 0 else pos[e]

        table = tuple(
            tuple(cls(A.table[x][y]) for y in keep) for x in keep
        )
        Q = TableMonoid(names, table)
        hom = MonoidHom(A, Q, elem_map=tuple(cls(e) for e in A.elements()))
        return Q, hom

    if A.b > 0:
        raise UnsupportedQuotient("group-rank generators make the complement infinite")
    bounds = []
    for i in range(A.a):
        pure = [g[i] for g in I.gens if all(c == 0 for j, c in enumerate(g) if j != i) and g[i] > 0]
        if not pure:
            raise UnsupportedQuotient(
                f"no pure power of {A.free[i]} in the ideal; complement infinite"
            )
        bounds.append(min(pure))
    complement = [
        v
        for v in itertools.product(*(range(b) for b in bounds))
        if not I.contains(v)
    ]
    complement.sort(key=lambda v: (sum(v), v))
    names = ("0",) + tuple(_monomial_name(A.free, v) for v in complement)
    pos = {v: i + 1 for i, v in enumerate(complement)}

    def cls(v):
        return pos.get(v, 0)

    n = len(names)
    table = [[0] * n for _ in range(n)]
    for v, i in pos.items():
        for w, j in pos.items():
            s = tuple(x + y for x, y in zip(v, w))
            table[i][j] = cls(s)
    Q = TableMonoid(names, tuple(tuple(r) for r in table))
    gen_images = tuple(cls(tuple(A.gen_vector(g))) for g in A.names)
    hom = MonoidHom(A, Q, gen_map=gen_images)
    return Q, hom


def localize(A: Monoid, S) -> tuple:
    """Localization of A at a multiplicative set, with the canonical map.

    Table case: S is an iterable of element indices; it is closed under
    multiplication first.  A collapse to the trivial monoid (0 in the
    closure of S) is reported as degenerate, never returned silently.
    Lattice case: S is an iterable of generator names to invert, i.e. the
    complement of the prime spanned by the remaining free generators.
    """
    if isinstance(A, TableMonoid):
        S_cl = A.submonoid_closure(S)
        if 0 in S_cl:
            raise DegenerateLocalization("0 lies in the multiplicative closure of S")
        pairs = [(a, s) for a in A.elements() for s in sorted(S_cl)]

        def related(p, q):
            a, s = p
            b, t = q
            at = A.table[a][t]
            bs = A.table[b][s]
            return any(A.table[u][at] == A.table[u][bs] for u in S_cl)

        classes = []
        assigned = {}
        for p in pairs:
            for ci, rep in enumerate(classes):
                if related(p, rep):
                    assigned[p] = ci
                    break
            else:
                assigned[p] = len(classes)
                classes.append(p)
        zero_c = assigned[(0, A.one)]
        one_c = assigned[(A.one, A.one)]
        # reorder classes so the basepoint is 0 and the identity is 1
        if zero_c == one_c:
            raise DegenerateLocalization("localization collapses 0 and 1")
        order = [zero_c, one_c] + [c for c in range(len(classes)) if c not in (zero_c, one_c)]
        newpos = {c: i for i, c in enumerate(order)}

        def name_of(ci):
            if ci == zero_c:
                return "0"
            if ci == one_c:
                return "1"
            a, s = classes[ci]
            if s == A.one:
                return A.names[a]
            return f"{A.names[a]}/{A.names[s]}"

        names = tuple(name_of(ci) for ci in order)
        n = len(order)
        table = [[0] * n for _ in range(n)]
        for i, ci in enumerate(order):
            a, s = classes[ci]
            for j, cj in enumerate(order):
                b, t = classes[cj]
                prod = (A.table[a][b], A.table[s][t])
                table[i][j] = newpos[assigned[prod]]
        L = TableMonoid(names, tuple(tuple(r) for r in table))
        hom = MonoidHom(
            A, L, elem_map=tuple(newpos[assigned[(a, A.one)]] for a in A.elements())
        )
        return L, hom

    invert = set(S)
    unknown = invert - set(A.names)
    if unknown:
        raise InvalidElement(f"unknown generators to invert: {sorted(unknown)}")
    new_free = tuple(g for g in A.free if g not in invert)
    new_inv = tuple(g for g in A.free if g in invert) + A.invertible
    L = LatticeMonoid(new_free, new_inv)
    gen_images = []
    for g in A.names:
        tgt = L.names.index(g)
        gen_images.append(tuple(1 if j == tgt else 0 for j in range(L.rank)))
    hom = MonoidHom(A, L, gen_map=tuple(gen_images))
    return L, hom


def group_completion(A: Monoid) -> tuple:
    """Invert every nonzero element; requires {0} to be a prime ideal."""
    if isinstance(A, LatticeMonoid):
        return localize(A, A.free)
    if A.is_trivial:
        raise NotTorsionFree("the trivial monoid has no prime zero ideal")
    for x in range(1, A.size):
        for y in range(1, A.size):
            if A.table[x][y] == 0:
                raise NotTorsionFree(
                    f"{A.names[x]}*{A.names[y]} = 0, so {{0}} is not prime"
                )
    return localize(A, range(1, A.size))


@dataclass(frozen=True)
class MonoidHom:
    """Morphism of pointed monoids.

    Table sources carry a full index map; lattice sources carry images of
    the generators.  Construction validates the homomorphism laws; the
    local/surjective/zero-kernel flags are always recomputed by
    ``check_hom``, never stored.
    """

    source: Monoid
    target: Monoid
    elem_map: tuple = None
    gen_map: tuple = None
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.validate:
            problems = hom_violations(self)
            if problems:
                raise InvalidHom("; ".join(problems))

    def apply(self, x):
        if isinstance(self.source, TableMonoid):
            self.source.check_elem(x)
            return self.elem_map[x]
        self.source.check_elem(x)
        if x is BOTTOM:
            return self.target.zero
        T = self.target
        acc = T.one
        for e, img in zip(x, self.gen_map):
            if e == 0:
                continue
            if isinstance(T, TableMonoid):
                if img == 0:
                    return 0
                base = img if e > 0 else T.inverse(img)
                for _ in range(abs(e)):
                    acc = T.table[acc][base]
            else:
                if img is BOTTOM:
                    return BOTTOM
                acc = tuple(u + e * v for u, v in zip(acc, img))
        return acc

    def compose_after(self, g: "MonoidHom") -> "MonoidHom":
        """self o g  (apply g first)."""
        if g.target != self.source:
            raise InvalidHom("composition mismatch")
        if isinstance(g.source, TableMonoid):
            return MonoidHom(
                g.source, self.target,
                elem_map=tuple(self.apply(g.elem_map[i]) for i in g.source.elements()),
            )
        return MonoidHom(
            g.source, self.target,
            gen_map=tuple(self.apply(img) for img in g.gen_map),
        )


def hom_violations(f: MonoidHom) -> list:
    """List of homomorphism-law violations (empty means f is a hom)."""
    out = []
    S, T = f.source, f.target
    if isinstance(S, TableMonoid):
        if f.elem_map is None or len(f.elem_map) != S.size:
            return ["element map has the wrong length"]
        try:
            for v in f.elem_map:
                T.check_elem(v)
        except InvalidElement as e:
            return [str(e)]
        if f.elem_map[0] != T.zero:
            out.append("0 does not map to 0")
        if f.elem_map[S.one] != T.one:
            out.append("1 does not map to 1")
        for x in S.elements():
            for y in range(x, S.size):
                lhs = f.elem_map[S.table[x][y]]
                rhs = T.mul(f.elem_map[x], f.elem_map[y])
                if lhs != rhs:
                    out.append(
                        f"f({S.names[x]}*{S.names[y]}) != f({S.names[x]})*f({S.names[y]})"
                    )
                    if len(out) > 4:
                        return out
        return out
    if f.gen_map is None or len(f.gen_map) != S.rank:
        return ["generator map has the wrong length"]
    try:
        for v in f.gen_map:
            T.check_elem(v)
    except InvalidElement as e:
        return [str(e)]
    for g, img in zip(S.names, f.gen_map):
        if g in S.invertible:
            bad = (img is BOTTOM) if isinstance(T, LatticeMonoid) else (img == 0)
            if bad or not T.is_unit(img):
                out.append(f"invertible generator {g} maps to a non-unit")
    return out


@dataclass(frozen=True)
class HomReport:
    is_hom: bool
    violations: tuple
    is_local: bool
    is_surjective: bool
    has_zero_kernel: bool


def check_hom(f: MonoidHom) -> HomReport:
    """Validity report: hom laws plus recomputed local/surjective/zero-kernel."""
    violations = tuple(hom_violations(f))
    ok = not violations
    local = _is_local(f) if ok else False
    surj = _is_surjective(f) if ok else False
    zk = _has_zero_kernel(f) if ok else False
    return HomReport(ok, violations, local, surj, zk)


def _is_local(f: MonoidHom) -> bool:
    S, T = f.source, f.target

    def target_nonunit(v):
        return not T.is_unit(v)

    if isinstance(S, TableMonoid):
        return all(
            target_nonunit(f.elem_map[x])
            for x in S.elements()
            if not S.is_unit(x)
        )
    return all(
        target_nonunit(f.apply(S.gen_vector(g))) for g in S.free
    )


def _images_generate(f: MonoidHom):
    """Closure of the generator/element images inside a finite target."""
    T = f.target
    if isinstance(f.source, TableMonoid):
        gens = set(f.elem_map)
    else:
        gens = set()
        for g, img in zip(f.source.names, f.gen_map):
            gens.add(img)
            if g in f.source.invertible:
                gens.add(T.inverse(img))
    return T.submonoid_closure(g for g in gens if g != 0)


def _is_surjective(f: MonoidHom) -> bool:
    S, T = f.source, f.target
    if isinstance(T, TableMonoid):
        if isinstance(S, TableMonoid):
            return set(f.elem_map) == set(T.elements())
        return set(_images_generate(f)) | {0} >= set(T.elements())
    if isinstance(S, TableMonoid):
        # a finite image only covers the rank-0 lattice monoid {bottom, 1}
        return T.rank == 0
    # lattice -> lattice: the image is a submonoid, so f is onto iff every
    # target generator (e_i free, +-e_j invertible) is an image; each
    # membership is an integer feasibility question.
    from .linsolve import LinearSystem, integer_feasible

    live = [i for i, img in enumerate(f.gen_map) if img is not BOTTOM]
    targets = []
    for i in range(T.rank):
        e = tuple(1 if j == i else 0 for j in range(T.rank))
        targets.append(e)
        if i >= T.a:
            targets.append(tuple(-c for c in e))
    for tgt in targets:
        system = LinearSystem(len(live))
        for coord in range(T.rank):
            coeffs = [f.gen_map[i][coord] for i in live]
            system.add_eq(coeffs, -tgt[coord])
        for pos, i in enumerate(live):
            if S.names[i] in S.free:
                unit = [0] * len(live)
                unit[pos] = 1
                system.add_ge(unit, 0)
        if not integer_feasible(system).feasible:
            return False
    return True


def _has_zero_kernel(f: MonoidHom) -> bool:
    S, T = f.source, f.target
    if isinstance(S, TableMonoid):
        return all(f.elem_map[x] != T.zero for x in range(1, S.size))
    if isinstance(T, LatticeMonoid):
        return all(img is not BOTTOM for img in f.gen_map)
    if any(img == 0 for img in f.gen_map):
        return False
    return 0 not in _images_generate(f)


def identity_hom(A: Monoid) -> MonoidHom:
    if isinstance(A, TableMonoid):
        return MonoidHom(A, A, elem_map=tuple(A.elements()))
    return MonoidHom(A, A, gen_map=tuple(A.gen_vector(g) for g in A.names))


def power_hom(A: TableMonoid, k: int) -> MonoidHom:
    """The endomorphism a -> a^k; a hom because A is commutative."""
    if k < 1:
        raise InvalidHom("power must be >= 1")
    return MonoidHom(A, A, elem_map=tuple(A.power(x, k) for x in A.elements()))


# Convenient stock monoids.

def free_monoid(*names: str) -> LatticeMonoid:
    return LatticeMonoid(tuple(names), ())


def group_monoid(*names: str) -> LatticeMonoid:
    return LatticeMonoid((), tuple(names))


def two_element_monoid() -> TableMonoid:
    return TableMonoid(("0", "1"), ((0, 0), (0, 1)))


def cyclic_group_monoid(n: int) -> TableMonoid:
    """(Z/n)_*: the cyclic group of order n with an adjoined basepoint."""
    names = ("0",) + tuple("1" if i == 0 else f"g{i}" for i in range(n))
    table = [[0] * (n + 1)]
    for i in range(n):
        table.append([0] + [1 + ((i + j) % n) for j in range(n)])
    return TableMonoid(names, tuple(tuple(r) for r in table))


def truncated_free_monoid(k: int) -> TableMonoid:
    """{0, 1, x, ..., x^(k-1)} with x^k = 0."""
    if k < 1:
        raise InvalidMonoid("need k >= 1")
    names = ("0", "1") + tuple(f"x^{i}" if i > 1 else "x" for i in range(1, k))
    size = k + 1
    table = [[0] * size for _ in range(size)]
    for i in range(1, size):
        for j in range(1, size):
            d = (i - 1) + (j - 1)
            table[i][j] = d + 1 if d < k else 0
    return TableMonoid(names, tuple(tuple(r) for r in table))
