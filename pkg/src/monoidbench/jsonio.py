"""JSON schemas for monoids, elements, ideals, valuations, A-sets, spaces."""

from __future__ import annotations

from typing import Optional

from .asets import ASet
from .errors import InvalidElement, InvalidMonoid
from .ideals import Ideal, ideal_generate, minimal_generators
from .monoids import BOTTOM, LatticeMonoid, Monoid, MonoidHom, TableMonoid
from .ordgroups import ZERO
from .topology import FiniteSpace, SubbasisSpace
from .valuations import DivRelation, Valuation, lattice_valuation, trivial_valuation


def parse_monoid(doc: dict) -> Monoid:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InvalidMonoid("monoid document needs a 'kind'")
    if doc["kind"] == "table":
        names = tuple(doc.get("names", ()))
        table = tuple(tuple(row) for row in doc.get("table", ()))
        return TableMonoid(names, table)
    if doc["kind"] == "lattice":
        return LatticeMonoid(
            tuple(doc.get("free", ())), tuple(doc.get("invertible", ()))
        )
    raise InvalidMonoid(f"unknown monoid kind {doc['kind']!r}")


def monoid_to_json(A: Monoid) -> dict:
    if isinstance(A, TableMonoid):
        return {"kind": "table", "names": list(A.names), "table": [list(r) for r in A.table]}
    return {"kind": "lattice", "free": list(A.free), "invertible": list(A.invertible)}


def parse_element(A: Monoid, doc):
    if doc == "bottom":
        if isinstance(A, TableMonoid):
            return 0
        return BOTTOM
    if isinstance(A, TableMonoid):
        if isinstance(doc, str):
            return A.index(doc)
        if isinstance(doc, int):
            return A.check_elem(doc)
        raise InvalidElement(f"bad table element {doc!r}")
    if not isinstance(doc, dict):
        raise InvalidElement(f"bad lattice element {doc!r}")
    unknown = set(doc) - set(A.names)
    if unknown:
        raise InvalidElement(f"unknown generators {sorted(unknown)}")
    vec = tuple(int(doc.get(g, 0)) for g in A.names)
    return A.check_elem(vec)


def element_to_json(A: Monoid, x):
    if isinstance(A, TableMonoid):
        return A.names[A.check_elem(x)]
    if x is BOTTOM:
        return "bottom"
    return {g: e for g, e in zip(A.names, x) if e != 0}


def parse_ideal(A: Monoid, doc: dict) -> Ideal:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise InvalidElement("ideal document needs 'generators'")
    gens = [parse_element(A, g) for g in doc["generators"]]
    return ideal_generate(A, gens)


def ideal_to_json(I: Ideal) -> dict:
    A = I.owner
    return {"generators": [element_to_json(A, g) for g in minimal_generators(I)]}


def parse_valuation(A: Monoid, doc: dict) -> Valuation:
    if not isinstance(doc, dict):
        raise InvalidElement("valuation document must be an object")
    zeros = list(doc.get("zeros", ()))
    if isinstance(A, TableMonoid):
        idx = frozenset(A.index(z) for z in zeros) | {0}
        return trivial_valuation(Ideal(A, elems=idx))
    rank = int(doc.get("rank", 0))
    images = {}
    for g, vec in doc.get("images", {}).items():
        if g not in A.names:
            raise InvalidElement(f"unknown generator {g!r}")
        images[g] = tuple(int(c) for c in vec)
        if len(images[g]) != rank:
            raise InvalidElement(f"image of {g!r} has the wrong rank")
    for z in zeros:
        if z not in A.names:
            raise InvalidElement(f"unknown generator {z!r}")
        images[z] = ZERO
    missing = set(A.names) - set(images)
    if missing:
        # unmentioned generators default to the identity value
        for g in missing:
            images[g] = (0,) * rank
    return lattice_valuation(A, images, rank=rank)


def valuation_to_json(v: Valuation) -> dict:
    A = v.owner
    if isinstance(A, TableMonoid):
        zeros = [A.names[x] for x in sorted(A.elements()) if v.table_vals[x] is ZERO]
        return {"rank": v.rank, "images": {}, "zeros": zeros}
    images = {}
    zeros = []
    for g, img in zip(A.names, v.images):
        if img is ZERO:
            zeros.append(g)
        else:
            images[g] = list(img)
    return {"rank": v.rank, "images": images, "zeros": zeros}


def parse_aset(A: Monoid, doc: dict) -> ASet:
    if not isinstance(doc, dict) or "elements" not in doc or "action" not in doc:
        raise InvalidElement("A-set document needs 'elements' and 'action'")
    elements = tuple(doc["elements"])
    action = doc["action"]
    if isinstance(A, TableMonoid):
        rows = []
        for name in A.names:
            if name in action:
                rows.append(tuple(int(i) for i in action[name]))
            elif name == A.names[0]:
                rows.append((0,) * len(elements))
            elif name == A.names[A.one]:
                rows.append(tuple(range(len(elements))))
            else:
                raise InvalidElement(f"missing action row for {name!r}")
        return ASet(A, elements, action_table=tuple(rows))
    rows = []
    for g in A.names:
        if g not in action:
            raise InvalidElement(f"missing action row for generator {g!r}")
        rows.append(tuple(int(i) for i in action[g]))
    return ASet(A, elements, gen_action=tuple(rows))


def aset_to_json(M: ASet) -> dict:
    A = M.monoid
    if isinstance(A, TableMonoid):
        action = {name: list(row) for name, row in zip(A.names, M.action_table)}
    else:
        action = {g: list(row) for g, row in zip(A.names, M.gen_action)}
    return {"elements": list(M.elements), "action": action}


def parse_hom(doc: dict) -> MonoidHom:
    if not isinstance(doc, dict) or "source" not in doc or "target" not in doc:
        raise InvalidElement("hom document needs 'source', 'target', 'map'")
    S = parse_monoid(doc["source"])
    T = parse_monoid(doc["target"])
    mapping = doc.get("map", {})
    if isinstance(S, TableMonoid):
        images = []
        for name in S.names:
            if name not in mapping:
                raise InvalidElement(f"missing image for element {name!r}")
            images.append(parse_element(T, mapping[name]))
        return MonoidHom(S, T, elem_map=tuple(images))
    images = []
    for g in S.names:
        if g not in mapping:
            raise InvalidElement(f"missing image for generator {g!r}")
        images.append(parse_element(T, mapping[g]))
    return MonoidHom(S, T, gen_map=tuple(images))


def parse_relation(A: TableMonoid, doc: dict) -> DivRelation:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise InvalidElement("relation document needs 'matrix'")
    matrix = tuple(tuple(bool(v) for v in row) for row in doc["matrix"])
    if len(matrix) != A.size or any(len(r) != A.size for r in matrix):
        raise InvalidElement("relation matrix has the wrong shape")
    return DivRelation(A, matrix)


def relation_to_json(rel: DivRelation) -> dict:
    return {"matrix": [[bool(v) for v in row] for row in rel.matrix]}


def space_to_json(space) -> dict:
    if isinstance(space, FiniteSpace):
        return {
            "points": list(space.points),
            "opens": sorted(
                [sorted(u) for u in space.opens], key=lambda u: (len(u), u)
            ),
        }
    return {
        "points": list(space.points),
        "subbasis": sorted(
            [sorted(s) for s in space.subbasis], key=lambda s: (len(s), s)
        ),
    }


def parse_space(doc: dict):
    if not isinstance(doc, dict) or "points" not in doc:
        raise InvalidElement("space document needs 'points'")
    points = tuple(doc["points"])
    if "opens" in doc:
        space = FiniteSpace(points, frozenset(frozenset(u) for u in doc["opens"]))
        space.validate_closure()
        return space
    if "subbasis" in doc:
        return SubbasisSpace(points, tuple(frozenset(s) for s in doc["subbasis"]))
    raise InvalidElement("space document needs 'opens' or 'subbasis'")
