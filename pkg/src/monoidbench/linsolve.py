"""Exact rational linear feasibility and integer feasibility.

Inequalities are kept as ``sum(c_i * x_i) + const >= 0`` (or ``> 0`` when
strict).  Rational feasibility runs Fourier-Motzkin elimination over exact
fractions and returns a certificate either way: a witness vector that is
re-checked against the system, or Farkas multipliers combining input rows
into a contradiction.  Integer feasibility is branch-and-bound over the
rational relaxation; homogeneous callers are expected to scale rational
witnesses themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ResourceBound


@dataclass(frozen=True)
class Row:
    coeffs: tuple
    const: Fraction
    strict: bool
    # provenance: multipliers over the original rows (Farkas bookkeeping)
    mult: tuple

    def evaluate(self, x):
        return sum(c * v for c, v in zip(self.coeffs, x)) + self.const

    def holds(self, x) -> bool:
        val = self.evaluate(x)
        return val > 0 if self.strict else val >= 0


class LinearSystem:
    """A conjunction of linear constraints over nvars rational unknowns."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list = []

    def _push(self, coeffs, const, strict):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient vector has the wrong length")
        idx = len(self.rows)
        self.rows.append(Row(coeffs, Fraction(const), strict, ((idx, Fraction(1)),)))

    def add_ge(self, coeffs, const=0, strict=False):
        """sum(c*x) + const >= 0 (or > 0 when strict)."""
        self._push(coeffs, const, strict)

    def add_eq(self, coeffs, const=0):
        """sum(c*x) + const == 0, stored as a pair of inequalities."""
        self._push(coeffs, const, False)
        self._push(tuple(-Fraction(c) for c in coeffs), -Fraction(const), False)

    def copy(self) -> "LinearSystem":
        out = LinearSystem(self.nvars)
        out.rows = list(self.rows)
        return out

    def check(self, x) -> bool:
        return all(r.holds(x) for r in self.rows)


@dataclass(frozen=True)
class FeasReport:
    feasible: bool
    witness: Optional[tuple]
    farkas: Optional[tuple]

    def certificate(self) -> dict:
        if self.feasible:
            return {"feasible": True, "witness": [str(v) for v in self.witness]}
        return {
            "feasible": False,
            "farkas": [[i, str(m)] for i, m in self.farkas],
        }


def _combine_mult(m1, m2, f1, f2):
    acc = {}
    for idx, m in m1:
        acc[idx] = acc.get(idx, Fraction(0)) + f1 * m
    for idx, m in m2:
        acc[idx] = acc.get(idx, Fraction(0)) + f2 * m
    return tuple(sorted(acc.items()))


def rational_feasible(system: LinearSystem) -> FeasReport:
    """Fourier-Motzkin decision with witness or Farkas certificate."""
    rows = list(system.rows)
    stages = []  # (var index, rows mentioning it) for back-substitution
    for var in reversed(range(system.nvars)):
        pos, neg, zero = [], [], []
        for r in rows:
            c = r.coeffs[var]
            if c > 0:
                pos.append(r)
            elif c < 0:
                neg.append(r)
            else:
                zero.append(r)
        stages.append((var, pos + neg))
        new_rows = zero
        for rp in pos:
            cp = rp.coeffs[var]
            for rn in neg:
                cn = rn.coeffs[var]
                # eliminate: (1/cp)*rp + (1/-cn)*rn
                f1, f2 = Fraction(1, 1) / cp, Fraction(1, 1) / (-cn)
                coeffs = tuple(
                    f1 * a + f2 * b for a, b in zip(rp.coeffs, rn.coeffs)
                )
                const = f1 * rp.const + f2 * rn.const
                new_rows.append(
                    Row(
                        coeffs,
                        const,
                        rp.strict or rn.strict,
                        _combine_mult(rp.mult, rn.mult, f1, f2),
                    )
                )
        rows = new_rows
    for r in rows:
        bad = r.const < 0 or (r.const == 0 and r.strict)
        if bad:
            return FeasReport(False, None, r.mult)
    # back-substitute, preferring integer values inside the allowed interval
    x = [Fraction(0)] * system.nvars
    for var, vrows in reversed(stages):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for r in vrows:
            c = r.coeffs[var]
            rest = sum(
                r.coeffs[j] * x[j] for j in range(system.nvars) if j != var and r.coeffs[j]
            )
            bound = -(rest + r.const) / c
            if c > 0:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_strict = bound, r.strict
            else:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_strict = bound, r.strict
        x[var] = _pick_value(lo, lo_strict, hi, hi_strict)
    witness = tuple(x)
    if not system.check(witness):
        raise AssertionError("back-substitution produced a bad witness")
    return FeasReport(True, witness, None)


def _pick_value(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        c = _floor_fr(hi) if not hi_strict else _ceil_fr(hi) - 1
        return Fraction(min(c, 0))
    if hi is None:
        c = _ceil_fr(lo) if not lo_strict else _floor_fr(lo) + 1
        return Fraction(max(c, 0))
    # bounded interval: try an integer first
    lo_int = _ceil_fr(lo) + (1 if lo_strict and lo == _ceil_fr(lo) else 0)
    hi_int = _floor_fr(hi) - (1 if hi_strict and hi == _floor_fr(hi) else 0)
    if lo_int <= hi_int:
        pick = max(lo_int, 0) if lo_int <= 0 <= hi_int else lo_int
        return Fraction(pick)
    return (lo + hi) / 2


def _floor_fr(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil_fr(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def verify_farkas(system: LinearSystem, farkas) -> bool:
    """Re-derive the contradiction from the multipliers."""
    coeffs = [Fraction(0)] * system.nvars
    const = Fraction(0)
    strict = False
    for idx, m in farkas:
        if m < 0:
            return False
        row = system.rows[idx]
        for j, c in enumerate(row.coeffs):
            coeffs[j] += m * c
        const += m * row.const
        if row.strict and m > 0:
            strict = True
    if any(c != 0 for c in coeffs):
        return False
    return const < 0 or (const == 0 and strict)


@dataclass(frozen=True)
class IntFeasReport:
    feasible: bool
    witness: Optional[tuple]
    transcript: tuple

    def certificate(self) -> dict:
        if self.feasible:
            return {"feasible": True, "witness": list(self.witness)}
        return {"feasible": False, "nodes": list(self.transcript)}


def integer_feasible(system: LinearSystem, guard_nodes: int = 20000) -> IntFeasReport:
    """Branch-and-bound over the exact rational relaxation.

    Sound both ways: witnesses are integral and re-checked; infeasibility is
    concluded only when every branch is pruned by a rational Farkas
    certificate.  Raises ResourceBound when the node guard trips.
    """
    transcript = []
    stack = [system]
    nodes = 0
    while stack:
        nodes += 1
        if nodes > guard_nodes:
            raise ResourceBound("integer feasibility exceeded the node guard")
        sub = stack.pop()
        rep = rational_feasible(sub)
        if not rep.feasible:
            transcript.append({"farkas": [[i, str(m)] for i, m in rep.farkas]})
            continue
        frac_var = next(
            (j for j, v in enumerate(rep.witness) if v.denominator != 1), None
        )
        if frac_var is None:
            witness = tuple(int(v) for v in rep.witness)
            return IntFeasReport(True, witness, tuple(transcript))
        v = rep.witness[frac_var]
        left = sub.copy()
        unit = [0] * system.nvars
        unit[frac_var] = -1
        left.add_ge(unit, _floor_fr(v))  # x_j <= floor(v)
        right = sub.copy()
        unit2 = [0] * system.nvars
        unit2[frac_var] = 1
        right.add_ge(unit2, -_ceil_fr(v))  # x_j >= ceil(v)
        transcript.append({"branch_var": frac_var, "at": str(v)})
        stack.append(left)
        stack.append(right)
    return IntFeasReport(False, None, tuple(transcript))
