"""Groebner-fan cells: weight equivalence, cone descriptions, certified box
sampling, the canonical universal basis and generic-fan comparison."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .circuits import circuits_truncated
from .generic import RandomSpec, gcs_truncated
from .groebner import (
    IdealHandle,
    default_lex_cap,
    hilbert_function,
    initial_ideal_w,
    lex_bound,
)
from .order import CANONICAL, DRL, MonomialOrder, leading_term, weighted
from .ring import (
    Monomial,
    Polynomial,
    initial_support_w,
    make_weight,
    poly_str,
    weight_value,
)


class FanConsistencyError(RuntimeError):
    """A sampled weight escaped the cone recorded for its own cell."""


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        return None
    return tuple(x // g for x in v)


def _canonical_equality(v):
    v = _primitive(v)
    if v is None:
        return None
    lead = next(x for x in v if x != 0)
    if lead < 0:
        v = tuple(-x for x in v)
    return v


@dataclass(frozen=True)
class Cone:
    """Closure of a weight-equivalence class: integer linear equalities and
    weak inequalities on exponent differences."""

    equalities: tuple  # tuples of ints, each meaning v . w = 0
    inequalities: tuple  # tuples of ints, each meaning v . w >= 0

    @staticmethod
    def build(equalities, inequalities) -> "Cone":
        eqs = sorted({e for e in (_canonical_equality(v) for v in equalities) if e})
        ins = sorted({p for p in (_primitive(v) for v in inequalities) if p})
        return Cone(tuple(eqs), tuple(ins))

    def contains(self, w, strict: bool = False) -> bool:
        w = make_weight(w)
        for v in self.equalities:
            if sum(a * b for a, b in zip(v, w)) != 0:
                return False
        for v in self.inequalities:
            s = sum(a * b for a, b in zip(v, w))
            if s < 0 or (strict and s == 0):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "equalities": [list(v) for v in self.equalities],
            "inequalities": [list(v) for v in self.inequalities],
        }


@dataclass(frozen=True)
class FanCell:
    fingerprint: str
    rep_weight: tuple
    cone: Cone
    initial_basis: tuple  # canonical reduced basis of the weight initial ideal

    @property
    def full_dimensional(self) -> bool:
        return not self.cone.equalities


@dataclass(frozen=True)
class FanSketch:
    cells: tuple
    box: int
    step: int
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "cells": [
                {
                    "initial_ideal": list(c.initial_basis),
                    "rep_weight": list(c.rep_weight),
                    **c.cone.to_json(),
                }
                for c in self.cells
            ],
            "box": self.box,
            "step": self.step,
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# cell tests


def _initial_supports(I: IdealHandle, w, tie: MonomialOrder):
    gb = I.groebner(weighted(w, tie=tie))
    return [(g.support(), initial_support_w(g.support(), w)) for g in gb.elements]


def weight_equiv(I: IdealHandle, w, w2, tie: MonomialOrder = DRL) -> bool:
    """Two weights give the same initial ideal iff they select the same
    initial supports on the weight-refined reduced basis."""
    w, w2 = make_weight(w), make_weight(w2)
    for supp, initial in _initial_supports(I, w, tie):
        if initial_support_w(supp, w2) != initial:
            return False
    return True


def cone_of(I: IdealHandle, w, tie: MonomialOrder = DRL) -> Cone:
    """Linearized equivalence-class closure at a weight.

    For each reduced-basis element: equalities between tied maximal exponent
    vectors, weak inequalities from maximal against non-maximal ones.
    """
    w = make_weight(w)
    eqs = []
    ins = []
    for supp, initial in _initial_supports(I, w, tie):
        initial = sorted(initial)
        rest = sorted(supp - frozenset(initial))
        for a, b in itertools.combinations(initial, 2):
            eqs.append(tuple(x - y for x, y in zip(a, b)))
        for a in initial:
            for c in rest:
                ins.append(tuple(x - y for x, y in zip(a, c)))
    return Cone.build(eqs, ins)


def _fingerprint(I: IdealHandle, w, tie: MonomialOrder):
    Jw = initial_ideal_w(I, w, tie=tie)
    gens = tuple(poly_str(g) for g in Jw.groebner(CANONICAL).elements)
    return " | ".join(gens), gens


# ---------------------------------------------------------------------------
# box sampling


def _grid_representatives(n: int, B: int, step: int):
    """Grid weights with minimum entry pinned to -B: one representative per
    all-ones translate class meeting the box."""
    axis = range(-B, B + 1, step)
    for w in itertools.product(axis, repeat=n):
        if min(w) == -B:
            yield w


def enumerate_fan(I: IdealHandle, B: int, step: int = 1, tie: MonomialOrder = DRL) -> FanSketch:
    """Certified sampling of the fan over the integer box [-B, B]^n.

    Every sampled weight is either strictly inside a recorded cone or opens a
    new cell whose cone it must strictly satisfy.
    """
    if B < 1 or step < 1:
        raise ValueError("box bound and step must be positive")
    cells = []
    seen = {}
    for w in _grid_representatives(I.ring.n, B, step):
        matched = None
        for cell in cells:
            if cell.cone.contains(w, strict=True):
                matched = cell
                break
        if matched is not None:
            if not matched.cone.contains(w):
                raise FanConsistencyError(f"weight {w} escaped its cone")
            continue
        fp, gens = _fingerprint(I, w, tie)
        if fp in seen:
            raise FanConsistencyError(
                f"weights {seen[fp]} and {w} share an initial ideal but not a cone"
            )
        cone = cone_of(I, w, tie)
        if not cone.contains(w, strict=True):
            raise FanConsistencyError(f"weight {w} is not interior to its own cone")
        cell = FanCell(fp, tuple(w), cone, gens)
        cells.append(cell)
        seen[fp] = w
    cells.sort(key=lambda c: c.rep_weight, reverse=True)
    return FanSketch(tuple(cells), B, step)


def newton_fan_oracle(f: Polynomial, B: int = 4, step: int = 1) -> FanSketch:
    """Independent fan oracle for a principal ideal.

    The cell of a weight is its argmax set over the exponent vectors of the
    generator; cones come from pairwise exponent differences.  No Groebner
    machinery is involved.
    """
    if f.is_zero():
        raise ValueError("zero generator")
    fld = f.ring.field
    exps = sorted(f.terms)
    cells = []
    seen = set()
    for w in _grid_representatives(f.ring.n, B, step):
        vals = [weight_value(m, w) for m in exps]
        top = max(vals)
        argmax = tuple(m for m, v in zip(exps, vals) if v == top)
        if argmax in seen:
            continue
        seen.add(argmax)
        rest = [m for m in exps if m not in argmax]
        eqs = [
            tuple(x - y for x, y in zip(a, b))
            for a, b in itertools.combinations(argmax, 2)
        ]
        ins = [
            tuple(x - y for x, y in zip(a, c)) for a in argmax for c in rest
        ]
        # fingerprint matching the sampler's: the monic initial form is the
        # canonical reduced basis of the initial ideal of a principal ideal
        form = Polynomial(f.ring, {m: f.terms[m] for m in argmax})
        _, lc = leading_term(form, CANONICAL)
        monic = form.scale(fld.invert(lc))
        fp = poly_str(monic)
        cells.append(FanCell(fp, tuple(w), Cone.build(eqs, ins), (fp,)))
    cells.sort(key=lambda c: c.rep_weight, reverse=True)
    return FanSketch(tuple(cells), B, step)


# ---------------------------------------------------------------------------
# universal basis and fan comparison


def universal_basis(I: IdealHandle, sketch: FanSketch) -> list:
    """Union of the reduced bases over the full-dimensional sampled cells,
    deduplicated up to nonzero scalar via monic canonical form."""
    fld = I.ring.field
    out = {}
    for cell in sketch.cells:
        if not cell.full_dimensional:
            continue
        gb = I.groebner(weighted(cell.rep_weight, tie=DRL))
        for g in gb.elements:
            _, lc = leading_term(g, CANONICAL)
            monic = g.scale(fld.invert(lc))
            out[poly_str(monic)] = monic
    return [out[k] for k in sorted(out)]


def generic_fan_compare(
    I: IdealHandle, J: IdealHandle, spec: RandomSpec, mode: str = "generic"
) -> dict:
    """One-directional fan-equality certificate through truncated circuits.

    mode "generic" compares certified generic circuits sets (equal generic
    fans); mode "deterministic" compares plain circuits sets (equal fans).
    """
    if mode not in ("generic", "deterministic"):
        raise ValueError("mode must be 'generic' or 'deterministic'")
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    cap = max(default_lex_cap(I), default_lex_cap(J))
    HI = hilbert_function(I, cap)
    HJ = hilbert_function(J, cap)
    if HI.ideal_dims != HJ.ideal_dims:
        return {
            "verdict": "incomparable",
            "reason": "Hilbert mismatch",
            "dims": [list(HI.ideal_dims), list(HJ.ideal_dims)],
        }
    _, D = lex_bound(I, cap)
    if mode == "generic":
        left = gcs_truncated(I, D, spec)
        right = gcs_truncated(J, D, RandomSpec(spec.seed + 1, spec.entry_bound))
    else:
        left = circuits_truncated(I, D)
        right = circuits_truncated(J, D)
    equal = left == right
    return {
        "verdict": "EQUAL-FAN-CERTIFIED" if equal else "INCONCLUSIVE",
        "mode": mode,
        "lex_bound": D,
        "circuits_equal": equal,
    }
