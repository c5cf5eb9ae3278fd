"""Reduced Groebner bases, weight initial ideals, Hilbert functions,
lex-segment ideals and the one-parameter flat family."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .order import CANONICAL, DRL, MonomialOrder, leading_monomial, leading_term, weighted
from .ring import (
    Monomial,
    Polynomial,
    PolyRing,
    RationalField,
    Substitution,
    dim_degree,
    field_from_spec,
    homogenize_w,
    initial_form_w,
    make_weight,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    poly_str,
    specialize_last,
)


class MacaulayError(ValueError):
    """The supplied Hilbert data is not realized by any lex-segment ideal."""


class CapTooSmallError(ValueError):
    """Lex-segment generators did not stabilize within the cap; raise it."""


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple  # monic polynomials, canonically sorted
    reduced: bool = True

    @property
    def max_degree(self) -> int:
        return max((g.degree() for g in self.elements), default=0)

    def leading_monomials(self) -> list:
        return [leading_monomial(g, self.order) for g in self.elements]


class IdealHandle:
    """Homogeneous ideal given by generators, with cached reduced bases."""

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"generator {poly_str(g)} is not homogeneous")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._cache = {}
        self._lock = threading.Lock()

    def groebner(self, order: MonomialOrder = CANONICAL) -> GroebnerBasis:
        with self._lock:
            gb = self._cache.get(order)
        if gb is not None:
            return gb
        gb = buchberger_reduced(self, order)
        with self._lock:
            self._cache.setdefault(order, gb)
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def max_generator_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=0)

    def __repr__(self):
        gens = ", ".join(poly_str(g) for g in self.generators)
        return f"IdealHandle({self.ring}; {gens})"


# ---------------------------------------------------------------------------
# division and Buchberger


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by G; no remainder monomial is divisible by
    a leading monomial of G."""
    order = G.order
    ring = f.ring
    fld = ring.field
    reducers = [(leading_term(g, order), g) for g in G.elements]
    key = order.key
    # in-place elimination on a plain dict: every monomial introduced by a
    # reduction step is strictly below the eliminated one, so moving maximal
    # irreducible terms to the remainder is safe
    work = dict(f.terms)
    remainder = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for (lm, lc), g in reducers:
            if mono_divides(lm, m):
                factor = mono_div(m, lm)
                coeff = fld.div(c, lc)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mono_mul(gm, factor)
                    v = fld.sub(work.get(t, fld.zero), fld.mul(coeff, gc))
                    if fld.is_zero(v):
                        work.pop(t, None)
                    else:
                        work[t] = v
                break
        else:
            remainder[m] = c
    return Polynomial(ring, remainder)


def _s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    fld = f.ring.field
    (mf, cf) = leading_term(f, order)
    (mg, cg) = leading_term(g, order)
    lcm = mono_lcm(mf, mg)
    a = f.mul_monomial(mono_div(lcm, mf)).scale(fld.invert(cf))
    b = g.mul_monomial(mono_div(lcm, mg)).scale(fld.invert(cg))
    return a - b


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, c = leading_term(f, order)
    return f.scale(f.ring.field.invert(c))


def _primitive_scaled(f: Polynomial, order: MonomialOrder) -> Polynomial:
    # over the rationals, monic intermediate elements blow up coefficient
    # sizes; scale to coprime integers with a positive leading coefficient
    fld = f.ring.field
    if not isinstance(fld, RationalField):
        return _monic(f, order)
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = math.gcd(num, abs(c.numerator) * (den // c.denominator))
    scale = Fraction(den, num)
    _, lc = leading_term(f, order)
    if lc < 0:
        scale = -scale
    return f.scale(scale)


def buchberger_reduced(ideal: IdealHandle, order: MonomialOrder = CANONICAL) -> GroebnerBasis:
    """Unique reduced Groebner basis; normal pair selection, coprime-pair
    criterion, then minimalization and autoreduction."""
    ring = ideal.ring
    basis = [_primitive_scaled(g, order) for g in ideal.generators]
    # drop duplicates up front
    seen = set()
    basis = [g for g in basis if not (g in seen or seen.add(g))]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    lm = [leading_monomial(g, order) for g in basis]

    def lcm_key(pair):
        # homogeneous input: processing by S-polynomial degree keeps low-degree
        # reducers available early even under non-graded weight orders
        l = mono_lcm(lm[pair[0]], lm[pair[1]])
        return (sum(l), order.key(l))

    def chain_criterion(i, j):
        l = mono_lcm(lm[i], lm[j])
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lm[k], l):
                continue
            if (min(i, k), max(i, k)) not in pairs and (
                min(j, k),
                max(j, k),
            ) not in pairs:
                return True
        return False

    while pairs:
        i, j = min(pairs, key=lcm_key)
        pairs.remove((i, j))
        if mono_mul(lm[i], lm[j]) == mono_lcm(lm[i], lm[j]):
            continue  # coprime leading monomials
        if chain_criterion(i, j):
            continue
        s = _s_polynomial(basis[i], basis[j], order)
        h = normal_form(s, GroebnerBasis(order, tuple(basis), reduced=False))
        if h.is_zero():
            continue
        h = _primitive_scaled(h, order)
        basis.append(h)
        lm.append(leading_monomial(h, order))
        k = len(basis) - 1
        pairs.update((i2, k) for i2 in range(k))

    # minimalize: keep only elements whose leading monomial is not divisible
    # by another kept leading monomial
    keep = []
    for i in range(len(basis)):
        mi = lm[i]
        redundant = False
        for j in range(len(basis)):
            if i == j:
                continue
            if mono_divides(lm[j], mi) and (lm[j] != mi or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)

    # autoreduce tails
    final = [basis[i] for i in keep]
    changed = True
    while changed:
        changed = False
        for i in range(len(final)):
            others = GroebnerBasis(
                order, tuple(final[:i] + final[i + 1 :]), reduced=False
            )
            r = normal_form(final[i], others)
            if r != final[i]:
                final[i] = _primitive_scaled(r, order)
                changed = True

    final = [_monic(g, order) for g in final]
    final.sort(key=lambda g: order.key(leading_monomial(g, order)))
    return GroebnerBasis(order, tuple(final), reduced=True)


# ---------------------------------------------------------------------------
# initial ideals and equality


def initial_ideal(I: IdealHandle, order: MonomialOrder = CANONICAL) -> IdealHandle:
    """Monomial ideal of leading monomials of the reduced basis."""
    gb = I.groebner(order)
    ring = I.ring
    return IdealHandle(ring, [ring.monomial(m) for m in gb.leading_monomials()])


def initial_ideal_w(I: IdealHandle, w, tie: MonomialOrder = DRL) -> IdealHandle:
    """Ideal generated by the weight initial forms of the weight-refined
    reduced basis; generally not monomial."""
    w = make_weight(w)
    gb = I.groebner(weighted(w, tie=tie))
    return IdealHandle(I.ring, [initial_form_w(g, w) for g in gb.elements])


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    return I.groebner(CANONICAL).elements == J.groebner(CANONICAL).elements


def transform_ideal(s: Substitution, I: IdealHandle) -> IdealHandle:
    return IdealHandle(I.ring, [s.apply(g) for g in I.generators])


# ---------------------------------------------------------------------------
# Hilbert functions and lex segments


@dataclass(frozen=True)
class HilbertData:
    n: int
    dmax: int
    ideal_dims: tuple  # dim I_d for d = 0..dmax
    lex_generator_bound: int = None

    def quotient_dims(self) -> tuple:
        return tuple(dim_degree(self.n, d) - v for d, v in enumerate(self.ideal_dims))


def hilbert_function(I: IdealHandle, dmax: int) -> HilbertData:
    """dim I_d for 0 <= d <= dmax, counted from the canonical initial ideal."""
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    if I.is_zero():
        return HilbertData(I.ring.n, dmax, (0,) * (dmax + 1))
    lms = I.groebner(CANONICAL).leading_monomials()
    dims = []
    for d in range(dmax + 1):
        count = sum(
            1
            for m in monomials_of_degree(I.ring.n, d)
            if any(mono_divides(l, m) for l in lms)
        )
        dims.append(count)
    return HilbertData(I.ring.n, dmax, tuple(dims))


def _lex_desc(n: int, d: int) -> list:
    return sorted(monomials_of_degree(n, d), key=lambda m: tuple(m), reverse=True)


def lex_segment(H: HilbertData, ring: PolyRing, cap: int):
    """Lex-segment ideal realizing the Hilbert data, with its top generator
    degree.

    Returns (monomial IdealHandle, D).  Raises MacaulayError when the data is
    not realized by degreewise lex segments, and CapTooSmallError when new
    generators still appear within the last n degrees below the cap.
    """
    n = ring.n
    if cap < 1:
        raise ValueError("cap must be positive")
    if cap > H.dmax:
        raise ValueError("cap exceeds the available Hilbert data")
    segments = {}
    generators = []
    top_degree = 0
    prev = set()
    for d in range(cap + 1):
        want = H.ideal_dims[d]
        monos = _lex_desc(n, d)
        if want < 0 or want > len(monos):
            raise MacaulayError(f"dim {want} out of range in degree {d}")
        seg = set(monos[:want])
        grown = set()
        for m in prev:
            for i in range(n):
                e = list(m)
                e[i] += 1
                grown.add(tuple(e))
        if not grown <= seg:
            raise MacaulayError(f"lex segment in degree {d} is not an ideal step")
        new = seg - grown
        if new:
            generators.extend(sorted(new, key=lambda m: tuple(m), reverse=True))
            top_degree = d
        segments[d] = seg
        prev = seg
    if top_degree > cap - n:
        if any(segments[d] for d in segments):
            raise CapTooSmallError(
                f"lex-segment generators appear in degree {top_degree}; "
                f"increase cap beyond {cap}"
            )
    L = IdealHandle(ring, [ring.monomial(m) for m in generators])
    return L, top_degree


def default_lex_cap(I: IdealHandle) -> int:
    """Heuristic cap: top degree of the canonical initial ideal plus n."""
    if I.is_zero():
        return I.ring.n
    return initial_ideal(I).max_generator_degree() + I.ring.n


def lex_bound(I: IdealHandle, cap: int = None, max_cap: int = 40):
    """Lex-segment ideal and generator bound, escalating the cap on demand.

    Returns (lex-segment IdealHandle, D).  A cap that never stabilizes below
    max_cap is still an error; it is never silently accepted.
    """
    cap = cap if cap is not None else default_lex_cap(I)
    while True:
        H = hilbert_function(I, cap)
        try:
            return lex_segment(H, I.ring, cap)
        except CapTooSmallError:
            if cap >= max_cap:
                raise
            cap = min(max_cap, cap + I.ring.n)


# ---------------------------------------------------------------------------
# flat family


@dataclass(frozen=True)
class HomogenizedIdeal:
    base: IdealHandle
    weight: tuple
    ring_t: PolyRing
    generators: tuple  # polynomials in the extended ring


def homogenize_ideal_w(I: IdealHandle, w, tie: MonomialOrder = DRL) -> HomogenizedIdeal:
    """Homogenize the weight-refined reduced basis with an extra variable.

    The resulting family interpolates the ideal (t=1), its weight initial
    ideal (t=0) and its diagonal coordinate changes (t=a, a nonzero).
    """
    w = make_weight(w)
    ring_t = I.ring.extended()
    gb = I.groebner(weighted(w, tie=tie))
    gens = tuple(homogenize_w(g, w, ring_t) for g in gb.elements)
    return HomogenizedIdeal(I, w, ring_t, gens)


def specialize_t(H: HomogenizedIdeal, a) -> IdealHandle:
    ring = H.base.ring
    polys = [specialize_last(g, a, ring) for g in H.generators]
    return IdealHandle(ring, [f for f in polys if not f.is_zero()])


# ---------------------------------------------------------------------------
# ideal file format


def parse_ideal_file(text: str):
    """Parse the ideal file format.

    Header declares ``ring: Q | GF(p)`` and ``vars: x,y,z``; a ``gens:`` line
    is followed by one polynomial per line.  Returns (ring, IdealHandle).
    """
    fld = None
    names = None
    gens = []
    in_gens = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_gens:
            gens.append((lineno, line))
            continue
        for part in line.split(";"):
            part = part.strip()
            if not part:
                continue
            if part.lower().startswith("ring:"):
                fld = field_from_spec(part[5:])
            elif part.lower().startswith("vars:"):
                names = tuple(v.strip() for v in part[5:].split(","))
            elif part.lower() == "gens:":
                in_gens = True
            else:
                raise ValueError(f"line {lineno}: unexpected {part!r}")
    if fld is None or names is None:
        raise ValueError("missing ring or vars header")
    ring = PolyRing(names, fld)
    polys = []
    for lineno, line in gens:
        try:
            polys.append(ring.parse(line))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from e
    return ring, IdealHandle(ring, polys)


def ideal_file_text(I: IdealHandle) -> str:
    ring = I.ring
    head = f"ring: {ring.field}; vars: {','.join(ring.names)}"
    lines = [head, "gens:"] + [poly_str(g) for g in I.generators]
    return "\n".join(lines) + "\n"


def basis_json(gb: GroebnerBasis) -> dict:
    return {
        "order": str(gb.order),
        "elements": [poly_str(g) for g in gb.elements],
        "reduced": gb.reduced,
    }
