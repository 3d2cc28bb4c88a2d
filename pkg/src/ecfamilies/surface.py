"""Elliptic surfaces over Q(t): homogenized invariants and reduction at places."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize
from .poly import (
    HomPoly,
    RatFunc,
    deg_place,
    factor_q,
    homogenize_place,
    hom_product,
)

GOOD = "Good"
MULTIPLICATIVE = "Multiplicative"
ADD_POT_MULT = "AddPotMult"
ADD_POT_GOOD = "AddPotGood"

NOT_BAD = "NotBad"
HALF_BAD = "HalfBad"
QUITE_BAD = "QuiteBad"


class NotASurface(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class EllipticSurface:
    c4: RatFunc
    c6: RatFunc

    def __post_init__(self):
        if self.delta().is_zero():
            raise NotASurface("c4^3 - c6^2 vanishes identically")

    def delta(self) -> RatFunc:
        return (self.c4**3 - self.c6**2) * Fraction(1, 1728)

    def scaled(self, lam) -> EllipticSurface:
        lam = Fraction(lam)
        return EllipticSurface(self.c4 * lam**4, self.c6 * lam**6)


def j_invariant(s: EllipticSurface) -> RatFunc:
    return s.c4**3 / s.delta()


def is_constant_j(s: EllipticSurface) -> bool:
    return j_invariant(s).is_const()


def classify(e4, e6, eD) -> str:
    """Reduction class from exponents; None stands for an infinite exponent."""
    if eD == 0:
        return GOOD
    if e4 == 0 and e6 == 0:
        return MULTIPLICATIVE
    if e4 == 2 and e6 == 3 and eD > 6:
        return ADD_POT_MULT
    return ADD_POT_GOOD


def _ge(e, bound):
    return e is None or e >= bound


def badness(e4, e6, eD) -> str:
    if eD == 0:
        return NOT_BAD
    if _ge(e4, 2) and _ge(e6, 3) and eD == 6:
        return HALF_BAD
    return QUITE_BAD


@dataclass(frozen=True)
class PlaceRecord:
    place: HomPoly
    e4: int | None
    e6: int | None
    eD: int
    klass: str
    badness: str

    def to_dict(self):
        return {
            "poly": self.place.to_text(),
            "e4": self.e4,
            "e6": self.e6,
            "eD": self.eD,
            "class": self.klass,
            "badness": self.badness,
        }


@dataclass(frozen=True)
class Homogenized:
    """C4 = c4const * prod P^e4 etc., with the factor data kept alongside."""
    C4: HomPoly
    C6: HomPoly
    D: HomPoly
    q1: int
    n: int
    # place -> (e4, e6, eD); includes the degree place x
    exponents: dict = field(default_factory=dict)
    consts: tuple = (0, 0, 0)  # integer constants of C4, C6, D


@dataclass(frozen=True)
class SurfaceAnalysis:
    surface: EllipticSurface
    places: tuple
    M: HomPoly
    B: HomPoly
    Bprime: HomPoly
    C4: HomPoly
    C6: HomPoly
    D: HomPoly
    j: RatFunc
    j_constant: bool
    homog: Homogenized

    def to_dict(self):
        return {
            "c4": self.surface.c4.to_text(),
            "c6": self.surface.c6.to_text(),
            "j": self.j.to_text(),
            "j_constant": self.j_constant,
            "C4": self.C4.to_text(),
            "C6": self.C6.to_text(),
            "D": self.D.to_text(),
            "places": [p.to_dict() for p in self.places],
            "M": self.M.to_text(),
            "B": self.B.to_text(),
            "Bprime": self.Bprime.to_text(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _rf_factor(r: RatFunc):
    """scalar and {primitive irreducible: exponent} with negative exponents for the denominator."""
    cn, fn = factor_q(r.num) if r.num.degree() >= 1 else (r.num.c[0], [])
    cd, fd = factor_q(r.den) if r.den.degree() >= 1 else (r.den.c[0], [])
    exps = {}
    for q, m in fn:
        exps[q] = exps.get(q, 0) + m
    for q, m in fd:
        exps[q] = exps.get(q, 0) - m
    return r.scalar * Fraction(cn, cd), exps


def _min_q1(pairs) -> int:
    """Least positive integer q with q^k * s integral for every (s, k)."""
    need = {}
    for s, k in pairs:
        den = Fraction(s).denominator
        if den == 1:
            continue
        for p, e in factorize(den).require().factors:
            need[p] = max(need.get(p, 0), _ceil_div(e, k))
    q = 1
    for p, e in need.items():
        q *= p**e
    return q


def homogenize_invariants(s: EllipticSurface) -> Homogenized:
    c4, c6, dl = s.c4, s.c6, s.delta()
    s4, f4 = _rf_factor(c4) if not c4.is_zero() else (Fraction(0), None)
    s6, f6 = _rf_factor(c6) if not c6.is_zero() else (Fraction(0), None)
    sD, fD = _rf_factor(dl)
    keys = set(fD)
    for f in (f4, f6):
        if f is not None:
            keys |= set(f)
    m = {}
    for q in keys:
        terms = []
        if f4 is not None:
            terms.append(_ceil_div(-f4.get(q, 0), 4))
        if f6 is not None:
            terms.append(_ceil_div(-f6.get(q, 0), 6))
        m[q] = max(terms)

    def shifted(f, w):
        return {q: f.get(q, 0) + w * m[q] for q in keys}

    e4 = shifted(f4, 4) if f4 is not None else None
    e6 = shifted(f6, 6) if f6 is not None else None
    eD = shifted(fD, 12)

    def deg(e):
        return sum(v * q.degree() for q, v in e.items())

    cands = []
    if e4 is not None:
        cands.append(_ceil_div(deg(e4), 4))
    if e6 is not None:
        cands.append(_ceil_div(deg(e6), 6))
    n = max(cands)
    q1 = _min_q1([(s4, 4), (s6, 6), (sD, 12)])

    def build(sc, e, w):
        if e is None:
            return HomPoly(w * n, [0]), 0, None
        k = sc * Fraction(q1) ** w
        assert k.denominator == 1
        ex = w * n - deg(e)
        P = HomPoly.const(int(k)) * deg_place() ** ex
        for q, v in sorted(e.items(), key=lambda kv: (kv[0].degree(), kv[0].c)):
            if v:
                P = P * homogenize_place(q) ** v
        return P, int(k), ex

    C4, k4, x4 = build(s4, e4, 4)
    C6, k6, x6 = build(s6, e6, 6)
    D, kD, xD = build(sD, eD, 12)
    exps = {}
    for q in keys:
        if eD[q] == 0 and q not in fD:
            continue
        exps[homogenize_place(q).normalized()] = (
            e4[q] if e4 is not None else None,
            e6[q] if e6 is not None else None,
            eD[q],
        )
    exps[deg_place()] = (x4, x6, xD)
    return Homogenized(C4, C6, D, q1, n, exps, (k4, k6, kD))


def classify_places(h: Homogenized):
    out = []
    for P, (e4, e6, eD) in h.exponents.items():
        if eD == 0 and P != deg_place():
            continue
        out.append(PlaceRecord(P, e4, e6, eD, classify(e4, e6, eD), badness(e4, e6, eD)))
    out.sort(key=lambda r: (r.place.degree, [-abs(a) for a in r.place.c], r.place.c))
    # the degree place first, then by degree and coefficients
    out.sort(key=lambda r: r.place != deg_place())
    return tuple(out)


def mbb(places):
    M = hom_product(r.place for r in places if r.klass == MULTIPLICATIVE)
    B = hom_product(r.place for r in places if r.klass != GOOD)
    Bp = hom_product(r.place for r in places if r.badness == QUITE_BAD)
    return M, B, Bp


def analyze(s: EllipticSurface) -> SurfaceAnalysis:
    h = homogenize_invariants(s)
    places = classify_places(h)
    M, B, Bp = mbb(places)
    j = j_invariant(s)
    return SurfaceAnalysis(s, places, M, B, Bp, h.C4, h.C6, h.D, j, j.is_const(), h)


def deg_irr(P: HomPoly) -> int:
    """Largest degree of an irreducible factor (0 for constants)."""
    from .poly import factor_hom

    if P.degree == 0:
        return 0
    _, facs = factor_hom(P)
    return max(f.degree for f, _ in facs)
