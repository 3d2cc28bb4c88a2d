"""Families from (j, d) and from a prescribed multiplicative polynomial."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .poly import (
    HomPoly,
    IntPoly,
    NotSquarefree,
    RatFunc,
    deg_place,
    factor_hom,
    factor_q,
    is_squarefree_hom,
    is_squarefree_poly,
    poly_gcd,
)
from .surface import EllipticSurface, analyze, deg_irr


class DegenerateJ(ValueError):
    pass


class TargetUnachievable(ValueError):
    pass


ONE = IntPoly.const(1)


@dataclass(frozen=True)
class FamilyRecipe:
    j: RatFunc
    d: RatFunc
    c4: RatFunc
    c6: RatFunc
    # construction data when built for a target; None for bare (j, d) recipes
    target: HomPoly | None = None
    Q: tuple = ()
    k: tuple = ()
    R: tuple = field(default=())  # (R1, R2, R3, R4, R5)

    def surface(self) -> EllipticSurface:
        return EllipticSurface(self.c4, self.c6)

    def to_dict(self):
        d = {"j": self.j.to_text(), "d": self.d.to_text(), "c4": self.c4.to_text(), "c6": self.c6.to_text()}
        if self.target is not None:
            d["target_M"] = self.target.to_text()
            d["k"] = list(self.k)
            d.update({f"R{i + 1}": r.to_text("t") for i, r in enumerate(self.R)})
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def invariants_from_j_d(j: RatFunc, d: RatFunc):
    if j.is_zero() or (j - 1728).is_zero():
        raise DegenerateJ("j is identically 0 or 1728")
    if d.is_zero():
        raise ValueError("d must be nonzero")
    c4 = d**2 * j * (j - 1728)
    c6 = d**3 * j * (j - 1728) ** 2
    return c4, c6


def recipe_from_j_d(j: RatFunc, d: RatFunc) -> FamilyRecipe:
    c4, c6 = invariants_from_j_d(j, d)
    return FamilyRecipe(j, d, c4, c6)


def from_j_d(j, d) -> EllipticSurface:
    """Surface with c4 = d^2 j (j - 1728), c6 = d^3 j (j - 1728)^2 (so its j-invariant is j)."""
    j, d = RatFunc._coerce(j), RatFunc._coerce(d)
    return recipe_from_j_d(j, d).surface()


def recipe_from_invariants(c4: RatFunc, c6: RatFunc) -> FamilyRecipe:
    """Recover (j, d) from c4, c6 with c4 c6 != 0: d = c6 / (c4 (j - 1728))."""
    if c4.is_zero() or c6.is_zero():
        raise DegenerateJ("j is identically 0 or 1728")
    s = EllipticSurface(c4, c6)
    j = c4**3 / s.delta()
    d = c6 / (c4 * (j - 1728))
    return FamilyRecipe(j, d, c4, c6)


def _poly(p) -> IntPoly:
    if p is None:
        return ONE
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly.const(p)
    raise TypeError("expected an IntPoly")


def _coprime(a: IntPoly, b: IntPoly) -> bool:
    if a.degree() < 1 or b.degree() < 1:
        return True
    return poly_gcd(a, b).degree() == 0


def _radical(p: IntPoly) -> IntPoly:
    if p.degree() < 1:
        return ONE
    _, facs = factor_q(p)
    out = ONE
    for f, _ in facs:
        out = out * f
    return out


def _linear_avoiding(polys, skip=()):
    """t + c for the least c >= 0 with t + c prime to every poly and c not in skip."""
    c = 0
    while True:
        if c not in skip and all(p.degree() < 1 or p(-c) != 0 for p in polys):
            return IntPoly((c, 1))
        c += 1


def target_m(P: HomPoly, k=None, R1=None, R2=None, R3=None, R4=None, verify: bool = True) -> FamilyRecipe:
    """A family whose multiplicative places are exactly the factors of P.

    j = R3 / (R1 R2^2 prod Q_i^k_i), d = R4 R5 prod Q_i^k_i with Q_i = P_i(1, t)
    and R5 the radical of R2. Unspecified R's default to 1; if x | P then a
    default R3 of degree sum(k_i deg Q_i) + 1 is chosen, and R4 gets a linear
    factor when needed to fix the parity of d at the degree place. The result
    is checked against the surface analyzer unless verify is False."""
    if P.degree < 1 or P.is_zero():
        raise TargetUnachievable("target must be a nonconstant polynomial")
    if not is_squarefree_hom(P):
        raise NotSquarefree(P.to_text())
    P = P.normalized()
    _, facs = factor_hom(P)
    has_x = any(F == deg_place() for F, _ in facs)
    Q = tuple(F.dehom_x() for F, _ in facs if F != deg_place())
    if k is None:
        k = (1,) * len(Q)
    k = tuple(k)
    if len(k) != len(Q) or any(e < 1 for e in k):
        raise TargetUnachievable("need one positive exponent per finite factor")
    R1, R2, R4 = _poly(R1), _poly(R2), _poly(R4)
    S = sum(e * q.degree() for e, q in zip(k, Q))
    auto_r3 = R3 is None and has_x
    if R3 is None:
        R3 = _linear_avoiding(Q + (R1, R2)) ** (S + 1) if has_x else ONE
    R3 = _poly(R3)
    R5 = _radical(R2)
    prodQ = ONE
    for q, e in zip(Q, k):
        prodQ = prodQ * q**e
    den = R1 * R2 * R2 * prodQ

    if auto_r3 and R4 == ONE:
        # at the degree place j has a pole of order deg R3 - deg den; d must match its parity
        pole = R3.degree() - den.degree()
        if (R5.degree() + prodQ.degree()) % 2 != pole % 2:
            R4 = _linear_avoiding(Q + (R1, R2, R3), skip=(R3.c[0],))

    _check_constraints(Q, R1, R2, R3, R4, S, has_x)
    j = RatFunc(1, R3, den)
    d = RatFunc(1, R4 * R5 * prodQ)
    c4, c6 = invariants_from_j_d(j, d)
    rec = FamilyRecipe(j, d, c4, c6, P, Q, k, (R1, R2, R3, R4, R5))
    if verify:
        M = analyze(rec.surface()).M
        if M != P:
            raise TargetUnachievable(f"recipe gives M = {M.to_text()}, not {P.to_text()}")
    return rec


def _check_constraints(Q, R1, R2, R3, R4, S, has_x):
    for name, R in (("R1", R1), ("R2", R2), ("R3", R3), ("R4", R4)):
        for q in Q:
            if not _coprime(R, q):
                raise TargetUnachievable(f"{name} shares a factor with {q.to_text('t')}")
    if R1.degree() >= 1 and not is_squarefree_poly(R1):
        raise TargetUnachievable("R1 must be square-free")
    for a, b, name in ((R1, R2, "R1, R2"), (R1, R3, "R1, R3"), (R2, R3, "R2, R3"), (R4, R1, "R4, R1"), (R4, R2, "R4, R2")):
        if not _coprime(a, b):
            raise TargetUnachievable(f"{name} must be coprime")
    if has_x and R3.degree() <= S:
        raise TargetUnachievable("x | P needs deg R3 > sum k_i deg Q_i")
    if not has_x and R3.degree() > S:
        raise TargetUnachievable("deg R3 must not exceed sum k_i deg Q_i")


def _deg_irr_t(p: IntPoly) -> int:
    if p.is_zero() or p.degree() < 1:
        return 0
    _, facs = factor_q(p)
    return max(f.degree() for f, _ in facs)


def predict_deg_irr_bprime(recipe: FamilyRecipe) -> int:
    """Largest degree of an irreducible factor of B', read off the recipe.

    For target recipes this is the max over P, R1, R2, R3 and
    R3 - 1728 R1 R2^2 prod Q_i^k_i; for bare (j, d) recipes the numerator of
    j, its denominator and the numerator of j - 1728 play those roles. The
    answer is 1 when every term has degree 0."""
    if recipe.target is not None:
        R1, R2, R3 = recipe.R[:3]
        prodQ = ONE
        for q, e in zip(recipe.Q, recipe.k):
            prodQ = prodQ * q**e
        terms = [deg_irr(recipe.target), _deg_irr_t(R1), _deg_irr_t(R2), _deg_irr_t(R3),
                 _deg_irr_t(R3 - R1 * R2 * R2 * prodQ * 1728)]
    else:
        j = recipe.j
        terms = [_deg_irr_t(j.num), _deg_irr_t(j.den), _deg_irr_t((j - 1728).num)]
    m = max(terms)
    return m if m > 0 else 1


def recipe_from_json(obj) -> FamilyRecipe:
    """{"j": ..., "d": ...} or {"target_M": ..., "k": [...], "R1": ...}."""
    from .polytext import parse_hompoly, parse_intpoly, parse_ratfunc

    if "target_M" in obj:
        kw = {name: parse_intpoly(str(obj[name])) for name in ("R1", "R2", "R3", "R4") if name in obj}
        return target_m(parse_hompoly(str(obj["target_M"])), k=obj.get("k"), **kw)
    if "j" in obj:
        return recipe_from_j_d(parse_ratfunc(str(obj["j"])), parse_ratfunc(str(obj.get("d", "1"))))
    raise ValueError("recipe needs 'j' or 'target_M'")
