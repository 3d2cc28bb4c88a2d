"""Rational fibers of a surface: minimal local data and root numbers.

Local root numbers are computed for
  * good reduction (+1),
  * multiplicative reduction at any p: -(-c6'/p), c6' the unit part of c6 of
    a minimal model (the Kronecker symbol at 2 detects -c6' = 1 mod 8),
  * additive, potentially multiplicative reduction at odd p: (-1/p),
  * additive, potentially good reduction at p >= 5: (-1/p), (-2/p), (-3/p)
    according to v(Delta) of a minimal model.
Additive reduction at 2 and 3 (and potentially multiplicative at 2) is left
undetermined unless an oracle table supplies the value.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .averaging import SINGULAR, UNDETERMINED as SKIPPED, Outcome
from .arith import DEFAULT_BUDGET, Budget, FactorizationIncomplete, factorize, kronecker
from .poly import HomPoly
from .surface import EllipticSurface, SurfaceAnalysis, analyze

GOOD = "Good"
MULT_SPLIT = "MultSplit"
MULT_NONSPLIT = "MultNonSplit"
ADD_POT_MULT = "AddPotMult"
ADD_POT_GOOD = "AddPotGood"

UNDETERMINED = None  # value of w / global when no formula applies

ORACLE_MODULI = {2: 2**6, 3: 3**4}


class NotCoprime(ValueError):
    pass


class MalformedTable(ValueError):
    pass


@dataclass(frozen=True)
class FiberCurve:
    """Integral invariants with c4^3 - c6^2 = 1728 * delta.

    delta_parts lists (integer, exponent) pairs whose product is delta; they
    let the caller factor a few small numbers instead of one big one."""
    c4: int
    c6: int
    delta: int
    x: int | None = None
    y: int | None = None
    delta_parts: tuple = ()

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("singular curve")
        if self.c4**3 - self.c6**2 != 1728 * self.delta:
            raise ValueError("c4^3 - c6^2 != 1728 delta")


@dataclass(frozen=True)
class Singular:
    x: int
    y: int


def curve_from_ainvs(a1, a2, a3, a4, a6) -> FiberCurve:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return FiberCurve(c4, c6, disc)


class FiberContext:
    """Precomputed data for specializing one surface at many points."""

    def __init__(self, surface: EllipticSurface | SurfaceAnalysis):
        an = surface if isinstance(surface, SurfaceAnalysis) else analyze(surface)
        self.analysis = an
        self.surface = an.surface
        h = an.homog
        self.C4, self.C6, self.D = h.C4, h.C6, h.D
        self.kD = h.consts[2]
        self.d_places = [(P, e[2]) for P, e in h.exponents.items() if e[2] > 0]
        # poles of c4, c6, Delta and zeros of Delta, as forms in (x, y)
        s = self.surface
        self.pole_forms = [HomPoly.from_t(r.den) for r in (s.c4, s.c6, s.delta()) if not r.is_zero() and r.den.degree() > 0]
        self.delta_num = HomPoly.from_t(s.delta().num)

    def is_singular(self, x: int, y: int) -> bool:
        if x == 0:
            return True
        if any(F(x, y) == 0 for F in self.pole_forms):
            return True
        return self.delta_num(x, y) == 0

    def specialize(self, x: int, y: int):
        if (x, y) == (0, 0) or gcd(x, y) != 1:
            raise NotCoprime(f"({x}, {y}) is not a coprime pair")
        if x < 0:
            x, y = -x, -y  # C4, C6, D have even degree
        if self.is_singular(x, y):
            return Singular(x, y)
        parts = [(self.kD, 1)] + [(P(x, y), e) for P, e in self.d_places]
        return FiberCurve(self.C4(x, y), self.C6(x, y), self.D(x, y), x, y, tuple(parts))


def specialize(s, x: int, y: int):
    """Fiber of s at t = y/x, or Singular."""
    ctx = s if isinstance(s, FiberContext) else FiberContext(s)
    return ctx.specialize(x, y)


# ---------------------------------------------------------------- local data

def _val(n: int, p: int):
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _fl(v, k):
    return None if v is None else v // k


def minimalize_at(c4: int, c6: int, delta: int, p: int):
    """(k, v4, v6, vD) for p >= 5: the shift and minimal valuations (None = infinite)."""
    if p < 5:
        raise ValueError("use minimal_model_at for p = 2, 3")
    v4, v6, vD = _val(c4, p), _val(c6, p), _val(delta, p)
    k = min(x for x in (_fl(v4, 4), _fl(v6, 6), _fl(vD, 12)) if x is not None)
    return k, _sub(v4, 4 * k), _sub(v6, 6 * k), vD - 12 * k


def _sub(v, a):
    return None if v is None else v - a


def _kraus_ok(c4: int, c6: int, p: int) -> bool:
    """Local Kraus condition: integral (c4, c6) come from an integral model at p."""
    d = c4**3 - c6**2
    if p == 3:
        return d % 27 == 0 and c6 % 27 not in (9, 18)
    if p == 2:
        if d % 64:
            return False
        if c6 % 4 == 3:
            return True
        return c4 % 16 == 0 and c6 % 32 in (0, 8)
    return True


def minimal_model_at(c4: int, c6: int, delta: int, p: int):
    """(k, c4', c6', delta') of a p-minimal model, scaling by p^-k."""
    if p >= 5:
        k = minimalize_at(c4, c6, delta, p)[0]
    else:
        v4, v6 = _val(c4, p), _val(c6, p)
        kmax = min(x for x in (_fl(v4, 4), _fl(v6, 6)) if x is not None)
        k = -1
        for kk in range(kmax, -1, -1):
            if _kraus_ok(c4 // p ** (4 * kk), c6 // p ** (6 * kk), p):
                k = kk
                break
    if k >= 0:
        return k, c4 // p ** (4 * k), c6 // p ** (6 * k), delta // p ** (12 * k)
    return k, c4 * p**4, c6 * p**6, delta * p**12


@dataclass(frozen=True)
class LocalDatum:
    p: int
    k: int
    v4: int | None
    v6: int | None
    vD: int
    klass: str
    w: int | None
    c4u: int = 0  # unit parts of the minimal c4, c6 (0 if the invariant vanishes)
    c6u: int = 0

    def oracle_key(self):
        m = ORACLE_MODULI[self.p]
        return (self.p, self.v4, self.v6, self.vD, self.c4u % m, self.c6u % m)

    def to_dict(self):
        return {
            "p": self.p, "k": self.k, "v4": self.v4, "v6": self.v6, "vD": self.vD,
            "class": self.klass, "w": "undetermined" if self.w is None else self.w,
        }


def _unit(n: int, p: int, v):
    return 0 if v is None else n // p**v


def local_datum(c4: int, c6: int, delta: int, p: int, oracle=None) -> LocalDatum:
    k, a4, a6, dd = minimal_model_at(c4, c6, delta, p)
    v4, v6, vD = _val(a4, p), _val(a6, p), _val(dd, p)
    u4, u6 = _unit(a4, p, v4), _unit(a6, p, v6)
    if vD == 0:
        klass = GOOD
    elif v4 == 0:
        klass = MULT_SPLIT if kronecker(-u6, p) == 1 else MULT_NONSPLIT
    elif v4 is not None and 3 * v4 < vD:
        klass = ADD_POT_MULT
    else:
        klass = ADD_POT_GOOD
    d = LocalDatum(p, k, v4, v6, vD, klass, None, u4, u6)
    return LocalDatum(p, k, v4, v6, vD, klass, local_root_number(d, oracle), u4, u6)


def local_root_number(d: LocalDatum, oracle=None):
    p = d.p
    if d.klass == GOOD:
        return 1
    if d.klass == MULT_SPLIT:
        return -1
    if d.klass == MULT_NONSPLIT:
        return 1
    if d.klass == ADD_POT_MULT and p >= 3:
        return kronecker(-1, p)
    if d.klass == ADD_POT_GOOD and p >= 5:
        v = d.vD
        if v % 4 == 2:
            return kronecker(-1, p)
        if v % 2 == 1 and v % 3 == 0:
            return kronecker(-2, p)
        if v % 4 == 0 and v % 3 != 0:
            return kronecker(-3, p)
        raise ValueError(f"impossible minimal v(Delta) = {v} at p = {p}")
    if oracle is not None and p in ORACLE_MODULI:
        return oracle.lookup(d.oracle_key())
    return UNDETERMINED


# ---------------------------------------------------------------- global sign

@dataclass(frozen=True)
class FiberReport:
    x: int | None
    y: int | None
    singular: bool
    locals: tuple = ()
    w_infinity: int = -1
    global_sign: int | None = -1
    undetermined_primes: tuple = ()

    def to_dict(self):
        return {
            "x": self.x, "y": self.y, "singular": self.singular,
            "w_infinity": self.w_infinity,
            "global": "undetermined" if self.global_sign is None else self.global_sign,
            "undetermined_primes": list(self.undetermined_primes),
            "locals": [d.to_dict() for d in self.locals],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def bad_prime_candidates(f: FiberCurve, budget: Budget = DEFAULT_BUDGET):
    primes = {2, 3}
    parts = f.delta_parts or ((f.delta, 1),)
    for n, _ in parts:
        if n in (0, 1, -1):
            continue
        fac = factorize(n, budget)
        if not fac.complete:
            raise FactorizationIncomplete(n, fac.cofactor)
        primes.update(fac.primes())
    return sorted(primes)


def global_root_number(f, oracle=None, budget: Budget = DEFAULT_BUDGET) -> FiberReport:
    if isinstance(f, Singular):
        return FiberReport(f.x, f.y, True, (), -1, 1, ())
    locs = []
    sign = -1
    und = []
    for p in bad_prime_candidates(f, budget):
        d = local_datum(f.c4, f.c6, f.delta, p, oracle)
        if d.klass == GOOD:
            continue
        locs.append(d)
        if d.w is None:
            und.append(p)
        else:
            sign *= d.w
    return FiberReport(f.x, f.y, False, tuple(locs), -1, None if und else sign, tuple(und))


def fiber_root_number(ctx: FiberContext, x: int, y: int, oracle=None, budget=DEFAULT_BUDGET) -> FiberReport:
    return global_root_number(ctx.specialize(x, y), oracle, budget)


# ---------------------------------------------------------------- oracle tables

class OracleTable:
    """Local root numbers at 2 and 3 keyed by minimal valuations and unit residues."""

    def __init__(self, entries=None):
        self.entries = dict(entries or {})

    def lookup(self, key):
        return self.entries.get(key, UNDETERMINED)

    def __len__(self):
        return len(self.entries)

    @staticmethod
    def _tok(v):
        return "inf" if v is None else str(v)

    def dumps(self) -> str:
        lines = ["# p v4 v6 vD c4res c6res w"]
        for key in sorted(self.entries, key=lambda k: tuple(-1 if v is None else v for v in k)):
            p, v4, v6, vD, r4, r6 = key
            lines.append(" ".join([str(p), self._tok(v4), self._tok(v6), str(vD), str(r4), str(r6), str(self.entries[key])]))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> OracleTable:
        entries = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != 7:
                raise MalformedTable(f"line {lineno}: expected 7 fields, got {len(toks)}")
            try:
                p = int(toks[0])
                v4 = None if toks[1] == "inf" else int(toks[1])
                v6 = None if toks[2] == "inf" else int(toks[2])
                vD, r4, r6, w = (int(t) for t in toks[3:])
            except ValueError:
                raise MalformedTable(f"line {lineno}: non-integer field") from None
            if p not in ORACLE_MODULI:
                raise MalformedTable(f"line {lineno}: p must be 2 or 3")
            m = ORACLE_MODULI[p]
            if not (0 <= r4 < m and 0 <= r6 < m):
                raise MalformedTable(f"line {lineno}: residues must lie in [0, {m})")
            if w not in (-1, 1):
                raise MalformedTable(f"line {lineno}: w must be -1 or 1")
            key = (p, v4, v6, vD, r4, r6)
            if key in entries:
                raise MalformedTable(f"line {lineno}: duplicate key {key}")
            entries[key] = w
        return cls(entries)

    @classmethod
    def load(cls, path) -> OracleTable:
        with open(path) as fh:
            return cls.loads(fh.read())


# ---------------------------------------------------------------- W as a sample function

class RootNumberFunction:
    """Picklable (x, y) -> Outcome for the averaging estimators.

    Singular fibers count as +1 and are tagged; fibers with an undetermined
    local factor are skipped with the undetermined tag."""

    def __init__(self, ctx: FiberContext, oracle=None, budget: Budget = DEFAULT_BUDGET):
        self.ctx, self.oracle, self.budget = ctx, oracle, budget

    def __call__(self, x: int, y: int = None):
        if y is None:
            x, y = 1, x  # integer t
        f = self.ctx.specialize(x, y)
        if isinstance(f, Singular):
            return Outcome(1, SINGULAR)
        rep = global_root_number(f, self.oracle, self.budget)
        if rep.global_sign is None:
            return Outcome(None, SKIPPED)
        return Outcome(rep.global_sign)
