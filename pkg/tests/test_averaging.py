import random
import sys
from fractions import Fraction
from math import gcd, pi

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecfamilies.arith import liouville_table
from ecfamilies.averaging import (
    INCOMPLETE,
    SINGULAR,
    UNDETERMINED,
    AverageReport,
    LatticeCoset,
    Outcome,
    Sector,
    autocorr_rational,
    autocov_progression,
    av_progression,
    av_rational,
    coprime_pair_count,
    domain_points,
    sweep_lambda_poly,
)
from ecfamilies.polytext import parse_bipoly, parse_intpoly

import oracles
from conftest import ROOT

LAM = liouville_table(2 * 10**5)


def lam(n):
    return int(LAM[n])


def one(*args):
    return 1


def alternating(n):
    return (-1) ** n


def test_constant_and_alternating():
    assert av_progression(one, 0, 1, 50).value == 1
    assert av_progression(alternating, 0, 2, 50).value == 1
    assert autocov_progression(one, 0, 1, 3, 50).value == 1
    assert autocov_progression(alternating, 0, 1, 1, 50).value == -1
    assert av_rational(one, Sector.minus_axes(), LatticeCoset.full(), 20).value == 1
    assert autocorr_rational(one, Sector.full(), LatticeCoset.full(), Fraction(1, 2), 20).value == 1


def test_liouville_mean_and_autocovariance():
    N = 10**5
    direct = sum(oracles.liouville(n) for n in range(1, 2001))
    assert av_progression(lam, 0, 1, 2000).total == direct
    assert abs(av_progression(lam, 0, 1, N).value) < 0.01
    assert abs(autocov_progression(lam, 0, 1, 1, N).value) < 0.02


def test_progression_consistency_identity():
    # f supported on 1 + 3Z: the progression average is m times the full average
    f = lambda n: lam(n) if n % 3 == 1 else 0
    full = av_progression(f, 0, 1, 3000)
    prog = av_progression(f, 1, 3, 3000)
    assert prog.value == 3 * full.value


def test_coprime_density():
    N = 1000
    count = coprime_pair_count(LatticeCoset.full(), N)
    assert abs(count / (2 * N + 1) ** 2 - 6 / pi**2) < 0.01


def test_enumeration_order_and_counts():
    X, Y = domain_points(Sector.quadrant("++"), LatticeCoset.full(), 4)
    pts = list(zip(X.tolist(), Y.tolist()))
    assert pts == sorted(pts)
    assert all(x > 0 and y > 0 and gcd(x, y) == 1 for x, y in pts)
    assert len(pts) == sum(1 for x in range(1, 5) for y in range(1, 5) if gcd(x, y) == 1)


def test_skips_are_tallied_not_averaged():
    rep = AverageReport()
    for o in (Outcome(1), Outcome(-1), Outcome(1, SINGULAR), Outcome(None, UNDETERMINED), Outcome(None, INCOMPLETE)):
        rep.add(o)
    assert rep.value == Fraction(1, 3)
    assert rep.singular == 1 and rep.skipped == {UNDETERMINED: 1, INCOMPLETE: 1}
    assert rep.enumerated == 5


def test_merge_is_order_independent():
    rng = random.Random(5)
    parts = []
    for _ in range(6):
        r = AverageReport()
        for _ in range(20):
            r.add(rng.choice([Outcome(1), Outcome(-1), Outcome(None, UNDETERMINED)]), bucket=rng.randint(0, 2))
        parts.append(r)
    a = AverageReport()
    for r in parts:
        a = a.merge(r)
    b = AverageReport()
    for r in reversed(parts):
        b = b.merge(r)
    assert a.to_dict() == b.to_dict()


def test_jobs_do_not_change_results():
    one_job = av_rational(lam_ratio, Sector.full(), LatticeCoset.from_generators((2, 1), (0, 3)), 40)
    two_jobs = av_rational(lam_ratio, Sector.full(), LatticeCoset.from_generators((2, 1), (0, 3)), 40, jobs=2)
    assert one_job.to_dict() == two_jobs.to_dict()


def lam_ratio(x, y):
    return lam(abs(x * y)) if x * y else 1


directions = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(lambda v: v != (0, 0))


@given(directions, directions, st.tuples(st.integers(-30, 30), st.integers(-30, 30)), st.integers(1, 7))
def test_sector_scale_invariance_and_mask(s, e, p, k):
    try:
        S = Sector.arc(s, e)
    except ValueError:
        return
    x, y = p
    assert S.contains(x, y) == S.contains(k * x, k * y)
    X, Y = np.array([x]), np.array([y])
    assert bool(S.mask(X, Y)[0]) == S.contains(x, y)


@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
       st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_lattice_membership(v1, v2, off):
    if v1[0] * v2[1] - v1[1] * v2[0] == 0:
        with pytest.raises(ValueError):
            LatticeCoset.from_generators(v1, v2, off)
        return
    L = LatticeCoset.from_generators(v1, v2, off)
    assert L.index == abs(v1[0] * v2[1] - v1[1] * v2[0])
    ox, oy = off
    for i in range(-2, 3):
        for j in range(-2, 3):
            assert L.contains(ox + i * v1[0] + j * v2[0], oy + i * v1[1] + j * v2[1])
    X, Y = np.meshgrid(np.arange(-8, 9), np.arange(-8, 9))
    inside = sum(L.contains(int(x), int(y)) for x, y in zip(X.ravel(), Y.ravel()))
    assert inside == int(L.mask(X.ravel(), Y.ravel()).sum())


def test_lattice_count_bound():
    # coprime points of a lattice coset in the box are at most c N^2 / index with a small c
    rng = random.Random(2)
    N = 60
    worst = 0.0
    for _ in range(40):
        while True:
            v1 = (rng.randint(-9, 9), rng.randint(-9, 9))
            v2 = (rng.randint(-9, 9), rng.randint(-9, 9))
            if v1[0] * v2[1] - v1[1] * v2[0]:
                break
        L = LatticeCoset.from_generators(v1, v2, (rng.randint(0, 20), rng.randint(0, 20)))
        n = coprime_pair_count(L, N)
        worst = max(worst, n * L.index / N**2)
    assert worst <= 16


def test_sweep_lambda_examples():
    rep = sweep_lambda_poly(parse_bipoly("x*y*(x+y)")[0], 1000)
    assert rep.count > 10**6 and abs(rep.value) <= 0.05
    rep = sweep_lambda_poly(parse_bipoly("x^3+2*y^3")[0], 300)
    assert abs(rep.value) <= 0.1
    rep = sweep_lambda_poly(parse_bipoly("a^2+b^4")[0], 1000, max_value=10**6, func="moebius", coprime=False)
    assert abs(rep.value) <= 0.05


def test_sweep_lambda_matches_direct_sum():
    P, _ = parse_bipoly("x^2+3*y^2+x*y")
    rep = sweep_lambda_poly(P, 25, coprime=True)
    direct = [oracles.liouville(x * x + 3 * y * y + x * y) for x in range(-25, 26) for y in range(-25, 26)
              if gcd(x, y) == 1]
    assert rep.count == len(direct) and rep.total == sum(direct)
    rep = sweep_lambda_poly(parse_intpoly("n^2+1"), 500, func="moebius")
    assert rep.total == sum(oracles.moebius(n * n + 1) for n in range(1, 501))
    rep = sweep_lambda_poly(parse_bipoly("a^2+b^4")[0], 40, max_value=5000, func="moebius", coprime=False)
    direct = [oracles.moebius(a * a + b**4) for a in range(1, 41) for b in range(1, 41) if a * a + b**4 <= 5000]
    assert rep.count == len(direct) and rep.total == sum(direct)


def test_sweep_rejects_squares():
    with pytest.raises(ValueError):
        sweep_lambda_poly(parse_intpoly("4*(n+1)^2"), 10)


def _grat1_with_table():
    sys.path.insert(0, str(ROOT / "tools"))
    from build_oracle_table import harvest

    from ecfamilies.fiber import FiberContext, OracleTable, RootNumberFunction, Singular
    from ecfamilies.polytext import parse_ratfunc
    from ecfamilies.surface import EllipticSurface

    ctx = FiberContext(EllipticSurface(parse_ratfunc("1-1728*t"), parse_ratfunc("(1-1728*t)^2")))
    seen, conflicts = {}, set()
    N = 100
    for x in range(0, N + 1):
        for y in range(-N, N + 1):
            for a, b in ((x, y), (x, x + y)):
                if gcd(a, b) == 1:
                    f = ctx.specialize(a, b)
                    if not isinstance(f, Singular):
                        harvest(f.c4, f.c6, seen, conflicts)
    assert not conflicts
    return RootNumberFunction(ctx, OracleTable(seen))


def test_root_number_averages_first_family(need_pari):
    W = _grat1_with_table()
    rep = av_rational(W, Sector.full(), LatticeCoset.full(), 100)
    assert rep.skipped[UNDETERMINED] == 0 and abs(rep.value) <= 0.15
    rep = autocorr_rational(W, Sector.full(), LatticeCoset.full(), 1, 60)
    assert rep.skipped[UNDETERMINED] == 0 and abs(rep.value) <= 0.25


def test_root_number_average_without_table_reports_undetermined():
    from ecfamilies.fiber import FiberContext, RootNumberFunction
    from ecfamilies.polytext import parse_ratfunc
    from ecfamilies.surface import EllipticSurface

    W = RootNumberFunction(FiberContext(EllipticSurface(parse_ratfunc("1-1728*t"), parse_ratfunc("(1-1728*t)^2"))))
    rep = av_rational(W, Sector.quadrant("++"), LatticeCoset.full(), 20)
    assert rep.count + rep.skipped[UNDETERMINED] == rep.enumerated > 0
    assert rep.value is None or abs(rep.value) <= 1
