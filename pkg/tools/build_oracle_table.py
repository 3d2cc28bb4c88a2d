"""Build a p = 2, 3 local root number table with PARI as the reference.

Keys are harvested from the fibers of a surface over a box of coprime pairs
and, optionally, from random integral models. Needs cypari2 (the `oracle`
extra). Keys seen with two different root numbers are reported and left out.

    python tools/build_oracle_table.py --c4 C4 --c6 C6 --N 100 --out table.tbl
"""
import argparse
import random
import sys
from math import gcd

import cypari2

from ecfamilies.fiber import FiberContext, OracleTable, Singular, local_datum
from ecfamilies.polytext import parse_ratfunc
from ecfamilies.surface import EllipticSurface

pari = cypari2.Pari()


def harvest(c4, c6, seen, conflicts):
    D = (c4**3 - c6**2) // 1728
    if D == 0:
        return
    E = None
    for p in (2, 3):
        d = local_datum(c4, c6, D, p)
        if d.w is not None:
            continue
        if E is None:
            E = pari.ellinit([0, 0, 0, -27 * c4, -54 * c6])
        key, w = d.oracle_key(), int(pari.ellrootno(E, p))
        if seen.setdefault(key, w) != w:
            conflicts.add(key)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--c4")
    ap.add_argument("--c6")
    ap.add_argument("--N", type=int, default=0)
    ap.add_argument("--random", type=int, default=0, help="number of random models to add")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)

    seen, conflicts = {}, set()
    if args.c4 and args.c6:
        ctx = FiberContext(EllipticSurface(parse_ratfunc(args.c4), parse_ratfunc(args.c6)))
        for x in range(-args.N, args.N + 1):
            for y in range(-args.N, args.N + 1):
                if gcd(x, y) != 1:
                    continue
                f = ctx.specialize(x, y)
                if not isinstance(f, Singular):
                    harvest(f.c4, f.c6, seen, conflicts)
    rng = random.Random(args.seed)
    for _ in range(args.random):
        a = [rng.randint(-60, 60) for _ in range(5)]
        E0 = pari.ellinit(a)
        if len(E0) == 0:
            continue
        t = rng.choice([1, -1, 2, -2, 3, -3, 6, -6, 4, 12, 18, 36])
        harvest(int(E0[9]) * t * t, int(E0[10]) * t**3, seen, conflicts)

    for k in conflicts:
        del seen[k]
    with open(args.out, "w") as fh:
        fh.write(OracleTable(seen).dumps())
    print(f"{len(seen)} entries, {len(conflicts)} conflicting keys dropped", file=sys.stderr)


if __name__ == "__main__":
    main()
