#!/usr/bin/env python3
"""Randomized battery for the two shift-transport identities.

For seeded pairs (f, g) of strictly increasing injections, with g drawn
from successor / affine / table-with-affine-tail families, checks
pointwise below a bound that

* orbit transport translates composition into a one-step shift:
  rho(f.g)(n) == rho(f)(n+1), and
* piecewise transport intertwines the successor with g:
  sigma(f.s)(n) == sigma(f)(g(n)), with sigma(f) strictly increasing.

The piecewise construction also asserts its entry and exit inequality
chains internally every time a new orbit piece is touched, so a clean run
exercises those proofs as well.

Usage: python3 scripts/transport_battery.py [--trials T] [--bound B] [--seed S]
"""
import argparse
import random

from bqo.shifts import (affine, compose, critical_point, orbit_map, rho,
                        sigma, successor, table_then_affine)


def random_injection(rng, allow_identity):
    kind = rng.choice(("succ", "affine", "table"))
    if kind == "succ":
        return successor()
    if kind == "affine":
        a, b = rng.randint(1, 3), rng.randint(0, 5)
        if not allow_identity and (a, b) == (1, 0):
            b = 1
        return affine(a, b)
    table = tuple(sorted(rng.sample(range(12), rng.randint(2, 5))))
    return table_then_affine(table, rng.randint(1, 2),
                             table[-1] + rng.randint(1, 3))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--bound", type=int, default=128,
                    help="check the identities for all n below this bound")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    s = successor()
    failures = 0
    for trial in range(args.trials):
        f = random_injection(rng, allow_identity=True)
        g = random_injection(rng, allow_identity=False)
        r_comp = rho(compose(f, g), g, probe=args.bound * 3)
        r_plain = rho(f, g, probe=args.bound * 3)
        rho_ok = all(r_comp(n) == r_plain(n + 1) for n in range(args.bound))
        sig_comp = sigma(compose(f, s), g, probe=args.bound * 3)
        sig_plain = sigma(f, g, probe=args.bound * 3)
        sig_ok = all(sig_comp(n) == sig_plain(g(n))
                     for n in range(args.bound))
        vals = sig_plain.values(args.bound)
        mono_ok = all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
        if not (rho_ok and sig_ok and mono_ok):
            failures += 1
            print(f"trial {trial}: FAIL (orbit={rho_ok}, "
                  f"piecewise={sig_ok}, monotone={mono_ok})")

    print(f"{args.trials} trials, {failures} failures "
          f"(both identities checked for n < {args.bound})")

    rng2 = random.Random(args.seed + 1)
    f = random_injection(rng2, allow_identity=True)
    g = random_injection(rng2, allow_identity=False)
    k = critical_point(g)
    print("\nworked example:")
    print(f"  f values:        {list(f.values(10))}")
    print(f"  g values:        {list(g.values(10))} "
          f"(critical point {k})")
    print(f"  orbit of g:      {list(orbit_map(g).values(8))}")
    print(f"  rho(f) values:   {list(rho(f, g).values(10))}")
    print(f"  sigma(f) values: {list(sigma(f, g).values(10))}")


if __name__ == "__main__":
    main()
