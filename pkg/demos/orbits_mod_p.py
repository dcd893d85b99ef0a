"""Orbit sizes of x^2 + 1 modulo primes.

The orbit of 0 under x -> x^2 + 1 is finite mod every p.  Its size m_p is
almost always at least a constant times log p; this script measures how
often, and checks that the height of the integer orbit grows like 2^i.
"""

import math

from largersieve import dynamics
from largersieve.polys import IntPoly


def main():
    phi = dynamics.PolyMap(IntPoly((1, 0, 1)))
    for p in (5, 101, 10007):
        r = dynamics.orbit_mod_p(phi, 0, p)
        print(f"p = {p}: tail {r.tail}, cycle {r.cycle}, m_p = {r.m_p}, log p = {math.log(p):.2f}")

    eps = 0.5 / math.log(2)
    prof = dynamics.density_profile(phi, 0, 10**5, eps)
    print(f"share of p <= x with m_p >= {eps:.3f} log p:")
    for cut, frac in prof.checkpoints.items():
        print(f"  x = {cut}: {frac:.5f}")
    short = [r for r in prof.table if r.m_p < eps * math.log(r.p)]
    print(f"  exceptions: {[(r.p, r.m_p) for r in short]}")

    print("height constant for x^2 at P = 2:", dynamics.height_growth_check(dynamics.PolyMap(IntPoly((0, 0, 1))), 2, 15))
    print("height constant for x^2 + 1 at P = 1:", dynamics.height_growth_check(phi, 1, 15))


if __name__ == "__main__":
    main()
