"""Quadratic residues along y^2 = f(x) over F_p.

For squarefree f, the values f(u) split almost evenly into residues and
non-residues.  The deviation from an even split is controlled by the number
of branch points of the double cover times sqrt(p).
"""

import math

from largersieve.charsum import QuadCoverInstance, class_count, deviation_check, scan_family
from largersieve.polys import IntPoly


def main():
    f = IntPoly((1, 1, 0, 1))
    for p in (7, 101, 1009, 10007):
        inst = QuadCoverInstance(f, p)
        dev, bound, ok = deviation_check(inst)
        print(f"x^3+x+1 mod {p}: +1 -> {class_count(inst, 1)}, -1 -> {class_count(inst, -1)}, deviation {dev} <= {bound:.1f}: {ok}")

    for degree in (3, 5):
        s = scan_family(degree, 2, 200)
        print(f"degree {degree}, |coefficients| <= 2, p <= 200: {s.instances} instances, worst deviation/bound {s.worst_ratio:.3f}")
    print(f"for comparison 1/sqrt(2) = {1 / math.sqrt(2):.3f}")


if __name__ == "__main__":
    main()
