"""Which Galois groups show up among small monic quartics?

Every x^4 + a x^3 + b x^2 + c x + d with |a|, |b|, |c|, |d| <= B is classified
exactly (factorisation, discriminant, resolvent cubic).  The generic case is
S4; everything else is rare, and the count of non-S4 polynomials grows
more slowly than the box.
"""

from largersieve import galois


def main():
    for B in (4, 8, 12):
        rep = galois.count_census(4, B)
        total = rep.total
        print(f"B = {B}: {total} quartics")
        for key, count in sorted(rep.counts.items(), key=lambda kv: -kv[1]):
            print(f"  {key:<22} {count:>8}  ({count / total:.4%})")
        print(f"  irreducible groups: {rep.extra['quartic_groups']}")
        print(f"  non-S4 count / B^3.5 = {rep.ratios['E_n/B^(n-1/2)']:.3f}")

    # degree 5 is handled by factor shapes mod p; it can prove S5 but never a smaller group
    for tail in ([0, 0, 0, -1, -1], [0, 0, 0, 0, -2], [0, 0, 0, 20, 16]):
        f = galois.IntPoly.monic(tail)
        shapes = []
        lab = galois.sn_certificate(f, 200, shapes_out=shapes)
        print(f"x^5 tail {tail}: {lab.key} after {len(shapes)} primes")


if __name__ == "__main__":
    main()
