"""How the larger sieve sees the perfect squares up to B.

Squares hit only about half the residues mod each odd prime, which is
exactly the situation the larger sieve rewards.  We compare the bound from
measured occupancy with the one from the textbook occupancy (p + 1) / 2.
"""

import math

from largersieve import sieve
from largersieve.experiments import structured_set


def main():
    for B in (10**3, 10**4, 10**5):
        cutoff = sieve.auto_cutoff(0.5, 1.0, set(), B)
        primes = sieve.sieve_primes(11, cutoff)
        squares = structured_set("squares", B)

        measured = sieve.sieve_bound_int(sieve.SieveInstance.measured(squares, primes))
        textbook = sieve.sieve_bound_int(sieve.SieveInstance(tuple(squares), B, {p: (p + 1) / 2 for p in primes}))

        print(f"B = {B}: {len(squares)} squares, primes in [11, {cutoff}]")
        print(f"  measured occupancy  -> bound {measured.value:.1f}")
        print(f"  (p+1)/2 occupancy   -> bound {textbook.value:.1f}")
        print(f"  5 sqrt(B)           =  {5 * math.sqrt(B):.1f}")

    # the bound only uses reductions, so a random set of the same size does far worse
    rng = __import__("numpy").random.default_rng(0)
    pts = structured_set("random", 10**4, rng)
    res = sieve.sieve_bound_int(sieve.SieveInstance.measured(pts, sieve.sieve_primes(2, 2000)))
    print(f"random set of {len(pts)} points in [-10^4, 10^4]: bound {res.value:.1f}")


if __name__ == "__main__":
    main()
