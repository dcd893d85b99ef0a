"""Certifying mod-l surjectivity for elliptic curves from Frobenius traces.

For a good prime p the pair (a_p mod l, p mod l) is the trace and
determinant of Frobenius in GL_2(F_l).  Seeing traces from all three Serre
classes forces the image to contain SL_2(F_l).
"""

from largersieve import elliptic


def main():
    E = elliptic.CurveQ(1, 1)
    print("y^2 = x^3 + x + 1")
    for p in (5, 7, 11, 13):
        print(f"  a_{p} = {elliptic.point_count_mod_p(E, p).a_p}")
    for ell in (5, 7, 11):
        cert = elliptic.certify_surjective(E, ell, 1000)
        print(f"  l = {ell}: certified={cert.certified}, witnesses {cert.witnesses}")

    cm = elliptic.CurveQ(0, 1)
    cert = elliptic.certify_surjective(cm, 7, 3000)
    print(f"y^2 = x^3 + 1 (CM) at l = 7: certified={cert.certified}, missing {cert.gaps}")

    fam = elliptic.legendre_family()
    rep = elliptic.family_census(fam, 50, (5, 7), 2000)
    print("Legendre family y^2 = x(x-1)(x-t), |t| <= 50, primes up to 2000:")
    for ell in (5, 7):
        c = {k: rep.counts[f"l={ell}:{k}"] for k in ("certified", "uncertified", "excluded")}
        print(f"  l = {ell}: {c}; uncertified t = {rep.extra[f'l={ell}:uncertified_t']}")


if __name__ == "__main__":
    main()
