"""Commutator subgroups in GL_2(Z/m) and the share of S_n covered by small transitive groups."""

from largersieve import groups


def main():
    for m in (2, 4, 8, 12):
        G = groups.gl2_group(m)
        C = groups.commutator_subgroup(G)
        print(f"m = {m}: |GL2| = {G.order}, |[GL2, GL2]| = {C.order}, index in SL2 = {groups.index(groups.sl2_group(m), C)}")

    H = groups.congruence_subgroup(8, 2)
    CH = groups.commutator_subgroup(H)
    print(f"H = ker(GL2(Z/8) -> GL2(Z/2)): |H| = {H.order}, |[H, H]| = {CH.order}")
    print("[H, H] is the level-4 congruence subgroup of SL2(Z/8):", CH == groups.congruence_subgroup(8, 4, special=True))
    print("index of <[H, H], diag(1, d)> in GL2(Z/8):", groups.index(groups.gl2_group(8), groups.adjoin_determinants(CH)))

    for n in range(3, 7):
        print(f"n = {n}: share of S_n in a transitive subgroup other than A_n, S_n = {groups.transitive_union_ratio_pairs(n)}")
        print(f"        share fixing a letter = {groups.derangement_delta(n)}")


if __name__ == "__main__":
    main()
