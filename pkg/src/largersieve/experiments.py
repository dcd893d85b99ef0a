"""The experiment registry behind the command-line interface.

Each experiment takes a parameter dict and returns an ``Outcome`` holding
CSV rows, a results mapping for the JSON summary, and any invariant failures
noticed along the way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import charsum, dynamics, elliptic, galois, groups, serre, sieve
from .errors import DomainError
from .polys import IntPoly
from .report import csv_text


@dataclass
class Outcome:
    rows: list
    columns: list
    results: dict
    failures: list = field(default_factory=list)


def _int_list(text) -> list:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


def _timeless(rep) -> dict:
    """Report contents without wall time, so summaries compare equal across runs."""
    out = rep.to_dict()
    out.pop("runtime_s")
    return out


# ---------------------------------------------------------------------------


def structured_set(kind: str, B: int, rng: np.random.Generator | None = None) -> list:
    """Integers in [-B, B] (or [0, B] for the value sets) of a named kind."""
    if kind == "squares":
        return [k * k for k in range(math.isqrt(B) + 1)]
    if kind == "cubes":
        r = round(B ** (1 / 3)) + 1
        return sorted({k**3 for k in range(-r, r + 1) if abs(k**3) <= B})
    if kind == "quad":
        return [k * k + k for k in range(math.isqrt(B) + 1) if k * k + k <= B]
    if kind == "random":
        rng = rng or np.random.default_rng(0)
        size = int(rng.integers(1, 200))
        return sorted(int(v) for v in rng.choice(np.arange(-B, B + 1), size=size, replace=False))
    raise DomainError(f"unknown set kind {kind!r}")


def sieve_demo(params: dict) -> Outcome:
    B = int(params.get("B", 10**4))
    kinds = params.get("sets", ["squares", "cubes", "quad"])
    rng = np.random.default_rng(params.get("seed", 0))
    rows, failures = [], []
    cutoff = sieve.auto_cutoff(0.5, 1.0, set(), B)
    lo = int(params.get("jmin", 11))
    primes = sieve.sieve_primes(lo, cutoff)
    for kind in kinds:
        pts = structured_set(kind, B, rng)
        inst = sieve.SieveInstance.measured(pts, primes)
        res = sieve.sieve_bound_int(inst)
        row = {
            "set": kind,
            "B": B,
            "diameter": inst.height_budget,
            "size": len(pts),
            "jmin": lo,
            "cutoff": cutoff,
            "bound": "inconclusive" if res.inconclusive else round(res.value, 6),
            "five_sqrt_B": 5 * math.sqrt(B),
        }
        if kind == "squares":
            occ = {p: (p + 1) / 2 for p in sieve.sieve_primes(2, cutoff)}
            formula = sieve.sieve_bound_int(sieve.SieveInstance(tuple(pts), B, occ))
            row["formula_bound"] = None if formula.inconclusive else round(formula.value, 6)
        if not res.inconclusive and res.value < len(pts) - 1e-9:
            failures.append(f"sieve bound {res.value} below the true size {len(pts)} for {kind}")
        rows.append(row)
    cols = ["set", "B", "diameter", "size", "jmin", "cutoff", "bound", "formula_bound", "five_sqrt_B"]
    return Outcome(rows, cols, {"rows": rows}, failures)


def vdw_census(params: dict) -> Outcome:
    n, B = int(params["n"]), int(params["B"])
    seed = int(params.get("seed", 0))
    budget = int(params.get("prime_budget", 200))
    shards, threads = int(params.get("shards", 1)), int(params.get("threads", 1))
    rep = galois.count_census(n, B, params.get("mode", "auto"), budget, seed, shards, threads)
    rows = _census_rows(rep, n, B, seed, budget)
    cols = ["n", "B", "label", "count", "bound_shape", "ratio", "seed", "budget"]
    failures = []
    if rep.total != galois.box_size(n, B):
        failures.append("label counts do not partition the box")
    if params.get("self_test"):
        single = galois.count_census(n, B, params.get("mode", "auto"), budget, seed, 1, 1)
        if csv_text(_census_rows(single, n, B, seed, budget), cols) != csv_text(rows, cols):
            failures.append("sharded census differs from the single-shard run")
    return Outcome(rows, cols, _timeless(rep), failures)


def _census_rows(rep, n, B, seed, budget) -> list:
    shape = B ** (n - 0.5) if B else float("nan")
    return [
        {"n": n, "B": B, "label": k, "count": v, "bound_shape": "B^(n-1/2)", "ratio": v / shape if B else "", "seed": seed, "budget": budget}
        for k, v in sorted(rep.counts.items())
    ]


def disc_square(params: dict) -> Outcome:
    n = int(params["n"])
    Bs = _int_list(params.get("B_list", params.get("B", "10,20,40")))
    shards, threads = int(params.get("shards", 1)), int(params.get("threads", 1))
    rows = []
    for B in Bs:
        c = galois.count_disc_square(n, B, shards, threads)
        rows.append({"n": n, "B": B, "count": c, "ratio": c / B ** (n - 0.5)})
    return Outcome(rows, ["n", "B", "count", "ratio"], {"rows": rows})


def gl2_verify(params: dict) -> Outcome:
    lmax = int(params.get("lmax", 31))
    if lmax > serre.MAX_ENUM_ELL:
        raise DomainError(f"lmax is limited to {serre.MAX_ENUM_ELL}")
    rows, failures = [], []
    for ell in (p for p in range(5, lmax + 1) if all(p % q for q in range(2, p))):
        checked = 0
        for d in range(1, ell):
            counts = serre.trace_count_table(ell, d)
            if counts.sum() != ell * (ell * ell - 1):
                failures.append(f"l={ell} d={d}: counts do not sum to |SL_2|")
            for t in range(ell):
                if counts[t] != serre.count_fixed_trace_det(ell, d, t, method="formula"):
                    failures.append(f"l={ell} d={d} t={t}: count {counts[t]}")
                checked += 1
        props = [float(serre.class_proportion(ell, 1, i)) for i in (1, 2, 3)]
        rows.append({"l": ell, "pairs_checked": checked, "prop_C1": props[0], "prop_C2": props[1], "prop_C3": props[2]})
    return Outcome(rows, ["l", "pairs_checked", "prop_C1", "prop_C2", "prop_C3"], {"rows": rows}, failures)


def group_indices(params: dict) -> Outcome:
    levels = _int_list(params.get("levels", "2,4,8,12"))
    rows, failures = [], []
    for m in levels:
        G = groups.gl2_group(m)
        C = groups.commutator_subgroup(G)
        S = groups.sl2_group(m)
        rows.append({"quantity": f"[SL2(Z/{m}) : [GL2,GL2]]", "value": groups.index(S, C)})
    H = groups.congruence_subgroup(8, 2)
    CH = groups.commutator_subgroup(H)
    if CH != groups.congruence_subgroup(8, 4, special=True):
        failures.append("[H(8), H(8)] differs from the level-4 congruence subgroup of SL2(Z/8)")
    HS = groups.intersect(H, groups.sl2_group(8))
    image = groups.adjoin_determinants(CH)
    rows.append({"quantity": "[H(8) cap SL2 : [H(8),H(8)]]", "value": groups.index(HS, CH)})
    rows.append({"quantity": "[GL2(Z/8) : image]", "value": groups.index(groups.gl2_group(8), image)})
    for n in range(3, int(params.get("nmax", 5)) + 1):
        rows.append({"quantity": f"transitive union ratio n={n}", "value": str(groups.transitive_union_ratio(n))})
    return Outcome(rows, ["quantity", "value"], {"rows": rows}, failures)


def ec_census(params: dict) -> Outcome:
    B = int(params.get("B", 50))
    ells = _int_list(params.get("ells", "5,7"))
    budget = int(params.get("prime_budget", 2000))
    fam = elliptic.legendre_family()
    rep = elliptic.family_census(fam, B, ells, budget, int(params.get("shards", 1)), int(params.get("threads", 1)), int(params.get("seed", 0)))
    rows = []
    for ell in sorted(set(ells)):
        c = {k: rep.counts[f"l={ell}:{k}"] for k in ("certified", "uncertified", "excluded")}
        rows.append({"family": fam.name, "l": ell, "B": B, "budget": budget, **c, "bound_shape": "l^6 B^(1/2) log B"})
    cols = ["family", "l", "B", "budget", "certified", "uncertified", "excluded", "bound_shape"]
    return Outcome(rows, cols, _timeless(rep))


def dynamics_run(params: dict) -> Outcome:
    coeffs = list(reversed(_int_list(params.get("phi", "1,0,1"))))
    phi = dynamics.PolyMap(IntPoly(tuple(coeffs)))
    P = int(params.get("P", 0))
    x = int(params.get("x", 10**5))
    eps = float(params.get("eps", 0.5 / math.log(phi.degree)))
    prof = dynamics.density_profile(phi, P, x, eps)
    c = dynamics.height_growth_check(phi, P, int(params.get("iters", 15)))
    results = {"finite_x_density": prof.fraction, "checkpoints": prof.checkpoints, "height_constant": c, "x": x, "eps": eps}
    cols = ["p", "tail", "cycle", "m_p", "threshold", "pass"]
    return Outcome(prof.rows(), cols, results)


def charsum_run(params: dict) -> Outcome:
    rows, failures, summaries = [], [], []
    for deg in _int_list(params.get("degrees", "3,5")):
        s = charsum.scan_family(deg, int(params.get("coeff_bound", 3)), int(params.get("pmax", 500)))
        summaries.append(s.to_dict())
        rows.append({"degree": deg, "instances": s.instances, "failures": len(s.failures), "worst_ratio": s.worst_ratio})
        failures.extend(f"deviation bound fails for {f} at p={p}" for f, p in s.failures)
    return Outcome(rows, ["degree", "instances", "failures", "worst_ratio"], {"scans": summaries}, failures)


def bound_calc(params: dict) -> Outcome:
    kappa = []
    for item in str(params["kappa"]).split(","):
        k, c = item.split(":")
        kappa.append((int(k), int(c)))
    S = set(_int_list(params.get("S", "")))
    inp = sieve.CoverBoundInput(int(params["gg"]), kappa, S, int(params["n"]), int(params.get("d", 1)), float(params["B"]))
    hb = sieve.hit_bound(inp)
    row = {"delta": str(hb.delta), "c": hb.c, "bound": hb.bound}
    return Outcome([row], ["delta", "c", "bound"], row)


REGISTRY = {
    "sieve-demo": sieve_demo,
    "vdw-census": vdw_census,
    "disc-square": disc_square,
    "gl2-verify": gl2_verify,
    "group-indices": group_indices,
    "ec-census": ec_census,
    "dynamics": dynamics_run,
    "charsum": charsum_run,
    "bound-calc": bound_calc,
}
