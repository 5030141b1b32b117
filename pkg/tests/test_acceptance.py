"""The twelve acceptance criteria, one test each.

Every test records a line "CRITERION k: PASS|FAIL ..." that is printed in
the pytest terminal summary; running this file directly prints the same
lines.  All comparisons are exact.
"""
import sys
import time

import pytest

from flagchow.coeff import ideal_product, ideal_quotient_module, invariant_ideal, negative_part, v_degree
from flagchow.dickson import verify_mimura_kameko
from flagchow.flag import (catalogue, e8_consistency, grothendieck_quotient, pfister_max, pfister_min,
                           psz_additive_check, quadric_degv_table, quadric_embedding_bounds, quadric_qx,
                           type_I_data, type_I_twisted)
from flagchow.gralg import graded_groups, hilbert_series, presentation_from_json, regular_sequence_check
from flagchow.motive import (DegvRecord, DegvTable, InconsistentFactsError, degv_infer, morava_localize,
                             rost_chow, rost_res_omega)
from flagchow.modules import GradedModule
from flagchow.steenrod import bzp_table, so_steenrod_image, verify_Q_recursion


def crit1():
    scalars = {}
    for p, n in [(2, 2), (2, 3), (3, 2)]:
        chk = verify_mimura_kameko(n, p)
        if not chk.ok or len(chk.rows) != n + 1:
            return False, f"(p={p}, n={n}) mismatch:\n{chk.describe()}"
        scalars[(p, n)] = [r[3] for r in chk.rows]
    return True, f"scalars {scalars}"


def crit2():
    total = 0
    for p in (2, 3):
        for n in (1, 2, 3):
            rep = verify_Q_recursion(bzp_table(n, p), 2, 10)
            if rep.ok is not True:
                return False, f"B(Z/{p})^{n}: {rep.describe()}"
            total += rep.checked
    return True, f"{total} monomial checks"


G2_TWISTED_TEXT = {
    "prime": 2, "mode": "zp", "truncation": 6,
    "generators": [{"name": "t1", "chow_deg": 1}, {"name": "t2", "chow_deg": 1}],
    "relations": ["t2^6", "2*(t1^2+t1*t2+t2^2)", "t2^3*(t1^2+t1*t2+t2^2)", "(t1^2+t1*t2+t2^2)^2"],
}


def crit3():
    want_free = [1, 2, 2, 2, 2, 2, 1]
    want_tors = {2: 1, 3: 2, 4: 2, 5: 1}
    for label, pres in (("catalogue", catalogue("g2_twisted").presentation),
                        ("inline", presentation_from_json(G2_TWISTED_TEXT))):
        M = graded_groups(pres, 0, 6)
        free = [M.free_rank(d) for d in range(7)]
        tors = {d: M.torsion(d).get(2, 0) for d in range(7) if M.torsion(d)}
        if free != want_free or tors != want_tors or any(set(M.torsion(d)) - {2} for d in range(7)):
            return False, f"{label}: free {free}, torsion {tors}"
        if sum(free) != 12 or sum(tors.values()) != 6:
            return False, f"{label}: totals {sum(free)} + {sum(tors.values())}"
    return True, "free (1,2,2,2,2,2,1), Z/2 (1,2,2,1), 12 + 6"


def crit4():
    F, bbars, p = type_I_data("f4")
    rep = regular_sequence_check(F, bbars, 17)
    if not rep:
        return False, f"not regular: {rep.hilbert.as_list()} vs {rep.expected.as_list()}"
    if rep.hilbert.total() != 384 or 1152 // 3 != 384:
        return False, f"dimension {rep.hilbert.total()}"
    res = type_I_twisted(F, bbars, p, 17)
    if not res.matches:
        return False, f"twisted {res.hilbert.as_list()} vs {res.comparison.as_list()}"
    return True, f"regular, dim 384, twisted series agrees through 17 ({res.hilbert.total()} classes)"


def crit5():
    q = grothendieck_quotient(catalogue("g2_gt_split"))
    M = graded_groups(q, 0, q.truncation)
    want = GradedModule.cyclic(0) + GradedModule.cyclic(3, 2)
    if M != want:
        return False, f"split quotient {M.format()}"
    q2 = grothendieck_quotient(catalogue("g2_twisted"))
    M2 = graded_groups(q2, 0, q2.truncation)
    if M2 != GradedModule.cyclic(0):
        return False, f"twisted quotient {M2.format()}"
    if hilbert_series(q2.mod_p(), q2.truncation).total() != 1:
        return False, "twisted quotient mod 2 is not F_2"
    return True, "Z + Z/2{y}; Z; Z/2 mod 2"


def crit6():
    want = {
        2: GradedModule.cyclic(0) + GradedModule.cyclic(3) + GradedModule.cyclic(2, 2),
        3: (GradedModule.cyclic(0) + GradedModule.cyclic(4) + GradedModule.cyclic(8)
            + GradedModule.cyclic(2, 3) + GradedModule.cyclic(6, 3)),
    }
    for p, M in want.items():
        if rost_chow(2, p) != M:
            return False, f"rost_chow(2,{p}) = {rost_chow(2, p).format()}"
    ranks = {}
    for n, m in [(2, 1), (3, 1), (3, 2)]:
        L = morava_localize(rost_res_omega(n, 2), m)
        ranks[(n, m)] = L.total_free_rank()
        if ranks[(n, m)] != 2 or L.torsion_counts():
            return False, f"(n,m)=({n},{m}): {L}"
    return True, f"Morava ranks {ranks}"


def crit7():
    F, bbars, p = type_I_data("g2")
    S = type_I_twisted(F, bbars, p).quotient_hilbert
    target = graded_groups(catalogue("g2_twisted").presentation, 0, 6)
    r1 = psz_additive_check(rost_chow(2, 2), S, target, 6)
    F4, b4, p4 = type_I_data("f4")
    t4 = type_I_twisted(F4, b4, p4, 12)
    r2 = psz_additive_check(rost_chow(2, 3), t4.quotient_hilbert, t4.hilbert, 12)
    if not (r1.ok and r2.ok):
        return False, f"G2 {r1.mismatches}, F4 {r2.mismatches}"
    return True, f"G2 {r1.product}; F4 through 12"


def _pfister_max_formula(n):
    ell = 2**n - 1
    M = GradedModule.free({d: 1 for d in range(2 ** (n + 1) - 2)})
    for i in range(1, n):
        for k in range(2**n - 1):
            M = M + GradedModule.cyclic(2**n - 2**i + k, 2)
    return ell, M


def crit8():
    for n in (2, 3):
        ell, want = _pfister_max_formula(n)
        r = quadric_qx(pfister_max(n))
        if r.module != want or not r.consistent or not r.partition_ok or r.d != [n] * ell:
            return False, f"max neighbour n={n}: {r.module.format()}"
    r = quadric_qx(pfister_min(3))
    want = GradedModule.free({d: 1 for d in range(8)})
    for k in range(4):
        want = want + GradedModule.cyclic(3 + k, 2)
    want = want + GradedModule.cyclic(4, 2)
    if r.module != want or not r.consistent or not r.partition_ok:
        return False, f"min neighbour n=3: {r.module.format()}"
    ok = quadric_embedding_bounds(pfister_min(3).f, pfister_max(3).f, 3)
    bad = quadric_embedding_bounds((0, 0, 3 + 3 + 1), pfister_max(3).f, 3)
    if not ok.ok or bad.ok or bad.violations[0][0] != 2:
        return False, f"embedding bounds {ok}, {bad}"
    return True, "max n=2,3 and min n=3 reproduced; partitions hold; bounds pass and fail as expected"


def crit9():
    for m in range(3, 34, 2):
        top = (m - 1) // 2
        expected = [i for i in range(1, top + 1) if (i + 1) & i == 0]
        a = so_steenrod_image(m, use_table=True).unhit
        b = so_steenrod_image(m, use_table=False).unhit
        if a != expected or b != expected:
            return False, f"m={m}: table {a}, binomial {b}, expected {expected}"
    return True, "odd m <= 33: unhit exactly at 2^n - 1, both routes"


def crit10():
    for p in (2, 3, 5):
        for n in range(1, 5):
            In = invariant_ideal(n, p, n)
            small = ideal_product(negative_part(p, n), In)
            low = v_degree(n - 1, p) if n > 1 else 0
            degrees = range(0, low - 5, -2)
            M = ideal_quotient_module(In, small, degrees)
            want = GradedModule.cyclic(0, grading="top")
            for i in range(1, n):
                want = want + GradedModule.cyclic(v_degree(i, p), p, grading="top")
            if M != want:
                return False, f"p={p}, n={n}: {M}"
    return True, "n <= 4, p in {2,3,5}"


def crit11():
    rep = e8_consistency()
    degs = [2, 4, 8, 10, 14, 18, 20, 24]
    table = catalogue("e8_p3_btable").table
    found = [poly.chow_degree for _, _, poly, _ in table.entries]
    needed = {("r_D1", "b4", "b8"), ("r_D2", "b4", "b20"), ("r_3D1", "b16", "b28")}
    done = {(r.operation, r.source, r.target) for r in rep.rewrites if r.ok}
    if not rep.ok or found != degs or not needed <= done:
        return False, f"degrees {found}, rewrites {done}, errors {rep.degree_errors}"
    return True, "degrees (2,4,8,10,14,18,20,24); r_D1 b4 = b8, r_D2 b4 = b20, r_3D1 b16 = 2 b28"


def crit12():
    g2 = DegvTable(2, [DegvRecord("y", 3, ("v1*y in Res", "y not in Res"))], dim=6)
    f4 = DegvTable(3, [DegvRecord("y", 4, ("v1*y in Res", "y not in Res")),
                       DegvRecord("y^2", 8, ("v1*y^2 in Res", "y^2 not in Res"))], dim=24)
    for t in (g2, f4):
        got = [g.deg_v for g in degv_infer(t).generators]
        if got != [2] * len(got):
            return False, f"type (I): {got}"
    for n in (2, 3):
        got = [g.deg_v for g in degv_infer(quadric_degv_table(pfister_max(n))).generators if "y" in g.name]
        if got != [n] * (2**n - 1):
            return False, f"max neighbour n={n}: {got}"
    got = [g.deg_v for g in degv_infer(quadric_degv_table(pfister_min(3))).generators if "y" in g.name]
    if got != [2, 2, 2, 3]:
        return False, f"min neighbour: {got}"
    seeded = [
        DegvTable(2, [DegvRecord("y", 7, ("v2*y in Res", "deg_v = 1"))]),
        DegvTable(2, [DegvRecord("y", 7, ("y in Res", "y not in Res"))]),
        DegvTable(2, [DegvRecord("y", 3, ("v2*y in Res", "y not in Res"))]),
    ]
    for t in seeded:
        try:
            degv_infer(t)
        except InconsistentFactsError:
            continue
        return False, f"contradiction not detected: {t.generators[0].facts}"
    return True, "type (I) -> 2, max neighbours -> n, min neighbour -> (2,2,2,3); 3 contradictions caught"


CRITERIA = [
    (1, "Dickson classes from Milnor composites", crit1, 10),
    (2, "Milnor recursion", crit2, 30),
    (3, "G2 twisted Chow ring", crit3, 5),
    (4, "F4 regular sequence and type (I) module", crit4, 300),
    (5, "Torus quotients", crit5, 5),
    (6, "Rost motive and Morava localization", crit6, 5),
    (7, "Additive decomposition of type (I) flags", crit7, 60),
    (8, "Quadric structure", crit8, 5),
    (9, "SO(m) Steenrod image", crit9, 10),
    (10, "Ideal-quotient module", crit10, 5),
    (11, "E8 table consistency", crit11, 1),
    (12, "deg_v engine", crit12, 1),
]


def run(number, title, func, limit):
    t0 = time.perf_counter()
    try:
        ok, detail = func()
    except Exception as e:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - t0
    if ok and elapsed > limit:
        ok, detail = False, f"took {elapsed:.2f}s, limit {limit}s"
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("number,title,func,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, func, limit, acceptance_log):
    ok, line = run(number, title, func, limit)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
