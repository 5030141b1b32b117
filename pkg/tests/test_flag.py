import itertools
import json

import pytest

from flagchow.errors import PreconditionError, TableError
from flagchow.flag import (catalogue, catalogue_keys, e8_consistency, f4_lift_degrees, grothendieck_quotient,
                           pfister_max, pfister_min, psz_additive_check, quadric_embedding_bounds,
                           quadric_formula, quadric_presentation, quadric_qx, so_fibre, so_odd_gp,
                           so_odd_gt, split_quadric, torus_ring, type_I_data, type_I_twisted,
                           vishik_membership, z_product, QuadricSpec)
from flagchow.gralg import graded_groups, groebner_fp, hilbert_series, presentation_from_json
from flagchow.modules import GradedModule, HilbertSeries
from flagchow.motive import rost_chow
from flagchow.parse import parse_poly


def test_catalogue_keys_and_lookup():
    keys = catalogue_keys()
    assert "g2_twisted" in keys and "so_odd_gt(l)" in keys
    assert catalogue("so_odd_gt_3").presentation.relations == catalogue("so_odd_gt(3)").presentation.relations
    with pytest.raises(TableError):
        catalogue("e7_twisted")
    e = catalogue("g2_twisted")
    assert json.loads(json.dumps(e.to_json()))["key"] == "g2_twisted"


def test_so_odd_gp_quotient():
    q = grothendieck_quotient(catalogue("so_odd_gp(3)"))
    assert graded_groups(q, 0, q.truncation) == GradedModule.cyclic(0) + GradedModule.cyclic(3, 2)


@pytest.mark.parametrize("rank,total", [(2, 8), (3, 48)])
def test_so_odd_gt_is_torsion_free_of_weyl_rank(rank, total):
    P = so_odd_gt(rank)
    M = graded_groups(P, 0, P.truncation)
    assert not M.torsion_counts()
    assert M.total_free_rank() == total == P.metadata["weyl_order"]


@pytest.mark.parametrize("rank", [2, 3])
def test_so_odd_gt_is_base_times_fibre(rank):
    total = so_odd_gt(rank)
    base, fibre = so_odd_gp(rank), so_fibre(rank)
    top = total.truncation
    want = graded_groups(base, 0, base.truncation).tensor(graded_groups(fibre, 0, fibre.truncation))
    assert graded_groups(total, 0, top) == want.restrict(hi=top)


def at_prime(pres, p):
    data = pres.to_json()
    data["prime"], data["mode"] = p, "fp"
    return presentation_from_json(data)


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_so_odd_gt_rationally_is_the_coinvariant_ring(rank):
    P = at_prime(so_odd_gt(rank), 5)
    G = groebner_fp(P.relations, P.truncation, P.ring)
    ts = [f"t{i}" for i in range(1, rank + 1)]
    for i in range(1, rank + 1):
        e = " + ".join("*".join(f"{t}^2" for t in c) for c in itertools.combinations(ts, i))
        assert G.contains(parse_poly(e, P.ring))


def test_torus_ring_names():
    R = torus_ring(catalogue("g2_twisted").presentation)
    assert R.names == ("t1", "t2")


def test_type_I_twisted_g2():
    F, bbars, p = type_I_data("g2")
    res = type_I_twisted(F, bbars, p)
    assert res.matches
    assert res.quotient_hilbert.as_list()[:4] == [1, 2, 2, 1]
    assert res.hilbert.total() == 18


def test_type_I_twisted_f4_total():
    F, bbars, p = type_I_data("f4")
    res = type_I_twisted(F, bbars, p, 31)
    assert res.matches
    assert res.hilbert.total() == 5 * 384 == 1920


def test_type_I_twisted_needs_enough_classes():
    F, bbars, p = type_I_data("g2")
    with pytest.raises(PreconditionError):
        type_I_twisted(F, bbars[:1], p)


def test_type_I_twisted_boundary_case():
    # exactly 2p - 2 classes at p = 2, the smallest input accepted
    F, bbars, p = type_I_data("g2")
    assert len(bbars) == 2 * p - 2
    assert type_I_twisted(F, bbars, p).matches


def test_additive_check_with_trivial_core():
    S = HilbertSeries([1, 2, 2, 1], 6)
    target = GradedModule.free({0: 1, 1: 2, 2: 2, 3: 1})
    assert psz_additive_check(GradedModule.cyclic(0), S, target, 6).ok
    assert not psz_additive_check(rost_chow(2, 2), S, target, 6).ok


def test_additive_check_g2():
    F, bbars, p = type_I_data("g2")
    S = type_I_twisted(F, bbars, p).quotient_hilbert
    target = graded_groups(catalogue("g2_twisted").presentation, 0, 6)
    rep = psz_additive_check(rost_chow(2, 2), S, target, 6)
    assert rep.ok and not rep.mismatches


def test_quadric_spec_validation():
    with pytest.raises(PreconditionError):
        QuadricSpec(3, (1, 1))
    with pytest.raises(PreconditionError):
        QuadricSpec(3, (0, 2, 1))
    with pytest.raises(PreconditionError):
        QuadricSpec(3, (0, 3))
    with pytest.raises(PreconditionError):
        QuadricSpec(2, (0, 0, 0))          # u_2 would sit in degree -1
    assert pfister_max(3).d_list == [3] * 7
    assert pfister_min(3).d_list == [2, 2, 2, 3]


@pytest.mark.parametrize("spec", [pfister_max(2), pfister_max(3), pfister_min(2), pfister_min(3),
                                  QuadricSpec(4, (0, 1)), QuadricSpec(5, (0, 2, 4))])
def test_quadric_routes_agree(spec):
    r = quadric_qx(spec)
    assert r.module == r.formula
    assert r.formula == r.via_degv
    assert r.consistent


def test_tate_indices():
    r = quadric_qx(pfister_max(2))
    assert r.tate_indices == [0, 1, 2] and r.partition_ok
    assert quadric_qx(QuadricSpec(4, (0, 1))).tate_indices == [3, 2, 3, 4]
    assert not quadric_qx(QuadricSpec(4, (0, 1))).partition_ok


def test_split_quadric():
    r = quadric_qx(split_quadric(3))
    assert r.module == GradedModule.free({d: 1 for d in range(6)}) == r.formula
    assert r.tate_indices == []
    with pytest.raises(PreconditionError):
        QuadricSpec(3, (0,), anisotropic=False)


def test_quadric_presentation_shape():
    P = quadric_presentation(pfister_max(2))
    assert [g.name for g in P.ring.generators] == ["h", "u1"]
    assert quadric_formula(pfister_max(2)).torsion_counts() == {2: 3}


def test_embedding_bounds():
    ok = quadric_embedding_bounds(pfister_min(3).f, pfister_max(3).f, 3)
    assert ok.ok and not ok.violations
    bad = quadric_embedding_bounds((0, 0, 7), (0, 0, 0), 3)
    assert not bad.ok and bad.violations == [(2, 7, -3, 3)]
    with pytest.raises(ValueError):
        quadric_embedding_bounds((0,), (0, 0), 1)


def test_vishik_membership():
    assert vishik_membership([1, 3], "x2*x6", 3)
    assert not vishik_membership([1], "x2*x6", 3)
    assert vishik_membership([], "1", 3)
    with pytest.raises(IndexError):
        vishik_membership([5], [1], 3)
    with pytest.raises(ValueError):
        vishik_membership([1], "x3", 3)


def test_z_product():
    z = z_product([1, 2], 1, 3)
    assert z.terms == [(1, 3)]
    assert z.format() == "z{1,3}"
    assert {reason for _, reason in z.dropped} == {"repeated index"}
    assert z_product([1], 2, 3).terms == [(1, 2), (3,)]
    assert z_product([2], 2, 3).terms == []
    with pytest.raises(ValueError):
        z_product([1, 1], 2, 3)


def test_e8_table():
    rep = e8_consistency()
    assert rep.ok and not rep.degree_errors
    assert {(r.operation, r.source, r.target) for r in rep.rewrites if r.ok} >= {
        ("r_D1", "b4", "b8"), ("r_D2", "b4", "b20"), ("r_3D1", "b16", "b28")}
    assert json.loads(json.dumps(rep.to_json()))["ok"] is True


def test_f4_lift_degrees():
    assert f4_lift_degrees() == {"b_lifts": [2, 4, 6, 8], "b_lifts_alternative": [2, 4, 6, 8]}


def test_hilbert_of_g2_split():
    P = catalogue("g2_gt_split").presentation
    assert hilbert_series(P).total() == 12
