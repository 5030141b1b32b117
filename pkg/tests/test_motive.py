import pytest

from flagchow.errors import (DegreeUnderflowError, InconsistentFactsError, ParseError, PreconditionError,
                             UnresolvedError)
from flagchow.modules import GradedModule
from flagchow.motive import (DegvRecord, DegvTable, MarkedSummand, degv_infer, degv_table_from_json,
                             ideal_module, marked_mn, marked_module, marked_times_free, mn_module,
                             morava_localize, product_type_I, qx_module, rost_chow, rost_degree,
                             rost_res_omega)


def test_mn_module_examples():
    M = mn_module(2, 2, 3)
    assert M.classes == [("c0", 3, 0), ("c1", 2, 2)]
    assert M.module == GradedModule.cyclic(3) + GradedModule.cyclic(2, 2)
    M3 = mn_module(3, 3, 13)
    assert [d for _, d, _ in M3.classes] == [13, 11, 5]
    assert mn_module(-1, 2, 3).module.is_zero()
    assert mn_module(0, 2, 3).module == GradedModule.cyclic(3)


def test_mn_module_underflow():
    with pytest.raises(DegreeUnderflowError):
        mn_module(3, 2, 3)
    with pytest.raises(ValueError):
        mn_module(-2, 2, 3)


def test_ideal_modules():
    assert ideal_module(["p", "v1"], 2, 3) == mn_module(2, 2, 3).module
    assert ideal_module(["p", "v1^2"], 2, 5) == GradedModule.cyclic(5) + GradedModule.cyclic(3, 2)


def test_rost_degrees():
    assert [rost_degree(n, 2) for n in (1, 2, 3)] == [1, 3, 7]
    assert rost_degree(2, 3) == 4
    assert rost_chow(1, 2) == GradedModule.cyclic(0) + GradedModule.cyclic(1)


def test_rost_res_omega_generators():
    assert rost_res_omega(2, 2).generators == [("1", 0), ("2*y", 3), ("v1*y", 2)]
    names = [g for g, _ in rost_res_omega(2, 3).generators]
    assert names == ["1", "3*y", "v1*y", "3*y^2", "v1*y^2"]
    assert len(rost_res_omega(3, 2).relations) == 3
    with pytest.raises(PreconditionError):
        rost_res_omega(3, 2, N=2)


def test_morava_localization():
    rational = morava_localize(rost_res_omega(2, 2), 0)
    assert rational.grading == "chow"
    assert rational == GradedModule.free({0: 1, 3: 1})
    K1 = morava_localize(rost_res_omega(2, 2), 1)
    assert K1.grading == "residue" and K1.total_free_rank() == 2
    with pytest.raises(PreconditionError):
        morava_localize(rost_res_omega(2, 2), 5)


def infer_one(p, deg, facts, **kw):
    return degv_infer(DegvTable(p, [DegvRecord("y", deg, tuple(facts))], **kw)).generators[0].deg_v


def test_degv_basic_facts():
    assert infer_one(2, 3, ["y in Res"]) == 0
    assert infer_one(2, 3, ["v1*y in Res", "y not in Res"]) == 2
    assert infer_one(2, 7, ["v2*y in Res", "v3*y not in Res"]) == 3
    assert infer_one(2, 7, ["v2*y in Res"]) == [0, 3]
    with pytest.raises(InconsistentFactsError):
        infer_one(2, 7, ["v2*y in Res", "v1*y not in Res"])
    assert infer_one(2, 7, ["deg_v = 1"]) == 1


def test_degv_caps():
    # degree 3 at p = 2 leaves room for c0, c1 only
    assert infer_one(2, 3, ["y not in Res"]) == [-1, 1, 2]
    # dim 6 <= 2^3 - 1 caps at 3, the degree cap is tighter
    assert infer_one(2, 5, ["y not in Res"], dim=6) == [-1, 1, 2, 3]
    assert infer_one(2, 5, ["y not in Res"], dim=3) == [-1, 1, 2]


def test_degv_split_index_and_morava_facts():
    assert infer_one(2, 3, ["y not in Res", "v1*y in Res"], split_index_p=True) == 2
    assert infer_one(2, 5, ["y not in Res"], split_index_p=True) == [1, 2, 3]
    assert infer_one(2, 5, ["y in Res_K(2)", "y not in Res"]) == 3


def test_degv_contradictions():
    with pytest.raises(InconsistentFactsError):
        infer_one(2, 7, ["y in Res", "y not in Res"])
    with pytest.raises(InconsistentFactsError):
        infer_one(2, 3, ["v2*y in Res", "y not in Res"])
    with pytest.raises(ParseError):
        infer_one(2, 3, ["z in Res"])


def test_degv_related_pairs():
    t = DegvTable(2, [DegvRecord("y", 3, ("v1*y in Res", "y not in Res")),
                      DegvRecord("h*y", 4)],
                  related=[("y", "h*y")])
    got = degv_infer(t)
    assert got.record("h*y").deg_v == [0, 2, 3]


def test_degv_is_idempotent_and_round_trips():
    t = DegvTable(3, [DegvRecord("y", 4, ("v1*y in Res", "y not in Res")),
                      DegvRecord("z", 9, ("z not in Res",))], dim=24)
    once = degv_infer(t)
    twice = degv_infer(once)
    assert [g.deg_v for g in once.generators] == [g.deg_v for g in twice.generators]
    back = degv_table_from_json(once.dumps())
    assert [g.deg_v for g in degv_infer(back).generators] == [g.deg_v for g in once.generators]


def test_qx_split_cellular():
    t = DegvTable(2, [DegvRecord("1", 0, ("1 in Res",)), DegvRecord("h", 1, ("h in Res",))])
    assert qx_module(t) == GradedModule.free({0: 1, 1: 1})


@pytest.mark.parametrize("p", [2, 3])
def test_qx_of_rost_facts(p):
    b = rost_degree(2, p)
    recs = [DegvRecord("1", 0, ("1 in Res",))]
    for i in range(1, p):
        y = "y" if i == 1 else f"y^{i}"
        recs.append(DegvRecord(y, i * b, (f"v1*{y} in Res", f"{y} not in Res")))
    assert qx_module(DegvTable(p, recs)) == rost_chow(2, p)


def test_qx_refusals():
    with pytest.raises(PreconditionError):
        qx_module(DegvTable(2, [DegvRecord("y", 3, ("non-free",))]))
    with pytest.raises(UnresolvedError):
        qx_module(DegvTable(2, [DegvRecord("y", 5, ("y not in Res",))]))


def test_qx_with_explicit_ideal():
    t = DegvTable(2, [DegvRecord("y", 5, ("ideal(p, v1^2)",))])
    assert qx_module(t) == GradedModule.cyclic(5) + GradedModule.cyclic(3, 2)


def test_two_rost_blocks_lose_one_torsion_class():
    A = marked_mn(2, 2, 3, "a")
    B = marked_mn(2, 2, 3, "b")
    prod = product_type_I(A, B, 2)
    plain = marked_module(A).tensor(marked_module(B))
    assert plain.torsion(5) == {2: 2}
    assert prod.torsion(5) == {2: 1}
    assert prod.torsion(4) == {2: 1} and prod.free_rank(6) == 1


def test_product_with_trivial_free_module():
    A = marked_mn(2, 2, 3, "a")
    one = [MarkedSummand("1", 0)]
    assert product_type_I(A, one, 2) == marked_module(A)


G2_SPLIT = {0: 1, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 1}
G2_QUOTIENT = {0: 1, 1: 2, 2: 2, 3: 1}


def test_marked_g2_times_unmarked_split_g2():
    twisted = marked_times_free(marked_mn(2, 2, 3, "g"), G2_QUOTIENT)
    split = [MarkedSummand(f"e{d}.{k}", d) for d, r in G2_SPLIT.items() for k in range(r)]
    got = product_type_I(twisted, split, 2).restrict(hi=6)
    want = marked_module(twisted).tensor(GradedModule.free(G2_SPLIT)).restrict(hi=6)
    assert got == want


def test_two_marked_g2_blocks():
    A = marked_times_free(marked_mn(2, 2, 3, "a"), G2_QUOTIENT)
    B = marked_times_free(marked_mn(2, 2, 3, "b"), G2_QUOTIENT)
    plain = marked_module(A).tensor(marked_module(B))
    prod = product_type_I(A, B, 2)
    pairs = sum(G2_QUOTIENT.values()) ** 2
    lost = sum(plain.torsion_counts().values()) - sum(prod.torsion_counts().values())
    assert lost == pairs
    assert prod.total_free_rank() == plain.total_free_rank()


def test_marker_checks():
    bad = [MarkedSummand("c0", 3, 0, "a", 0)]
    with pytest.raises(PreconditionError):
        product_type_I(bad, bad, 2)
