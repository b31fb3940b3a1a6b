import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cp2kit import checkers as ch
from cp2kit import constructors as c
from cp2kit import structure as sx
from cp2kit.constructors import FamilyDescriptor
from cp2kit.corpus import THEOREM, evaluate_groups
from cp2kit.errors import NotAPGroup, PreconditionNotCP2
from cp2kit.group import ActionSpec, direct_product, semidirect_product

from conftest import SIGMA, TAU, naive_cp2, perm_compose, perm_order


def c4c4_by_c3():
    """(C4 x C4) extended by C3 acting as (a, b) -> (-b, a - b), i.e. multiplication by a cube root of unity."""
    base = c.abelian([4, 4])

    def rot(i):
        a, b = divmod(i, 4)
        return ((-b) % 4) * 4 + (a - b) % 4

    one = [rot(i) for i in range(16)]
    two = [rot(rot(i)) for i in range(16)]
    return semidirect_product(ActionSpec(c.cyclic(3), base, [list(range(16)), one, two]))


def test_oracle_examples(A4, A5, D8):
    assert ch.cp2_oracle(A4) == (True, None)
    ok, w = ch.cp2_oracle(A5)
    assert not ok and w.oxy > w.bound and ch.witness_is_valid(A5, w)
    assert not ch.is_cp2(D8)


def test_sigma_tau_pair_is_a_witness(A5):
    s, t = A5.index_of(SIGMA), A5.index_of(TAU)
    w = ch.ViolationWitness(s, t, A5.element_order(A5.mul(s, t)),
                            max(A5.element_order(s), A5.element_order(t)))
    assert (w.oxy, w.bound) == (5, 3) == (perm_order(perm_compose(SIGMA, TAU)), 3)
    assert ch.witness_is_valid(A5, w)


def test_oracle_matches_naive(small_groups):
    for g in small_groups:
        ok, w = ch.cp2_oracle(g)
        naive_ok, pair = naive_cp2(g)
        assert ok == naive_ok
        if w is not None:
            assert (w.x, w.y) == pair
            assert ch.witness_is_valid(g, w)


def test_normal_subgroup_route(Q8, D8):
    assert ch.cp2_via_theorem_a(Q8)
    assert [len(ch.order_bounded_set(Q8, a)) for a in (1, 2, 4)] == [1, 2, 8]
    assert not ch.cp2_via_theorem_a(D8)
    g2 = ch.order_bounded_set(D8, 2)
    assert len(g2) == 6 and not D8.is_closed(g2)
    assert ch.cp2_via_theorem_a(c.cyclic(1))


def test_both_routes_agree_on_small_groups(small_groups):
    for g in small_groups:
        cp2 = ch.is_cp2(g)
        assert ch.cp2_via_theorem_a(g) == cp2
        assert ch.classify_theorem_d(g).in_cp2 == cp2


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2,), (3,), (4,), (2, 2), (4, 2), (3, 3), (9, 3), (5,), (8, 4)]),
       st.sampled_from([1, 2, 3, 4]))
def test_class_chain_on_products(partition, k):
    g = direct_product(c.abelian(partition), c.cyclic(k))
    v = ch.classify(g)
    assert not v.cp2 or v.cp
    assert not v.cp1 or v.cp
    assert not v.cp or v.cn
    assert v.cp2 == ch.cp2_via_theorem_a(g) == ch.classify_theorem_d(g).in_cp2


def test_class_predicates(A5):
    assert ch.is_cp(A5) and not ch.is_cp2(A5) and ch.is_cp1(A5)
    assert not ch.is_cp(c.cyclic(6))
    assert ch.is_cn(A5) and ch.is_cn(c.symmetric(4)) and not ch.is_cn(c.dihedral(12))
    assert not ch.is_cp1(c.cyclic(4)) and ch.is_cp1(c.cyclic(1))


def test_order_map_property(Q8, A4):
    assert ch.order_map_property(Q8)
    assert ch.order_map_property(A4)
    assert ch.order_map_property(c.abelian([4, 2]))
    with pytest.raises(PreconditionNotCP2):
        ch.order_map_property(c.dihedral(8))


def test_omega_condition(Q8, D8):
    assert ch.omega_condition(Q8, 2) == [(1, True), (2, True)]
    assert ch.omega_condition(D8, 2) == [(1, False), (2, True)]
    assert ch.omega_condition(c.elementary_abelian(3, 2), 3) == [(1, True)]
    assert ch.omega_condition(c.cyclic(1)) == []
    with pytest.raises(NotAPGroup):
        ch.omega_condition(c.cyclic(6))


def test_detect_frobenius(A4, S3, Q8):
    d = ch.detect_frobenius(A4)
    assert (d.p, d.q, d.alpha, d.beta, d.complement_cyclic) == (2, 3, 2, 1, True)
    assert d.kernel == sx.fitting(A4) and len(d.complement) == 3
    d = ch.detect_frobenius(S3)
    assert (d.p, d.q, len(d.kernel), len(d.complement)) == (3, 2, 3, 2)
    assert ch.detect_frobenius(Q8) is None
    assert ch.detect_frobenius(c.cyclic(6)) is None
    assert ch.detect_frobenius(c.alternating(5)) is None


def test_decomposition_invariants():
    for params in [(2, 2, 3), (2, 4, 5), (3, 2, 8), (3, 2, 4), (7, 1, 3), (5, 2, 3)]:
        g = c.frobenius_linear(*params)
        d = ch.detect_frobenius(g)
        assert d is not None
        assert sx.is_normal(g, d.kernel) and (d.kernel & d.complement).is_trivial()
        assert len(d.kernel) * len(d.complement) == g.order
        assert len(d.kernel) == d.p ** d.alpha and len(d.complement) == d.q ** d.beta
        conj = g.conjugation
        for h in d.complement:
            if h:
                moved = conj[h][d.kernel.indices()]
                assert np.count_nonzero(moved == d.kernel.indices()) == 1


def test_classifier_examples(Q8, A4, S3):
    out = ch.classify_theorem_d(Q8)
    assert (out.branch, out.prime) == (ch.PGROUP_OMEGA, 2)
    out = ch.classify_theorem_d(A4)
    d = out.decomposition
    assert out.branch == ch.FROBENIUS_PQ and (d.p, d.q, d.alpha, d.beta) == (2, 3, 2, 1)
    assert ch.classify_theorem_d(S3).branch == ch.NOT_CP2
    assert ch.classify_theorem_d(c.cyclic(1)).branch == ch.PGROUP_OMEGA
    assert ch.classify_theorem_d(c.cyclic(6)).branch == ch.NOT_CP2


def test_corollary_f(A4, Q8):
    rec = ch.corollary_f(A4)
    assert rec.in_intersection and rec.branch == "frobeniusPQ1"
    assert rec.commutator_equals_fitting and rec.sylow_q_count == 4 and rec.partition_valid
    assert not ch.corollary_f(Q8).in_intersection
    rec = ch.corollary_f(c.extraspecial_exponent_p(3))
    assert rec.in_intersection and rec.branch == "exponentP" and rec.consistent


def test_sylow_partition_check(A4):
    kernel = sx.fitting(A4)
    comps = sx.conjugates(A4, sx.sylow(A4, 3))
    assert ch.sylow_partition_valid(A4, kernel, comps)
    assert not ch.sylow_partition_valid(A4, kernel, comps[:-1])
    assert not ch.sylow_partition_valid(A4, kernel, comps + [kernel])


def test_largest_order_cut(Q8, A4):
    cut = ch.largest_order_cut(Q8)
    assert len(cut.cut_set) == 2 and cut.is_normal and cut.quotient_exponent == 2
    cut = ch.largest_order_cut(A4)
    assert cut.cut_set == sx.fitting(A4) and cut.is_normal and cut.quotient_exponent == 3
    cut = ch.largest_order_cut(c.cyclic(7))
    assert cut.cut_set.is_trivial() and cut.quotient_exponent == 7
    with pytest.raises(PreconditionNotCP2):
        ch.largest_order_cut(c.symmetric(3))
    with pytest.raises(PreconditionNotCP2):
        ch.largest_order_cut(c.cyclic(1))


def test_literal_frobenius_branch_can_disagree_with_the_oracle():
    # Every stated branch condition holds, yet two elements of order 3 have a
    # product of order 4: the harness must flag this rather than reconcile it.
    g = c4c4_by_c3()
    ok, w = ch.cp2_oracle(g)
    assert not ok and (w.oxy, w.bound) == (4, 3)
    assert not ch.cp2_via_theorem_a(g)
    out = ch.classify_theorem_d(g)
    d = out.decomposition
    assert out.branch == ch.FROBENIUS_PQ and (d.p, d.q, d.alpha, d.beta) == (2, 3, 4, 1)
    report = evaluate_groups([(FamilyDescriptor("custom", (16, 3)), g)])
    kinds = {(i["kind"], i["check"]) for i in report["summary"]["discrepancies"]}
    assert (THEOREM, "theoremD") in kinds
