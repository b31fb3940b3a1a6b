import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cp2kit import constructors as c
from cp2kit import structure as sx
from cp2kit.checkers import is_cp2
from cp2kit.errors import ClosureCapExceeded, InvalidAction, NotAGroup, NotASubgroup, NotNormal
from cp2kit.group import (
    ActionSpec,
    PermutationSpec,
    cayley_json,
    direct_product,
    from_cayley_table,
    from_permutations,
    induced_subgroup,
    load_group,
    quotient,
    semidirect_product,
)

from conftest import SIGMA, TAU, lcm, naive_conjugate, naive_order, perm_compose, perm_order


def test_trivial_table():
    g = from_cayley_table([[0]])
    assert g.order == 1 and g.element_orders.tolist() == [1]


def test_c2_table():
    g = from_cayley_table([[0, 1], [1, 0]])
    assert g.element_orders.tolist() == [1, 2]
    assert g.meta["associativity"] == "full"


def test_c6_with_identity_elsewhere_is_renumbered():
    # Z/6 with labels shifted so that label 3 is the identity
    raw = [[(a + b - 3) % 6 for b in range(6)] for a in range(6)]
    g = from_cayley_table(raw)
    assert g.meta["renumbered_identity_from"] == 3
    assert np.array_equal(g.table[0], np.arange(6))
    assert g.order_spectrum() == {1, 2, 3, 6}


@pytest.mark.parametrize("raw, reason", [
    ([[0, 1], [1, 1]], "permutation"),
    ([[1, 0], [0, 0]], "identity"),
    ([[0, 1, 2], [1, 2, 0]], "square"),
    ([[0, 5], [5, 0]], "range"),
])
def test_bad_tables(raw, reason):
    with pytest.raises(NotAGroup, match=reason):
        from_cayley_table(raw)


def test_nonassociative_loop_rejected():
    # smallest non-associative loop with identity 0: a Latin square of order 5
    raw = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup, match="associativ"):
        from_cayley_table(raw)


def test_large_tables_use_sampled_associativity():
    s6 = c.symmetric(6)
    g = from_cayley_table(s6.table)
    assert g.order == 720
    assert g.meta["associativity"] == "sampled"


def test_permutations_s4():
    g = from_permutations(PermutationSpec(4, [[1, 0, 2, 3], [1, 2, 3, 0]]))
    assert g.order == 24
    assert g.labels[0] == (0, 1, 2, 3)


def test_permutations_sigma_tau_generate_a5():
    g = from_permutations(PermutationSpec(5, [list(SIGMA), list(TAU)]))
    assert g.order == 60
    s, t = g.index_of(SIGMA), g.index_of(TAU)
    st_ = g.mul(s, t)
    assert g.labels[st_] == perm_compose(SIGMA, TAU)
    assert g.element_order(st_) == 5 == perm_order(perm_compose(SIGMA, TAU))
    assert (g.element_order(s), g.element_order(t)) == (2, 3)


def test_permutations_trivial_and_numbering():
    g = from_permutations(PermutationSpec(1, []))
    assert g.order == 1
    g = from_permutations(PermutationSpec(3, [[1, 2, 0]]))
    # breadth-first from the identity: e, r, r^2
    assert g.labels == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def test_permutation_table_matches_composition():
    g = c.symmetric(4)
    for a in range(0, 24, 5):
        for b in range(24):
            assert g.labels[g.mul(a, b)] == perm_compose(g.labels[a], g.labels[b])


def test_permutation_errors():
    with pytest.raises(NotAGroup):
        PermutationSpec(3, [[0, 0, 1]])
    with pytest.raises(ClosureCapExceeded):
        from_permutations(PermutationSpec(5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]), cap=100)


def test_element_orders(A4):
    assert A4.element_order(0) == 1
    three_cycle = A4.index_of((1, 2, 0, 3))
    assert A4.element_order(three_cycle) == 3
    with pytest.raises(IndexError):
        A4.element_order(12)


def test_order_spectrum_examples(Q8):
    assert Q8.order_spectrum() == {1, 2, 4}
    assert c.cyclic(6).order_spectrum() == {1, 2, 3, 6}
    assert c.cyclic(1).order_spectrum() == {1}


def test_direct_product_examples(Q8):
    assert 6 in direct_product(c.cyclic(2), c.cyclic(3)).order_spectrum()
    v4 = direct_product(c.cyclic(2), c.cyclic(2))
    assert v4.order == 4 and v4.exponent() == 2
    g = direct_product(Q8, c.cyclic(3))
    assert {3, 4} <= g.order_spectrum()
    x = g.index_of((1, 0)) if Q8.element_order(1) == 4 else g.index_of((2, 0))
    y = g.index_of((0, 1))
    assert g.element_order(x) == 4 and g.element_order(y) == 3
    assert g.mul(x, y) == g.mul(y, x)
    assert g.element_order(g.mul(x, y)) == 12
    with pytest.raises(ClosureCapExceeded):
        direct_product(c.cyclic(30), c.cyclic(30), cap=800)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 2, 3, 4, 6, 8]), st.sampled_from(["cyclic", "dihedral", "quaternion"]))
def test_direct_product_orders_are_lcms(n, kind):
    left = {"cyclic": c.cyclic(n), "dihedral": c.dihedral(2 * n),
            "quaternion": c.generalized_quaternion(8)}[kind]
    right = c.cyclic(n)
    g = direct_product(left, right)
    for idx, (x, y) in enumerate(g.labels):
        assert g.element_order(idx) == lcm(left.element_order(x), right.element_order(y))


def test_semidirect_trivial_action_is_direct_product():
    n, h = c.cyclic(4), c.cyclic(3)
    act = np.tile(np.arange(4), (3, 1))
    assert np.array_equal(semidirect_product(ActionSpec(h, n, act)).table,
                          direct_product(n, h).table)


def test_semidirect_swap_action_is_the_order_16_example():
    v4 = c.elementary_abelian(2, 2)
    swap = [0, 2, 1, 3]  # (a, b) -> (b, a) with index 2a + b
    act = [list(range(4)) if h % 2 == 0 else swap for h in range(4)]
    g = semidirect_product(ActionSpec(c.cyclic(4), v4, act))
    assert g.order == 16 and is_cp2(g)
    assert np.array_equal(g.table, c.paper_example(2).table)


def test_semidirect_rotation_gives_a4(A4):
    v4 = c.elementary_abelian(2, 2)
    rot = [0, 3, 1, 2]  # e1 -> e2 -> e1 + e2 -> e1 with e1 = 2, e2 = 1
    act = [list(range(4)), rot, [rot[r] for r in rot]]
    g = semidirect_product(ActionSpec(c.cyclic(3), v4, act))
    assert g.order == 12 and g.order_spectrum() == {1, 2, 3}
    from cp2kit.checkers import classify, classify_theorem_d
    assert classify(g) == classify(A4)
    assert classify_theorem_d(g).to_json() == classify_theorem_d(A4).to_json() | {
        "decomposition": classify_theorem_d(g).to_json()["decomposition"]}
    assert len(sx.center(g)) == len(sx.center(A4)) == 1


def test_invalid_actions():
    v4 = c.elementary_abelian(2, 2)
    with pytest.raises(InvalidAction, match="bijection"):
        semidirect_product(ActionSpec(c.cyclic(2), v4, [[0, 1, 2, 3], [0, 0, 1, 2]]))
    with pytest.raises(InvalidAction, match="multiplicative"):
        semidirect_product(ActionSpec(c.cyclic(2), c.cyclic(4), [[0, 1, 2, 3], [0, 2, 1, 3]]))
    with pytest.raises(InvalidAction, match="homomorphism"):
        semidirect_product(ActionSpec(c.cyclic(3), v4, [[0, 1, 2, 3], [0, 2, 1, 3], [0, 2, 1, 3]]))
    with pytest.raises(InvalidAction, match="identity"):
        semidirect_product(ActionSpec(c.cyclic(2), v4, [[0, 2, 1, 3], [0, 1, 2, 3]]))
    with pytest.raises(InvalidAction, match="shape"):
        semidirect_product(ActionSpec(c.cyclic(2), v4, [[0, 1, 2, 3]]))


def test_quotient_examples(Q8):
    g = c.symmetric(3)
    assert quotient(g, g.whole()).order == 1
    v = quotient(Q8, sx.center(Q8))
    assert v.order == 4 and v.exponent() == 2
    pe, xp = c.paper_example(2, with_central=True)
    q = quotient(pe, sx.generated_subgroup(pe, pe.element_set([xp])))
    assert q.order == 8 and not is_cp2(q)


def test_quotient_requires_normal_subgroup(S3):
    reflection = next(a for a in range(6) if S3.element_order(a) == 2)
    with pytest.raises(NotNormal):
        quotient(S3, sx.cyclic_subgroup(S3, reflection))
    with pytest.raises(NotASubgroup):
        quotient(S3, S3.element_set([0, reflection, reflection + 1]))


def test_quotient_coset_orders_divide(small_groups):
    for g in small_groups:
        n = sx.commutator_subgroup(g)
        q = quotient(g, n)
        proj = q.meta["projection"]
        assert proj[0] == 0
        for a in range(g.order):
            assert g.element_order(a) % q.element_order(int(proj[a])) == 0


def test_induced_subgroup_examples(A4):
    assert induced_subgroup(A4, A4.trivial()).order == 1
    v4 = sx.fitting(A4)
    sub = induced_subgroup(A4, v4)
    assert sub.order == 4 and sub.exponent() == 2
    c3 = induced_subgroup(A4, sx.cyclic_subgroup(A4, A4.index_of((1, 2, 0, 3))))
    assert c3.order == 3 and c3.order_spectrum() == {1, 3}
    with pytest.raises(NotASubgroup):
        induced_subgroup(A4, A4.element_set([0, 1]) | A4.element_set([A4.index_of((1, 2, 0, 3))]))


def test_group_invariants(small_groups):
    for g in small_groups:
        assert g.validate(full=True) == "full"
        ar = np.arange(g.order)
        assert (g.table[ar, g.inverse] == 0).all()
        assert all(g.order % int(o) == 0 for o in g.element_orders)
        for a in range(g.order):
            assert g.element_order(a) == naive_order(g, a)
            assert g.element_order(a) == g.element_order(int(g.inverse[a]))
        for x in range(0, g.order, max(1, g.order // 7)):
            for a in range(g.order):
                assert g.element_order(naive_conjugate(g, x, a)) == g.element_order(a)


def test_conjugation_and_commutator_tables(S3):
    for g_ in range(6):
        for a in range(6):
            assert S3.conjugation[g_, a] == naive_conjugate(S3, g_, a)
            ia, ib = int(S3.inverse[g_]), int(S3.inverse[a])
            expected = S3.mul(S3.mul(ia, ib), S3.mul(g_, a))
            assert S3.commutators[g_, a] == expected


def test_power_map(Q8):
    for k in range(-3, 6):
        for a in range(8):
            x = 0
            base = a if k >= 0 else int(Q8.inverse[a])
            for _ in range(abs(k)):
                x = Q8.mul(x, base)
            assert Q8.power(a, k) == x


def test_json_formats(tmp_path, D8):
    cayley = tmp_path / "d8.json"
    cayley.write_text(json.dumps(cayley_json(D8)))
    assert np.array_equal(load_group(cayley).table, D8.table)
    perm = tmp_path / "a4.json"
    perm.write_text(json.dumps({"degree": 4, "generators": [[1, 2, 0, 3], [0, 2, 3, 1]]}))
    assert load_group(perm).order == 12
    for bad in [{"order": 3, "table": [[0, 1], [1, 0]]}, {"generators": [[0]]}, {"foo": 1}, [1, 2]]:
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        with pytest.raises(NotAGroup):
            load_group(path)
    path = tmp_path / "garbage.json"
    path.write_text("{nope")
    with pytest.raises(NotAGroup):
        load_group(path)
