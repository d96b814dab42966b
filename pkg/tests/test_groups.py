import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import groups as gr
from twisted_codes.errors import NotAGroup, NotNormal

NAMES = ["C2", "C3", "C4", "C6", "S3", "V4", "D4", "Q8", "A4", "C2xC3"]


def test_s3_structure():
    S3 = gr.symmetric(3)
    assert S3.n == 6 and not S3.is_abelian
    A3 = S3.commutator_subgroup()
    assert A3.order == 3 and S3.is_normal(A3.members)
    Q, proj, reps = S3.quotient(A3)
    assert Q.n == 2 and reps[0] == 0
    t = [g for g in range(6) if S3.element_order(g) == 2][0]
    with pytest.raises(NotNormal):
        S3.quotient([0, t])


def test_derived_subgroups_and_orders():
    assert gr.quaternion().commutator_subgroup().order == 2
    assert gr.dihedral(4).commutator_subgroup().order == 2
    assert gr.alternating(4).commutator_subgroup().order == 4
    assert gr.cyclic(6).commutator_subgroup().order == 1
    assert sorted(gr.klein4().element_orders.tolist()) == [1, 2, 2, 2]
    assert sorted(gr.quaternion().element_orders.tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_p_nilpotency_and_sylow():
    S3 = gr.symmetric(3)
    ok, pair = S3.is_p_nilpotent(3)
    assert not ok
    a, b = pair
    assert S3.element_order(a) == 2 and S3.element_order(b) == 2
    assert S3.element_order(S3.mul(a, b)) == 3
    ok, comp = S3.is_p_nilpotent(2)
    assert ok and comp.order == 3
    assert gr.cyclic(6).sylow_subgroup(5).members == (0,)
    assert gr.symmetric(3).has_cyclic_sylow(2)
    assert not gr.klein4().has_cyclic_sylow(2)
    assert gr.alternating(4).sylow_subgroup(2).order == 4
    assert not gr.alternating(4).is_p_nilpotent(2)[0]


def test_invalid_table():
    with pytest.raises(NotAGroup):
        gr.FiniteGroup([[0, 1], [1, 1]])


def test_abelian_group_classes():
    assert len(gr.abelian_groups(8)) == 3
    assert len(gr.abelian_groups(6)) == 1
    assert all(G.is_abelian for G in gr.abelian_groups(12))


def brute_sylow_order(G, p):
    return gr.p_part(G.n, p)


@given(st.sampled_from(NAMES), st.data())
def test_group_axioms(name, data):
    G = gr.builtin(name)
    a, b, c = (data.draw(st.integers(0, G.n - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inv(a)) == 0
    assert G.power(a, G.element_order(a)) == 0
    assert G.n % G.element_order(a) == 0


@given(st.sampled_from(NAMES), st.sampled_from([2, 3, 5]))
def test_sylow_order_and_normal_quotient(name, p):
    G = gr.builtin(name)
    P = G.sylow_subgroup(p)
    assert P.order == brute_sylow_order(G, p)
    D = G.commutator_subgroup()
    Q, proj, reps = G.quotient(D)
    assert Q.is_abelian and Q.n * D.order == G.n
    T = G.table
    assert np.array_equal(proj[T], Q.table[proj[:, None], proj[None, :]])


@given(st.sampled_from(NAMES))
def test_p_nilpotent_complement_is_normal(name):
    G = gr.builtin(name)
    for p in (2, 3):
        ok, comp = G.is_p_nilpotent(p)
        if ok:
            assert G.is_normal(comp.members)
            assert comp.order == G.n // gr.p_part(G.n, p)
