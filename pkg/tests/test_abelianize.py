import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import groups as gr
from twisted_codes.abelianize import (
    MonomialWitness,
    abelian_reduce,
    detect_scalar_action,
    dim1_untwist,
    equivalence_search,
    make_plan,
    opposite,
    scalar_transport,
)
from twisted_codes.catalog import by_name, catalog
from twisted_codes.codes import LinearCode
from twisted_codes.errors import NotOneDimensional, ReductionStalled
from twisted_codes.ring import TwistedRing

TWISTED = [e.name for e in catalog() if e.system.is_twisted_only and not e.system.is_untwisted and e.system.n <= 6]


def ring(name):
    return TwistedRing(by_name(name).system)


def weights(I):
    return LinearCode(I).weight_distribution().tolist()


def small_principal(R, side, max_k=3):
    return [I for I in R.enumerate_principal_ideals(side) if I.dim_K is not None and 1 <= I.dim_K <= max_k]


def test_f2_s3_repetition_code_reduces_through_commutator():
    R = ring("F2[S3]")
    I = R.principal_ideal(R.group_sum(), "left")
    red = abelian_reduce(I)
    assert red.verify()
    G = red.image.ring.group
    assert G.is_abelian and G.n == 6
    assert "scalar-transport" in red.route
    assert weights(red.image) == weights(I)


def test_repetition_codes_are_equivalent():
    R1, R2 = ring("F2[S3]"), ring("F2[C6]")
    I1 = R1.principal_ideal(R1.group_sum(), "right")
    I2 = R2.principal_ideal(R2.group_sum(), "right")
    w = equivalence_search(I1, I2)
    assert w is not None and w.is_permutation()


def test_different_weight_distributions_are_not_equivalent():
    R = ring("F2[C4]")
    ideals = [I for I in R.enumerate_ideals("right") if I.dim_p == 2]
    J = R.principal_ideal(R.group_sum(), "right") + R.principal_ideal(R.one() + R.basis_elem(2), "right")
    others = [I for I in R.enumerate_ideals("right") if I.dim_p == J.dim_p and weights(I) != weights(J)]
    for I in others:
        assert equivalence_search(I, J) is None
    assert len(ideals) >= 1


def test_dim1_untwist_on_coboundary_twist():
    R = ring("F3^dmu[C3]")
    ones = [I for I in R.enumerate_ideals("left") if I.dim_K == 1]
    assert ones
    for I in ones:
        lam, w, image = dim1_untwist(I)
        assert image.is_ideal() and image.ring.sys.is_untwisted
        assert weights(image) == weights(I)
    with pytest.raises(NotOneDimensional):
        dim1_untwist(R.whole("left"))


def test_opposite_carries_right_to_left():
    R = ring("F3^a1[S3]")
    for I in small_principal(R, "right"):
        w, J = opposite(I)
        assert J.side == "left" and J.is_ideal()
        assert weights(J) == weights(I)


def test_tetracode_counterexample():
    """A twisted C4 ideal achieves [4,2,3]_3, which no untwisted group of order 4 does."""
    R = ring("F3^a1[C4]")
    tetra = [I for I in R.enumerate_ideals("left") if I.dim_K == 2 and LinearCode(I).min_distance() == 3]
    assert tetra
    assert weights(tetra[0]) == [1, 0, 0, 8, 0]
    for name in ("F3[C4]", "F3[V4]"):
        U = ring(name)
        for I in U.enumerate_ideals("left"):
            if I.dim_K == 2:
                assert LinearCode(I).min_distance() <= 2
    with pytest.raises(ReductionStalled):
        abelian_reduce(tetra[0])


def test_plan_for_s3_commutator():
    S3 = gr.symmetric(3)
    N = S3.commutator_subgroup()
    plan = make_plan(S3, N, "same")
    assert plan.H.n == 6 and plan.H.is_abelian


@pytest.mark.parametrize("name", TWISTED)
def test_detected_scalar_actions_are_compatible(name):
    R = ring(name)
    G = R.group
    for I in small_principal(R, "left"):
        for N in G.normal_subgroups():
            act = detect_scalar_action(I, N, "left")
            if act is not None:
                assert act.compatibility_violations(R.sys.alpha, R.field) == []


@pytest.mark.parametrize("name", ["F2[S3]", "F3[S3]", "F4[S3]", "F2[D4]", "F2[Q8]", "F4^dmu[S3]"])
def test_successful_reductions_preserve_weights(name):
    R = ring(name)
    for side in ("left", "right"):
        for I in small_principal(R, side)[:12]:
            red = abelian_reduce(I)
            assert red.verify()
            assert weights(red.image) == weights(I)


def test_scalar_transport_of_commutator_action():
    R = ring("F3[S3]")
    N = R.group.commutator_subgroup()
    plan = make_plan(R.group, N, "same")
    done = 0
    for I in small_principal(R, "left"):
        act = detect_scalar_action(I, N, "left")
        if act is None:
            continue
        res = scalar_transport(I, act, plan)
        assert res.image.is_ideal() and res.relation_violations == 0
        assert weights(res.image) == weights(I)
        done += 1
    assert done > 0


@given(st.data())
def test_monomial_maps_preserve_weights(data):
    R = ring("F3[C6]")
    I = R.principal_ideal(R.elem(data.draw(st.lists(st.integers(0, 2), min_size=6, max_size=6))), "right")
    perm = data.draw(st.permutations(range(6)))
    diag = data.draw(st.lists(st.integers(1, 2), min_size=6, max_size=6))
    w = MonomialWitness(tuple(perm), tuple(diag))
    words = R.from_vec(I.elements_vec())
    img = w.apply(R.field, words)
    assert sorted((img != 0).sum(axis=1).tolist()) == sorted((words != 0).sum(axis=1).tolist())
