import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import groups as gr
from twisted_codes.catalog import by_name, catalog, twisted_c2_f3
from twisted_codes.codes import (
    CodeBound,
    LinearCode,
    bound_report,
    extremal_construct,
    extremal_decompose,
    rank_K,
    s_rank,
    search_codes,
    singleton_ok,
)
from twisted_codes.errors import BudgetExceeded, NotKLinear, NotOneDimensional, ZeroCode
from twisted_codes.ring import TwistedRing

NAMES = [e.name for e in catalog() if e.system.field.q ** e.system.n <= 6561]


def ring(name):
    return TwistedRing(by_name(name).system)


def brute_code(v, side):
    """Every product v*x (right) or x*v (left) over all x, as symbol arrays."""
    R = v.ring
    words = set()
    for x in R.all_vectors():
        xe = R.elem_from_vec(x)
        words.add(tuple((v * xe if side == "right" else xe * v).tolist()))
    return np.array(sorted(words))


def test_repetition_code_in_f2_s3():
    R = ring("F2[S3]")
    C = LinearCode(R.principal_ideal(R.group_sum(), "right"))
    assert (C.length, C.k, C.min_distance()) == (6, 1, 6)
    assert C.weight_distribution().tolist() == [1, 0, 0, 0, 0, 0, 1]


def test_s_rank_example():
    S3 = gr.symmetric(3)
    t, seq = s_rank(S3, [0, 1])
    assert t == 3 and seq[0] == 0


def test_zero_code_and_non_k_linear():
    R = ring("F2[C2]")
    with pytest.raises(ZeroCode):
        LinearCode(R.zero_ideal()).min_distance()
    R4 = ring("F4[C2;frob]")
    non_lin = [I for I in R4.enumerate_ideals("right") if not I.k_linear]
    for I in non_lin:
        with pytest.raises(NotKLinear):
            bound_report(LinearCode(I))


def test_distance_budget():
    R = ring("F3[C6]")
    C = LinearCode(R.whole(), budget=10)
    with pytest.raises(BudgetExceeded):
        C.min_distance()


def test_extremal_examples():
    R = ring("F3[C6]")
    G = R.group
    H = G.generate([2])  # order 3
    c = R.group_sum(H.members)
    C = extremal_construct(H, c)
    assert (C.length, C.k, C.min_distance()) == (6, 2, 3)
    w = extremal_decompose(C)
    assert w.H.order == 3
    with pytest.raises(NotOneDimensional):
        extremal_construct(H, R.one() + R.basis_elem(2, 2))


def test_twisted_extremal_round_trip():
    R = TwistedRing(twisted_c2_f3())
    C = LinearCode(R.whole())
    assert C.params.d == 1 and C.k == 2
    w = extremal_decompose(C)
    assert w.H.order == 1


def test_search_codes_sorted():
    hits, found = search_codes(ring("F3[C4]"), "right", target=(4, 2, 2))
    assert found
    ds = [h.params.d for h in hits]
    assert ds == sorted(ds, reverse=True)
    assert all(singleton_ok(h.params) for h in hits)


@given(st.sampled_from(NAMES), st.data(), st.sampled_from(["left", "right"]))
def test_code_matches_brute_force_products(name, data, side):
    R = ring(name)
    v = R.elem(data.draw(st.lists(st.integers(0, R.field.q - 1), min_size=R.n, max_size=R.n)))
    I = R.principal_ideal(v, side)
    words = brute_code(v, side)
    assert len(words) == R.p**I.dim_p
    if I.dim_p == 0:
        return
    C = LinearCode(I)
    weights = (words != 0).sum(axis=1)
    assert C.min_distance() == weights[weights > 0].min()
    assert C.weight_distribution().tolist() == np.bincount(weights, minlength=R.n + 1).tolist()
    if C.k_linear:
        rep = bound_report(C)
        assert rep.holds and rep.amgm_holds and singleton_ok(C.params)


@given(st.sampled_from(NAMES), st.data())
def test_element_bound(name, data):
    R = ring(name)
    v = R.elem(data.draw(st.lists(st.integers(0, R.field.q - 1), min_size=R.n, max_size=R.n)))
    if v.is_zero():
        return
    rep = bound_report(v)
    assert rep.holds
    if R.sys.is_twisted_only:
        assert rep.rank_covers_s_rank
    assert rank_K(v) == R.principal_ideal(v, "right").dim_p // R.m


@given(st.sampled_from(["C4", "C6", "S3", "V4", "D4", "Q8", "A4"]), st.data())
def test_s_rank_translates_cover_group(name, data):
    G = gr.builtin(name)
    S = data.draw(st.sets(st.integers(0, G.n - 1), min_size=1))
    t, seq = s_rank(G, S)
    covered = {G.mul(s, g) for g in seq for s in S}
    assert covered == set(range(G.n))
    assert t * len(S) >= G.n


def test_code_bound_dataclass():
    b = CodeBound(d=3, k=2, n=6)
    assert b.holds and b.extremal and b.amgm_holds
