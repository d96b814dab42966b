import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import fplinalg as la
from twisted_codes import groups as gr
from twisted_codes.catalog import by_name, catalog, frobenius_c2_f4, twisted_c2_f3
from twisted_codes.crossed import CrossedSystem
from twisted_codes.gf import FiniteField
from twisted_codes.ring import TwistedRing

SMALL = [e for e in catalog() if e.system.field.q ** e.system.n <= 4096]


def ring(name):
    return TwistedRing(by_name(name).system)


def all_subspaces(N, p):
    """Every subspace of F_p^N, by row space of every generator subset (tiny N only)."""
    vecs = la.all_combinations(N, p)[1:]
    seen = {np.zeros((0, N), dtype=np.int64).tobytes(): np.zeros((0, N), dtype=np.int64)}
    for r in range(1, N + 1):
        for combo in itertools.combinations(range(len(vecs)), r):
            B = la.row_space(vecs[list(combo)], p, N)
            seen.setdefault(B.tobytes() + bytes([B.shape[0]]), B)
    return list(seen.values())


def test_twisted_c2_products():
    R = TwistedRing(twisted_c2_f3())
    g = R.basis_elem(1)
    assert (g * g).tolist() == [2, 0]
    one_plus_g = R.one() + g
    assert R.principal_ideal(one_plus_g, "right").dim_p == 2


def test_frobenius_c2_product():
    R = TwistedRing(frobenius_c2_f4())
    x = R.elem([0, 2])  # omega g-bar
    y = R.elem([2, 0])  # omega e-bar
    assert (x * y).tolist() == [0, 1]


def test_f2_c2_and_c4_ideals():
    R2 = ring("F2[C2]")
    assert len(R2.enumerate_ideals("right")) == 3
    R4 = ring("F2[C4]")
    dims = sorted(I.dim_p for I in R4.enumerate_ideals("right"))
    assert dims == [0, 1, 2, 3, 4]
    ann = R4.annihilator(R4.one() + R4.basis_elem(2), "right")
    assert ann.dim_p == 2


@pytest.mark.parametrize("name", ["F2[C2]", "F2[C3]", "F3^a[C2]", "F2[C4]", "F4[C2;frob]", "F2[V4]"])
def test_ideal_enumeration_matches_brute_force(name):
    R = ring(name)
    for side in ("left", "right"):
        brute = {B.tobytes() for B in all_subspaces(R.dim_p, R.p) if R.is_ideal(B, side)}
        ours = {I.basis.tobytes() for I in R.enumerate_ideals(side)}
        assert ours == brute


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_mul_codes_matches_structure_tensor(entry):
    R = TwistedRing(entry.system)
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = rng.integers(0, R.field.q, R.n)
        y = rng.integers(0, R.field.q, R.n)
        via_tensor = R.from_vec(R.mul_matrix_vec(R.to_vec(x), "left") @ R.to_vec(y) % R.p)
        assert via_tensor.tolist() == R.mul_codes(x, y).tolist()


@given(st.sampled_from([e.name for e in catalog()]), st.data())
def test_ring_associativity_and_unit(name, data):
    R = ring(name)
    q = R.field.q
    draw = lambda: R.elem(data.draw(st.lists(st.integers(0, q - 1), min_size=R.n, max_size=R.n)))
    x, y, z = draw(), draw(), draw()
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert R.one() * x == x and x * R.one() == x


@given(st.sampled_from(["F2[S3]", "F3^a[C2]", "F4[C2;frob]", "F3^a1[C4]", "F2[Q8]"]), st.data())
def test_principal_ideals_and_annihilators_are_ideals(name, data):
    R = ring(name)
    q = R.field.q
    v = R.elem(data.draw(st.lists(st.integers(0, q - 1), min_size=R.n, max_size=R.n)))
    for side in ("left", "right"):
        I = R.principal_ideal(v, side)
        assert R.is_ideal(I.basis, side) and I.contains(v)
        A = R.annihilator(v, side)
        assert R.is_ideal(A.basis, side)
        for a in A.basis_elems()[:3]:
            prod = v * a if side == "right" else a * v
            assert prod.is_zero()


def test_double_annihilator_in_group_algebra():
    R = ring("F2[C4]")
    for L in R.enumerate_ideals("left"):
        assert R.double_annihilator_check(L)


def test_ideal_k_linearity():
    R = ring("F4[C2;frob]")
    dims = {(I.dim_p, I.k_linear) for I in R.enumerate_ideals("right")}
    assert (0, True) in dims and (4, True) in dims
