import pytest

from twisted_codes.catalog import by_name
from twisted_codes.checkable import code_checkable_scan, is_checkable, left_principal_witness
from twisted_codes.ring import TwistedRing


def ring(name):
    return TwistedRing(by_name(name).system)


def brute_checkable(R, I):
    """Any v in the whole ring with Ann_r(v) = I."""
    return any(R.annihilator(R.elem_from_vec(x), "right") == I for x in R.all_vectors())


@pytest.mark.parametrize("name", ["F2[C4]", "F2[C6]", "F4[C2;frob]", "F3^a[C2]"])
def test_all_checkable_under_hypothesis(name):
    rep = code_checkable_scan(by_name(name).system)
    assert rep.hypothesis_holds
    assert rep.all_checkable and rep.frobenius_agrees and rep.checkable_claim_holds


def test_klein_four_over_f2_has_uncheckable_ideal():
    rep = code_checkable_scan(by_name("F2[V4]").system)
    assert not rep.hypothesis_holds
    assert not rep.all_checkable
    assert rep.frobenius_agrees


@pytest.mark.parametrize("name", ["F2[C4]", "F2[V4]", "F2[S3]", "F3^a[C2]", "F4[C2;frob]"])
def test_witness_search_matches_brute_force(name):
    R = ring(name)
    for I in R.enumerate_ideals("right"):
        v = is_checkable(I)
        assert (v is not None) == brute_checkable(R, I)
        if v is not None:
            assert R.annihilator(v, "right") == I


def test_left_principal_witness_generates():
    R = ring("F2[C4]")
    for L in R.enumerate_ideals("left"):
        w = left_principal_witness(L)
        assert w is not None
        assert R.principal_ideal(w, "left") == L


def test_report_json_shape():
    d = code_checkable_scan(by_name("F2[C4]").system, jobs=2).to_json()
    assert d["all_checkable"] and len(d["ideals"]) == 5
