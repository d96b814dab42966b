import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import groups as gr
from twisted_codes.catalog import catalog, frobenius_c2_f4, twisted_c2_f3
from twisted_codes.crossed import (
    Cocycle,
    CrossedSystem,
    SigmaAction,
    coboundary_from_lambda,
    enumerate_cocycles,
    is_coboundary,
    validate_crossed_system,
)
from twisted_codes.errors import InvalidCrossedSystem
from twisted_codes.gf import FiniteField

F3, F4 = FiniteField(3, 1), FiniteField(2, 2)
C2, C3 = gr.cyclic(2), gr.cyclic(3)


def cocycle_violations(sys):
    """Independent scalar loop over the cocycle identity."""
    F, G, a = sys.field, sys.group, sys.alpha
    bad = 0
    for x in range(G.n):
        for y in range(G.n):
            for z in range(G.n):
                lhs = F.mul(a(x, y), a(G.mul(x, y), z))
                rhs = F.mul(sys.act(x, a(y, z)), a(x, G.mul(y, z)))
                bad += lhs != rhs
    return bad


def test_frobenius_with_omega_cocycle_is_invalid():
    tab = np.ones((2, 2), dtype=np.int64)
    tab[1, 1] = 2
    with pytest.raises(InvalidCrossedSystem):
        CrossedSystem(F4, C2, sigma=SigmaAction((0, 1)), alpha=Cocycle(tab))
    rep = validate_crossed_system(CrossedSystem(F4, C2, sigma=(0, 1), alpha=tab, check=False))
    assert not rep.valid


def test_coboundary_example():
    a = coboundary_from_lambda([1, 2, 2], F3, C3)
    assert a(1, 1) == 2
    lam = is_coboundary(a, F3, C3)
    assert lam is not None
    assert coboundary_from_lambda(lam, F3, C3) == a


def test_cocycle_counts():
    assert len(enumerate_cocycles(C2, F3)) == 2
    assert len(enumerate_cocycles(C2, F4)) == 3
    assert len(enumerate_cocycles(C3, F3)) == 4


def test_twisted_c2_is_not_coboundary():
    sys = twisted_c2_f3()
    assert is_coboundary(sys.alpha, sys.field, sys.group) is None


def test_json_round_trip(tmp_path):
    sys = frobenius_c2_f4()
    back = CrossedSystem.from_json(sys.to_json())
    assert back.sigma == sys.sigma and back.alpha == sys.alpha and back.field.q == 4


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_catalog_systems_satisfy_cocycle_identity(entry):
    assert cocycle_violations(entry.system) == 0


@given(st.lists(st.integers(1, 2), min_size=6, max_size=6))
def test_coboundaries_are_cocycles_and_detected(lam):
    S3 = gr.symmetric(3)
    lam[0] = 1
    a = coboundary_from_lambda(lam, F3, S3)
    sys = CrossedSystem(F3, S3, alpha=a)
    assert cocycle_violations(sys) == 0
    found = is_coboundary(a, F3, S3)
    assert found is not None and coboundary_from_lambda(found, F3, S3) == a
