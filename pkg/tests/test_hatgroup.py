import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_codes import groups as gr
from twisted_codes.catalog import by_name, catalog, frobenius_c2_f4, twisted_c2_f3
from twisted_codes.crossed import CrossedSystem
from twisted_codes.gf import FiniteField
from twisted_codes.hatgroup import (
    HatGroup,
    hat_axioms_report,
    hat_transfer_report,
    psi_is_surjective,
    psi_map,
    psi_multiplicativity_violations,
)
from twisted_codes.ring import TwistedRing

SMALL = [e for e in catalog() if (e.system.field.q - 1) * e.system.n <= 48]


def test_twisted_c2_gives_cyclic_four():
    hat = HatGroup(twisted_c2_f3())
    assert sorted(hat.group.element_orders.tolist()) == [1, 2, 4, 4]
    untw = HatGroup(CrossedSystem(FiniteField(3, 1), gr.cyclic(2)))
    assert sorted(untw.group.element_orders.tolist()) == [1, 2, 2, 2]


def test_hat_power_and_psi_examples():
    hat = HatGroup(twisted_c2_f3())
    x = hat.encode(2, 1)
    assert hat.hat_power(x, 2) == hat.encode(2, 0)
    assert hat.iterated_power(x, 2) == hat.encode(2, 0)
    R = TwistedRing(hat.sys)
    assert psi_map(hat, {x: 1}, R).tolist() == [0, 2]


def test_frobenius_hat_group_order():
    sys = CrossedSystem(FiniteField(2, 2), gr.symmetric(3), sigma=tuple(0 if g in (0, 3, 4) else 1 for g in range(6)))
    hat = HatGroup(sys)
    assert hat.order == 18
    assert hat_axioms_report(sys).ok


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_hat_axioms_and_psi(entry):
    rep = hat_axioms_report(entry.system)
    assert rep.ok, rep.to_json()
    hat = HatGroup(entry.system)
    assert psi_multiplicativity_violations(hat) == []
    assert psi_is_surjective(hat)


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_transfer_of_group_properties(entry):
    tr = hat_transfer_report(entry.system)
    assert tr.p_nilpotency_agrees and tr.sylow_cyclicity_agrees


@given(st.sampled_from([e.name for e in SMALL]), st.data())
def test_closed_form_power_matches_iteration(name, data):
    hat = HatGroup(by_name(name).system)
    x = data.draw(st.integers(0, hat.order - 1))
    b = data.draw(st.integers(0, 2 * hat.order))
    assert hat.hat_power(x, b) == hat.iterated_power(x, b)
    y = hat.closed_form_inverse(x)
    assert hat.mul(x, y) == 0
