from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmagnus.errors import NotPrimePower, ParameterError
from finmagnus.fields import SemilinearMap, finite_field, least_irreducible

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81]


@pytest.mark.parametrize("q", QS)
def test_field_axioms_exhaustive(q):
    F = finite_field(q)
    a = np.arange(q)
    assert np.array_equal(F.add[0], a)
    assert np.array_equal(F.mul[1], a)
    assert np.array_equal(F.add, F.add.T)
    assert np.array_equal(F.mul, F.mul.T)
    assert np.all(F.add[a, F.neg] == 0)
    assert np.all(F.mul[a[1:], F.inv[1:]] == 1)
    # distributivity over every triple
    lhs = F.mul[a[:, None, None], F.add[a[None, :, None], a[None, None, :]]]
    rhs = F.add[F.mul[a[:, None, None], a[None, :, None]], F.mul[a[:, None, None], a[None, None, :]]]
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("q", QS)
def test_multiplicative_group_cyclic(q):
    F = finite_field(q)
    assert sorted(F.exp.tolist()) == list(range(1, q))
    assert F.pow(F.primitive_element, q - 1) == 1


@pytest.mark.parametrize("q", QS)
def test_frobenius_order_is_degree(q):
    F = finite_field(q)
    ident = np.arange(q)
    powers = [k for k in range(1, F.n + 1) if np.array_equal(F.frob_power(k), ident)]
    assert powers[0] == F.n


def test_known_moduli():
    # x^2 + x + 1 over F_2 and x^2 + 1 over F_3 are the least choices
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)


def test_rejects_non_prime_power():
    with pytest.raises(NotPrimePower):
        finite_field(6)


def test_semilinear_validation():
    with pytest.raises(ParameterError):
        SemilinearMap(4, 0)


@given(st.sampled_from(QS), st.data())
def test_semilinear_maps_are_bijections(q, data):
    F = finite_field(q)
    a = data.draw(st.integers(1, q - 1))
    i = data.draw(st.integers(0, 2 * F.n))
    c = data.draw(st.integers(0, q - 1))
    f = SemilinearMap(q, a, i, c).as_array()
    assert sorted(f.tolist()) == list(range(q))
