# test_state.py
import math

import numpy as np
import pytest

from errors import BadBitstring, DimensionMismatch, DuplicateBasisState, IndexOutOfRange, NotNormalized
from state import (
    bitstring_to_index,
    from_lattice,
    inner_product,
    make_state,
    state_from_vector,
    subset_complement,
    to_dense,
    validate_subset,
)

H = 1 / math.sqrt(2)


def bell():
    return make_state(2, [("00", H, 0), ("11", H, 0)])


def test_bell_is_exact_mode():
    psi = bell()
    assert psi.exact_mode
    assert psi.scale == 2
    assert psi.support == [0, 3]
    assert psi.numerators == {0: 1, 3: 1}


def test_basis_state():
    psi = make_state(1, [("0", 1.0, 0.0)])
    assert psi.exact_mode
    assert psi.scale == 1
    assert psi.amplitude(0) == 1


def test_not_normalized():
    with pytest.raises(NotNormalized):
        make_state(2, [("00", 0.9, 0), ("11", 0.1, 0)])


def test_duplicate_and_bad_bitstrings():
    with pytest.raises(DuplicateBasisState):
        make_state(2, [("00", H, 0), ("00", H, 0)])
    with pytest.raises(BadBitstring):
        make_state(2, [("0", 1.0, 0)])
    with pytest.raises(BadBitstring):
        make_state(2, [("0a", 1.0, 0)])


def test_bit_convention_qubit_one_is_most_significant():
    assert bitstring_to_index("011") == 3
    bits = "10110"
    assert bitstring_to_index(bits) == sum(int(b) << (len(bits) - 1 - i) for i, b in enumerate(bits))


def test_lattice_detection_with_unequal_weights():
    # amplitudes 2/sqrt(6) and 1/sqrt(6) twice
    a, b = 2 / math.sqrt(6), 1 / math.sqrt(6)
    psi = make_state(2, [("00", a, 0), ("01", b, 0), ("11", -b, 0)])
    assert psi.is_exact
    assert not psi.exact_mode
    assert psi.scale == 6
    assert psi.numerators == {0: 2, 1: 1, 3: -1}


def test_irrational_ratio_is_float_only():
    c, s = math.cos(0.3), math.sin(0.3)
    psi = make_state(1, [("0", c, 0), ("1", s, 0)])
    assert not psi.is_exact


def test_complex_amplitudes_are_float_only():
    psi = make_state(1, [("0", H, 0), ("1", 0, H)])
    assert not psi.is_exact
    assert not psi.is_real()


def test_exact_amplitudes_match_floats():
    psi = from_lattice(3, {0: 1, 7: -1}, 2)
    for x in psi.support:
        assert abs(psi.amplitudes[x].real - psi.exact_amplitude(x).value) < 1e-15


def test_from_lattice_reduces_common_factor():
    psi = from_lattice(1, {0: 2, 1: 2}, 8)
    assert psi.numerators == {0: 1, 1: 1}
    assert psi.scale == 2


def test_from_lattice_rejects_wrong_scale():
    with pytest.raises(NotNormalized):
        from_lattice(2, {0: 1, 3: 1}, 3)


def test_inner_product():
    zero = make_state(1, [("0", 1, 0)])
    one = make_state(1, [("1", 1, 0)])
    assert inner_product(bell(), bell()) == pytest.approx(1)
    assert inner_product(zero, one) == 0
    with pytest.raises(DimensionMismatch):
        inner_product(zero, bell())


def test_inner_product_conjugate_symmetric():
    rng = np.random.default_rng(3)
    for _ in range(10):
        u = rng.normal(size=8) + 1j * rng.normal(size=8)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        a = state_from_vector(3, u / np.linalg.norm(u))
        b = state_from_vector(3, v / np.linalg.norm(v))
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))
        assert inner_product(a, b) == pytest.approx(np.vdot(to_dense(a), to_dense(b)))


def test_subset_complement():
    assert subset_complement((3, 4, 6, 7), 11) == (1, 2, 5, 8, 9, 10, 11)
    assert subset_complement((1,), 2) == (2,)
    assert subset_complement((1, 2, 3), 3) == ()


def test_validate_subset():
    assert validate_subset([1, 3], 3) == (1, 3)
    with pytest.raises(IndexOutOfRange):
        validate_subset([], 3)
    with pytest.raises(IndexOutOfRange):
        validate_subset([0, 1], 3)
    with pytest.raises(IndexOutOfRange):
        validate_subset([2, 1], 3)
    with pytest.raises(IndexOutOfRange):
        validate_subset([1, 1], 3)


def test_qubit_count_limits():
    with pytest.raises(DimensionMismatch):
        make_state(31, [("0" * 31, 1, 0)])


def test_small_amplitudes_are_dropped():
    vec = np.zeros(4)
    vec[0] = 1.0
    vec[3] = 1e-16
    psi = state_from_vector(2, vec)
    assert psi.support == [0]
