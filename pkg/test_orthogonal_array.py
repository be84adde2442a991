# test_orthogonal_array.py
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from catalog import catalog_get
from errors import BadBitstring, DuplicateRow, NotUniformMagnitude
from orthogonal_array import (
    OrthogonalArray,
    SignVector,
    dual_distance,
    is_linear,
    minimum_distance,
    oa_from_state,
    oa_irredundant,
    oa_strength,
    state_from_oa,
)
from state import make_state
from uniformity import check_uniformity


def full_factorial(n):
    return OrthogonalArray.from_bitstrings(["".join(bits) for bits in itertools.product("01", repeat=n)])


def psi11_support():
    a, _ = oa_from_state(catalog_get("psi11").state())
    return a


def count_patterns(rows, columns):
    """Independent pattern count over string rows."""
    counts = {}
    for row in rows:
        key = "".join(row[c - 1] for c in columns)
        counts[key] = counts.get(key, 0) + 1
    return counts


def test_rows_are_validated():
    with pytest.raises(DuplicateRow):
        OrthogonalArray.from_bitstrings(["01", "01"])
    with pytest.raises(BadBitstring):
        OrthogonalArray.from_bitstrings(["01", "2"])
    with pytest.raises(BadBitstring):
        OrthogonalArray.from_bitstrings(["01", "011"])


def test_full_factorial_strength():
    result = oa_strength(full_factorial(3), 3)
    assert result.strength == 3
    assert result.witness is None


def test_constant_column_witness():
    a = OrthogonalArray.from_bitstrings(["000", "011"])
    result = oa_strength(a)
    assert result.strength == 0
    assert result.witness.columns == (1,)
    assert result.witness.pattern == "1"
    assert result.witness.observed == 0
    assert result.witness.expected == Fraction(1)


def test_strength_precondition():
    with pytest.raises(ValueError):
        oa_strength(full_factorial(2), 3)
    with pytest.raises(ValueError):
        oa_strength(OrthogonalArray.from_bitstrings(["00", "11"]), 2)


def test_eleven_qubit_support_has_strength_three():
    a = psi11_support()
    assert a.runs == 32
    assert a.factors == 11
    assert oa_strength(a, 3).strength == 3
    rows = a.bitstrings()
    for columns in itertools.combinations(range(1, 12), 3):
        counts = count_patterns(rows, columns)
        assert len(counts) == 8
        assert set(counts.values()) == {4}


def test_irredundancy():
    assert oa_irredundant(full_factorial(3), 1).irredundant
    result = oa_irredundant(OrthogonalArray.from_bitstrings(["000", "001"]), 1)
    assert not result
    assert result.dropped_columns == (3,)
    assert result.row_pair == ("000", "001")
    with pytest.raises(ValueError):
        oa_irredundant(full_factorial(2), 2)


def test_eleven_qubit_support_is_irredundant_at_three():
    a = psi11_support()
    assert oa_irredundant(a, 3).irredundant
    rows = a.bitstrings()
    for dropped in itertools.combinations(range(11), 3):
        kept = ["".join(r[i] for i in range(11) if i not in dropped) for r in rows]
        assert len(set(kept)) == 32


def test_state_from_oa():
    bell = state_from_oa(OrthogonalArray.from_bitstrings(["00", "11"]))
    assert bell.exact_mode
    assert bell.numerators == {0: 1, 3: 1}
    minus = state_from_oa(OrthogonalArray.from_bitstrings(["0", "1"]), [1, -1])
    assert minus.amplitudes[1].real == pytest.approx(-1 / math.sqrt(2))
    with pytest.raises(ValueError):
        state_from_oa(OrthogonalArray.from_bitstrings(["0", "1"]), [1])


def test_eleven_qubit_state_is_its_oa_superposition():
    psi = catalog_get("psi11").state()
    a, signs = oa_from_state(psi)
    assert signs == SignVector.all_plus(32)
    assert state_from_oa(a).numerators == psi.numerators


def test_oa_from_state():
    bell = make_state(2, [("00", 1 / math.sqrt(2), 0), ("11", 1 / math.sqrt(2), 0)])
    a, signs = oa_from_state(bell)
    assert a.bitstrings() == ["00", "11"]
    assert signs.signs == (1, 1)
    with pytest.raises(NotUniformMagnitude):
        oa_from_state(make_state(1, [("0", math.cos(0.2), 0), ("1", math.sin(0.2), 0)]))
    with pytest.raises(NotUniformMagnitude):
        oa_from_state(catalog_get("psiM8").state())


def test_round_trip_random_arrays():
    rng = np.random.default_rng(17)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        r = int(rng.integers(1, 1 << n))
        rows = sorted(rng.choice(1 << n, size=r, replace=False).tolist())
        a = OrthogonalArray(n, tuple(rows))
        signs = SignVector(tuple(int(s) for s in rng.choice([-1, 1], size=r)))
        back, back_signs = oa_from_state(state_from_oa(a, signs))
        assert back == a
        assert back_signs == signs


def test_sign_vector():
    v = SignVector.from_text("-+-")
    assert v.signs == (-1, 1, -1)
    assert not v.is_canonical
    assert v.canonical().to_text() == "+-+"
    with pytest.raises(ValueError):
        SignVector.from_text("+0")


def test_linear_code_diagnostics():
    a = full_factorial(3)
    assert is_linear(a)
    assert minimum_distance(a) == 1
    assert dual_distance(a) == 4
    assert oa_strength(a, 3).strength == dual_distance(a) - 1

    even = OrthogonalArray.from_bitstrings(["000", "011", "101", "110"])
    assert is_linear(even)
    assert dual_distance(even) == 3
    assert oa_strength(even, 2).strength == 2

    assert not is_linear(OrthogonalArray.from_bitstrings(["001", "010"]))
    assert dual_distance(OrthogonalArray.from_bitstrings(["001", "010"])) is None


def test_eleven_qubit_support_is_a_linear_code():
    a = psi11_support()
    assert is_linear(a)
    assert minimum_distance(a) >= 4
    assert dual_distance(a) >= 4
    assert oa_strength(a, 5).strength == dual_distance(a) - 1


def test_strength_and_irredundancy_of_catalog_supports():
    for entry_id in ("psi11", "psi12", "psi13", "psi14", "psi15"):
        psi = catalog_get(entry_id).state()
        assert check_uniformity(psi, 3).is_k_uniform
        a, _ = oa_from_state(psi)
        assert oa_strength(a, 3).strength == 3
        assert oa_irredundant(a, 3).irredundant
