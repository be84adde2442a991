# invariants.py
"""
Pauli expectations and the F invariants.

F_T sums <P>^2 over every Pauli string whose non-identity support is exactly
T. The purity of a reduction follows from them:

    pi_S = 2^-|S| * (1 + sum over non-empty T within S of F_T)
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from errors import DimensionMismatch, NonHermitianResidue, SubsetTooLarge
from reductions import Purity
from state import PureState, QubitSubset, validate_subset

logger = logging.getLogger(__name__)

MAX_INVARIANT_QUBITS = 6
HERMITIAN_TOLERANCE = 1e-10

# i^k for k mod 4
_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class PauliString:
    """One letter from IXYZ per qubit; letters[0] acts on qubit 1."""
    n_qubits: int
    letters: str

    def __post_init__(self):
        if len(self.letters) != self.n_qubits:
            raise DimensionMismatch(f"Pauli string {self.letters!r} does not have {self.n_qubits} letters")
        if any(c not in "IXYZ" for c in self.letters):
            raise ValueError(f"Pauli string {self.letters!r} contains letters outside IXYZ")

    @classmethod
    def on_support(cls, n_qubits: int, subset: Sequence[int], letters: Sequence[str]) -> "PauliString":
        chars = ["I"] * n_qubits
        for q, c in zip(subset, letters):
            chars[q - 1] = c
        return cls(n_qubits, "".join(chars))

    @property
    def support(self) -> QubitSubset:
        return tuple(i + 1 for i, c in enumerate(self.letters) if c != "I")

    @property
    def y_count(self) -> int:
        return self.letters.count("Y")

    def masks(self) -> Tuple[int, int]:
        """(flip mask of X/Y positions, phase mask of Z/Y positions)."""
        flip = 0
        phase = 0
        n = self.n_qubits
        for i, c in enumerate(self.letters):
            bit = 1 << (n - 1 - i)
            if c in "XY":
                flip |= bit
            if c in "ZY":
                phase |= bit
        return flip, phase

    def __str__(self) -> str:
        return "".join(f"{c}{i + 1}" for i, c in enumerate(self.letters) if c != "I") or "I"


@dataclass(frozen=True)
class FValue:
    subset: QubitSubset
    value: float
    exact: Optional[Fraction] = None


def strings_on(n_qubits: int, subset: Sequence[int]) -> Iterator[PauliString]:
    """All 3^|subset| strings with support exactly `subset`, in XYZ order."""
    for letters in itertools.product("XYZ", repeat=len(subset)):
        yield PauliString.on_support(n_qubits, subset, letters)


def _raw_sum(flip: int, phase: int, values: Dict) -> complex:
    """sum_x conj(v[x ^ flip]) * (-1)^popcount(x & phase) * v[x]; ints stay ints."""
    total = 0
    for x, ax in values.items():
        partner = values.get(x ^ flip)
        if partner is None:
            continue
        term = partner.conjugate() * ax
        total += -term if (x & phase).bit_count() & 1 else term
    return total


def pauli_expectation(psi: PureState, p: PauliString) -> float:
    """<psi|P|psi>, summed over the support of psi."""
    if p.n_qubits != psi.n_qubits:
        raise DimensionMismatch(f"Pauli string on {p.n_qubits} qubits, state on {psi.n_qubits}")
    flip, phase = p.masks()
    total = complex(_raw_sum(flip, phase, psi.amplitudes)) * _I_POWERS[p.y_count % 4]
    if abs(total.imag) >= HERMITIAN_TOLERANCE:
        raise NonHermitianResidue(f"<{p}> has imaginary part {total.imag!r}")
    return total.real


def _exact_numerator(psi: PureState, p: PauliString) -> int:
    """Integer e with <P> == e / psi.scale, for lattice states."""
    if p.n_qubits != psi.n_qubits:
        raise DimensionMismatch(f"Pauli string on {p.n_qubits} qubits, state on {psi.n_qubits}")
    flip, phase = p.masks()
    total = _raw_sum(flip, phase, psi.numerators)
    ny = p.y_count % 4
    if ny % 2:
        # real amplitudes: an odd number of Y letters leaves a purely imaginary sum
        if total != 0:
            raise NonHermitianResidue(f"<{p}> has imaginary part {total}/{psi.scale}")
        return 0
    return total if ny == 0 else -total


def pauli_expectation_exact(psi: PureState, p: PauliString) -> Optional[Fraction]:
    """Exact <P> for lattice states, None otherwise."""
    if not psi.is_exact:
        return None
    return Fraction(_exact_numerator(psi, p), psi.scale)


def _check_size(subset: Sequence[int]) -> None:
    if len(subset) > MAX_INVARIANT_QUBITS:
        raise SubsetTooLarge(f"invariants limited to {MAX_INVARIANT_QUBITS} qubits, got {len(subset)}")


def f_value(psi: PureState, subset: Sequence[int]) -> FValue:
    """Sum of squared expectations of the strings supported exactly on `subset`."""
    subset = validate_subset(subset, psi.n_qubits)
    _check_size(subset)
    value = 0.0
    exact_total = 0 if psi.is_exact else None
    for p in strings_on(psi.n_qubits, subset):
        if exact_total is not None:
            exact_total += _exact_numerator(psi, p) ** 2
        value += pauli_expectation(psi, p) ** 2
    exact = Fraction(exact_total, psi.scale * psi.scale) if exact_total is not None else None
    return FValue(subset, value, exact)


def f_table(psi: PureState, subsets: Iterable[Sequence[int]], executor=None) -> Dict[QubitSubset, FValue]:
    """F values for many subsets; `executor.map` fans the work out when given."""
    subsets = [tuple(s) for s in subsets]
    mapper = executor.map if executor is not None else map
    return dict(zip(subsets, mapper(lambda s: f_value(psi, s), subsets)))


def _non_empty_subsets(subset: QubitSubset) -> Iterator[QubitSubset]:
    for size in range(1, len(subset) + 1):
        yield from itertools.combinations(subset, size)


def purity_via_invariants(
    psi: PureState,
    subset: Sequence[int],
    table: Optional[Dict[QubitSubset, FValue]] = None,
) -> Purity:
    """Purity of the reduction onto `subset` assembled from the F invariants."""
    subset = validate_subset(subset, psi.n_qubits)
    _check_size(subset)
    weight = Fraction(1, 1 << len(subset))
    value = 1.0
    exact = Fraction(1) if psi.is_exact else None
    for t in _non_empty_subsets(subset):
        f = table.get(t) if table is not None else None
        if f is None:
            f = f_value(psi, t)
            if table is not None:
                table[t] = f
        value += f.value
        if exact is not None:
            exact += f.exact
    return Purity(value * float(weight), exact * weight if exact is not None else None)
