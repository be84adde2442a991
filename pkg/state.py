# state.py
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import (
    BadBitstring,
    DimensionMismatch,
    DuplicateBasisState,
    IndexOutOfRange,
    NotNormalized,
)

logger = logging.getLogger(__name__)

MAX_QUBITS = 30
ZERO_THRESHOLD = 1e-14
NORM_TOLERANCE = 1e-10
EXACT_MATCH_TOLERANCE = 1e-12
MAX_LATTICE_NUMERATOR = 1024

# 1-based qubit labels, strictly increasing
QubitSubset = Tuple[int, ...]


@dataclass(frozen=True)
class ExactAmplitude:
    """Amplitude numerator/sqrt(scale); numerator is ±1 for equal-weight states."""
    numerator: int
    scale: int

    @property
    def sign(self) -> int:
        return 1 if self.numerator > 0 else -1

    @property
    def value(self) -> float:
        return self.numerator / math.sqrt(self.scale)


@dataclass(frozen=True)
class PureState:
    """
    Sparse N-qubit pure state.

    Qubit 1 is the most significant bit of a basis index. `amplitudes` only
    holds nonzero entries. When `numerators` is set, every amplitude equals
    numerators[x] / sqrt(scale) and sum(m^2) == scale exactly.
    """
    n_qubits: int
    amplitudes: Dict[int, complex]
    numerators: Optional[Dict[int, int]] = field(default=None)
    scale: Optional[int] = field(default=None)

    @property
    def is_exact(self) -> bool:
        return self.numerators is not None

    @property
    def exact_mode(self) -> bool:
        """True when all amplitudes are ±1/sqrt(r) with r the support size."""
        if self.numerators is None:
            return False
        return all(abs(m) == 1 for m in self.numerators.values())

    @property
    def support(self) -> List[int]:
        return sorted(self.amplitudes)

    @property
    def support_size(self) -> int:
        return len(self.amplitudes)

    def amplitude(self, index: int) -> complex:
        return self.amplitudes.get(index, 0j)

    def exact_amplitude(self, index: int) -> Optional[ExactAmplitude]:
        if self.numerators is None or index not in self.numerators:
            return None
        return ExactAmplitude(self.numerators[index], self.scale)

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def is_real(self) -> bool:
        return all(abs(a.imag) < EXACT_MATCH_TOLERANCE for a in self.amplitudes.values())


def bitstring_to_index(bits: str) -> int:
    if not bits or any(c not in "01" for c in bits):
        raise BadBitstring(f"not a bitstring: {bits!r}")
    return int(bits, 2)


def index_to_bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def subset_mask(subset: Sequence[int], n: int) -> int:
    mask = 0
    for q in subset:
        mask |= 1 << (n - q)
    return mask


def validate_subset(indices: Iterable[int], n: int, allow_empty: bool = False) -> QubitSubset:
    subset = tuple(int(q) for q in indices)
    if not subset and not allow_empty:
        raise IndexOutOfRange("qubit subset must not be empty")
    for q in subset:
        if q < 1 or q > n:
            raise IndexOutOfRange(f"qubit {q} outside 1..{n}")
    if any(b <= a for a, b in zip(subset, subset[1:])):
        raise IndexOutOfRange(f"qubit subset {list(subset)} must be strictly increasing")
    return subset


def subset_complement(s: Sequence[int], n: int) -> QubitSubset:
    subset = validate_subset(s, n, allow_empty=True)
    members = set(subset)
    return tuple(q for q in range(1, n + 1) if q not in members)


def format_subset(subset: Sequence[int]) -> str:
    return ",".join(str(q) for q in subset)


def _check_qubit_count(n: int) -> None:
    if n < 1 or n > MAX_QUBITS:
        raise DimensionMismatch(f"number of qubits must be in 1..{MAX_QUBITS}, got {n}")


def _detect_lattice(amplitudes: Dict[int, complex]) -> Optional[Tuple[Dict[int, int], int]]:
    """Find integer numerators m and scale q with a == m/sqrt(q) for every amplitude."""
    if not amplitudes:
        return None
    if any(abs(a.imag) > EXACT_MATCH_TOLERANCE for a in amplitudes.values()):
        return None
    smallest = min(abs(a.real) for a in amplitudes.values())
    numerators: Dict[int, int] = {}
    for index, a in amplitudes.items():
        ratio = a.real / smallest
        m = round(ratio)
        if m == 0 or abs(m) > MAX_LATTICE_NUMERATOR or abs(ratio - m) > 1e-9:
            return None
        numerators[index] = m
    scale = sum(m * m for m in numerators.values())
    root = math.sqrt(scale)
    for index, a in amplitudes.items():
        if abs(a.real - numerators[index] / root) > EXACT_MATCH_TOLERANCE:
            return None
    return numerators, scale


def from_lattice(n: int, numerators: Dict[int, int], scale: int) -> PureState:
    """Build an exact state from integer numerators over a shared sqrt(scale)."""
    _check_qubit_count(n)
    kept = {x: int(m) for x, m in numerators.items() if m != 0}
    limit = 1 << n
    for x in kept:
        if x < 0 or x >= limit:
            raise IndexOutOfRange(f"basis index {x} outside 0..{limit - 1}")
    total = sum(m * m for m in kept.values())
    if total == 0 or total != scale:
        raise NotNormalized(f"sum of squared numerators {total} differs from scale {scale}")
    common = math.gcd(*kept.values())
    if common > 1:
        kept = {x: m // common for x, m in kept.items()}
        scale //= common * common
    root = math.sqrt(scale)
    amplitudes = {x: complex(m / root, 0.0) for x, m in sorted(kept.items())}
    return PureState(n, amplitudes, dict(sorted(kept.items())), scale)


def from_amplitudes(n: int, amplitudes: Dict[int, complex], detect_exact: bool = True) -> PureState:
    """Build a state from a sparse amplitude map, dropping zeros and validating the norm."""
    _check_qubit_count(n)
    limit = 1 << n
    kept: Dict[int, complex] = {}
    for x, a in amplitudes.items():
        if x < 0 or x >= limit:
            raise IndexOutOfRange(f"basis index {x} outside 0..{limit - 1}")
        a = complex(a)
        if abs(a) >= ZERO_THRESHOLD:
            kept[x] = a
    norm = math.fsum(abs(a) ** 2 for a in kept.values())
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"sum of |amplitude|^2 is {norm!r}, expected 1")
    if detect_exact:
        lattice = _detect_lattice(kept)
        if lattice is not None:
            numerators, scale = lattice
            logger.debug(f"Detected exact amplitudes with scale {scale}")
            return from_lattice(n, numerators, scale)
    return PureState(n, dict(sorted(kept.items())))


def make_state(n: int, entries: Sequence[Tuple[str, float, float]]) -> PureState:
    """
    Build a normalized state from (bitstring, re, im) entries.

    Exactness is auto-detected: equal magnitudes 1/sqrt(r) with ±1 phases
    give exact_mode, integer multiples of a common 1/sqrt(q) give is_exact.
    """
    _check_qubit_count(n)
    amplitudes: Dict[int, complex] = {}
    for entry in entries:
        bits, re = entry[0], entry[1]
        im = entry[2] if len(entry) > 2 else 0.0
        if len(bits) != n:
            raise BadBitstring(f"bitstring {bits!r} has length {len(bits)}, expected {n}")
        index = bitstring_to_index(bits)
        if index in amplitudes:
            raise DuplicateBasisState(f"basis state {bits} listed twice")
        amplitudes[index] = complex(float(re), float(im))
    return from_amplitudes(n, amplitudes)


def state_from_vector(n: int, vector: Sequence[complex]) -> PureState:
    vec = np.asarray(vector, dtype=np.complex128)
    if vec.shape != (1 << n,):
        raise DimensionMismatch(f"vector of shape {vec.shape} does not hold {n} qubits")
    nonzero = np.flatnonzero(np.abs(vec) >= ZERO_THRESHOLD)
    return from_amplitudes(n, {int(x): complex(vec[x]) for x in nonzero})


def to_dense(psi: PureState) -> np.ndarray:
    vec = np.zeros(1 << psi.n_qubits, dtype=np.complex128)
    for x, a in psi.amplitudes.items():
        vec[x] = a
    return vec


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, computed over the common support."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatch(f"states on {a.n_qubits} and {b.n_qubits} qubits")
    small, large = (a, b) if a.support_size <= b.support_size else (b, a)
    common = [x for x in small.amplitudes if x in large.amplitudes]
    if a.is_exact and b.is_exact:
        total = sum(a.numerators[x] * b.numerators[x] for x in common)
        if a.scale == b.scale:
            return complex(total / a.scale, 0.0)
        return complex(total / math.sqrt(a.scale * b.scale), 0.0)
    total = sum(a.amplitudes[x].conjugate() * b.amplitudes[x] for x in common)
    return complex(total)
