# reductions.py
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from errors import SubsetTooLarge
from state import PureState, QubitSubset, validate_subset

logger = logging.getLogger(__name__)

MAX_REDUCED_QUBITS = 12


@dataclass(frozen=True)
class DensityMatrix:
    """
    Reduced state on `keep`. Row/column index bit j (from the left) belongs to
    keep[j]. When `counts` is set, entries == counts / scale exactly.
    """
    keep: QubitSubset
    entries: np.ndarray
    counts: Optional[np.ndarray] = None
    scale: Optional[int] = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.counts is not None

    def to_json(self) -> Dict:
        return {
            "keep": list(self.keep),
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }


@dataclass(frozen=True)
class Purity:
    value: float
    exact: Optional[Fraction] = None

    def to_json(self):
        if self.exact is not None:
            return {"num": self.exact.numerator, "den": self.exact.denominator}
        return self.value


def _local_index(x: int, positions: Sequence[int]) -> int:
    local = 0
    for p in positions:
        local = (local << 1) | ((x >> p) & 1)
    return local


def partial_trace(psi: PureState, keep: Sequence[int]) -> DensityMatrix:
    """
    Reduce psi onto `keep` by grouping support indices on their environment bits.

    rho[a][b] = sum_e psi[a.e] conj(psi[b.e]); only pairs sharing an
    environment pattern contribute.
    """
    subset = validate_subset(keep, psi.n_qubits)
    if len(subset) > MAX_REDUCED_QUBITS:
        raise SubsetTooLarge(f"cannot reduce onto {len(subset)} qubits (limit {MAX_REDUCED_QUBITS})")
    n = psi.n_qubits
    positions = [n - q for q in subset]
    keep_mask = 0
    for p in positions:
        keep_mask |= 1 << p
    dim = 1 << len(subset)

    groups: Dict[int, List[int]] = defaultdict(list)
    for x in psi.amplitudes:
        groups[x & ~keep_mask].append(x)

    entries = np.zeros((dim, dim), dtype=np.complex128)
    # Python ints: products of large lattice numerators overflow int64
    counts = np.zeros((dim, dim), dtype=object) if psi.is_exact else None
    for members in groups.values():
        local = np.array([_local_index(x, positions) for x in members], dtype=np.int64)
        rows, cols = local[:, None], local[None, :]
        amps = np.array([psi.amplitudes[x] for x in members], dtype=np.complex128)
        np.add.at(entries, (rows, cols), np.outer(amps, amps.conj()))
        if counts is not None:
            nums = [psi.numerators[x] for x in members]
            for a, ma in zip(local.tolist(), nums):
                for b, mb in zip(local.tolist(), nums):
                    counts[a, b] += ma * mb

    return DensityMatrix(subset, entries, counts, psi.scale if counts is not None else None)


def purity(rho: DensityMatrix) -> Purity:
    """Tr(rho^2) as the squared Frobenius norm; exact when rho carries counts."""
    value = float(np.sum(np.abs(rho.entries) ** 2))
    exact = None
    if rho.counts is not None:
        total = sum(int(c) * int(c) for c in rho.counts.flat)
        exact = Fraction(total, rho.scale * rho.scale)
    return Purity(value, exact)


def is_maximally_mixed(rho: DensityMatrix, tolerance: float = 1e-12) -> bool:
    """rho == I/dim, exactly when counts are available."""
    dim = rho.dim
    if rho.counts is not None:
        if rho.scale % dim:
            return False
        expected = np.eye(dim, dtype=np.int64).astype(object) * (rho.scale // dim)
        return bool(np.array_equal(rho.counts, expected))
    return bool(np.allclose(rho.entries, np.eye(dim) / dim, rtol=0.0, atol=tolerance))
