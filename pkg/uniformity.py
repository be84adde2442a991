# uniformity.py
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from errors import InternalInconsistency, SubsetTooLarge
from invariants import MAX_INVARIANT_QUBITS, FValue, f_table, purity_via_invariants
from reductions import Purity, partial_trace, purity
from settings import DEFAULT_TOLERANCE
from state import PureState, QubitSubset, format_subset

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DUAL_PATH_TOLERANCE = 1e-10
SIZE_K_ONLY = "size-k-only"
ALL_SIZES = "all-sizes"


@dataclass(frozen=True)
class SubsetVerdict:
    subset: QubitSubset
    purity_trace: Purity
    purity_invariant: Purity
    target: Fraction
    deviation: float
    passed: bool


@dataclass
class UniformityReport:
    n_qubits: int
    k: int
    mode: str
    tolerance: float
    verdicts: List[SubsetVerdict]
    is_k_uniform: bool
    max_deviation: float
    warnings: List[str] = field(default_factory=list)

    @property
    def failing_subsets(self) -> List[QubitSubset]:
        return [v.subset for v in self.verdicts if not v.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n_qubits": self.n_qubits,
            "k": self.k,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "is_k_uniform": self.is_k_uniform,
            "max_deviation": self.max_deviation,
            "warnings": list(self.warnings),
            "verdicts": [
                {
                    "subset": list(v.subset),
                    "purity": v.purity_trace.to_json(),
                    "target": {"num": v.target.numerator, "den": v.target.denominator},
                    "pass": v.passed,
                }
                for v in self.verdicts
            ],
        }


@contextmanager
def worker_pool(threads: int):
    if threads <= 1:
        yield None
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        yield pool


def subsets_up_to(n: int, k: int) -> List[QubitSubset]:
    return [s for m in range(1, k + 1) for s in itertools.combinations(range(1, n + 1), m)]


def _verdict(
    psi: PureState,
    subset: QubitSubset,
    table: Dict[QubitSubset, FValue],
    exact: bool,
    tolerance: float,
) -> SubsetVerdict:
    traced = purity(partial_trace(psi, subset))
    assembled = purity_via_invariants(psi, subset, table)
    if abs(traced.value - assembled.value) > DUAL_PATH_TOLERANCE or (
        exact and traced.exact != assembled.exact
    ):
        raise InternalInconsistency(
            f"purity of {format_subset(subset)}: trace path {traced.value!r}, "
            f"invariant path {assembled.value!r}"
        )
    target = Fraction(1, 1 << len(subset))
    if exact:
        deviation = float(abs(traced.exact - target))
        passed = traced.exact == target
    else:
        traced = Purity(traced.value)
        assembled = Purity(assembled.value)
        deviation = abs(traced.value - float(target))
        passed = deviation <= tolerance
    return SubsetVerdict(subset, traced, assembled, target, deviation, passed)


def check_uniformity(
    psi: PureState,
    k: int,
    mode: str = SIZE_K_ONLY,
    tolerance: Optional[float] = None,
    threads: int = 1,
    exact: Optional[bool] = None,
) -> UniformityReport:
    """
    Check that every k-qubit reduction of psi is maximally mixed.

    Each subset is evaluated through the partial trace and through the F
    invariants; the two must agree. Exact arithmetic is used for lattice
    states unless `exact` is False. In size-k-only mode smaller subsets are
    not enumerated: a maximally mixed reduction has maximally mixed marginals.
    """
    n = psi.n_qubits
    tolerance = DEFAULT_TOLERANCE if tolerance is None else float(tolerance)
    if tolerance < 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    if k < 1 or k > n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if k > MAX_INVARIANT_QUBITS:
        raise SubsetTooLarge(f"uniformity checks are limited to k <= {MAX_INVARIANT_QUBITS}")
    if mode not in (SIZE_K_ONLY, ALL_SIZES):
        raise ValueError(f"unknown mode {mode!r}")

    use_exact = psi.is_exact if exact is None else (exact and psi.is_exact)
    warnings: List[str] = []
    if exact and not psi.is_exact:
        warnings.append("exact arithmetic requested but amplitudes are not on an exact lattice; using floats")
    if k > n // 2:
        message = f"k={k} exceeds floor(n/2)={n // 2}: no {n}-qubit state can be {k}-uniform"
        logger.warning(message)
        warnings.append(message)

    sizes = range(1, k + 1) if mode == ALL_SIZES else [k]
    subsets = sorted(s for m in sizes for s in itertools.combinations(range(1, n + 1), m))
    logger.info(f"Checking {len(subsets)} subsets of a {n}-qubit state for {k}-uniformity "
                f"({'exact' if use_exact else 'float'} mode)")

    with worker_pool(threads) as pool:
        table = f_table(psi, subsets_up_to(n, k), pool)
        mapper = pool.map if pool is not None else map
        verdicts = list(mapper(lambda s: _verdict(psi, s, table, use_exact, tolerance), subsets))

    size_k = [v for v in verdicts if len(v.subset) == k]
    is_k_uniform = all(v.passed for v in size_k)
    if k > n // 2:
        is_k_uniform = False
    max_deviation = max((v.deviation for v in verdicts), default=0.0)
    logger.info(f"{sum(not v.passed for v in verdicts)} of {len(verdicts)} subsets failed; "
                f"max deviation {max_deviation!r}")
    return UniformityReport(
        n_qubits=n,
        k=k,
        mode="exact" if use_exact else "float",
        tolerance=0.0 if use_exact else tolerance,
        verdicts=verdicts,
        is_k_uniform=is_k_uniform,
        max_deviation=max_deviation,
        warnings=warnings,
    )


def purity_table(psi: PureState, size: int, threads: int = 1) -> List[Tuple[QubitSubset, Purity]]:
    """Purities of every reduction of the given size, exact when possible, sorted by subset."""
    if size > MAX_INVARIANT_QUBITS:
        raise SubsetTooLarge(f"purity tables are limited to {MAX_INVARIANT_QUBITS} qubits")
    if size < 1 or size > psi.n_qubits:
        raise ValueError(f"size must be in 1..{psi.n_qubits}, got {size}")
    subsets = list(itertools.combinations(range(1, psi.n_qubits + 1), size))
    with worker_pool(threads) as pool:
        mapper = pool.map if pool is not None else map
        purities = list(mapper(lambda s: purity(partial_trace(psi, s)), subsets))
    return list(zip(subsets, purities))


def format_purity(p: Purity) -> str:
    if p.exact is not None:
        return str(p.exact)
    return f"{p.value:.12g}"


def purity_table_frame(rows: Sequence[Tuple[QubitSubset, Purity]]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "subset": [format_subset(s) for s, _ in rows],
            "purity": [format_purity(p) for _, p in rows],
            "value": [p.value for _, p in rows],
        }
    )


def format_report_text(report: UniformityReport, limit: int = 20) -> str:
    """Human-readable summary; lists at most `limit` failing subsets."""
    passed = sum(v.passed for v in report.verdicts)
    lines = [
        f"n_qubits={report.n_qubits} k={report.k} mode={report.mode} tolerance={report.tolerance}",
        f"{passed}/{len(report.verdicts)} subsets maximally mixed; max deviation {report.max_deviation:.3g}",
        f"{report.k}-uniform: {'yes' if report.is_k_uniform else 'no'}",
    ]
    lines.extend(f"warning: {w}" for w in report.warnings)
    failing = [v for v in report.verdicts if not v.passed][:limit]
    if failing:
        frame = pd.DataFrame(
            {
                "subset": [format_subset(v.subset) for v in failing],
                "purity": [format_purity(v.purity_trace) for v in failing],
                "target": [str(v.target) for v in failing],
                "deviation": [v.deviation for v in failing],
            }
        )
        lines.append(frame.to_string(index=False))
    return "\n".join(lines)
