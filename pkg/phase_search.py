# phase_search.py
"""
Search for ±1 phases that make an equal superposition of fixed rows k-uniform.

The objective is sum over non-empty T with |T| <= k of F_T for the signed
state. For real amplitudes r*<P> is an integer, and strings with an odd number
of Y letters vanish, so the kernel scores sign vectors as the integer
sum of (r*<P>)^2 over even-Y strings and divides by r^2 only for reporting.
"""
import itertools
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import SupportTooLarge
from orthogonal_array import OrthogonalArray, SignVector
from settings import DEFAULT_RESTARTS, DEFAULT_SEED, EXHAUSTIVE_BIT_BUDGET
from state import subset_mask

logger = logging.getLogger(__name__)

MAX_SEARCH_K = 4
ZERO_OBJECTIVE = 1e-9
EXHAUSTIVE = "exhaustive"
LOCAL = "local"
_BATCH = 1 << 12


@dataclass(frozen=True)
class SearchOutcome:
    best_signs: SignVector
    objective: float
    objective_exact: Fraction
    achieved_k_uniform: bool
    evaluations: int
    method: str
    certificate: bool = False

    def to_dict(self) -> Dict:
        return {
            "method": self.method,
            "objective": self.objective,
            "objective_exact": {"num": self.objective_exact.numerator, "den": self.objective_exact.denominator},
            "achieved_k_uniform": self.achieved_k_uniform,
            "evaluations": self.evaluations,
            "certificate": self.certificate,
            "signs": self.best_signs.to_text(),
        }


class _ObjectiveKernel:
    """
    Strings are grouped by flip mask. For one flip f the rows pair up as
    (j, row index of x_j ^ f); each phase mask z then contributes
    (sum over pairs of s_j * s_pair * chi_z(x_j))^2.
    """

    def __init__(self, a: OrthogonalArray, k: int):
        self.runs = a.runs
        n = a.factors
        by_flip: Dict[int, List[int]] = defaultdict(list)
        strings = 0
        for size in range(1, k + 1):
            for subset in itertools.combinations(range(1, n + 1), size):
                for letters in itertools.product("XYZ", repeat=size):
                    if letters.count("Y") % 2:
                        continue
                    flip = subset_mask([q for q, c in zip(subset, letters) if c in "XY"], n)
                    phase = subset_mask([q for q, c in zip(subset, letters) if c in "ZY"], n)
                    by_flip[flip].append(phase)
                    strings += 1
        self.strings = strings

        position = {row: j for j, row in enumerate(a.rows)}
        self._blocks: List[Tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        for flip in sorted(by_flip):
            pairs = [(j, position[row ^ flip]) for j, row in enumerate(a.rows) if (row ^ flip) in position]
            if not pairs:
                continue
            left = np.array([p[0] for p in pairs], dtype=np.int64)
            right = np.array([p[1] for p in pairs], dtype=np.int64)
            chars = np.array(
                [[-1 if (a.rows[j] & z).bit_count() & 1 else 1 for j, _ in pairs] for z in by_flip[flip]],
                dtype=np.int64,
            )
            self._blocks.append((left, right, chars))
        logger.debug(f"Objective kernel: {strings} even-Y strings in {len(self._blocks)} flip groups")

    def evaluate(self, signs: np.ndarray) -> np.ndarray:
        """Integer objective r^2 * sum F_T for each row of a (batch, r) sign matrix."""
        signs = np.atleast_2d(np.asarray(signs, dtype=np.int64))
        total = np.zeros(signs.shape[0], dtype=np.int64)
        for left, right, chars in self._blocks:
            values = (signs[:, left] * signs[:, right]) @ chars.T
            total += np.sum(values * values, axis=1)
        return total


def _check_k(a: OrthogonalArray, k: int) -> None:
    if k < 1 or k > a.factors:
        raise ValueError(f"k must be in 1..{a.factors}, got {k}")
    if k > MAX_SEARCH_K:
        raise ValueError(f"sign search is limited to k <= {MAX_SEARCH_K}")


def _signs_array(a: OrthogonalArray, signs: Sequence[int]) -> np.ndarray:
    vector = np.asarray(list(signs), dtype=np.int64)
    if vector.shape != (a.runs,):
        raise ValueError(f"{vector.size} signs for {a.runs} rows")
    if not np.all(np.abs(vector) == 1):
        raise ValueError("signs must be +1 or -1")
    return vector


def objective_exact(a: OrthogonalArray, signs: Sequence[int], k: int) -> Fraction:
    _check_k(a, k)
    kernel = _ObjectiveKernel(a, k)
    score = int(kernel.evaluate(_signs_array(a, signs))[0])
    return Fraction(score, a.runs * a.runs)


def objective(a: OrthogonalArray, signs: Sequence[int], k: int) -> float:
    """Sum of F_T over 1 <= |T| <= k for the signed superposition; zero iff k-uniform."""
    return float(objective_exact(a, signs, k))


def _outcome(a, signs: np.ndarray, score: int, evaluations: int, method: str) -> SearchOutcome:
    exact = Fraction(score, a.runs * a.runs)
    vector = SignVector(tuple(int(s) for s in signs)).canonical()
    return SearchOutcome(
        best_signs=vector,
        objective=float(exact),
        objective_exact=exact,
        achieved_k_uniform=score == 0,
        evaluations=evaluations,
        method=method,
        certificate=method == EXHAUSTIVE,
    )


def search_exhaustive(a: OrthogonalArray, k: int, limit: Optional[int] = None) -> SearchOutcome:
    """
    Global minimum over every canonical sign vector. Candidate c negates
    row j + 1 when bit j of c is set, so the first minimum in that order wins.
    """
    _check_k(a, k)
    limit = EXHAUSTIVE_BIT_BUDGET if limit is None else limit
    free = a.runs - 1
    if free > limit:
        raise SupportTooLarge(f"{a.runs} rows need 2^{free} candidates; budget is 2^{limit}")
    kernel = _ObjectiveKernel(a, k)
    total = 1 << free
    shifts = np.arange(free, dtype=np.int64)
    best_score: Optional[int] = None
    best_signs: Optional[np.ndarray] = None
    for start in range(0, total, _BATCH):
        codes = np.arange(start, min(start + _BATCH, total), dtype=np.int64)
        signs = np.ones((codes.size, a.runs), dtype=np.int64)
        signs[:, 1:] = 1 - 2 * ((codes[:, None] >> shifts[None, :]) & 1)
        scores = kernel.evaluate(signs)
        i = int(np.argmin(scores))
        if best_score is None or scores[i] < best_score:
            best_score = int(scores[i])
            best_signs = signs[i].copy()
        if best_score == 0:
            total = int(codes[i]) + 1
            break
    logger.info(f"Exhaustive search over {total} sign vectors: objective {Fraction(best_score, a.runs ** 2)}")
    return _outcome(a, best_signs, best_score, total, EXHAUSTIVE)


def _descend(
    kernel: _ObjectiveKernel, start: np.ndarray, trace: Optional[List[int]] = None
) -> Tuple[np.ndarray, int, int]:
    """Steepest single-flip descent; returns (signs, score, evaluations). `trace` collects accepted scores."""
    current = start.copy()
    score = int(kernel.evaluate(current)[0])
    evaluations = 1
    if trace is not None:
        trace.append(score)
    flips = np.arange(current.size)
    while score > 0:
        neighbours = np.tile(current, (current.size, 1))
        neighbours[flips, flips] *= -1
        scores = kernel.evaluate(neighbours)
        evaluations += current.size
        i = int(np.argmin(scores))
        if scores[i] >= score:
            break
        current = neighbours[i]
        score = int(scores[i])
        if trace is not None:
            trace.append(score)
    return current, score, evaluations


def search_local(
    a: OrthogonalArray,
    k: int,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> SearchOutcome:
    """
    Greedy descent from the all-plus vector (restart 0) and from seeded random
    vectors. The lowest objective wins, the lowest restart index on ties.
    """
    _check_k(a, k)
    restarts = DEFAULT_RESTARTS if restarts is None else restarts
    seed = DEFAULT_SEED if seed is None else seed
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    kernel = _ObjectiveKernel(a, k)
    rng = np.random.default_rng(seed)
    starts = [np.ones(a.runs, dtype=np.int64)]
    starts.extend(rng.choice(np.array([-1, 1], dtype=np.int64), size=a.runs) for _ in range(restarts - 1))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: _descend(kernel, s), starts))
    else:
        results = [_descend(kernel, s) for s in starts]

    best = min(range(len(results)), key=lambda i: (results[i][1], i))
    signs, score, _ = results[best]
    evaluations = sum(r[2] for r in results)
    logger.info(f"Local search with {restarts} restarts: best objective {Fraction(score, a.runs ** 2)} "
                f"from restart {best}")
    return _outcome(a, signs, score, evaluations, LOCAL)


def search(
    a: OrthogonalArray,
    k: int,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
    threads: int = 1,
) -> SearchOutcome:
    """Exhaustive search when r - 1 fits the bit budget, local search otherwise."""
    budget = EXHAUSTIVE_BIT_BUDGET if budget is None else budget
    if a.runs - 1 <= budget:
        return search_exhaustive(a, k, budget)
    logger.info(f"{a.runs} rows exceed the exhaustive budget of {budget} bits; using local search")
    return search_local(a, k, restarts, seed, threads)
