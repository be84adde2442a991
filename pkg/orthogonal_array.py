# orthogonal_array.py
"""
Binary orthogonal arrays and their link to equal superpositions.

Rows are stored as integers; column 1 is the most significant bit, matching
the qubit convention of PureState, so a row is directly a basis index.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from errors import BadBitstring, DuplicateRow, NotUniformMagnitude
from state import PureState, QubitSubset, from_lattice, index_to_bitstring

logger = logging.getLogger(__name__)

# dual words are enumerated exhaustively
MAX_DUAL_FACTORS = 20


@dataclass(frozen=True)
class OrthogonalArray:
    factors: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.factors < 1:
            raise ValueError("an orthogonal array needs at least one column")
        if not self.rows:
            raise ValueError("an orthogonal array needs at least one row")
        limit = 1 << self.factors
        for row in self.rows:
            if row < 0 or row >= limit:
                raise BadBitstring(f"row {row} does not fit {self.factors} columns")
        seen: Dict[int, int] = {}
        for i, row in enumerate(self.rows):
            if row in seen:
                raise DuplicateRow(
                    f"rows {seen[row] + 1} and {i + 1} are both {index_to_bitstring(row, self.factors)}"
                )
            seen[row] = i

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str]) -> "OrthogonalArray":
        if not rows:
            raise ValueError("an orthogonal array needs at least one row")
        width = len(rows[0])
        words = []
        for i, bits in enumerate(rows):
            if len(bits) != width or any(c not in "01" for c in bits):
                raise BadBitstring(f"row {i + 1} ({bits!r}) is not a {width}-bit binary row")
            words.append(int(bits, 2))
        return cls(width, tuple(words))

    @property
    def runs(self) -> int:
        return len(self.rows)

    @property
    def levels(self) -> int:
        return 2

    def bitstrings(self) -> List[str]:
        return [index_to_bitstring(r, self.factors) for r in self.rows]

    def project(self, row: int, columns: Sequence[int]) -> int:
        """Pattern of `row` on the 1-based `columns`, first column most significant."""
        pattern = 0
        for c in columns:
            pattern = (pattern << 1) | ((row >> (self.factors - c)) & 1)
        return pattern

    def sorted(self) -> "OrthogonalArray":
        return OrthogonalArray(self.factors, tuple(sorted(self.rows)))


@dataclass(frozen=True)
class SignVector:
    """
    One ±1 phase per row. Canonical vectors start with +1; the objective and
    every purity are unchanged by a global sign.
    """
    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def all_plus(cls, length: int) -> "SignVector":
        return cls((1,) * length)

    @classmethod
    def from_text(cls, text: str) -> "SignVector":
        text = text.strip()
        if any(c not in "+-" for c in text):
            raise ValueError(f"sign vector {text!r} may only contain + and -")
        return cls(tuple(1 if c == "+" else -1 for c in text))

    def to_text(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @property
    def is_canonical(self) -> bool:
        return not self.signs or self.signs[0] == 1

    def canonical(self) -> "SignVector":
        if self.is_canonical:
            return self
        return SignVector(tuple(-s for s in self.signs))

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)


@dataclass(frozen=True)
class StrengthWitness:
    columns: QubitSubset
    pattern: str
    observed: int
    expected: Fraction


@dataclass(frozen=True)
class StrengthResult:
    strength: int
    witness: Optional[StrengthWitness] = None


@dataclass(frozen=True)
class IrredundancyResult:
    irredundant: bool
    dropped_columns: Optional[QubitSubset] = None
    row_pair: Optional[Tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.irredundant


def _unbalanced(a: OrthogonalArray, t: int) -> Optional[StrengthWitness]:
    expected = Fraction(a.runs, 1 << t)
    for columns in itertools.combinations(range(1, a.factors + 1), t):
        counts = Counter(a.project(row, columns) for row in a.rows)
        for pattern in range(1 << t):
            observed = counts.get(pattern, 0)
            if observed < expected:
                return StrengthWitness(columns, format(pattern, f"0{t}b"), observed, expected)
    return None


def oa_strength(a: OrthogonalArray, t_max: Optional[int] = None) -> StrengthResult:
    """
    Largest t <= t_max such that every t-column projection holds each
    pattern exactly r/2^t times, by exhaustive counting.
    """
    if t_max is None:
        t_max = min(a.factors, a.runs.bit_length() - 1)
    if t_max < 0 or t_max > a.factors or (1 << t_max) > a.runs:
        raise ValueError(f"t_max={t_max} needs t_max <= {a.factors} and 2^t_max <= {a.runs}")
    for t in range(1, t_max + 1):
        witness = _unbalanced(a, t)
        if witness is not None:
            logger.debug(f"Strength {t} fails on columns {witness.columns}")
            return StrengthResult(t - 1, witness)
    return StrengthResult(t_max)


def oa_irredundant(a: OrthogonalArray, k: int) -> IrredundancyResult:
    """Rows stay pairwise distinct after deleting any k columns."""
    if k < 0 or k >= a.factors:
        raise ValueError(f"k must be in 0..{a.factors - 1}, got {k}")
    full = (1 << a.factors) - 1
    for dropped in itertools.combinations(range(1, a.factors + 1), k):
        mask = full
        for c in dropped:
            mask &= ~(1 << (a.factors - c))
        seen: Dict[int, int] = {}
        for row in a.rows:
            key = row & mask
            if key in seen:
                pair = (index_to_bitstring(seen[key], a.factors), index_to_bitstring(row, a.factors))
                return IrredundancyResult(False, dropped, pair)
            seen[key] = row
    return IrredundancyResult(True)


def state_from_oa(a: OrthogonalArray, signs: Optional[Sequence[int]] = None) -> PureState:
    """(1/sqrt(r)) sum_j signs[j] |row_j>."""
    vector = SignVector.all_plus(a.runs) if signs is None else SignVector(tuple(signs))
    if len(vector) != a.runs:
        raise ValueError(f"{len(vector)} signs for {a.runs} rows")
    return from_lattice(a.factors, dict(zip(a.rows, vector.signs)), a.runs)


def oa_from_state(psi: PureState) -> Tuple[OrthogonalArray, SignVector]:
    """Support rows in ascending order and their aligned signs."""
    if not psi.exact_mode:
        raise NotUniformMagnitude("state amplitudes are not all ±1/sqrt(r)")
    rows = tuple(psi.support)
    signs = SignVector(tuple(1 if psi.numerators[x] > 0 else -1 for x in rows))
    return OrthogonalArray(psi.n_qubits, rows), signs


def is_linear(a: OrthogonalArray) -> bool:
    """Row set contains zero and is closed under XOR."""
    rows = set(a.rows)
    if 0 not in rows:
        return False
    return all((x ^ y) in rows for x, y in itertools.combinations(a.rows, 2))


def minimum_distance(a: OrthogonalArray) -> int:
    """Smallest Hamming distance between two distinct rows (factors + 1 for a single row)."""
    if a.runs < 2:
        return a.factors + 1
    return min((x ^ y).bit_count() for x, y in itertools.combinations(a.rows, 2))


def _row_basis(rows: Sequence[int]) -> List[int]:
    basis: List[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return basis


def dual_distance(a: OrthogonalArray) -> Optional[int]:
    """
    Minimum weight of a nonzero word orthogonal to every row, for linear
    arrays of at most MAX_DUAL_FACTORS columns; factors + 1 when only the
    zero word is orthogonal.
    """
    if not is_linear(a) or a.factors > MAX_DUAL_FACTORS:
        return None
    basis = _row_basis(a.rows)
    best = a.factors + 1
    for word in range(1, 1 << a.factors):
        weight = word.bit_count()
        if weight >= best:
            continue
        if all((word & b).bit_count() % 2 == 0 for b in basis):
            best = weight
    return best
