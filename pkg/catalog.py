# catalog.py
"""
Embedded state transcriptions.

Every entry is stored as SDL text so it can be compared by eye with the
printed superposition it came from. Entries are verified, never corrected:
a failing entry is reported with its offending subsets.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from errors import InternalInconsistency, KUniformError, UnknownId
from reductions import Purity
from sdl_parser import SdlDocument, expand, parse_sdl
from state import PureState, QubitSubset
from uniformity import SIZE_K_ONLY, UniformityReport, check_uniformity, format_purity, purity_table

logger = logging.getLogger(__name__)


PSI11_SDL = """\
state 11
norm 1/sqrt(32)
term: block(3,4,6,7){0000 + 1111} * block(1,2,5,8,9,10,11){0000000 + 1111111}
term: block(3,4,6,7){0001 + 1110} * block(1,2,5,8,9,10,11){0111010 + 1000101}
term: block(3,4,6,7){0010 + 1101} * block(1,2,5,8,9,10,11){0110101 + 1001010}
term: block(3,4,6,7){0011 + 1100} * block(1,2,5,8,9,10,11){0001111 + 1110000}
term: block(3,4,6,7){0100 + 1011} * block(1,2,5,8,9,10,11){0101100 + 1010011}
term: block(3,4,6,7){0101 + 1010} * block(1,2,5,8,9,10,11){0010110 + 1101001}
term: block(3,4,6,7){0110 + 1001} * block(1,2,5,8,9,10,11){0011001 + 1100110}
term: block(3,4,6,7){0111 + 1000} * block(1,2,5,8,9,10,11){0100011 + 1011100}
"""

PSI12_SDL = """\
state 12
norm 1/sqrt(32)
term: block(3,4,6,7){0000 + 1111} * block(1,2,5,8,9,10,11,12){00000000 + 11111111}
term: block(3,4,6,7){0001 + 1110} * block(1,2,5,8,9,10,11,12){01110100 + 10001011}
term: block(3,4,6,7){0010 + 1101} * block(1,2,5,8,9,10,11,12){01101010 + 10010101}
term: block(3,4,6,7){0011 + 1100} * block(1,2,5,8,9,10,11,12){00011110 + 11100001}
term: block(3,4,6,7){0100 + 1011} * block(1,2,5,8,9,10,11,12){01011001 + 10100110}
term: block(3,4,6,7){0101 + 1010} * block(1,2,5,8,9,10,11,12){00101101 + 11010010}
term: block(3,4,6,7){0110 + 1001} * block(1,2,5,8,9,10,11,12){00110011 + 11001100}
term: block(3,4,6,7){0111 + 1000} * block(1,2,5,8,9,10,11,12){01000111 + 10111000}
"""

# The first ket of the first term is printed one digit short; padded to block width.
PSI13_SDL = """\
state 13
norm 1/sqrt(32)
term: block(1,2,8,11){0000} * block(3,4,5,6,7,9,10,12,13){000000000 + 011011110 + 101101111 + 110110001}
term: block(1,2,8,11){0011} * block(3,4,5,6,7,9,10,12,13){000111101 + 011100011 + 101010010 + 110001100}
term: block(1,2,8,11){0101} * block(3,4,5,6,7,9,10,12,13){001101000 + 010110110 + 100000111 + 111011001}
term: block(1,2,8,11){0110} * block(3,4,5,6,7,9,10,12,13){001010101 + 010001011 + 100111010 + 111100100}
term: block(1,2,8,11){1001} * block(3,4,5,6,7,9,10,12,13){000011011 + 011000101 + 101110100 + 110101010}
term: block(1,2,8,11){1010} * block(3,4,5,6,7,9,10,12,13){000100110 + 011111000 + 101001001 + 110010111}
term: block(1,2,8,11){1100} * block(3,4,5,6,7,9,10,12,13){001110011 + 010101101 + 100011100 + 111000010}
term: block(1,2,8,11){1111} * block(3,4,5,6,7,9,10,12,13){001001110 + 010010000 + 100100001 + 111111111}
"""

# The first ket of the first term is printed one digit short; padded to block width.
PSI14_SDL = """\
state 14
norm 1/sqrt(32)
term: block(1,2,8,11){0000} * block(3,4,5,6,7,9,10,12,13,14){0000000000 + 0110111101 + 1011011110 + 1101100011}
term: block(1,2,8,11){0011} * block(3,4,5,6,7,9,10,12,13,14){0001111011 + 0111000110 + 1010100101 + 1100011000}
term: block(1,2,8,11){0101} * block(3,4,5,6,7,9,10,12,13,14){0011010001 + 0101101100 + 1000001111 + 1110110010}
term: block(1,2,8,11){0110} * block(3,4,5,6,7,9,10,12,13,14){0010101010 + 0100010111 + 1001110100 + 1111001001}
term: block(1,2,8,11){1001} * block(3,4,5,6,7,9,10,12,13,14){0000110110 + 0110001011 + 1011101000 + 1101010101}
term: block(1,2,8,11){1010} * block(3,4,5,6,7,9,10,12,13,14){0001001101 + 0111110000 + 1010010011 + 1100101110}
term: block(1,2,8,11){1100} * block(3,4,5,6,7,9,10,12,13,14){0011100111 + 0101011010 + 1000111001 + 1110000100}
term: block(1,2,8,11){1111} * block(3,4,5,6,7,9,10,12,13,14){0010011100 + 0100100001 + 1001000010 + 1111111111}
"""

# The first ket of the first term is printed one digit short; padded to block width.
PSI15_SDL = """\
state 15
norm 1/sqrt(32)
term: block(1,2,8,11){0000} * block(3,4,5,6,7,9,10,12,13,14,15){00000000000 + 01101111010 + 10110111101 + 11011000111}
term: block(1,2,8,11){0011} * block(3,4,5,6,7,9,10,12,13,14,15){00011110110 + 01110001100 + 10101001011 + 11000110001}
term: block(1,2,8,11){0101} * block(3,4,5,6,7,9,10,12,13,14,15){00110100011 + 01011011001 + 10000011110 + 11101100100}
term: block(1,2,8,11){0110} * block(3,4,5,6,7,9,10,12,13,14,15){00101010101 + 01000101111 + 10011101000 + 11110010010}
term: block(1,2,8,11){1001} * block(3,4,5,6,7,9,10,12,13,14,15){00001101101 + 01100010111 + 10111010000 + 11010101010}
term: block(1,2,8,11){1010} * block(3,4,5,6,7,9,10,12,13,14,15){00010011011 + 01111100001 + 10100100110 + 11001011100}
term: block(1,2,8,11){1100} * block(3,4,5,6,7,9,10,12,13,14,15){00111001110 + 01010110100 + 10001110011 + 11100001001}
term: block(1,2,8,11){1111} * block(3,4,5,6,7,9,10,12,13,14,15){00100111000 + 01001000010 + 10010000101 + 11111111111}
"""

# Each bracket of the printed form is (a|x>|0> + b|y>|1>) on four qubits, written out as four kets.
PSIM8_SDL = """\
state 8
norm 1/sqrt(64)
term: block(1,2,3,4){0000 + 1110 + 0101 + 1011} * block(5,6,7,8){0000 - 1110 + 0001 - 1111}
term: block(1,2,3,4){0010 + 1100 + 0001 - 1111} * block(5,6,7,8){0000 + 1110 + 1001 + 0111}
term: block(1,2,3,4){0100 + 1010 + 1001 + 0111} * block(5,6,7,8){0000 + 1110 - 0101 - 1011}
term: block(1,2,3,4){0000 - 1110 + 0101 - 1011} * block(5,6,7,8){0000 - 1110 + 1001 - 1011}
"""

BELL_SDL = """\
state 2
norm 1/sqrt(2)
term: block(1,2){00 + 11}
"""

GHZ3_SDL = """\
state 3
norm 1/sqrt(2)
term: block(1,2,3){000 + 111}
"""

GHZ4_SDL = """\
state 4
norm 1/sqrt(2)
term: block(1,2,3,4){0000 + 1111}
"""


def _four_qubit_references() -> Tuple[Tuple[QubitSubset, Fraction], ...]:
    """Printed 4-subset purities; every other subset containing qubit 1 is listed at 1/16."""
    quarter = {(1, 2, 3, 6), (1, 2, 4, 5), (1, 2, 7, 8)}
    eighth = {(1, 3, 4, 8), (1, 3, 5, 7), (1, 4, 6, 7), (1, 5, 6, 8)}
    values = []
    for rest in itertools.combinations(range(2, 9), 3):
        subset = (1,) + rest
        if subset in quarter:
            values.append((subset, Fraction(1, 4)))
        elif subset in eighth:
            values.append((subset, Fraction(1, 8)))
        else:
            values.append((subset, Fraction(1, 16)))
    return tuple(values)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    sdl: str
    claimed_k: int
    source: str
    reference_purities: Tuple[Tuple[QubitSubset, Fraction], ...] = ()
    reference_size: Optional[int] = None
    notes: Tuple[str, ...] = ()

    def document(self) -> SdlDocument:
        return parse_sdl(self.sdl)

    def state(self) -> PureState:
        return expand(self.document())


_ENTRIES = (
    CatalogEntry("psi11", PSI11_SDL, 3, "11-qubit 3-uniform construction, blocks 3467 and 12589,10,11"),
    CatalogEntry("psi12", PSI12_SDL, 3, "12-qubit 3-uniform construction, blocks 3467 and 12589,10,11,12"),
    CatalogEntry(
        "psi13", PSI13_SDL, 3, "13-qubit 3-uniform construction, blocks 128,11 and 34567910,12,13",
        notes=("all-zero ket of the first term padded from 8 to 9 digits",),
    ),
    CatalogEntry(
        "psi14", PSI14_SDL, 3, "14-qubit 3-uniform construction, blocks 128,11 and 34567910,12,13,14",
        notes=("all-zero ket of the first term padded from 9 to 10 digits",),
    ),
    CatalogEntry(
        "psi15", PSI15_SDL, 3, "15-qubit 3-uniform construction, blocks 128,11 and 34567910,12,13,14,15",
        notes=("all-zero ket of the first term padded from 10 to 11 digits",),
    ),
    CatalogEntry(
        "psiM8", PSIM8_SDL, 3, "signed 8-qubit superposition with printed 4-qubit purity table",
        reference_purities=_four_qubit_references(),
        reference_size=4,
        notes=(
            "kets repeated between the first and fourth products add, so the support has 52 states, not 64",
            "the printed triple list runs up to qubit 11; triples are checked over the 8 qubits of this state",
            "fourth product keeps the printed (|100> - |101>)|1> bracket",
            "printed 4-qubit purities cover subsets containing qubit 1 only; the rest are computed without reference",
        ),
    ),
    CatalogEntry("bell", BELL_SDL, 1, "two-qubit Bell state"),
    CatalogEntry("ghz3", GHZ3_SDL, 1, "three-qubit GHZ state"),
    CatalogEntry("ghz4", GHZ4_SDL, 1, "four-qubit GHZ state"),
)

CATALOG: Dict[str, CatalogEntry] = {e.id: e for e in _ENTRIES}


def catalog_ids() -> List[str]:
    return [e.id for e in _ENTRIES]


def catalog_get(entry_id: str) -> CatalogEntry:
    try:
        return CATALOG[entry_id]
    except KeyError:
        raise UnknownId(f"unknown catalog id {entry_id!r}; known ids: {', '.join(catalog_ids())}")


@dataclass(frozen=True)
class ReferenceCheck:
    subset: QubitSubset
    expected: Fraction
    computed: Purity

    @property
    def matches(self) -> bool:
        if self.computed.exact is not None:
            return self.computed.exact == self.expected
        return abs(self.computed.value - float(self.expected)) <= 1e-10


@dataclass
class CatalogResult:
    id: str
    claimed_k: int
    report: Optional[UniformityReport] = None
    purity_table: Optional[List[Tuple[QubitSubset, Purity]]] = None
    reference_check: List[ReferenceCheck] = field(default_factory=list)
    notes: Tuple[str, ...] = ()
    error: Optional[str] = None
    # smallest failing size and its failing subsets; None while the claim holds
    witness_size: Optional[int] = None
    minimal_witness: List[QubitSubset] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.report is not None and self.report.is_k_uniform

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.id,
            "claimed_k": self.claimed_k,
            "report": self.report.to_dict() if self.report is not None else None,
        }
        if self.purity_table is not None:
            out["purity_table"] = [{"subset": list(s), "purity": p.to_json()} for s, p in self.purity_table]
        if self.reference_check:
            out["reference_check"] = [
                {
                    "subset": list(c.subset),
                    "expected": {"num": c.expected.numerator, "den": c.expected.denominator},
                    "computed": c.computed.to_json(),
                    "match": c.matches,
                }
                for c in self.reference_check
            ]
        out["minimal_witness"] = (
            {"size": self.witness_size, "subsets": [list(s) for s in self.minimal_witness]}
            if self.witness_size is not None else None
        )
        out["notes"] = list(self.notes)
        out["error"] = self.error
        return out


def _attach_minimal_witness(result: CatalogResult, psi: PureState, tolerance: Optional[float], threads: int) -> None:
    """Scan sizes upward from 1; the claimed size is known to fail, so the scan stops there at the latest."""
    for m in range(1, result.claimed_k + 1):
        report = result.report if m == result.claimed_k else check_uniformity(
            psi, m, SIZE_K_ONLY, tolerance=tolerance, threads=threads, exact=True
        )
        if not report.is_k_uniform:
            result.witness_size = m
            result.minimal_witness = report.failing_subsets
            return


def _verify_entry(entry: CatalogEntry, tolerance: Optional[float], threads: int) -> CatalogResult:
    result = CatalogResult(entry.id, entry.claimed_k, notes=entry.notes)
    try:
        psi = entry.state()
        result.report = check_uniformity(
            psi, entry.claimed_k, SIZE_K_ONLY, tolerance=tolerance, threads=threads, exact=True
        )
        if entry.reference_size is not None:
            result.purity_table = purity_table(psi, entry.reference_size, threads=threads)
            computed = dict(result.purity_table)
            result.reference_check = [
                ReferenceCheck(subset, expected, computed[subset]) for subset, expected in entry.reference_purities
            ]
            mismatches = [c for c in result.reference_check if not c.matches]
            for c in mismatches:
                logger.warning(f"{entry.id}: purity of {c.subset} is {format_purity(c.computed)}, "
                               f"reference value {c.expected}")
    except InternalInconsistency:
        raise
    except KUniformError as e:
        logger.warning(f"{entry.id}: verification failed: {e}")
        result.error = str(e)
        return result

    if not result.report.is_k_uniform:
        _attach_minimal_witness(result, psi, tolerance, threads)
        logger.warning(f"{entry.id}: not {entry.claimed_k}-uniform; "
                       f"{len(result.minimal_witness)} failing subsets already at size {result.witness_size}")
    return result


def catalog_verify_all(tolerance: Optional[float] = None, threads: int = 1) -> List[CatalogResult]:
    """Verify every entry at its claimed k in exact mode. Failing entries are recorded, not raised."""
    results = []
    for entry in _ENTRIES:
        logger.info(f"Verifying catalog entry {entry.id} at k={entry.claimed_k}")
        results.append(_verify_entry(entry, tolerance, threads))
    return results
