# sdl_parser.py
"""
Parser for the state description language (.sdl).

A document transcribes a factored superposition term by term:

    state 2
    norm 1/sqrt(2)
    term: block(1,2){00 + 11}

Each term is a tensor product of blocks; a block lists its qubit labels and
a signed sum of kets whose j-th bit belongs to the j-th listed qubit.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from errors import (
    BlockWidthMismatch,
    NotNormalized,
    QubitCoverageError,
    SdlSyntaxError,
)
from state import MAX_QUBITS, NORM_TOLERANCE, ZERO_THRESHOLD, PureState, from_amplitudes, from_lattice

logger = logging.getLogger(__name__)

# (p, q) meaning p / sqrt(q)
Coefficient = Tuple[int, int]


@dataclass(frozen=True)
class SdlBlock:
    qubits: Tuple[int, ...]
    kets: Tuple[Tuple[int, str], ...]
    line: int = 0


@dataclass(frozen=True)
class SdlTerm:
    sign: int
    coefficient: Optional[Coefficient]
    blocks: Tuple[SdlBlock, ...]
    line: int = 0

    @property
    def scale(self) -> Coefficient:
        return self.coefficient if self.coefficient is not None else (1, 1)


@dataclass(frozen=True)
class SdlDocument:
    n_qubits: int
    global_norm: Coefficient
    terms: Tuple[SdlTerm, ...]

    @property
    def norm_value(self) -> float:
        p, q = self.global_norm
        return p / math.sqrt(q)


_GRAMMAR = r"""
    start: _NL? state_line _NL norm_line _NL (term_line _NL)+

    state_line: "state" INT
    norm_line: "norm" coefficient
    term_line: "term" SIGN? coefficient? ":" block ("*" block)*

    coefficient: INT ("/" "sqrt" "(" INT ")")?
    block: "block" "(" INT ("," INT)* ")" "{" ket (SIGN ket)* "}"
    ket: SIGN? INT

    SIGN: "+" | "-"
    INT: /[0-9]+/
    COMMENT: /#[^\n]*/
    _NL: /(\r?\n[\t ]*(#[^\n]*)?)+/

    %import common.WS_INLINE
    %ignore WS_INLINE
    %ignore COMMENT
"""

_PARSER = Lark(_GRAMMAR, parser="lalr")


@dataclass(frozen=True)
class _RawBlock:
    qubits: Tuple[Token, ...]
    kets: Tuple[Tuple[int, Token], ...]


@dataclass(frozen=True)
class _RawTerm:
    sign: int
    coefficient: Optional[Tuple[Token, Optional[Token]]]
    blocks: Tuple[_RawBlock, ...]


def _sign(token: Optional[Token]) -> int:
    return -1 if token is not None and token == "-" else 1


class _SdlTree(Transformer):
    """Parse tree to raw tokens; value checks happen afterwards with token positions."""

    def state_line(self, items):
        return items[0]

    def norm_line(self, items):
        return items[0]

    def coefficient(self, items):
        return items[0], (items[1] if len(items) > 1 else None)

    def ket(self, items):
        return (_sign(items[0]), items[1]) if len(items) == 2 else (1, items[0])

    def block(self, items):
        qubits = [t for t in items if isinstance(t, Token) and t.type == "INT"]
        kets: List[Tuple[int, Token]] = []
        separator = 1
        for item in items[len(qubits):]:
            if isinstance(item, Token):
                separator = _sign(item)
            else:
                kets.append((separator * item[0], item[1]))
                separator = 1
        return _RawBlock(tuple(qubits), tuple(kets))

    def term_line(self, items):
        sign = _sign(items.pop(0)) if isinstance(items[0], Token) else 1
        coefficient = items.pop(0) if isinstance(items[0], tuple) else None
        return _RawTerm(sign, coefficient, tuple(items))

    def start(self, items):
        return items[0], items[1], items[2:]


def _coefficient(raw: Tuple[Token, Optional[Token]]) -> Coefficient:
    p, q = raw
    if q is None:
        return int(p), 1
    if int(q) == 0:
        raise SdlSyntaxError("sqrt(0) in coefficient", q.line, q.column)
    return int(p), int(q)


def _build_block(raw: _RawBlock) -> SdlBlock:
    qubits = tuple(int(t) for t in raw.qubits)
    kets = []
    for sign, bits in raw.kets:
        if any(c not in "01" for c in bits):
            raise SdlSyntaxError(f"ket {str(bits)!r} may only contain 0 and 1", bits.line, bits.column)
        if len(bits) != len(qubits):
            raise BlockWidthMismatch(
                f"ket {bits} has {len(bits)} bits but the block lists {len(qubits)} qubits",
                bits.line, bits.column,
            )
        kets.append((sign, str(bits)))
    return SdlBlock(qubits, tuple(kets), raw.qubits[0].line)


def _check_coverage(term: SdlTerm, number: int, n: int) -> None:
    seen: set = set()
    for block in term.blocks:
        for q in block.qubits:
            if q < 1 or q > n:
                raise QubitCoverageError(f"qubit {q} outside 1..{n}", number)
            if q in seen:
                raise QubitCoverageError(f"qubit {q} appears more than once", number)
            seen.add(q)
    missing = sorted(set(range(1, n + 1)) - seen)
    if missing:
        raise QubitCoverageError(f"qubits {missing} not covered", number)


def _syntax_error(e: UnexpectedInput, text: str) -> SdlSyntaxError:
    line = getattr(e, "line", -1)
    col = getattr(e, "column", -1)
    if line is None or line < 1:
        line, col = max(1, len(text.splitlines())), None
    if isinstance(e, UnexpectedCharacters):
        message = f"unexpected character {e.char!r}"
    elif isinstance(e, UnexpectedToken):
        found = "end of input" if e.token.type == "$END" else (
            "end of line" if e.token.type == "_NL" else repr(str(e.token)))
        message = f"unexpected {found}"
    else:
        message = "unexpected end of input"
    return SdlSyntaxError(message, line, col)


def parse_sdl(text: str) -> SdlDocument:
    """Parse SDL text into a structurally validated document."""
    try:
        tree = _PARSER.parse(text + "\n")
    except UnexpectedInput as e:
        raise _syntax_error(e, text) from None
    count, norm, raw_terms = _SdlTree().transform(tree)

    n = int(count)
    if n < 1 or n > MAX_QUBITS:
        raise SdlSyntaxError(f"qubit count must be in 1..{MAX_QUBITS}", count.line, count.column)

    terms: List[SdlTerm] = []
    for raw in raw_terms:
        blocks = tuple(_build_block(b) for b in raw.blocks)
        coefficient = _coefficient(raw.coefficient) if raw.coefficient is not None else None
        term = SdlTerm(raw.sign, coefficient, blocks, blocks[0].line)
        _check_coverage(term, len(terms) + 1, n)
        terms.append(term)

    logger.debug(f"Parsed SDL document: {n} qubits, {len(terms)} terms")
    return SdlDocument(n, _coefficient(norm), tuple(terms))


def _term_index(n: int, blocks: Tuple[SdlBlock, ...], choice: Tuple[Tuple[int, str], ...]) -> Tuple[int, int]:
    index = 0
    sign = 1
    for block, (ket_sign, bits) in zip(blocks, choice):
        sign *= ket_sign
        for q, bit in zip(block.qubits, bits):
            if bit == "1":
                index |= 1 << (n - q)
    return index, sign


def _common_scale(doc: SdlDocument) -> Tuple[int, Dict[int, int]]:
    """Least common term scale and the integer multiplier sqrt(L/q_i) per distinct q_i."""
    qs = sorted({term.scale[1] for term in doc.terms})
    common = 1
    for q in qs:
        common = common * q // math.gcd(common, q)
    multipliers: Dict[int, int] = {}
    for q in qs:
        ratio = common // q
        root = math.isqrt(ratio)
        if root * root != ratio:
            return 0, {}
        multipliers[q] = root
    return common, multipliers


def _expand_integer(doc: SdlDocument) -> Tuple[Dict[int, int], int]:
    """Unnormalised integer amplitudes and the denominator scale; ({}, 0) if not a lattice."""
    common, multipliers = _common_scale(doc)
    if common == 0:
        return {}, 0
    p, q = doc.global_norm
    numerators: Dict[int, int] = {}
    for term in doc.terms:
        tp, tq = term.scale
        weight = term.sign * p * tp * multipliers[tq]
        for choice in itertools.product(*(block.kets for block in term.blocks)):
            index, sign = _term_index(doc.n_qubits, term.blocks, choice)
            numerators[index] = numerators.get(index, 0) + sign * weight
    return numerators, q * common


def expand_amplitudes(doc: SdlDocument) -> Dict[int, complex]:
    """Distribute every term over its blocks and sum colliding kets; no normalization check."""
    amplitudes: Dict[int, complex] = {}
    norm = doc.norm_value
    for term in doc.terms:
        tp, tq = term.scale
        weight = term.sign * norm * tp / math.sqrt(tq)
        for choice in itertools.product(*(block.kets for block in term.blocks)):
            index, sign = _term_index(doc.n_qubits, term.blocks, choice)
            amplitudes[index] = amplitudes.get(index, 0j) + sign * weight
    return amplitudes


def expand(doc: SdlDocument, normalize: bool = False) -> PureState:
    """
    Expand a document into a PureState.

    The state is exact whenever all term scales share a square-compatible
    common denominator. A norm defect raises NotNormalized unless
    `normalize` is set.
    """
    numerators, scale = _expand_integer(doc)
    if scale:
        kept = {x: m for x, m in numerators.items() if m != 0}
        total = sum(m * m for m in kept.values())
        cancelled = len(numerators) - len(kept)
        if cancelled:
            logger.info(f"{cancelled} basis states cancelled during expansion")
        if total != scale:
            if not normalize or total == 0:
                raise NotNormalized(
                    f"expansion has squared norm {total}/{scale} "
                    f"({len(kept)} nonzero amplitudes); check the transcription"
                )
            logger.warning(f"Renormalizing expansion: squared norm {total}/{scale}")
            scale = total
        return from_lattice(doc.n_qubits, kept, scale)

    amplitudes = {x: a for x, a in expand_amplitudes(doc).items() if abs(a) >= ZERO_THRESHOLD}
    norm = math.fsum(abs(a) ** 2 for a in amplitudes.values())
    if abs(norm - 1.0) > NORM_TOLERANCE:
        if not normalize or norm == 0:
            raise NotNormalized(f"expansion has squared norm {norm!r}; check the transcription")
        logger.warning(f"Renormalizing expansion: squared norm {norm!r}")
        root = math.sqrt(norm)
        amplitudes = {x: a / root for x, a in amplitudes.items()}
    return from_amplitudes(doc.n_qubits, amplitudes, detect_exact=False)
