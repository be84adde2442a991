# data_utils.py
import logging
import math
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from errors import FileFormatError
from orthogonal_array import OrthogonalArray, SignVector, oa_strength
from sdl_parser import expand, parse_sdl
from state import MAX_QUBITS, PureState, from_amplitudes, index_to_bitstring

logger = logging.getLogger(__name__)

SDL = "sdl"
PLAIN = "plain"


def read_input(path: str) -> str:
    """Read a whole input file; '-' means standard input."""
    if path == "-":
        logger.info("Reading input from stdin")
        return sys.stdin.read()
    logger.info(f"Reading input file: {path}")
    try:
        return Path(path).read_text()
    except Exception as e:
        logger.error(f"Error reading {path}: {e}", exc_info=True)
        raise


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(1-based line number, stripped content) for every non-blank line, comments removed."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines


def detect_format(text: str, path: Optional[str] = None) -> str:
    """SDL documents open with 'state', plain files with 'nqubits'; the .sdl suffix decides otherwise."""
    lines = _content_lines(text)
    if lines:
        first = lines[0][1].split()[0]
        if first == "state":
            return SDL
        if first == "nqubits":
            return PLAIN
    if path and path != "-" and path.lower().endswith(".sdl"):
        return SDL
    line = lines[0][0] if lines else 1
    raise FileFormatError("input is neither an SDL document ('state N') nor a plain state ('nqubits N')", line)


def _parse_float(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FileFormatError(f"{token!r} is not a number", line)
    if not math.isfinite(value):
        raise FileFormatError(f"{token!r} is not finite", line)
    return value


def parse_plain_state(text: str, normalize: bool = False) -> PureState:
    """
    Parse the plain format:

        nqubits 2
        00 0.7071067811865476 0
        11 0.7071067811865476
    """
    lines = _content_lines(text)
    if not lines:
        raise FileFormatError("empty state file", 1)
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "nqubits" or not parts[1].isdigit():
        raise FileFormatError("expected 'nqubits N'", number)
    n = int(parts[1])
    if n < 1 or n > MAX_QUBITS:
        raise FileFormatError(f"qubit count must be in 1..{MAX_QUBITS}", number)

    amplitudes: Dict[int, complex] = {}
    for number, content in lines[1:]:
        parts = content.split()
        if len(parts) not in (2, 3):
            raise FileFormatError("expected '<bitstring> <re> [<im>]'", number)
        bits = parts[0]
        if len(bits) != n or any(c not in "01" for c in bits):
            raise FileFormatError(f"{bits!r} is not a {n}-bit bitstring", number)
        index = int(bits, 2)
        if index in amplitudes:
            raise FileFormatError(f"basis state {bits} listed twice", number)
        re = _parse_float(parts[1], number)
        im = _parse_float(parts[2], number) if len(parts) == 3 else 0.0
        amplitudes[index] = complex(re, im)
    if not amplitudes:
        raise FileFormatError("state has no amplitudes", number)

    if normalize:
        norm = math.sqrt(math.fsum(abs(a) ** 2 for a in amplitudes.values()))
        if norm == 0:
            raise FileFormatError("all amplitudes are zero", number)
        amplitudes = {x: a / norm for x, a in amplitudes.items()}
    psi = from_amplitudes(n, amplitudes)
    logger.info(f"Loaded plain state: {n} qubits, support {psi.support_size}")
    return psi


def format_plain_state(psi: PureState) -> str:
    lines = [f"nqubits {psi.n_qubits}"]
    for x in psi.support:
        a = psi.amplitudes[x]
        lines.append(f"{index_to_bitstring(x, psi.n_qubits)} {a.real!r} {a.imag!r}")
    return "\n".join(lines) + "\n"


def load_state(path: str, normalize: bool = False) -> PureState:
    text = read_input(path)
    fmt = detect_format(text, path)
    if fmt == SDL:
        psi = expand(parse_sdl(text), normalize=normalize)
        logger.info(f"Loaded SDL state: {psi.n_qubits} qubits, support {psi.support_size}")
        return psi
    return parse_plain_state(text, normalize=normalize)


def parse_oa(text: str) -> OrthogonalArray:
    """
    Rows of 0/1, contiguous or space-separated, after an optional
    'oa r N 2 t' header. The header's r and N must match the rows.
    """
    lines = _content_lines(text)
    header: Optional[Tuple[int, List[str]]] = None
    if lines and lines[0][1].split()[0] == "oa":
        header = (lines[0][0], lines[0][1].split())
        lines = lines[1:]
    if not lines:
        raise FileFormatError("orthogonal array has no rows", header[0] + 1 if header else 1)

    rows: List[str] = []
    seen: Dict[str, int] = {}
    width = None
    for number, content in lines:
        bits = "".join(content.split())
        if any(c not in "01" for c in bits):
            raise FileFormatError(f"row {content!r} contains entries other than 0 and 1", number)
        if width is None:
            width = len(bits)
        elif len(bits) != width:
            raise FileFormatError(f"row has {len(bits)} columns, expected {width}", number)
        if bits in seen:
            raise FileFormatError(f"row {bits} duplicates line {seen[bits]}", number)
        seen[bits] = number
        rows.append(bits)

    if header is not None:
        number, parts = header
        if len(parts) != 5 or not all(p.isdigit() for p in parts[1:]):
            raise FileFormatError("expected header 'oa r N 2 t'", number)
        r, n, levels = int(parts[1]), int(parts[2]), int(parts[3])
        if levels != 2:
            raise FileFormatError("only 2-level arrays are supported", number)
        if r != len(rows) or n != width:
            raise FileFormatError(f"header declares {r}x{n}, rows are {len(rows)}x{width}", number)
    logger.info(f"Loaded orthogonal array: {len(rows)} rows, {width} columns")
    return OrthogonalArray.from_bitstrings(rows)


def format_oa(a: OrthogonalArray, strength: Optional[int] = None) -> str:
    """Header with the computed strength, then one contiguous row per line."""
    if strength is None:
        strength = oa_strength(a).strength
    lines = [f"oa {a.runs} {a.factors} 2 {strength}"]
    lines.extend(a.bitstrings())
    return "\n".join(lines) + "\n"


def load_oa(path: str) -> OrthogonalArray:
    return parse_oa(read_input(path))


def parse_signs(text: str) -> SignVector:
    lines = _content_lines(text)
    if len(lines) != 1:
        raise FileFormatError("sign file must hold exactly one line of '+' and '-'", lines[1][0] if lines else 1)
    number, content = lines[0]
    try:
        return SignVector.from_text(content)
    except ValueError as e:
        raise FileFormatError(str(e), number)


def format_signs(signs: SignVector) -> str:
    return signs.to_text() + "\n"


def load_signs(path: str) -> SignVector:
    return parse_signs(read_input(path))
