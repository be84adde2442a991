# tools/oa_tool.py
import json
import logging
from typing import Any, Dict, Optional, Sequence

from data_utils import format_oa, format_plain_state, load_oa, load_signs, load_state
from orthogonal_array import (
    dual_distance,
    is_linear,
    minimum_distance,
    oa_from_state,
    oa_irredundant,
    oa_strength,
    state_from_oa,
)
from tools.verify_tool import EXIT_FAIL, EXIT_PASS
from uniformity import SCHEMA_VERSION

logger = logging.getLogger(__name__)


def _strength_cap(runs: int, factors: int) -> int:
    return min(factors, runs.bit_length() - 1)


def cmd_oa_check(
    oa_path: str,
    strength: Optional[int] = None,
    irredundant: Sequence[int] = (),
    as_json: bool = False,
) -> Dict[str, Any]:
    """
    Strength and irredundancy report for an OA file. Exit code 2 when a
    requested strength or irredundancy level is not met.
    """
    try:
        a = load_oa(oa_path)
        cap = _strength_cap(a.runs, a.factors)
        t_max = cap if strength is None else min(strength, cap)
        result = oa_strength(a, t_max)
        levels = [oa_irredundant(a, k) for k in irredundant]
        linear = is_linear(a)
    except Exception as e:
        logger.error(f"OA check of {oa_path} failed: {e}", exc_info=True)
        raise

    witness = None
    if result.witness is not None:
        w = result.witness
        witness = {
            "columns": list(w.columns),
            "pattern": w.pattern,
            "observed": w.observed,
            "expected": {"num": w.expected.numerator, "den": w.expected.denominator},
        }
    data = {
        "schema_version": SCHEMA_VERSION,
        "runs": a.runs,
        "factors": a.factors,
        "strength": result.strength,
        "strength_checked_up_to": t_max,
        "witness": witness,
        "irredundant": [
            {
                "k": k,
                "irredundant": r.irredundant,
                "dropped_columns": list(r.dropped_columns) if r.dropped_columns else None,
                "row_pair": list(r.row_pair) if r.row_pair else None,
            }
            for k, r in zip(irredundant, levels)
        ],
        "is_linear": linear,
        "minimum_distance": minimum_distance(a),
        "dual_distance": dual_distance(a) if linear else None,
    }
    ok = all(r.irredundant for r in levels)
    if strength is not None and result.strength < strength:
        ok = False
    if as_json:
        text = json.dumps(data, indent=2)
    else:
        lines = [f"OA({a.runs}, {a.factors}, 2) strength {result.strength} (checked up to {t_max})"]
        if witness is not None:
            lines.append(
                f"witness: columns {witness['columns']} pattern {witness['pattern']} "
                f"observed {witness['observed']} expected {result.witness.expected}"
            )
        for entry in data["irredundant"]:
            if entry["irredundant"]:
                lines.append(f"irredundant at k={entry['k']}: yes")
            else:
                lines.append(
                    f"irredundant at k={entry['k']}: no (dropping columns {entry['dropped_columns']} "
                    f"merges rows {entry['row_pair'][0]} and {entry['row_pair'][1]})"
                )
        lines.append(f"linear: {'yes' if linear else 'no'}; minimum distance {data['minimum_distance']}"
                     + (f"; dual distance {data['dual_distance']}" if data["dual_distance"] is not None else ""))
        text = "\n".join(lines)
    return {"exit_code": EXIT_PASS if ok else EXIT_FAIL, "report": data, "text": text}


def cmd_oa_to_state(oa_path: str, signs_path: Optional[str] = None) -> Dict[str, Any]:
    """Equal superposition of the rows, written in the plain state format."""
    try:
        a = load_oa(oa_path)
        signs = load_signs(signs_path) if signs_path else None
        psi = state_from_oa(a, signs)
    except Exception as e:
        logger.error(f"Building a state from {oa_path} failed: {e}", exc_info=True)
        raise
    logger.info(f"Built {psi.n_qubits}-qubit state with support {psi.support_size}")
    return {
        "exit_code": EXIT_PASS,
        "report": {"n_qubits": psi.n_qubits, "support_size": psi.support_size},
        "text": format_plain_state(psi),
    }


def cmd_state_to_oa(state_path: str, normalize: bool = False) -> Dict[str, Any]:
    """Support rows of an equal-magnitude state as an OA file; signs go into the report."""
    try:
        psi = load_state(state_path, normalize=normalize)
        a, signs = oa_from_state(psi)
        text = format_oa(a)
    except Exception as e:
        logger.error(f"Extracting an OA from {state_path} failed: {e}", exc_info=True)
        raise
    return {
        "exit_code": EXIT_PASS,
        "report": {"runs": a.runs, "factors": a.factors, "signs": signs.to_text()},
        "text": text,
    }
