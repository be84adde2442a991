# tools/verify_tool.py
import json
import logging
from typing import Any, Dict, Optional

import pandas as pd

from data_utils import load_state
from invariants import MAX_INVARIANT_QUBITS, f_table
from state import format_subset
from uniformity import (
    ALL_SIZES,
    SCHEMA_VERSION,
    SIZE_K_ONLY,
    check_uniformity,
    format_report_text,
    subsets_up_to,
    worker_pool,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_FAIL = 2


def cmd_verify(
    state_path: str,
    k: int,
    exact: Optional[bool] = None,
    tolerance: Optional[float] = None,
    threads: int = 1,
    all_sizes: bool = False,
    normalize: bool = False,
    as_json: bool = False,
) -> Dict[str, Any]:
    """
    Load a state (.sdl or plain) and check k-uniformity.

    Returns {"exit_code": 0 if k-uniform else 2, "report": dict, "text": str}.
    """
    logger.info(f"Verifying {state_path} at k={k}")
    try:
        psi = load_state(state_path, normalize=normalize)
        report = check_uniformity(
            psi,
            k,
            mode=ALL_SIZES if all_sizes else SIZE_K_ONLY,
            tolerance=tolerance,
            threads=threads,
            exact=exact,
        )
    except Exception as e:
        logger.error(f"Verification of {state_path} failed: {e}", exc_info=True)
        raise

    data = report.to_dict()
    text = json.dumps(data, indent=2) if as_json else format_report_text(report)
    return {
        "exit_code": EXIT_PASS if report.is_k_uniform else EXIT_FAIL,
        "report": data,
        "text": text,
    }


def cmd_invariants(
    state_path: str,
    max_size: int = 3,
    threads: int = 1,
    normalize: bool = False,
    as_json: bool = False,
) -> Dict[str, Any]:
    """List every F_T with 1 <= |T| <= max_size."""
    try:
        psi = load_state(state_path, normalize=normalize)
        if max_size < 1 or max_size > min(psi.n_qubits, MAX_INVARIANT_QUBITS):
            raise ValueError(f"max size must be in 1..{min(psi.n_qubits, MAX_INVARIANT_QUBITS)}, got {max_size}")
        subsets = subsets_up_to(psi.n_qubits, max_size)
        with worker_pool(threads) as pool:
            table = f_table(psi, subsets, pool)
    except Exception as e:
        logger.error(f"Invariant listing for {state_path} failed: {e}", exc_info=True)
        raise

    rows = [table[s] for s in subsets]
    data = {
        "schema_version": SCHEMA_VERSION,
        "n_qubits": psi.n_qubits,
        "max_size": max_size,
        "invariants": [
            {
                "subset": list(f.subset),
                "value": f.value,
                "exact": {"num": f.exact.numerator, "den": f.exact.denominator} if f.exact is not None else None,
            }
            for f in rows
        ],
    }
    if as_json:
        text = json.dumps(data, indent=2)
    else:
        frame = pd.DataFrame(
            {
                "subset": [format_subset(f.subset) for f in rows],
                "F": [str(f.exact) if f.exact is not None else f"{f.value:.12g}" for f in rows],
            }
        )
        text = frame.to_string(index=False)
    return {"exit_code": EXIT_PASS, "report": data, "text": text}
