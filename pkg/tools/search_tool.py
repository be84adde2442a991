# tools/search_tool.py
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from data_utils import format_signs, load_oa
from phase_search import search
from tools.verify_tool import EXIT_FAIL, EXIT_PASS
from uniformity import SCHEMA_VERSION

logger = logging.getLogger(__name__)


def cmd_search(
    support_path: str,
    k: int,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
    budget: Optional[int] = None,
    output: Optional[str] = None,
    as_json: bool = False,
) -> Dict[str, Any]:
    """
    Look for a sign vector on the rows of an OA/support file that makes the
    superposition k-uniform. Rows are sorted first, so sign files line up
    with `state to-oa` output. Exit 0 iff a zero-objective signing was found.
    """
    try:
        a = load_oa(support_path).sorted()
        outcome = search(a, k, restarts=restarts, seed=seed, budget=budget, threads=threads)
        if output:
            Path(output).write_text(format_signs(outcome.best_signs))
            logger.info(f"Wrote sign vector to {output}")
    except Exception as e:
        logger.error(f"Sign search on {support_path} failed: {e}", exc_info=True)
        raise

    data = {"schema_version": SCHEMA_VERSION, "runs": a.runs, "factors": a.factors, "k": k, **outcome.to_dict()}
    if as_json:
        text = json.dumps(data, indent=2)
    else:
        text = "\n".join([
            f"{outcome.method} search over {a.runs} rows at k={k}: "
            f"objective {outcome.objective_exact} after {outcome.evaluations} evaluations",
            f"{k}-uniform signing found: {'yes' if outcome.achieved_k_uniform else 'no'}"
            + (" (exhaustive certificate)" if outcome.certificate else ""),
            f"signs {outcome.best_signs.to_text()}",
        ])
    return {"exit_code": EXIT_PASS if outcome.achieved_k_uniform else EXIT_FAIL, "report": data, "text": text}
