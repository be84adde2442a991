# tools/catalog_tool.py
import json
import logging
from typing import Any, Dict, Optional

import pandas as pd

from catalog import catalog_get, catalog_ids, catalog_verify_all
from tools.verify_tool import EXIT_FAIL, EXIT_PASS
from uniformity import SCHEMA_VERSION, purity_table_frame

logger = logging.getLogger(__name__)


def cmd_catalog_list() -> Dict[str, Any]:
    entries = [catalog_get(i) for i in catalog_ids()]
    frame = pd.DataFrame(
        {
            "id": [e.id for e in entries],
            "qubits": [e.document().n_qubits for e in entries],
            "claimed_k": [e.claimed_k for e in entries],
            "source": [e.source for e in entries],
        }
    )
    return {
        "exit_code": EXIT_PASS,
        "report": {"ids": catalog_ids()},
        "text": frame.to_string(index=False),
    }


def cmd_catalog_emit(entry_id: str) -> Dict[str, Any]:
    entry = catalog_get(entry_id)
    return {"exit_code": EXIT_PASS, "report": {"id": entry.id}, "text": entry.sdl.rstrip("\n")}


def cmd_catalog_verify_all(
    tolerance: Optional[float] = None,
    threads: int = 1,
    as_json: bool = False,
) -> Dict[str, Any]:
    """Verify every entry; exit 0 only when all of them pass at their claimed k."""
    try:
        results = catalog_verify_all(tolerance=tolerance, threads=threads)
    except Exception as e:
        logger.error(f"Catalog verification aborted: {e}", exc_info=True)
        raise

    data = {"schema_version": SCHEMA_VERSION, "entries": [r.to_dict() for r in results]}
    if as_json:
        text = json.dumps(data, indent=2)
    else:
        frame = pd.DataFrame(
            {
                "id": [r.id for r in results],
                "k": [r.claimed_k for r in results],
                "verdicts": [len(r.report.verdicts) if r.report else 0 for r in results],
                "failing": [len(r.report.failing_subsets) if r.report else 0 for r in results],
                "k_uniform": ["yes" if r.passed else "no" for r in results],
                "reference": [
                    f"{sum(c.matches for c in r.reference_check)}/{len(r.reference_check)}"
                    if r.reference_check else "" for r in results
                ],
                "witness": [
                    f"size {r.witness_size}: {len(r.minimal_witness)} subsets" if r.witness_size else ""
                    for r in results
                ],
                "error": [r.error or "" for r in results],
            }
        )
        sections = [frame.to_string(index=False)]
        for r in results:
            if r.purity_table is not None:
                sections.append(f"{r.id} purity table:\n" + purity_table_frame(r.purity_table).to_string(index=False))
        text = "\n\n".join(sections)
    exit_code = EXIT_PASS if all(r.passed for r in results) else EXIT_FAIL
    return {"exit_code": exit_code, "report": data, "text": text}
