# tools/__init__.py
from .verify_tool import cmd_verify, cmd_invariants
from .oa_tool import cmd_oa_check, cmd_oa_to_state, cmd_state_to_oa
from .search_tool import cmd_search
from .catalog_tool import cmd_catalog_list, cmd_catalog_emit, cmd_catalog_verify_all

__all__ = [
    "cmd_verify",
    "cmd_invariants",
    "cmd_oa_check",
    "cmd_oa_to_state",
    "cmd_state_to_oa",
    "cmd_search",
    "cmd_catalog_list",
    "cmd_catalog_emit",
    "cmd_catalog_verify_all",
]
