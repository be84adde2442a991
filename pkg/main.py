# main.py
import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import settings
from errors import KUniformError
from settings import validate_settings
from tools import (
    cmd_catalog_emit,
    cmd_catalog_list,
    cmd_catalog_verify_all,
    cmd_invariants,
    cmd_oa_check,
    cmd_oa_to_state,
    cmd_search,
    cmd_state_to_oa,
    cmd_verify,
)

logger = logging.getLogger(__name__)

EXIT_ERROR = 1


@dataclass
class RunConfig:
    """One CLI invocation: verb, inputs and the knobs shared by every verb."""
    command: str
    paths: List[str] = field(default_factory=list)
    output_format: str = "text"
    tolerance: Optional[float] = None
    threads: int = 1
    seed: int = 0
    restarts: int = 16
    exact: Optional[bool] = None

    def validate(self) -> None:
        if self.threads < 1:
            raise ValueError(f"--threads must be at least 1, got {self.threads}")
        if self.tolerance is not None and self.tolerance <= 0 and self.exact is not True:
            raise ValueError("--tolerance must be positive in float mode")
        if self.restarts < 1:
            raise ValueError(f"--restarts must be at least 1, got {self.restarts}")

    @property
    def as_json(self) -> bool:
        return self.output_format == "json"


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_ERROR; argparse's default 2 is the failed-check code here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="write the report as JSON")
    parser.add_argument("--threads", type=int, default=settings.DEFAULT_THREADS)


def _exactness(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="exact", action="store_true", default=None,
                       help="rational arithmetic (default for lattice states)")
    group.add_argument("--float", dest="exact", action="store_false", help="floating-point arithmetic")
    parser.add_argument("--tolerance", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="kuniform", description="k-uniform state verifier and constructor")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    verbs = parser.add_subparsers(dest="verb", required=True)

    verify = verbs.add_parser("verify", help="check k-uniformity of a state file ('-' for stdin)")
    verify.add_argument("path")
    verify.add_argument("--k", type=int, required=True)
    verify.add_argument("--all-sizes", action="store_true", help="also report every smaller subset")
    verify.add_argument("--normalize", action="store_true")
    _exactness(verify)
    _common(verify)

    inv = verbs.add_parser("invariants", help="list the F invariants of a state")
    inv.add_argument("path")
    inv.add_argument("--max-size", type=int, default=3)
    inv.add_argument("--normalize", action="store_true")
    _common(inv)

    oa = verbs.add_parser("oa", help="orthogonal array tools")
    oa_verbs = oa.add_subparsers(dest="oa_verb", required=True)
    check = oa_verbs.add_parser("check")
    check.add_argument("path")
    check.add_argument("--strength", type=int, default=None)
    check.add_argument("--irredundant", type=int, action="append", default=[])
    _common(check)
    to_state = oa_verbs.add_parser("to-state")
    to_state.add_argument("path")
    to_state.add_argument("--signs", default=None, help="file with one line of + and -")

    state = verbs.add_parser("state", help="state tools")
    state_verbs = state.add_subparsers(dest="state_verb", required=True)
    to_oa = state_verbs.add_parser("to-oa")
    to_oa.add_argument("path")
    to_oa.add_argument("--normalize", action="store_true")

    search = verbs.add_parser("search", help="search sign vectors on a support")
    search.add_argument("path")
    search.add_argument("--k", type=int, required=True)
    search.add_argument("--restarts", type=int, default=settings.DEFAULT_RESTARTS)
    search.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    search.add_argument("--budget", type=int, default=settings.EXHAUSTIVE_BIT_BUDGET,
                        help="exhaustive search when rows - 1 <= budget")
    search.add_argument("--output", default=None, help="write the best sign vector here")
    _common(search)

    cat = verbs.add_parser("catalog", help="embedded states")
    cat_verbs = cat.add_subparsers(dest="catalog_verb", required=True)
    cat_verbs.add_parser("list")
    emit = cat_verbs.add_parser("emit")
    emit.add_argument("id")
    verify_all = cat_verbs.add_parser("verify-all")
    verify_all.add_argument("--tolerance", type=float, default=None)
    _common(verify_all)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    sub = getattr(args, f"{args.verb}_verb", None)
    path = getattr(args, "path", None)
    config = RunConfig(
        command=f"{args.verb} {sub}" if sub else args.verb,
        paths=[path] if path else [],
        output_format="json" if getattr(args, "json", False) else "text",
        tolerance=getattr(args, "tolerance", None),
        threads=getattr(args, "threads", 1),
        seed=getattr(args, "seed", settings.DEFAULT_SEED),
        restarts=getattr(args, "restarts", settings.DEFAULT_RESTARTS),
        exact=getattr(args, "exact", None),
    )
    config.validate()
    return config


def _dispatch(args: argparse.Namespace, config: RunConfig) -> Dict:
    if config.command == "verify":
        return cmd_verify(args.path, args.k, exact=config.exact, tolerance=config.tolerance,
                          threads=config.threads, all_sizes=args.all_sizes, normalize=args.normalize,
                          as_json=config.as_json)
    if config.command == "invariants":
        return cmd_invariants(args.path, max_size=args.max_size, threads=config.threads,
                              normalize=args.normalize, as_json=config.as_json)
    if config.command == "oa check":
        return cmd_oa_check(args.path, strength=args.strength, irredundant=args.irredundant,
                            as_json=config.as_json)
    if config.command == "oa to-state":
        return cmd_oa_to_state(args.path, signs_path=args.signs)
    if config.command == "state to-oa":
        return cmd_state_to_oa(args.path, normalize=args.normalize)
    if config.command == "search":
        return cmd_search(args.path, args.k, restarts=config.restarts, seed=config.seed,
                          threads=config.threads, budget=args.budget, output=args.output,
                          as_json=config.as_json)
    if config.command == "catalog list":
        return cmd_catalog_list()
    if config.command == "catalog emit":
        return cmd_catalog_emit(args.id)
    if config.command == "catalog verify-all":
        return cmd_catalog_verify_all(tolerance=config.tolerance, threads=config.threads,
                                      as_json=config.as_json)
    raise ValueError(f"unknown command {config.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Exit codes: 0 = pass (k-uniform, requested OA properties hold, signing
    found), 2 = checked and failed, 1 = error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, usage errors EXIT_ERROR
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    # Reports go to stdout, logs to stderr
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )

    try:
        validate_settings()
        config = _config(args)
        logger.info(f"Running {config.command} on {config.paths or 'built-in data'}")
        result = _dispatch(args, config)
    except (KUniformError, OSError, ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    sys.stdout.write(result["text"].rstrip("\n") + "\n")
    return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
