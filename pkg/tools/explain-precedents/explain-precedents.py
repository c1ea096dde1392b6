#!/usr/bin/env python3
"""
explain-precedents: Decide fact situations against a (possibly inconsistent)
case base and explain the decision with dispute trees.

Part of the PrecedentCLI suite – command-line tools for precedent-based legal reasoning.

Example usage:
    explain-precedents validate cases.json
    explain-precedents inc cases.json
    explain-precedents diagram cases.json --facts short,house,job | dot -Tsvg
    explain-precedents decide cases.json --facts short,house,job --annotate
    explain-precedents framework cases.json --facts short,house,job --dot
    explain-precedents explain cases.json --facts short,house,job --side plaintiff
    explain-precedents oracle cases.json --facts short,house,job --trials 500
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

# Version
__version__ = "0.1.0"

# Ensure shared utilities are available
sys.path.insert(0, str(Path(__file__).resolve().parents[2]))
try:
    from shared.path_utils import require_shared_utilities

    require_shared_utilities()
except ImportError:
    # If even path_utils can't be imported, provide a fallback error
    print("Error: PrecedentCLI shared utilities not found.", file=sys.stderr)
    print("Run the tool from a PrecedentCLI checkout.", file=sys.stderr)
    sys.exit(3)

from precedent.aa import Semantics, enumerate_extensions, grounded_rounds
from precedent.core import (
    SIDES,
    CaseBase,
    FactSituation,
    Side,
    format_names,
    is_consistent,
    sorted_inconsistencies,
)
from precedent.dsa import DSAFramework, build_framework
from precedent.errors import CapExceededError
from precedent.explain import explain_decision, rejected_trees
from precedent.loader import load_case_base
from precedent.oracle import run_oracle_checks
from precedent.reason import decide, new_inconsistencies
from precedent.render import (
    ExplanationSection,
    render_decision,
    render_diagram,
    render_explanations,
    render_framework,
    render_inconsistencies,
    render_oracle_report,
    render_summary,
)

# Import shared utilities
from shared.arg_parser import ArgumentParser, UsageError, comma_list, positive_int
from shared.config_loader import ConfigLoader
from shared.error_handler import (
    EXIT_OK,
    EXIT_ORACLE_MISMATCH,
    ErrorHandler,
    exit_code_for,
)
from shared.output import Output, setup_tool_output

TOOL_NAME = "explain-precedents"
TOOL_DIR = Path(__file__).resolve().parent

OUTPUT_MODES = ("text", "dot", "structured")
DOT_COMMANDS = ("diagram", "framework", "explain")
FACT_COMMANDS = ("decide", "framework", "explain", "oracle")


# --- Config loading ---
def load_config(
    config_path=None, cmd_args: Optional[Dict[str, Any]] = None, output=None
) -> Dict[str, Any]:
    """
    Load TOML config using the shared ConfigLoader utility.

    Args:
        config_path (str or Path, optional): Extra config file, ranked above the
            regular config files and below environment variables
        cmd_args (dict, optional): Dotted overrides taken from flags
        output (Output, optional): Output utility for diagnostics

    Returns:
        dict: Merged configuration with caps, oracle, output and logging sections

    Raises:
        FileNotFoundError: if ``config_path`` is given and does not exist
    """
    config_loader = ConfigLoader(
        TOOL_NAME, output.logger if output else None, tool_dir=TOOL_DIR
    )
    if not (TOOL_DIR / "config" / "defaults.toml").exists() and output:
        output.warning(f"Default config file not found at {TOOL_DIR / 'config'}")

    config = config_loader.load_config(config_path, cmd_args)
    if output:
        output.debug(f"Configuration source: {config_loader.config_source}")
    return config


def flag_overrides(args: Any) -> Dict[str, Any]:
    """Config keys set by command-line flags; unset flags map to None."""
    overrides = {
        "caps.universe": args.cap,
        "caps.knowledge": args.cap,
        "oracle.trials": getattr(args, "trials", None),
        "oracle.seed": getattr(args, "seed", None),
        "output.annotate": True if args.annotate else None,
        "output.all_defenses": True if getattr(args, "all_defenses", False) else None,
        "logging.log_level": "DEBUG" if args.verbose else None,
        "output.format": None,
    }
    if args.dot:
        overrides["output.format"] = "dot"
    elif args.structured:
        overrides["output.format"] = "structured"
    return overrides


@dataclass(frozen=True)
class Caps:
    """Enumeration limits; every cap must be positive."""

    universe: int = 16
    knowledge: int = 16
    oracle_universe: int = 8
    extension_nodes: int = 20

    def __post_init__(self) -> None:
        for name in ("universe", "knowledge", "oracle_universe", "extension_nodes"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"cap {name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class RunConfiguration:
    """Everything a command needs, resolved from config files and flags."""

    command: str
    casebase_path: Path
    facts: Optional[List[str]]
    side: Optional[Side]
    caps: Caps
    output_mode: str = "text"
    annotate: bool = False
    all_defenses: bool = False
    trials: int = 200
    seed: int = 0
    verbose: bool = False

    @property
    def structured(self) -> bool:
        return self.output_mode == "structured"

    @property
    def dot(self) -> bool:
        return self.output_mode == "dot"


def _output_mode(args: Any, config: Dict[str, Any]) -> str:
    if args.dot and args.command not in DOT_COMMANDS:
        raise UsageError(f"--dot is only available for {', '.join(DOT_COMMANDS)}")
    configured = config.get("output", {}).get("format", "text")
    if configured not in OUTPUT_MODES:
        raise ValueError(
            f"output.format must be one of {', '.join(OUTPUT_MODES)}, got {configured!r}"
        )
    if configured == "dot" and args.command not in DOT_COMMANDS:
        return "text"
    return configured


def build_run_configuration(args: Any, config: Dict[str, Any]) -> RunConfiguration:
    """
    Resolve a run from the parsed arguments and the merged configuration.

    Flags reach ``config`` through ``flag_overrides``, so every setting is read
    from the configuration here.

    Raises:
        ValueError: for non-positive caps or an unknown output format
        UsageError: for flags the command does not support
    """
    cap_config = config.get("caps", {})
    caps = Caps(
        **{
            name: cap_config[name]
            for name in ("universe", "knowledge", "oracle_universe", "extension_nodes")
            if name in cap_config
        }
    )

    output_config = config.get("output", {})
    oracle_config = config.get("oracle", {})
    side = getattr(args, "side", None)
    return RunConfiguration(
        command=args.command,
        casebase_path=Path(args.casebase),
        facts=getattr(args, "facts", None),
        side=Side(side) if side else None,
        caps=caps,
        output_mode=_output_mode(args, config),
        annotate=bool(output_config.get("annotate", False)),
        all_defenses=bool(output_config.get("all_defenses", False)),
        trials=int(oracle_config.get("trials", 200)),
        seed=int(oracle_config.get("seed", 0)),
        verbose=args.verbose,
    )


# --- Commands ---
def _load(run: RunConfiguration, output: Output) -> CaseBase:
    case_base = load_case_base(run.casebase_path)
    output.debug(
        f"Loaded {len(case_base)} cases over {len(case_base.universe)} factors "
        f"from {run.casebase_path}"
    )
    return case_base


def _situation(case_base: CaseBase, run: RunConfiguration) -> FactSituation:
    """The queried situation; unknown names raise UnknownFactorError."""
    return case_base.situation(run.facts or ())


def _check_universe(case_base: CaseBase, caps: Caps) -> None:
    size = len(case_base.universe)
    if size > caps.universe:
        raise CapExceededError("universe", caps.universe, size)


def cmd_validate(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    try:
        consistent: Optional[bool] = is_consistent(case_base, run.caps.universe)
    except CapExceededError as e:
        output.warning(str(e))
        consistent = None
    output.emit(render_summary(case_base, consistent, run.structured))
    return EXIT_OK


def cmd_inc(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    pairs = sorted_inconsistencies(case_base, run.caps.universe)
    output.debug(f"{len(pairs)} inconsistencies")
    output.emit(render_inconsistencies(pairs, run.structured))
    return EXIT_OK


def cmd_diagram(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    _check_universe(case_base, run.caps)
    facts = _situation(case_base, run) if run.facts is not None else None
    output.emit(render_diagram(case_base, facts, run.structured))
    return EXIT_OK


def cmd_decide(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    facts = _situation(case_base, run)
    outcome = decide(case_base, facts)
    new_pairs = None
    if run.annotate:
        new_pairs = {
            side: sorted(
                new_inconsistencies(case_base, facts, side, run.caps.universe),
                key=lambda p: p.sort_key,
            )
            for side in SIDES
        }
    output.emit(render_decision(outcome, new_pairs, run.structured))
    return EXIT_OK


def _log_semantics(
    framework: DSAFramework, run: RunConfiguration, output: Output
) -> None:
    """Verbose-only: fixpoint rounds and, for small frameworks, extension counts."""
    if not run.verbose:
        return
    for index, members in enumerate(grounded_rounds(framework.as_aa)):
        output.debug(
            f"grounded round {index}: {', '.join(a.label for a in sorted(members)) or '-'}"
        )
    if len(framework) > run.caps.extension_nodes:
        output.debug(
            f"extension enumeration skipped: {len(framework)} arguments "
            f"> extension_nodes cap {run.caps.extension_nodes}"
        )
        return
    rows = []
    for semantics in (Semantics.COMPLETE, Semantics.PREFERRED, Semantics.STABLE):
        found = enumerate_extensions(framework.as_aa, semantics, run.caps.extension_nodes)
        rows.append([semantics.value, len(found)])
    output.print_table(["semantics", "extensions"], rows)


def cmd_framework(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    framework = build_framework(_situation(case_base, run), case_base, run.caps.knowledge)
    _log_semantics(framework, run, output)
    output.emit(render_framework(framework, run.dot, run.structured, run.annotate))
    return EXIT_OK


def cmd_explain(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    explained = explain_decision(
        _situation(case_base, run), case_base, run.caps.knowledge, run.all_defenses
    )
    framework = explained.framework
    _log_semantics(framework, run, output)

    if run.side is not None:
        sides = [run.side]
    elif explained.outcome.side is not None:
        sides = [explained.outcome.side]
    else:
        sides = list(SIDES)
    sections = [
        ExplanationSection(
            side,
            explained.for_side(side),
            rejected_trees(framework, side) if run.annotate else (),
        )
        for side in sides
    ]
    output.emit(
        render_explanations(
            sections, explained.outcome, run.dot, run.structured, run.annotate
        )
    )
    return EXIT_OK


def cmd_oracle(run: RunConfiguration, output: Output) -> int:
    case_base = _load(run, output)
    facts = _situation(case_base, run)
    report = run_oracle_checks(
        case_base, facts, run.trials, run.seed, run.caps.oracle_universe
    )
    output.emit(render_oracle_report(report, run.structured))
    if report.ok:
        return EXIT_OK
    output.error(
        f"Oracle mismatch: {len(report.mismatches)} failing checks "
        f"(first: {report.mismatches[0].check}) for {format_names(facts.members)}"
    )
    return EXIT_ORACLE_MISMATCH


COMMANDS: Dict[str, Callable[[RunConfiguration, Output], int]] = {
    "validate": cmd_validate,
    "inc": cmd_inc,
    "diagram": cmd_diagram,
    "decide": cmd_decide,
    "framework": cmd_framework,
    "explain": cmd_explain,
    "oracle": cmd_oracle,
}

COMMAND_HELP = {
    "validate": "Validate a case base and summarize it",
    "inc": "List the inconsistencies of a case base",
    "diagram": "Emit the priority diagram as DOT (optionally overlaying a situation)",
    "decide": "Decide a fact situation: obligated side or both permitted",
    "framework": "Show the DSA-framework of a fact situation",
    "explain": "Show explanation dispute trees for a fact situation",
    "oracle": "Cross-check the fast procedures against brute-force oracles",
}


def build_parser() -> ArgumentParser:
    arg_parser = ArgumentParser(
        tool_name=TOOL_NAME,
        description="Decide and explain fact situations against a case base.",
        epilog="Example: explain-precedents explain cases.json --facts short,house,job",
        version=__version__,
    )
    arg_parser.add_common_arguments()
    arg_parser.add_output_arguments()
    arg_parser.common.add_argument(
        "--cap",
        type=positive_int,
        metavar="N",
        help="Override the universe and knowledge enumeration caps",
    )

    for name in COMMANDS:
        arg_parser.add_subcommand(name, COMMAND_HELP[name])
        arg_parser.add_positional_argument(
            "casebase", "Case-base JSON file", command=name
        )

    for name in FACT_COMMANDS + ("diagram",):
        arg_parser.subcommands[name].add_argument(
            "--facts",
            type=comma_list,
            required=name in FACT_COMMANDS,
            metavar="a,b,c",
            help="Comma-separated factor names of the fact situation",
        )

    arg_parser.add_option(
        "side",
        "Explain for this side only (default: the obligated side, else both)",
        choices=[side.value for side in Side],
        command="explain",
    )
    arg_parser.add_flag(
        "all-defenses",
        "Enumerate every admissible choice of proponent answers",
        command="explain",
    )
    arg_parser.add_option(
        "trials",
        "Random sub-instances to check (default: [oracle] trials)",
        type=positive_int,
        command="oracle",
        metavar="N",
    )
    arg_parser.add_option(
        "seed",
        "Seed for the random sub-instances (default: [oracle] seed)",
        type=int,
        command="oracle",
        metavar="N",
    )
    return arg_parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI entry point for explain-precedents. Parses arguments, loads config and
    dispatches to the command. Returns the process exit status.
    """
    arg_parser = build_parser()
    try:
        args = arg_parser.parse_args(argv)
    except UsageError as e:
        Output(TOOL_NAME, use_rich=False).error(str(e))
        return exit_code_for("usage:invalid_arguments")

    # Initialize output handling using shared Output
    output = setup_tool_output(
        tool_name=TOOL_NAME,
        log_level="DEBUG" if args.verbose else "INFO",
        use_rich=not args.no_color,
    )
    error_handler = ErrorHandler(output)

    try:
        config = load_config(args.config, flag_overrides(args), output)
    except OSError as e:
        _, code = error_handler.handle_config_error(args.config, e)
        return exit_code_for(code)

    logging_config = config.get("logging", {})
    output = setup_tool_output(
        tool_name=TOOL_NAME,
        log_level=str(logging_config.get("log_level", "INFO")),
        use_rich=not args.no_color,
        log_to_file=bool(logging_config.get("log_to_file", False)),
        output_dir=logging_config.get("output_dir", ""),
    )
    error_handler = ErrorHandler(output)

    try:
        run = build_run_configuration(args, config)
    except (ValueError, UsageError) as e:
        output.error(str(e))
        return exit_code_for("usage:invalid_configuration")

    output.debug(f"Running {run.command} on {run.casebase_path}")
    try:
        return COMMANDS[run.command](run, output)
    except Exception as e:
        _, code = error_handler.handle_exception(run.casebase_path, e)
        return exit_code_for(code)


if __name__ == "__main__":
    sys.exit(main())
