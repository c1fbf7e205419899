"""Command-line driver.

Every command reads one presentation document. Commands that need a complete
system run completion first, unless the document already carries a ``Rules``
record with status ``completed`` (the machine output of ``complete``).

Exit codes: 0 success, 2 usage error, 3 malformed document or term literal,
4 invalid presentation or term, 5 completion limit exceeded.
"""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path as FilePath
from typing import Literal, ParamSpec, TypeVar

import click

from kanrew import __version__
from kanrew.config import get_settings
from kanrew.core import (
    CompletionResult,
    CompletionStatus,
    EnumerationExceeded,
    KanTables,
    OrderConfig,
    build_automaton,
    complete,
    describe_object,
    initial_rules,
    naturality_check,
    normal_form,
    tabulate,
)
from kanrew.errors import KanrewError
from kanrew.models import KanPresentation, RewriteSystem
from kanrew.schemas import (
    KanDocument,
    from_presentation,
    load_document,
    parse_path,
    parse_term,
    record_from_automaton,
    record_from_system,
    record_from_tables,
    system_from_record,
    to_presentation,
)
from kanrew.schemas.system import SystemStatus

logger = logging.getLogger("kanrew")

EXIT_LIMIT = 5

OutputFormat = Literal["text", "machine"]

P = ParamSpec("P")
R = TypeVar("R")


@dataclass(frozen=True)
class RunConfig:
    """One command invocation with its resolved options."""

    command: str
    input: FilePath
    enum_limit: int | None = None
    max_rules: int | None = None
    max_passes: int | None = None
    arrow_order: tuple[str, ...] | None = None
    element_order: tuple[str, ...] | None = None
    output: OutputFormat = "text"
    verbose: bool = False


# ---------------------------------------------------------------------- option plumbing


def _identifiers(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> tuple[str, ...] | None:
    if value is None:
        return None
    names = tuple(name.strip() for name in value.split(",") if name.strip())
    if not names:
        raise click.BadParameter("expected a comma-separated list of identifiers")
    return names


input_argument = click.argument(
    "input_file", type=click.Path(exists=True, dir_okay=False, path_type=FilePath)
)


def completion_options(command: Callable[P, R]) -> Callable[P, R]:
    """Ordering overrides and completion limits."""
    for option in reversed(
        [
            click.option(
                "--arrow-order",
                callback=_identifiers,
                help="Comma-separated Delta-arrows, smallest first (default: declaration order).",
            ),
            click.option(
                "--element-order",
                callback=_identifiers,
                help="Comma-separated elements, smallest first (default: declaration order).",
            ),
            click.option("--max-rules", type=click.IntRange(min=1), help="Rule-count limit."),
            click.option("--max-passes", type=click.IntRange(min=1), help="Pass limit."),
            click.option("--verbose", is_flag=True, help="Report completion passes on stderr."),
        ]
    ):
        command = option(command)
    return command


format_option = click.option(
    "--format",
    "output",
    type=click.Choice(["text", "machine"]),
    default="text",
    show_default=True,
    help="Human-readable text or a machine-readable document.",
)

enum_limit_option = click.option(
    "--enum-limit",
    type=click.IntRange(min=1),
    help="Stop tabulating after this many normal forms (default 1000).",
)


def handle_errors(command: Callable[P, R]) -> Callable[P, R]:
    """Report kanrew errors on stderr and exit with their code."""

    @functools.wraps(command)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return command(*args, **kwargs)
        except KanrewError as e:
            click.echo(f"error: {e.detail}", err=True)
            raise SystemExit(e.exit_code)

    return wrapper


# ---------------------------------------------------------------------- shared steps


def _load(cfg: RunConfig) -> tuple[KanPresentation, KanDocument]:
    document = load_document(cfg.input.read_bytes())
    return to_presentation(document), document


def _order(presentation: KanPresentation, cfg: RunConfig) -> OrderConfig:
    return OrderConfig.for_presentation(presentation, cfg.arrow_order, cfg.element_order)


def _report_pass(passes: int, rules: int) -> None:
    click.echo(f"pass {passes}: {rules} rules", err=True)


def _complete(
    presentation: KanPresentation, document: KanDocument, cfg: RunConfig
) -> CompletionResult:
    record = document.rules
    if record is not None and record.status == "completed":
        logger.info("using the completed system stored in the document")
        return CompletionResult(
            CompletionStatus.COMPLETED,
            system_from_record(record, presentation),
            record.passes or 0,
            record.added or 0,
        )
    order = _order(presentation, cfg)
    return complete(
        initial_rules(presentation, order),
        order,
        max_rules=cfg.max_rules,
        max_passes=cfg.max_passes,
        progress=_report_pass if cfg.verbose else None,
    )


def _require_complete(result: CompletionResult) -> RewriteSystem:
    if not result.completed:
        click.echo(
            f"error: completion limit exceeded after {result.passes} passes "
            f"with {len(result.system)} rules",
            err=True,
        )
        raise SystemExit(EXIT_LIMIT)
    return result.system


def _with_rules(
    presentation: KanPresentation,
    system: RewriteSystem,
    status: SystemStatus,
    result: CompletionResult | None = None,
) -> KanDocument:
    document = from_presentation(presentation)
    document.rules = record_from_system(
        system,
        status,
        passes=result.passes if result else None,
        added=result.added if result else None,
    )
    return document


def _echo_rules(system: RewriteSystem) -> None:
    for rule in system:
        click.echo(str(rule))


def _echo_tables(presentation: KanPresentation, tables: KanTables) -> None:
    for obj, terms in tables.elements.items():
        click.echo(f"K{obj} = {{{', '.join(str(t) for t in terms)}}}")
    for arrow in presentation.delta.arrows:
        click.echo(f"{arrow.name}:")
        for t, u in tables.actions[arrow.name].items():
            click.echo(f"  {t} -> {u}")
    click.echo("epsilon:")
    for x, t in tables.epsilon.items():
        click.echo(f"  {x} -> {t}")


# ---------------------------------------------------------------------- commands


@click.group()
@click.version_option(__version__, prog_name="kanrew")
@click.option("--debug", is_flag=True, help="Log every rule and pass on stderr.")
def main(debug: bool) -> None:
    """Complete rewrite systems for Kan extensions and tabulate the result."""
    settings = get_settings()
    if debug or settings.DEBUG:
        level = logging.DEBUG
    else:
        level = logging.getLevelName(settings.LOG_LEVEL.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@main.command()
@input_argument
@format_option
@handle_errors
def validate(input_file: FilePath, output: OutputFormat) -> None:
    """Check a presentation document and report the first violation."""
    cfg = RunConfig("validate", input_file, output=output)
    presentation, _ = _load(cfg)
    if cfg.output == "machine":
        click.echo(from_presentation(presentation).dump(), nl=False)
        return
    click.echo(
        f"ok: {len(presentation.elements)} elements, "
        f"{len(presentation.delta.arrows)} Delta-arrows, "
        f"{len(presentation.relations)} relations"
    )


@main.command()
@input_argument
@click.option("--arrow-order", callback=_identifiers, help="Comma-separated Delta-arrows.")
@click.option("--element-order", callback=_identifiers, help="Comma-separated elements.")
@format_option
@handle_errors
def initial(
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    output: OutputFormat,
) -> None:
    """Emit the initial rules: one per generator action, one per relation."""
    cfg = RunConfig(
        "initial", input_file, arrow_order=arrow_order, element_order=element_order, output=output
    )
    presentation, _ = _load(cfg)
    system = initial_rules(presentation, _order(presentation, cfg))
    if cfg.output == "machine":
        click.echo(_with_rules(presentation, system, "initial").dump(), nl=False)
    else:
        _echo_rules(system)


@main.command(name="complete")
@input_argument
@completion_options
@format_option
@handle_errors
def complete_command(
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    max_rules: int | None,
    max_passes: int | None,
    verbose: bool,
    output: OutputFormat,
) -> None:
    """Complete the initial rules; a partial system is emitted with exit code 5."""
    cfg = RunConfig(
        "complete",
        input_file,
        max_rules=max_rules,
        max_passes=max_passes,
        arrow_order=arrow_order,
        element_order=element_order,
        output=output,
        verbose=verbose,
    )
    presentation, document = _load(cfg)
    result = _complete(presentation, document, cfg)
    status: SystemStatus = "completed" if result.completed else "limit-exceeded"
    if cfg.output == "machine":
        click.echo(_with_rules(presentation, result.system, status, result).dump(), nl=False)
    else:
        click.echo(f"status: {status} (passes: {result.passes}, added: {result.added})")
        _echo_rules(result.system)
    if not result.completed:
        raise SystemExit(EXIT_LIMIT)


@main.command()
@input_argument
@completion_options
@enum_limit_option
@format_option
@handle_errors
def tables(
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    max_rules: int | None,
    max_passes: int | None,
    verbose: bool,
    enum_limit: int | None,
    output: OutputFormat,
) -> None:
    """Complete, then tabulate the sets KB, the arrow actions and epsilon.

    When more normal forms turn up than the enumeration limit allows, the
    complete rewrite system is emitted instead.
    """
    cfg = RunConfig(
        "tables",
        input_file,
        enum_limit=enum_limit,
        max_rules=max_rules,
        max_passes=max_passes,
        arrow_order=arrow_order,
        element_order=element_order,
        output=output,
        verbose=verbose,
    )
    presentation, document = _load(cfg)
    result = _complete(presentation, document, cfg)
    system = _require_complete(result)
    outcome = tabulate(presentation, system, cfg.enum_limit)
    out = _with_rules(presentation, system, "completed", result)

    if isinstance(outcome, EnumerationExceeded):
        notice = "enumeration limit exceeded: complete rewrite system is:"
        if cfg.output == "machine":
            click.echo(notice, err=True)
            click.echo(out.dump(), nl=False)
        else:
            click.echo(notice)
            _echo_rules(outcome.system)
        return

    if not naturality_check(presentation, system, outcome):
        logger.warning("epsilon is not natural on the tabulated answer")
    if cfg.output == "machine":
        out.tables = record_from_tables(outcome)
        click.echo(out.dump(), nl=False)
    else:
        _echo_tables(presentation, outcome)


@main.command()
@input_argument
@completion_options
@format_option
@handle_errors
def regex(
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    max_rules: int | None,
    max_passes: int | None,
    verbose: bool,
    output: OutputFormat,
) -> None:
    """Complete, then describe each KB by a regular expression."""
    cfg = RunConfig(
        "regex",
        input_file,
        max_rules=max_rules,
        max_passes=max_passes,
        arrow_order=arrow_order,
        element_order=element_order,
        output=output,
        verbose=verbose,
    )
    presentation, document = _load(cfg)
    result = _complete(presentation, document, cfg)
    system = _require_complete(result)
    aut = build_automaton(presentation, system)
    if cfg.output == "machine":
        out = _with_rules(presentation, system, "completed", result)
        out.language = record_from_automaton(aut)
        click.echo(out.dump(), nl=False)
        return
    for obj in presentation.delta.objects:
        click.echo(f"K{obj} = {describe_object(aut, obj)}")


@main.command()
@click.argument("term")
@input_argument
@completion_options
@handle_errors
def reduce(
    term: str,
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    max_rules: int | None,
    max_passes: int | None,
    verbose: bool,
) -> None:
    """Print the normal form of TERM, written x|b1.b2 (x|id for the empty path)."""
    cfg = RunConfig(
        "reduce",
        input_file,
        max_rules=max_rules,
        max_passes=max_passes,
        arrow_order=arrow_order,
        element_order=element_order,
        verbose=verbose,
    )
    presentation, document = _load(cfg)
    t = parse_term(term, presentation)
    system = _require_complete(_complete(presentation, document, cfg))
    click.echo(str(normal_form(t, system)))


@main.command()
@click.argument("term")
@click.argument("path")
@input_argument
@completion_options
@handle_errors
def act(
    term: str,
    path: str,
    input_file: FilePath,
    arrow_order: tuple[str, ...] | None,
    element_order: tuple[str, ...] | None,
    max_rules: int | None,
    max_passes: int | None,
    verbose: bool,
) -> None:
    """Act on TERM by PATH (b1.b2) and print the normal form of the result."""
    cfg = RunConfig(
        "act",
        input_file,
        max_rules=max_rules,
        max_passes=max_passes,
        arrow_order=arrow_order,
        element_order=element_order,
        verbose=verbose,
    )
    presentation, document = _load(cfg)
    t = parse_term(term, presentation)
    q = parse_path(path, presentation.delta)
    moved = t.act(q)
    system = _require_complete(_complete(presentation, document, cfg))
    click.echo(str(normal_form(moved, system)))


def run() -> None:
    """Console entry point."""
    main(prog_name="kanrew")


if __name__ == "__main__":
    run()
