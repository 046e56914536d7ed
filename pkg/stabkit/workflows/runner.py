"""Run one command, map failures to exit codes and persist the report."""
import logging
import time
from typing import Optional, Tuple

from stabkit.errors import BudgetExceededError, InputError, MathCheckError
from stabkit.render.svg import write_svg
from stabkit.utils.codec import jsonable
from stabkit.utils.config_loader import get_config
from stabkit.utils.file_utils import FileUtils
from stabkit.workflows.commands import COMMANDS, CommandOutcome
from stabkit.workflows.models import ErrorInfo, Report, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2


def _error(exc: BaseException) -> ErrorInfo:
    witness = jsonable(getattr(exc, "witness", None))
    return ErrorInfo(type=type(exc).__name__, message=str(exc), witness=witness)


def run(config: RunConfig) -> Tuple[int, Report]:
    """Execute ``config.command``.

    Returns:
        Exit code (0 all checks passed, 1 a mathematical check failed, 2 bad input or
        budget) and the report
    """
    logger.info(f"Running '{config.command}'")
    start = time.perf_counter()
    outcome = None
    try:
        outcome = COMMANDS[config.command](config)
        code = EXIT_OK if outcome.passed else EXIT_CHECK_FAILED
        error = outcome.failure
    except MathCheckError as e:
        logger.error(f"Check failed: {e}")
        code, error = EXIT_CHECK_FAILED, _error(e)
    except (InputError, BudgetExceededError) as e:
        logger.error(f"Input error: {e}")
        code, error = EXIT_INPUT, _error(e)
    except Exception as e:
        logger.exception(f"Command '{config.command}' failed")
        code, error = EXIT_INPUT, _error(e)
    report = Report(
        command=config.command,
        inputs={k: str(v) for k, v in sorted(config.inputs.items())},
        passed=code == EXIT_OK,
        exit_code=code,
        result=jsonable(outcome.result) if outcome is not None else {},
        error=error,
        timing_seconds=round(time.perf_counter() - start, 6),
    )
    try:
        persist(config, report, outcome)
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_INPUT, report
    return code, report


def persist(config: RunConfig, report: Report, outcome: Optional[CommandOutcome] = None) -> None:
    if config.json_out is not None:
        indent = int(get_config().get("output.indent", 2))
        FileUtils.safe_write(config.json_out, report.to_json(indent=indent))
        logger.info(f"Report written to {config.json_out}")
    if outcome is None:
        return
    if config.csv_out is not None and outcome.table is not None:
        header, rows = outcome.table
        count = FileUtils.write_csv(config.csv_out, header, rows)
        logger.info(f"{count} rows written to {config.csv_out}")
    if config.svg_out is not None and outcome.svg is not None:
        write_svg(config.svg_out, outcome.svg)
