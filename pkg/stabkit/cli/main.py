"""Command-line interface for stabkit."""
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

# Try to import optional dependencies
try:
    import click
    from rich.console import Console
    from rich.logging import RichHandler
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False
    click = None

from stabkit import __version__
from stabkit.workflows.models import RunConfig
from stabkit.workflows.runner import EXIT_INPUT, run

console = Console(stderr=True) if RICH_AVAILABLE else None

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure the root logger once; --verbose wins over --quiet."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    if RICH_AVAILABLE:
        handler = RichHandler(rich_tracebacks=True, console=console)
        logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)
    else:
        logging.basicConfig(
            level=level,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            force=True,
        )


def print_message(message: str, style: str = "") -> None:
    """Print message with optional rich styling."""
    if RICH_AVAILABLE and console:
        console.print(message, style=style)
    else:
        print(message, file=sys.stderr)


def execute(command: str, inputs: Dict[str, Optional[str]], **options: Any) -> int:
    """Build the run configuration, run the command and print the verdict."""
    try:
        config = RunConfig.from_settings(command, inputs, **options)
    except ValidationError as e:
        for err in e.errors():
            print_message(f"Invalid configuration: {err['msg']}", style="red")
        return EXIT_INPUT
    code, report = run(config)
    if report.passed:
        print_message(f"✓ {command}: all checks passed", style="green")
    else:
        message = report.error.message if report.error else "check failed"
        print_message(f"✗ {command}: {message}", style="red")
        if report.error is not None and report.error.witness is not None:
            print_message(f"  witness: {report.error.witness}", style="red")
    if config.json_out is None:
        sys.stdout.write(report.to_json())
    return code


COMMAND_INPUTS = {
    "validate": [("sigma", "Pre-stability document"), ("q", "Quadratic form document")],
    "hn": [("input", "Representation document"), ("charge", "Charge document (Z, optional Q)")],
    "walls": [("object", "Representation document"), ("path", "Path document"),
              ("q", "Quadratic form document")],
    "deform": [("sigma", "Pre-stability document"), ("q", "Quadratic form document"),
               ("path", "Path document")],
    "dist": [("sigma1", "First pre-stability"), ("sigma2", "Second pre-stability"),
             ("sample", "Sample of objects")],
    "qext": [("q", "Form document (Q, optionally Z)"), ("z", "Charge document")],
    "cy2": [("lattice", "Mukai lattice document"), ("z", "Charge document"),
            ("path", "Optional path to certify")],
}

# document keys the workflows use for CLI option names that differ
INPUT_KEYS = {"input": "object"}

JSON_ALIASES = {"deform": "--report", "qext": "--out", "cy2": "--certify"}


def _inputs(command: str, values: Dict[str, Any]) -> Dict[str, Optional[str]]:
    return {INPUT_KEYS.get(name, name): values.get(name) for name, _ in COMMAND_INPUTS[command]}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Entry point without click."""
    import argparse

    parser = argparse.ArgumentParser(
        prog="stabkit", description="Exact stability-condition computations"
    )
    parser.add_argument("--version", action="store_true", help="Show version information")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command")
    for command, inputs in COMMAND_INPUTS.items():
        p = sub.add_parser(command)
        for name, help_text in inputs:
            p.add_argument(f"--{name}", help=help_text)
        p.add_argument("--budget", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--json", *(a for a in [JSON_ALIASES.get(command)] if a), dest="json_out")
        p.add_argument("--csv", dest="csv_out")
        p.add_argument("--svg", dest="svg_out")
        p.add_argument("--truncated", action="store_true")
    args = parser.parse_args(argv)
    if args.version:
        print(f"stabkit v{__version__}")
        return 0
    if not args.command:
        parser.print_help()
        return 0
    setup_logging(args.verbose, args.quiet)
    values = vars(args)
    return execute(
        args.command,
        _inputs(args.command, values),
        budget=args.budget,
        tolerance=args.tol,
        steps=args.steps,
        json_out=args.json_out,
        csv_out=args.csv_out,
        svg_out=args.svg_out,
        truncated=args.truncated or None,
    )


if click and RICH_AVAILABLE:

    @click.group()
    @click.version_option(version=__version__, prog_name="stabkit")
    @click.option("--verbose", "-v", is_flag=True, help="Debug logging")
    @click.option("--quiet", "-q", is_flag=True, help="Warnings and errors only")
    def cli(verbose: bool, quiet: bool):
        """stabkit - exact HN polygons, walls, path lifting and support certificates."""
        setup_logging(verbose, quiet)

    def _command(command: str, help_text: str):
        """Register a subcommand with its input options and the shared knobs."""

        def callback(**values):
            code = execute(
                command,
                _inputs(command, values),
                budget=values.get("budget"),
                tolerance=values.get("tol"),
                steps=values.get("steps"),
                json_out=values.get("json_out"),
                csv_out=values.get("csv_out"),
                svg_out=values.get("svg_out"),
                truncated=values.get("truncated") or None,
            )
            sys.exit(code)

        callback.__doc__ = help_text
        params = [
            click.Option([f"--{name}"], type=click.Path(), help=text)
            for name, text in COMMAND_INPUTS[command]
        ]
        json_decls = ["--json"] + ([JSON_ALIASES[command]] if command in JSON_ALIASES else [])
        params += [
            click.Option(["--budget"], type=int, help="Subobject enumeration budget"),
            click.Option(["--tol"], type=float, help="Float tolerance"),
            click.Option(["--steps"], type=int, help="Grid steps per leg"),
            click.Option(json_decls + ["json_out"], type=click.Path(), help="JSON report"),
            click.Option(["--csv", "csv_out"], type=click.Path(), help="CSV table"),
            click.Option(["--svg", "svg_out"], type=click.Path(), help="SVG picture"),
            click.Option(["--truncated"], is_flag=True, help="Truncated polygon overlay / classes"),
        ]
        cli.add_command(click.Command(command, callback=callback, params=params, help=help_text))

    _command("validate", "Validate a stability function (and kernel data of Q).")
    _command("hn", "HN polygon, filtration and mass of an object.")
    _command("walls", "Walls of an object along a path of charges.")
    _command("deform", "Lift a path of charges and check the support property.")
    _command("dist", "Sample lower bound for the distance between two slicings.")
    _command("qext", "Extend (Q, Z) to a nondegenerate form of signature (2, rk − 2).")
    _command("cy2", "P₀ membership and support certificate for a Mukai lattice.")

    @cli.command()
    def version():
        """Show version information."""
        print_message(f"[bold green]stabkit v{__version__}[/bold green]")

    def main():
        """Main entry point with click."""
        cli()
else:

    def main():
        """Main entry point without click."""
        sys.exit(cli_main())

    cli = main


if __name__ == "__main__":
    main()
