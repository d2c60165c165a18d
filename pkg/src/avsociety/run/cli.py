#!/usr/bin/env python3

import sys
from importlib import import_module

from rich.console import Console

subcommands = [
    ("avsociety.run.validate_fuzzy", ["validate-fuzzy", "validate"], "Check the fuzzy undesirability system"),
    ("avsociety.run.simulate", ["run", "sim"], "Run a single simulation"),
    ("avsociety.run.sweep", ["sweep"], "Run experiment sets (a1..a5, b1..b5, all)"),
    ("avsociety.run.report", ["report"], "Summaries, comparisons and the matrix from raw results"),
]


def get_docstring() -> str:
    lines = [
        "This is the [yellow]central entry point[/yellow] of av-society.",
        "",
        "Available sub-commands:",
        "",
    ]
    for _, aliases, description in subcommands:
        alias_text = " or ".join(f"[bold green]{alias}[/bold green]" for alias in aliases)
        lines.append(f"  {alias_text}: {description}")
    return "\n".join(lines)


def main(args: list[str] | None = None):
    args = sys.argv[1:] if args is None else args

    if len(args) == 0 or len(args) == 1 and args[0] in ["-h", "--help"]:
        return Console().print(get_docstring())

    for module_path, aliases, _ in subcommands:
        if args[0] in aliases:
            return import_module(module_path).app(args[1:], prog_name=f"av-society {aliases[0]}")

    Console(stderr=True).print(f"[bold red]Unknown sub-command {args[0]!r}[/bold red]")
    Console(stderr=True).print(get_docstring())
    sys.exit(2)


if __name__ == "__main__":
    main()
