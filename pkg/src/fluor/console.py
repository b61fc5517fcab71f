"""
The rich console the commands print through. Created on first use, or by
the root command with its quiet flag.
"""
from typing import Optional

from rich.console import Console
from rich.theme import Theme

THEME = Theme({
    "success": "green",
    "message": "bold blue",
    "warning": "bold yellow",
    "error": "bold red",
    "material": "turquoise4",
    "basis": "yellow",
    "method": "orange1",
    "path": "bold green",
})

_console: Optional[Console] = None


def init_console(quiet: bool = False) -> Console:
    global _console
    # Numbers in reports keep the theme colours, not rich's highlighting
    _console = Console(theme=THEME, quiet=quiet, highlight=False)
    return _console


def console() -> Console:
    return _console if _console is not None else init_console()
