"""
This file provides:

- Path settings for global config file & relative directories
- Version numbering
- Protocols for the pluggable parts of av-society.
  By the magic of protocols & duck typing, you can pretty much ignore them,
  unless you want the static type checking.
"""

__version__ = "0.3.0"

import os
from pathlib import Path
from typing import Any, Protocol

import dotenv
from platformdirs import user_config_dir
from rich.console import Console

from avsociety.utils.log import logger

package_dir = Path(__file__).resolve().parent

global_config_dir = Path(os.getenv("AVSOC_GLOBAL_CONFIG_DIR") or user_config_dir("av-society"))
global_config_dir.mkdir(parents=True, exist_ok=True)
global_config_file = Path(global_config_dir) / ".env"

if not os.getenv("AVSOC_SILENT_STARTUP"):
    Console(stderr=True).print(
        f"🚗 This is [bold green]av-society[/bold green] version [bold green]{__version__}[/bold green].\n"
        f"Loading global config from [bold green]'{global_config_file}'[/bold green]"
    )
dotenv.load_dotenv(dotenv_path=global_config_file)


# === Protocols ===
# You can ignore them unless you want static type checking.


class Policy(Protocol):
    """Protocol for decision policies (one per run mode)."""

    name: str

    def decide(self, agent: Any, belief: Any, rng: Any) -> Any: ...


__all__ = [
    "Policy",
    "package_dir",
    "__version__",
    "global_config_file",
    "global_config_dir",
    "logger",
]
