import logging
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler


def _setup_root_logger() -> None:
    logger = logging.getLogger("avsociety")
    logger.setLevel(logging.DEBUG)
    _handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        show_time=False,
        show_level=False,
        markup=True,
    )
    _handler.setLevel(logging.INFO)
    _formatter = logging.Formatter("%(name)s: %(levelname)s: %(message)s")
    _handler.setFormatter(_formatter)
    logger.addHandler(_handler)


def add_file_handler(path: Path | str, level: int = logging.DEBUG, *, print_path: bool = True) -> logging.Handler:
    logger = logging.getLogger("avsociety")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path)
    handler.setLevel(level)
    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    if print_path:
        logger.info(f"Logging to '{path}'")
    return handler


_setup_root_logger()
logger = logging.getLogger("avsociety")


__all__ = ["logger", "add_file_handler"]
