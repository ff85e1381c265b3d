"""
Logging configuration for the tame-representation toolkit.
"""
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

# ANSI color codes
COLORS: Dict[str, str] = {
    'DEBUG': '\033[36m',     # Cyan
    'INFO': '\033[32m',      # Green
    'WARNING': '\033[33m',   # Yellow
    'ERROR': '\033[31m',     # Red
    'CRITICAL': '\033[41m',  # Red background
    'RESET': '\033[0m'
}

PACKAGE_PREFIX = "src"

# One file handler shared by every package logger, set by set_package_level
_shared_file_handler: Optional[logging.FileHandler] = None


class ColorFormatter(logging.Formatter):
    """Formatter that colors the level tag and keeps every record on one line."""

    def __init__(self, fmt: str, use_color: bool = True):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        if getattr(record, 'separator', False):
            return ""

        # Work on a copy so other handlers see the original record
        record = logging.makeLogRecord(record.__dict__)
        message = record.getMessage().replace('\n', ' ')
        record.args = ()

        if self.use_color:
            color = COLORS.get(record.levelname, '')
            reset = COLORS['RESET']
            record.levelname = f"{color}[{record.levelname}]{reset}"
            record.msg = f"{color}{message}{reset}" if message else ""
        else:
            record.levelname = f"[{record.levelname}]"
            record.msg = message

        return super().format(record)


class SeparatorLogger(logging.Logger):
    """Logger with a blank-line separator between report sections."""

    def separator(self) -> None:
        """Log an empty line for visual separation."""
        record = self.makeRecord(self.name, logging.INFO, "", 0, "", (), None)
        record.separator = True
        self.handle(record)


class ColorHandler(logging.StreamHandler):
    """Stream handler that writes separator records as bare newlines."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            msg = self.format(record)
            self.stream.write(msg + self.terminator)
            self.flush()
        except Exception:
            self.handleError(record)


def _file_handler(log_file: Path) -> logging.FileHandler:
    handler = logging.FileHandler(log_file)
    handler.setFormatter(ColorFormatter('%(asctime)s %(name)s %(levelname)s %(message)s', use_color=False))
    return handler


def setup_logger(name: str, level: int = logging.INFO,
                 log_file: Optional[Path] = None) -> SeparatorLogger:
    """
    Set up a logger with colored console output.

    Args:
        name: Logger name (module __name__)
        level: Initial logging level (default: INFO)
        log_file: Optional path of an additional uncolored log file

    Returns:
        SeparatorLogger: Configured logger with separator functionality
    """
    logging.setLoggerClass(SeparatorLogger)

    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    console_handler = ColorHandler(sys.stdout)
    console_handler.setFormatter(ColorFormatter('%(levelname)s %(message)s'))
    logger.addHandler(console_handler)

    if log_file is not None:
        logger.addHandler(_file_handler(log_file))

    return logger


def _package_loggers() -> List[logging.Logger]:
    return [candidate for name, candidate in list(logging.Logger.manager.loggerDict.items())
            if isinstance(candidate, logging.Logger)
            and (name == PACKAGE_PREFIX or name.startswith(PACKAGE_PREFIX + ".") or name == "__main__")]


def set_package_level(level: int, log_file: Optional[Path] = None) -> None:
    """
    Apply a level to every toolkit logger and route them all to one shared
    log file. A different path (or none) closes the previous file.
    """
    global _shared_file_handler
    loggers = _package_loggers()
    target = None if log_file is None else os.path.abspath(log_file)
    current = None if _shared_file_handler is None else _shared_file_handler.baseFilename
    if target != current:
        if _shared_file_handler is not None:
            for candidate in loggers:
                candidate.removeHandler(_shared_file_handler)
            _shared_file_handler.close()
        _shared_file_handler = None if target is None else _file_handler(Path(target))

    for candidate in loggers:
        candidate.setLevel(level)
        if _shared_file_handler is not None and _shared_file_handler not in candidate.handlers:
            candidate.addHandler(_shared_file_handler)
