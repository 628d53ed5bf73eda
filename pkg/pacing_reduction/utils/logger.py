"""
Logging System
Tracks compilations, verifications, searches and document I/O
"""

import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger

from pacing_reduction.config import settings


class SystemLogger:
    """Structured event logger on top of loguru"""

    def __init__(self, log_file: Optional[str] = None, level: Optional[str] = None):
        self.log_file = log_file if log_file is not None else settings.LOG_FILE_PATH
        self.level = level or settings.LOG_LEVEL
        self._setup_logger()

    def _setup_logger(self):
        """Configure loguru logger"""
        # Remove default handler
        logger.remove()

        # Console handler; stdout is reserved for command output
        logger.add(
            sys.stderr,
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{message}</cyan>",
            level=self.level,
        )

        if self.log_file:
            Path(self.log_file).parent.mkdir(parents=True, exist_ok=True)
            logger.add(
                self.log_file,
                rotation="10 MB",
                retention="7 days",
                format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {message}",
                level="DEBUG",
            )

    def _emit(self, event: str, payload: Dict[str, Any], level: str = "INFO"):
        log_entry = {"timestamp": datetime.now().isoformat(), **payload}
        logger.log(level, f"{event}: {json.dumps(log_entry, default=str)}")

    def log_system_event(self, event_type: str, details: Dict[str, Any]):
        """Log system-level events"""
        self._emit("SYSTEM_EVENT", {"event_type": event_type, "details": details})

    def log_compilation(
        self,
        variant: str,
        nodes: int,
        buyers: int,
        goods: int,
        degree_valid: bool,
        max_items: int,
    ):
        """Log a circuit-to-game compilation"""
        self._emit(
            "COMPILATION",
            {
                "variant": variant,
                "nodes": nodes,
                "buyers": buyers,
                "goods": goods,
                "degree_valid": degree_valid,
                "max_items_per_buyer": max_items,
            },
        )

    def log_verification(self, definition: str, valid: bool, violations: int):
        """Log an equilibrium or structure verification"""
        self._emit(
            "VERIFICATION",
            {"definition": definition, "valid": valid, "violations": violations},
            level="INFO" if valid else "WARNING",
        )

    def log_search(self, profiles: int, found: int, workers: int):
        """Log a finished grid search"""
        self._emit(
            "GRID_SEARCH",
            {"profiles": profiles, "equilibria": found, "workers": workers},
        )

    def log_roundtrip(self, variant: str, equilibria: int, satisfied: int, success: bool):
        """Log a compile-solve-decode round trip"""
        self._emit(
            "ROUNDTRIP",
            {
                "variant": variant,
                "equilibria": equilibria,
                "satisfying_decodes": satisfied,
                "success": success,
            },
            level="INFO" if success else "WARNING",
        )

    def log_document(self, kind: str, path: str, action: str):
        """Log a document read or write"""
        self._emit("DOCUMENT", {"kind": kind, "path": path, "action": action}, level="DEBUG")

    def log_error(self, component: str, error_message: str):
        """Log errors"""
        self._emit("ERROR", {"component": component, "error": error_message}, level="ERROR")


# Global logger instance
system_logger = SystemLogger()
