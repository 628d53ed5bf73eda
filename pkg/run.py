"""
Setup and Run Script
Initializes logging and dispatches to the command line interface
"""

import sys
from pathlib import Path

# Add the package to path
sys.path.insert(0, str(Path(__file__).parent))

from pacing_reduction import __version__
from pacing_reduction.cli import cli
from pacing_reduction.config import settings
from pacing_reduction.utils.logger import system_logger


def setup_system():
    """Record the effective configuration"""
    system_logger.log_system_event(
        "startup",
        {
            "version": __version__,
            "log_level": settings.LOG_LEVEL,
            "search_workers": settings.SEARCH_WORKERS,
            "brute_force_max_nodes": settings.BRUTE_FORCE_MAX_NODES,
        },
    )


if __name__ == "__main__":
    setup_system()
    cli()
