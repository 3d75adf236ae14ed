"""
Logging utilities

Created: 2024-11-04
"""
# backend/utils/logger.py
import logging
import sys
from typing import Union

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

_configured = False


def setup_logging(level: Union[str, int] = "WARNING") -> None:
    """Configure le logging de l'application (sortie d'erreur standard)"""
    global _configured
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)

    if not _configured:
        logging.basicConfig(
            level=level,
            format=LOG_FORMAT,
            handlers=[logging.StreamHandler(sys.stderr)]
        )
        _configured = True
    logging.getLogger().setLevel(level)

