"""
Ordered fan-out over worker processes

Created: 2024-11-04
"""
# backend/utils/parallel.py
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from backend.utils.config import ConfigManager

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = None) -> List[R]:
    """map() dont le résultat suit l'ordre des entrées, quel que soit le nombre de processus.

    fn doit être une fonction de module (sérialisable par pickle) si jobs > 1.
    """
    items = list(items)
    if jobs is None:
        jobs = ConfigManager.settings().jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug(f"Répartition de {len(items)} tâches sur {workers} processus")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
