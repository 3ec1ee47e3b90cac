import math
import os
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings
from django.utils.module_loading import import_string

DEFAULT_GAME = 'voi_selection.tree.games.BanditTree'


def uct_exploration():
    """
    Returns the UCT exploration constant (as configured by the
    VOI_SELECTION_UCT_EXPLORATION setting). Defaults to sqrt(2).
    """
    return getattr(settings, 'VOI_SELECTION_UCT_EXPLORATION', math.sqrt(2.0))


def default_threads():
    return getattr(settings, 'VOI_SELECTION_THREADS', None) or os.cpu_count() or 1


def chunk_size():
    return getattr(settings, 'VOI_SELECTION_CHUNK_SIZE', 256)


def default_tree_cost():
    return getattr(settings, 'VOI_SELECTION_DEFAULT_TREE_COST', 1e-6)


def get_game_class(import_path=None):
    return import_string(import_path or getattr(settings, 'VOI_SELECTION_GAME', DEFAULT_GAME))


def map_ordered(func, items, threads=None):
    """
    Applies ``func`` to every item on up to ``threads`` workers and returns
    the results in input order.
    """
    items = list(items)
    threads = min(threads or default_threads(), max(len(items), 1))
    if threads == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def chunked(count, size):
    """Splits ``range(count)`` into consecutive ranges of at most ``size``."""
    return [range(start, min(start + size, count)) for start in range(0, count, size)]
