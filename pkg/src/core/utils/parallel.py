"""
Deterministic fan-out over samples.

Every sample gets its own generator derived from the master seed and the
sample index, so results do not depend on how many workers run them.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np
from scipy.optimize import minimize

T = TypeVar('T')
R = TypeVar('R')


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """Generator for one sample: SeedSequence(seed) spawned along `keys`."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *[int(k) for k in keys]]))


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply `fn` to every item, returning results in input order.

    Args:
        fn: Pure function of one item
        items: Work items
        workers: Thread count; 1 runs inline

    Returns:
        List of results aligned with `items`
    """
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix='cat0-sample') as pool:
        return list(pool.map(fn, items))


def step_seed(seed: int, step: int) -> int:
    """Seed for the checks of one engine step, independent of every other step."""
    return int(np.random.SeedSequence([int(seed), int(step)]).generate_state(1)[0])


# Older scipy releases keep SLSQP and L-BFGS-B state in module globals.
_MINIMIZE_LOCK = threading.Lock()


def serial_minimize(*args, **kwargs):
    """scipy.optimize.minimize, one call at a time across worker threads."""
    with _MINIMIZE_LOCK:
        return minimize(*args, **kwargs)
