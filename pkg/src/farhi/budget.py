"""Per-run evaluation budgets and counters.

Quadrature and summation engines read their limits from here, so a caller
(the identity runner, the CLI) can tighten them without threading arguments
through every evaluator.
"""

import contextlib
import contextvars
from dataclasses import dataclass

DEFAULT_MAX_TERMS = 10**8
DEFAULT_MAX_EVALS = 2 * 10**6


@dataclass
class Budget:
    max_terms: int = DEFAULT_MAX_TERMS
    max_evals: int = DEFAULT_MAX_EVALS
    evaluations: int = 0


_current = contextvars.ContextVar("farhi_budget", default=None)


def current():
    b = _current.get()
    if b is None:
        b = Budget()
        _current.set(b)
    return b


def charge(n):
    current().evaluations += int(n)


@contextlib.contextmanager
def limits(max_terms=None, max_evals=None):
    """Run a block under fresh limits and a zeroed evaluation counter."""
    parent = current()
    b = Budget(
        max_terms=parent.max_terms if max_terms is None else max_terms,
        max_evals=parent.max_evals if max_evals is None else max_evals,
    )
    token = _current.set(b)
    try:
        yield b
    finally:
        _current.reset(token)
