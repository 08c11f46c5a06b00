"""Epsilon-parameterized satisfiability over finite kernels.

A state satisfies L r phi at slack e when its rate into the extension of phi
(computed at the same e) falls short of r by at most e. Boolean connectives
are classical: negation is exact complement at every e.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import KernelError, SearchBudgetExceeded
from .formula import And, Formula, L, Not, Top, modal_indices
from .kernel import Kernel
from .rational import Rate, ensure_rate

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Extension:
    """A formula's satisfying states at one slack, as computed by the evaluator."""

    formula: Formula
    epsilon: Rate
    states: frozenset


def _modal_holds(total: Rate, e: Rate, r: Rate) -> bool:
    # The single comparison the whole semantics hinges on.
    return total + e >= r


class Evaluator:
    """Extension computation for one kernel with a persistent (formula, e) cache."""

    def __init__(self, kernel: Kernel):
        self.kernel = kernel
        self._cache: dict[tuple[Formula, Rate], frozenset] = {}
        self._all = kernel.state_set

    def extension(self, f: Formula, e: Rate) -> frozenset:
        e = ensure_rate(e)
        key = (f, e)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._compute(f, e)
        self._cache[key] = out
        return out

    def _compute(self, f: Formula, e: Rate) -> frozenset:
        if isinstance(f, Top):
            return self._all
        if isinstance(f, Not):
            return self._all - self.extension(f.child, e)
        if isinstance(f, And):
            return self.extension(f.left, e) & self.extension(f.right, e)
        if isinstance(f, L):
            child = self.extension(f.child, e)
            k = self.kernel
            return frozenset(
                m for m in k.states if _modal_holds(k.measure(m, child), e, f.rate)
            )
        raise TypeError(f"not a formula node: {f!r}")

    def stability_margin(self, f: Formula, e: Rate) -> Optional[Rate]:
        """Smallest positive deficit among failed modal comparisons at e.

        Raising e by less than this margin cannot flip any comparison, so the
        extension of every subformula is unchanged on [e, e + margin). None when
        every comparison already holds (no finite flip point).
        """
        e = ensure_rate(e)
        deficits: list[Rate] = []

        def walk(g: Formula) -> None:
            if isinstance(g, L):
                child = self.extension(g.child, e)
                for m in self.kernel.states:
                    gap = g.rate - (self.kernel.measure(m, child) + e)
                    if gap > 0:
                        deficits.append(gap)
                walk(g.child)
            elif isinstance(g, Not):
                walk(g.child)
            elif isinstance(g, And):
                walk(g.left)
                walk(g.right)

        walk(f)
        return min(deficits) if deficits else None


def eval_formula(kernel: Kernel, f: Formula, e: Rate) -> frozenset:
    """The extension {m | m satisfies f at slack e}."""
    return Evaluator(kernel).extension(f, e)


def extension_of(kernel: Kernel, f: Formula, e: Rate) -> Extension:
    """The extension packaged with the formula and slack that produced it."""
    e = ensure_rate(e)
    return Extension(f, e, eval_formula(kernel, f, e))


def sat(kernel: Kernel, state: str, f: Formula, e: Rate) -> bool:
    if state not in kernel.state_set:
        raise KernelError(f"unknown state {state!r}")
    return state in eval_formula(kernel, f, e)


def valid_on(kernel: Kernel, f: Formula, e: Rate) -> bool:
    """True when every state of this kernel satisfies f at slack e."""
    return eval_formula(kernel, f, e) == kernel.state_set


def default_rate_grid(f: Formula, e: Rate) -> list[Rate]:
    """0 plus the modal indices of f, closed under pairwise sums up to max+e."""
    e = ensure_rate(e)
    base = set(modal_indices(f))
    cap = (max(base) if base else _ZERO) + e
    grid = {_ZERO} | base
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(sorted(grid), 2):
            s = a + b
            if s <= cap and s not in grid:
                grid.add(s)
                changed = True
    return sorted(grid)


def search_model(
    f: Formula,
    e: Rate,
    max_states: int,
    rate_grid: Iterable[Rate] | None = None,
    max_candidates: int = 500_000,
) -> Optional[tuple[Kernel, str]]:
    """Best-effort witness search over kernels up to max_states with grid rates.

    Returns the first (kernel, state) with state satisfying f at slack e, in a
    deterministic enumeration order; None when the bounded space has no
    witness (which proves nothing beyond the bounds). Raises
    SearchBudgetExceeded when max_candidates kernels were tried first.
    """
    e = ensure_rate(e)
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    grid = sorted({ensure_rate(r) for r in rate_grid}) if rate_grid is not None else None
    if grid is None:
        grid = default_rate_grid(f, e)
    tried = 0
    for n in range(1, max_states + 1):
        states = [f"s{i}" for i in range(n)]
        slots = [(s, t) for s in states for t in states]
        for assignment in itertools.product(grid, repeat=len(slots)):
            tried += 1
            if tried > max_candidates:
                raise SearchBudgetExceeded(
                    f"search_model exhausted its budget of {max_candidates} kernels"
                )
            kernel = Kernel(states, dict(zip(slots, assignment)))
            extension = eval_formula(kernel, f, e)
            for s in states:
                if s in extension:
                    return kernel, s
    return None
