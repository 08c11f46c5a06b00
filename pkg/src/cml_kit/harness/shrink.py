"""Greedy counterexample shrinking: drop states, zero rates, shrink formulas."""

from __future__ import annotations

from typing import Callable, Iterator, Optional

from ..formula import And, Formula, L, Not, Top
from ..kernel import Kernel


def kernel_reductions(kernel: Kernel) -> Iterator[Kernel]:
    items = kernel.rate_items()
    for victim in kernel.states:
        if len(kernel.states) <= 1:
            break
        states = [s for s in kernel.states if s != victim]
        rates = {(s, t): r for (s, t, r) in items if s != victim and t != victim}
        yield Kernel(states, rates)
    for i in range(len(items)):
        s, t, _ = items[i]
        rates = {(a, b): r for (a, b, r) in items if (a, b) != (s, t)}
        yield Kernel(kernel.states, rates)


def formula_reductions(f: Formula) -> Iterator[Formula]:
    # promote children at the root, then replace proper subtrees by T
    if isinstance(f, Not):
        yield f.child
    elif isinstance(f, And):
        yield f.left
        yield f.right
    elif isinstance(f, L):
        yield f.child

    def replaced(g: Formula, path: tuple[int, ...]) -> Formula:
        if not path:
            return Top()
        head, rest = path[0], path[1:]
        if isinstance(g, Not):
            return Not(replaced(g.child, rest), sugar=None)
        if isinstance(g, And):
            if head == 0:
                return And(replaced(g.left, rest), g.right)
            return And(g.left, replaced(g.right, rest))
        if isinstance(g, L):
            return L(g.rate, replaced(g.child, rest))
        return g

    for path in _paths(f):
        if path:
            yield replaced(f, path)


def _paths(f: Formula, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    yield prefix
    if isinstance(f, Not):
        yield from _paths(f.child, prefix + (0,))
    elif isinstance(f, And):
        yield from _paths(f.left, prefix + (0,))
        yield from _paths(f.right, prefix + (1,))
    elif isinstance(f, L):
        yield from _paths(f.child, prefix + (0,))


def shrink(
    kernel: Kernel,
    formula: Optional[Formula],
    fails: Callable[[Kernel, Optional[Formula]], bool],
    max_rounds: int = 200,
) -> tuple[Kernel, Optional[Formula]]:
    """Greedily minimize a failing (kernel, formula) pair; result still fails.

    ``fails`` must treat exceptions as its own concern; only a True return
    keeps a reduction.
    """
    for _ in range(max_rounds):
        improved = False
        for smaller in kernel_reductions(kernel):
            try:
                keep = fails(smaller, formula)
            except Exception:
                keep = False
            if keep:
                kernel = smaller
                improved = True
                break
        if formula is not None and not improved:
            for simpler in formula_reductions(formula):
                try:
                    keep = fails(kernel, simpler)
                except Exception:
                    keep = False
                if keep:
                    formula = simpler
                    improved = True
                    break
        if not improved:
            return kernel, formula
    return kernel, formula
