"""Finite-state continuous Markov kernels.

A kernel is a finite list of states plus a total rate map theta(source, target);
entries absent from the map are 0. State sets are plain frozensets of state ids,
relations are frozensets of (state, state) pairs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable, Mapping, Union

from .errors import KernelError, RateError
from .rational import Rate, coerce_rate, ensure_rate, format_rate

StateSet = frozenset
Relation = frozenset

RatesInput = Union[
    Mapping[tuple[str, str], object],
    Mapping[str, Mapping[str, object]],
]

_ZERO = Fraction(0)


def _flatten_rates(rates: RatesInput) -> dict[tuple[str, str], Fraction]:
    # lenient sign handling: validate() owns the negativity diagnostic
    flat: dict[tuple[str, str], Fraction] = {}
    for key, value in rates.items():
        if isinstance(key, tuple):
            flat[key] = coerce_rate(value)
        else:
            for target, rate in value.items():
                flat[(key, target)] = coerce_rate(rate)
    return flat


class Kernel:
    """Immutable finite-state kernel.

    ``rates`` may be keyed by (source, target) pairs or nested source -> target;
    values are coerced exactly (ints, Fractions or literal strings, never
    floats). Zero entries are dropped. Structural invariants (unique ids, known
    endpoints) are checked by :func:`validate`, not here, so that invalid
    kernels can be constructed and diagnosed.
    """

    __slots__ = ("states", "_state_set", "_adj", "_hash")

    def __init__(self, states: Iterable[str], rates: RatesInput | None = None):
        self.states: tuple[str, ...] = tuple(states)
        self._state_set = frozenset(self.states)
        adj: dict[str, dict[str, Fraction]] = {}
        for (s, t), r in _flatten_rates(rates or {}).items():
            if r != 0:
                adj.setdefault(s, {})[t] = r
        self._adj = adj
        self._hash: int | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.states == other.states and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.states, tuple(self.rate_items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Kernel(states={list(self.states)!r}, rates={len(self.rate_items())} entries)"

    @property
    def state_set(self) -> frozenset:
        return self._state_set

    def rate(self, source: str, target: str) -> Rate:
        """theta(source, target); 0 for pairs without a stored entry."""
        self._check_state(source)
        self._check_state(target)
        return self._adj.get(source, {}).get(target, _ZERO)

    def measure(self, source: str, targets: frozenset) -> Rate:
        """theta(source)(targets) = total rate from source into the set."""
        self._check_state(source)
        row = self._adj.get(source)
        if row is None:
            unknown = targets - self._state_set
            if unknown:
                raise KernelError(f"set member not in kernel: {sorted(unknown)!r}")
            return _ZERO
        if not targets <= self._state_set:
            raise KernelError(
                f"set member not in kernel: {sorted(targets - self._state_set)!r}"
            )
        if len(row) <= len(targets):
            return sum((r for t, r in row.items() if t in targets), _ZERO)
        return sum((row.get(t, _ZERO) for t in targets), _ZERO)

    def total(self, source: str) -> Rate:
        """Total exit rate theta(source)(M)."""
        self._check_state(source)
        row = self._adj.get(source)
        return sum(row.values(), _ZERO) if row else _ZERO

    def rate_items(self) -> list[tuple[str, str, Rate]]:
        """Nonzero entries sorted by state order; deterministic."""
        order = {s: i for i, s in enumerate(self.states)}
        items = [(s, t, r) for s, row in self._adj.items() for t, r in row.items()]
        items.sort(
            key=lambda item: (order.get(item[0], len(order)), order.get(item[1], len(order)))
        )
        return items

    def _check_state(self, state: str) -> None:
        if state not in self._state_set:
            raise KernelError(f"unknown state {state!r}")


def validate(kernel: Kernel) -> None:
    """Raise KernelError naming the first violated invariant; None when legal."""
    seen = set()
    for s in kernel.states:
        if s in seen:
            raise KernelError(f"duplicate state {s!r}")
        seen.add(s)
    for s, t, r in kernel.rate_items():
        if s not in seen:
            raise KernelError(f"rate source {s!r} is not a state")
        if t not in seen:
            raise KernelError(f"rate target {t!r} is not a state")
        if r < 0:
            raise KernelError(f"negative rate {format_rate(r)} on ({s!r}, {t!r})")


def measure(kernel: Kernel, source: str, targets: frozenset) -> Rate:
    return kernel.measure(source, targets)


def left_tag(state: str) -> str:
    return f"L:{state}"


def right_tag(state: str) -> str:
    return f"R:{state}"


def disjoint_union(k1: Kernel, k2: Kernel) -> Kernel:
    """Side-by-side union; states are tagged "L:"/"R:" so ids never collide.

    Cross rates are 0 and each side's rates are preserved under its tag.
    """
    states = [left_tag(s) for s in k1.states] + [right_tag(s) for s in k2.states]
    rates: dict[tuple[str, str], Fraction] = {}
    for s, t, r in k1.rate_items():
        rates[(left_tag(s), left_tag(t))] = r
    for s, t, r in k2.rate_items():
        rates[(right_tag(s), right_tag(t))] = r
    return Kernel(states, rates)


def closure(members: frozenset, relation: frozenset) -> frozenset:
    """members ∪ {m | some n in members has (n, m) in relation}.

    Extensive by construction, monotone in both arguments, and idempotent for
    preorders.
    """
    image = {m for (n, m) in relation if n in members}
    return frozenset(members) | image


# --- JSON model files -------------------------------------------------------
#
# { "states": ["m", "m1"], "rates": { "m": { "m1": "1", "m2": "3/2" } } }
#
# Rate literals are decimal or "p/q" strings; missing entries mean 0. An
# optional "comment" field is ignored by the loader.


def loads_kernel(text: str) -> Kernel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KernelError(f"model file is not valid JSON: {exc}") from exc
    return _kernel_from_doc(doc)


def load_kernel(source: Union[str, IO[str]]) -> Kernel:
    """Load a kernel from a path or an open text file."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            return loads_kernel(fh.read())
    return loads_kernel(source.read())


def _kernel_from_doc(doc: object) -> Kernel:
    if not isinstance(doc, dict):
        raise KernelError("model file must be a JSON object")
    unknown = set(doc) - {"states", "rates", "comment"}
    if unknown:
        raise KernelError(f"unknown model fields: {sorted(unknown)}")
    states = doc.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise KernelError('"states" must be a list of strings')
    rates_doc = doc.get("rates", {})
    if not isinstance(rates_doc, dict):
        raise KernelError('"rates" must be an object keyed by source state')
    rates: dict[tuple[str, str], Fraction] = {}
    for source, row in rates_doc.items():
        if not isinstance(row, dict):
            raise KernelError(f"rates.{source}: expected an object of target rates")
        for target, literal in row.items():
            if not isinstance(literal, str):
                raise KernelError(
                    f"rates.{source}.{target}: rate must be a string literal"
                )
            try:
                rates[(source, target)] = ensure_rate(literal)
            except RateError as exc:
                raise KernelError(f"rates.{source}.{target}: {exc}") from exc
    kernel = Kernel(states, rates)
    validate(kernel)
    return kernel


def kernel_to_doc(kernel: Kernel, comment: str | None = None) -> dict:
    rates: dict[str, dict[str, str]] = {}
    for s, t, r in kernel.rate_items():
        rates.setdefault(s, {})[t] = format_rate(r)
    doc: dict = {"states": list(kernel.states), "rates": rates}
    if comment is not None:
        doc["comment"] = comment
    return doc


def dumps_kernel(kernel: Kernel, comment: str | None = None) -> str:
    return json.dumps(kernel_to_doc(kernel, comment), indent=2) + "\n"
