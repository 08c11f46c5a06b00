"""Behavioral slack orders: the largest plain order and the essential variant.

A relation R (closed under bisimulation, i.e. a union of block products) is a
plain e-order when for every (m, n) in R and every definable C,
theta(n)(C) - theta(m)(C ∪ pullback_R(C)) <= e, where pullback_R(C) is the set
of states R-related *into* C. The essential variant bounds the same slack into
[0, e], quantified over the complement-closed family, and uses the bare
pullback (no C term): including C would force theta(m)(C) = 0 for every C the
target cannot reach, which contradicts the worked examples this module must
reproduce.

The plain largest order is a greatest fixpoint (the deletion condition is
monotone in R). The essential condition's lower bound is antitone in R, so
"largest" is read as membership: (m, n) is essentially ordered when SOME
essential order contains it. Membership is decided by a decreasing repair
iteration from the plain order plus a backtracking witness search for the
pairs that iteration drops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .equivalence import Partition, bisimulation, generators
from .errors import InternalCheckError, KernelError, SearchBudgetExceeded
from .kernel import Kernel, disjoint_union, left_tag, right_tag
from .rational import Rate, ensure_rate

_ZERO = Fraction(0)

BlockPair = tuple[int, int]
SlackCollector = Optional[Callable[[Fraction], None]]


@dataclass(frozen=True)
class EpsilonOrder:
    epsilon: Rate
    relation: frozenset
    essential: bool

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.relation


class OrderSolver:
    """Per-kernel solver caching the partition, families and block measures."""

    def __init__(self, kernel: Kernel):
        self.kernel = kernel
        self.partition: Partition = bisimulation(kernel)
        self.blocks = self.partition.blocks
        self.n_blocks = len(self.blocks)
        order = {s: i for i, s in enumerate(kernel.states)}
        self.reps = [min(b, key=order.__getitem__) for b in self.blocks]
        # bm[i][j]: rate of block i's representative into block j; constant on
        # blocks because blocks are bisimulation classes.
        self.bm = [
            [kernel.measure(rep, block) for block in self.blocks] for rep in self.reps
        ]
        self.totals = [sum(row, _ZERO) for row in self.bm]
        self._family_blocks: dict[bool, list[frozenset]] = {}
        self._plain_cache: dict[Rate, frozenset] = {}
        self._essential_cache: dict[Rate, frozenset] = {}

    # --- families at block level ---------------------------------------

    def family_blocks(self, extended: bool) -> list[frozenset]:
        if extended not in self._family_blocks:
            family = generators(self.kernel, extended=extended)
            block_index = {b: i for i, b in enumerate(self.blocks)}
            converted = []
            for member in family.sorted_sets():
                idxs = frozenset(
                    block_index[self.partition.block_of(s)] for s in member
                )
                converted.append(idxs)
            # members are unions of blocks, so the conversion is lossless
            for member, idxs in zip(family.sorted_sets(), converted):
                rebuilt = frozenset().union(*(self.blocks[i] for i in idxs)) if idxs else frozenset()
                if rebuilt != member:
                    raise InternalCheckError(
                        "generator member is not a union of bisimulation blocks"
                    )
            if extended and len(set(converted)) != 2 ** self.n_blocks:
                raise InternalCheckError(
                    "extended family does not separate the bisimulation blocks"
                )
            self._family_blocks[extended] = sorted(
                set(converted), key=lambda c: (len(c), sorted(c))
            )
        return self._family_blocks[extended]

    def _theta(self, i: int, blockset: frozenset) -> Fraction:
        row = self.bm[i]
        return sum((row[b] for b in blockset), _ZERO)

    # --- plain order: greatest fixpoint ----------------------------------

    def plain_pairs(self, e: Rate, collector: SlackCollector = None) -> frozenset:
        e = ensure_rate(e)
        if collector is None and e in self._plain_cache:
            return self._plain_cache[e]
        family = self.family_blocks(extended=False)
        pairs = {(i, j) for i in range(self.n_blocks) for j in range(self.n_blocks)}
        while True:
            lefts_by_member = {}
            for c in family:
                lefts_by_member[c] = frozenset(
                    bi for (bi, bj) in pairs if bj in c
                )
            violated = set()
            for (i, j) in pairs:
                for c in family:
                    closure_c = c | lefts_by_member[c]
                    slack = self._theta(j, c) - self._theta(i, closure_c)
                    if collector is not None:
                        collector(slack)
                    if slack > e:
                        violated.add((i, j))
                        break
            if not violated:
                break
            pairs -= violated
        out = frozenset(pairs)
        if collector is None:
            self._plain_cache[e] = out
        return out

    # --- essential order: witness membership -----------------------------

    def essential_pairs(self, e: Rate, budget: int = 200_000) -> frozenset:
        e = ensure_rate(e)
        if e in self._essential_cache:
            return self._essential_cache[e]
        # reduction to per-block bounds needs the full block algebra
        self.family_blocks(extended=True)
        plain = self.plain_pairs(e)
        stable = self._repair_iteration(plain, e)
        out = set(stable)
        for pair in sorted(plain - stable):
            if self._witness_exists(pair, plain, e, budget):
                out.add(pair)
        result = frozenset(out)
        self._essential_cache[e] = result
        return result

    def _lower_ok(self, pair: BlockPair, rel: frozenset) -> bool:
        # theta_i of the pullback of each block must not exceed theta_j of it
        i, j = pair
        row_i, row_j = self.bm[i], self.bm[j]
        for b in range(self.n_blocks):
            bound = row_j[b]
            mass = _ZERO
            for (bi, bj) in rel:
                if bj == b:
                    mass += row_i[bi]
                    if mass > bound:
                        return False
        return True

    def _upper_ok(self, pair: BlockPair, rel: frozenset, e: Rate) -> bool:
        # total slack is maximal at the full state set
        i, j = pair
        lefts = {bi for (bi, _) in rel}
        covered = sum((self.bm[i][bi] for bi in lefts), _ZERO)
        return self.totals[j] - covered <= e

    def _band_ok(self, pair: BlockPair, e: Rate) -> bool:
        # the full-set constraint both ways: total rates within [0, e] of
        # each other, never smaller on the dominating side
        i, j = pair
        return self.totals[i] <= self.totals[j] <= self.totals[i] + e

    def _essential_ok(self, pair: BlockPair, rel: frozenset, e: Rate) -> bool:
        return (
            self._band_ok(pair, e)
            and self._lower_ok(pair, rel)
            and self._upper_ok(pair, rel, e)
        )

    def _repair_iteration(self, start: frozenset, e: Rate) -> frozenset:
        rel = set(start)
        while True:
            keep = {p for p in rel if self._essential_ok(p, frozenset(rel), e)}
            if len(keep) == len(rel):
                return frozenset(rel)
            rel = keep

    def _witness_exists(
        self, query: BlockPair, candidates: frozenset, e: Rate, budget: int
    ) -> bool:
        cands = sorted(candidates - {query})
        seen: set[frozenset] = set()
        ticks = 0

        if not self._band_ok(query, e):
            return False

        def dfs(rel: frozenset) -> bool:
            nonlocal ticks
            if rel in seen:
                return False
            seen.add(rel)
            ticks += 1
            if ticks > budget:
                raise SearchBudgetExceeded(
                    f"essential witness search exceeded {budget} steps"
                )
            # neither a band nor a lower-bound violation is repaired by adding pairs
            for p in rel:
                if not self._band_ok(p, e) or not self._lower_ok(p, rel):
                    return False
            unmet = [p for p in sorted(rel) if not self._upper_ok(p, rel, e)]
            if not unmet:
                return True
            i, _ = unmet[0]
            lefts = {bi for (bi, _) in rel}
            for cand in cands:
                if cand in rel:
                    continue
                if cand[0] not in lefts and self.bm[i][cand[0]] > 0:
                    if dfs(rel | {cand}):
                        return True
            return False

        return dfs(frozenset({query}))

    # --- public relation construction ------------------------------------

    def order(self, e: Rate, essential: bool = False) -> EpsilonOrder:
        e = ensure_rate(e)
        pairs = self.essential_pairs(e) if essential else self.plain_pairs(e)
        relation = set()
        for (i, j) in pairs:
            for x in self.blocks[i]:
                for y in self.blocks[j]:
                    relation.add((x, y))
        return EpsilonOrder(epsilon=e, relation=frozenset(relation), essential=essential)

    def block_pair_of(self, m: str, n: str) -> BlockPair:
        return (self.partition.index_of(m), self.partition.index_of(n))


def largest_order(kernel: Kernel, e: Rate, essential: bool = False) -> EpsilonOrder:
    """The largest e-order of one kernel (union of all witnesses when essential)."""
    return OrderSolver(kernel).order(e, essential)


def holds(
    k1: Kernel, m: str, k2: Kernel, n: str, e: Rate, essential: bool = False
) -> bool:
    """Whether (k1, m) is e-below (k2, n), lifted through the tagged disjoint union."""
    if m not in k1.state_set:
        raise KernelError(f"unknown state {m!r}")
    if n not in k2.state_set:
        raise KernelError(f"unknown state {n!r}")
    union = disjoint_union(k1, k2)
    solver = OrderSolver(union)
    pair = solver.block_pair_of(left_tag(m), right_tag(n))
    pairs = solver.essential_pairs(e) if essential else solver.plain_pairs(ensure_rate(e))
    return pair in pairs
