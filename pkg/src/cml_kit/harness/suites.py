"""Property suites over generated kernels and enumerated formulas.

Each suite replays one of the library's structural guarantees at desk scale
and reports a checked-count plus minimized counterexamples. Suites treat exceptions raised while checking
a property instance as failures of that instance, so invariant violations
inside the library surface here instead of aborting the run.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional

from .. import equivalence as equivalence_mod
from .. import orders as orders_mod
from ..equivalence import generators, partition_from_family
from ..formula import (
    And,
    Formula,
    Fragment,
    Implies,
    L,
    Not,
    Top,
    encode_abs,
    encode_down,
    encode_up,
    print_formula,
)
from ..kernel import Kernel, kernel_to_doc
from ..metric import distance
from ..orders import OrderSolver
from ..proofcheck import (
    Axiom,
    Proof,
    ProofLine,
    RuleR1,
    Tautology,
    axiom_instance,
    check,
    translate_proof,
)
from ..rational import Rate, ensure_rate, format_rate
from ..semantics import Evaluator, valid_on
from .enumerate import EnumerationConfig, enumerate_formulas
from .generate import corpus
from .oracles import saturate_pairs, transfer_essential, transfer_plain
from .shrink import shrink

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Budget:
    seed: int = 7
    kernels: int = 10
    max_states: int = 5
    depth: int = 2
    max_formulas: int = 400
    epsilons: tuple[Rate, ...] = (
        Fraction(0),
        Fraction(1, 10),
        Fraction(1, 3),
        Fraction(1),
        Fraction(5, 2),
    )
    epsilon_pairs: tuple[tuple[Rate, Rate], ...] = (
        (Fraction(0), Fraction(1, 10)),
        (Fraction(1, 10), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(1)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(3, 2)),
        (Fraction(1, 10), Fraction(2)),
    )
    enlargement: bool = False


def small_budget(seed: int = 7) -> Budget:
    return Budget(seed=seed, kernels=6, max_states=4, depth=2, max_formulas=150)


def default_budget(seed: int = 7) -> Budget:
    return Budget(seed=seed)


def full_budget(seed: int = 7) -> Budget:
    return Budget(
        seed=seed, kernels=18, max_states=6, depth=3, max_formulas=900,
        enlargement=True,
    )


BUDGETS: dict[str, Callable[[int], Budget]] = {
    "small": small_budget,
    "default": default_budget,
    "full": full_budget,
}


@dataclass
class Failure:
    description: str
    kernel_doc: Optional[dict] = None
    formula: Optional[str] = None

    def to_doc(self) -> dict:
        doc: dict = {"description": self.description}
        if self.kernel_doc is not None:
            doc["kernel"] = self.kernel_doc
        if self.formula is not None:
            doc["formula"] = self.formula
        return doc


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    failures: list[Failure] = dc_field(default_factory=list)
    elapsed_s: float = 0.0
    seed: int = 0
    notes: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_doc(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "failures": [f.to_doc() for f in self.failures],
            "elapsed_s": round(self.elapsed_s, 3),
            "seed": self.seed,
            "notes": self.notes,
        }

    def fail(
        self,
        description: str,
        kernel: Optional[Kernel] = None,
        formula: Optional[Formula] = None,
        fails: Optional[Callable] = None,
        cap: int = 25,
    ) -> None:
        if len(self.failures) >= cap:
            return
        if kernel is not None and fails is not None:
            kernel, formula = shrink(kernel, formula, fails)
        self.failures.append(
            Failure(
                description,
                kernel_doc=kernel_to_doc(kernel) if kernel is not None else None,
                formula=print_formula(formula) if formula is not None else None,
            )
        )


def _suite_corpus(budget: Budget, max_states: Optional[int] = None) -> list[Kernel]:
    return corpus(
        kernels=budget.kernels,
        max_states=max_states or budget.max_states,
        seed=budget.seed,
    )


def _kernel_grid(kernel: Kernel, extra: tuple[Rate, ...] = ()) -> tuple[Rate, ...]:
    """Achievable generator-set measures, the separating rate thresholds."""
    family = generators(kernel, extended=False)
    values = set(family.achievable_measures())
    values.update(extra)
    values.add(_ZERO)
    return tuple(sorted(values))


def _formulas(
    budget: Budget,
    grid: tuple[Rate, ...],
    fragment: Fragment,
    depth: Optional[int] = None,
) -> tuple[tuple[Formula, ...], bool]:
    cfg = EnumerationConfig(
        max_depth=depth if depth is not None else budget.depth,
        rate_grid=grid,
        fragment=fragment,
        max_count=budget.max_formulas,
    )
    result = enumerate_formulas(cfg)
    return result.formulas, result.truncated


# --- individual suites --------------------------------------------------------


def suite_t2(budget: Budget) -> SuiteReport:
    """Slack transfer: evaluating at e+e' equals evaluating the shifted formula."""
    report = SuiteReport("t2", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        ev = Evaluator(kernel)
        grid = _kernel_grid(kernel, extra=(Fraction(1, 2), Fraction(2)))
        formulas, truncated = _formulas(budget, grid, Fragment.FULL)
        if truncated:
            report.notes["truncated"] = True
        for f in formulas:
            for e, e2 in budget.epsilon_pairs:
                report.checked += 1
                try:
                    down_ok = ev.extension(f, e + e2) == ev.extension(
                        encode_down(f, e2), e
                    )
                    up_ok = ev.extension(f, e) == ev.extension(
                        encode_up(f, e2), e + e2
                    )
                except Exception as exc:
                    report.fail(
                        f"exception at e={format_rate(e)}, e'={format_rate(e2)}: {exc}",
                        kernel,
                        f,
                    )
                    continue
                if not (down_ok and up_ok):
                    side = "down" if not down_ok else "up"

                    def fails(k: Kernel, g: Optional[Formula]) -> bool:
                        evk = Evaluator(k)
                        return (
                            evk.extension(g, e + e2)
                            != evk.extension(encode_down(g, e2), e)
                            or evk.extension(g, e)
                            != evk.extension(encode_up(g, e2), e + e2)
                        )

                    report.fail(
                        f"transfer ({side}) broken at e={format_rate(e)}, "
                        f"e'={format_rate(e2)}",
                        kernel,
                        f,
                        fails,
                    )
    return report


def suite_c2(budget: Budget) -> SuiteReport:
    """Transfer against the 0-semantics, plus exact Boolean complementation."""
    report = SuiteReport("c2", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        ev = Evaluator(kernel)
        grid = _kernel_grid(kernel, extra=(Fraction(1, 2),))
        formulas, _ = _formulas(budget, grid, Fragment.FULL)
        for f in formulas:
            for e in budget.epsilons:
                report.checked += 1
                ok = (
                    ev.extension(f, e) == ev.extension(encode_down(f, e), _ZERO)
                    and ev.extension(f, _ZERO) == ev.extension(encode_up(f, e), e)
                    and ev.extension(Not(f), e)
                    == kernel.state_set - ev.extension(f, e)
                )
                if not ok:
                    report.fail(
                        f"0-transfer or complementation broken at e={format_rate(e)}",
                        kernel,
                        f,
                    )
    return report


def suite_l1(budget: Budget) -> SuiteReport:
    """Positive formulas grow with the slack; negated posittérminos shrink."""
    report = SuiteReport("l1-positive-monotonicity", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        ev = Evaluator(kernel)
        grid = _kernel_grid(kernel)
        formulas, _ = _formulas(budget, grid, Fragment.POSITIVE)
        for f in formulas:
            for e, e2 in budget.epsilon_pairs:
                report.checked += 1
                lo = ev.extension(f, e)
                hi = ev.extension(f, e + e2)
                if not lo <= hi:
                    report.fail(
                        f"positive monotonicity broken at e={format_rate(e)}, "
                        f"e'={format_rate(e2)}",
                        kernel,
                        f,
                    )
                neg_hi = ev.extension(Not(f), e)
                neg_lo = ev.extension(Not(f), e + e2)
                if not neg_lo <= neg_hi:
                    report.fail(
                        f"negative antitonicity broken at e={format_rate(e)}, "
                        f"e'={format_rate(e2)}",
                        kernel,
                        f,
                    )
    return report


def suite_l2(budget: Budget) -> SuiteReport:
    """Below the minimal failing-comparison deficit the extension cannot move."""
    report = SuiteReport("l2-limit", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        ev = Evaluator(kernel)
        grid = _kernel_grid(kernel)
        formulas, _ = _formulas(budget, grid, Fragment.POSITIVE)
        for f in formulas:
            for e in budget.epsilons:
                report.checked += 1
                margin = ev.stability_margin(f, e)
                probes = (
                    [margin / 2, margin / 3]
                    if margin is not None
                    else [Fraction(1), Fraction(5)]
                )
                base = ev.extension(f, e)
                for delta in probes:
                    if ev.extension(f, e + delta) != base:
                        report.fail(
                            f"extension moved within the stability margin at "
                            f"e={format_rate(e)}, delta={format_rate(delta)}",
                            kernel,
                            f,
                        )
                        break
    return report


def suite_t1(budget: Budget) -> SuiteReport:
    """Refinement partition equals the coarsest measure-agreement partition."""
    report = SuiteReport("t1-generators", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        report.checked += 1
        refined = equivalence_mod.bisimulation(kernel)
        for extended in (False, True):
            family = generators(kernel, extended=extended)
            from_family = partition_from_family(kernel, family.sorted_sets())
            if refined.as_sets() != from_family.as_sets():
                report.fail(
                    f"partition mismatch (extended={extended})", kernel
                )
        blocks = refined.as_sets()
        for member in generators(kernel, extended=True).sorted_sets():
            if not all(b <= member or not (b & member) for b in blocks):
                report.fail("family member is not a union of blocks", kernel)
                break
    return report


def suite_c1(budget: Budget) -> SuiteReport:
    """Enumerated extensions land inside the definable-set families."""
    report = SuiteReport("c1-extensions", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        ev = Evaluator(kernel)
        plain = generators(kernel, extended=False)
        extended = generators(kernel, extended=True)
        grid = tuple(plain.achievable_measures()) or (_ZERO,)
        pos, _ = _formulas(budget, grid, Fragment.POSITIVE)
        full, _ = _formulas(budget, grid, Fragment.FULL)
        for c in plain.sorted_sets():
            report.checked += 1
            if ev.extension(plain.formulas[c], _ZERO) != c:
                report.fail("defining formula misses its member", kernel,
                            plain.formulas[c])
        for f in pos:
            for e in budget.epsilons:
                report.checked += 1
                if ev.extension(f, e) not in plain:
                    report.fail(
                        f"positive extension escapes the family at e={format_rate(e)}",
                        kernel,
                        f,
                    )
        for f in full:
            for e in budget.epsilons:
                report.checked += 1
                if ev.extension(f, e) not in extended:
                    report.fail(
                        f"extension escapes the extended family at e={format_rate(e)}",
                        kernel,
                        f,
                    )
    return report


def suite_l5(budget: Budget) -> SuiteReport:
    """Bisimulations sit inside both 0-orders; relations stay block-closed."""
    report = SuiteReport("l5-orders", seed=budget.seed)
    small_eps = (_ZERO, Fraction(1, 10), Fraction(1))
    for kernel in _suite_corpus(budget, max_states=min(budget.max_states, 4)):
        try:
            _l5_one_kernel(report, kernel, small_eps)
        except Exception as exc:
            report.fail(f"exception while checking the orders: {exc}", kernel)
    return report


def _l5_one_kernel(report: SuiteReport, kernel: Kernel, small_eps) -> None:
    partition = equivalence_mod.bisimulation(kernel)
    blocks = partition.blocks
    solver = OrderSolver(kernel)
    for e in small_eps:
        report.checked += 1
        order = orders_mod.largest_order(kernel, e)
        rel = order.relation
        essential = orders_mod.largest_order(kernel, e, essential=True)
        # closed under bisimulation: block products only
        for candidate in (rel, essential.relation):
            for (x, y) in candidate:
                bx, by = partition.block_of(x), partition.block_of(y)
                if not all((a, b) in candidate for a in bx for b in by):
                    report.fail(
                        f"order not closed under bisimulation at e={format_rate(e)}",
                        kernel,
                    )
                    break
        for block in blocks:
            for a in block:
                for b in block:
                    if (a, b) not in rel or (b, a) not in rel:
                        report.fail("bisimilar pair escapes the 0-order", kernel)
                    if (a, b) not in essential.relation:
                        report.fail(
                            "bisimilar pair escapes the essential 0-order", kernel
                        )
        if not essential.relation <= rel:
            report.fail(
                f"essential order not inside plain at e={format_rate(e)}", kernel
            )
    # monotonicity in the slack
    relations = [orders_mod.largest_order(kernel, e).relation for e in small_eps]
    for lo, hi in zip(relations, relations[1:]):
        report.checked += 1
        if not lo <= hi:
            report.fail("order not monotone in the slack", kernel)
    # sampled block-diagonal sub-bisimulations satisfy the plain condition
    family = solver.family_blocks(extended=False)
    n = solver.n_blocks
    for select in itertools.chain.from_iterable(
        itertools.combinations(range(n), k) for k in range(1, min(n, 3) + 1)
    ):
        rel_blocks = frozenset((i, i) for i in select)
        for e in small_eps:
            report.checked += 1
            for (i, j) in rel_blocks:
                for c in family:
                    lefts = frozenset(bi for (bi, bj) in rel_blocks if bj in c)
                    slack = solver._theta(j, c) - solver._theta(i, c | lefts)
                    if slack > e:
                        report.fail(
                            "sub-bisimulation violates the order condition",
                            kernel,
                        )


def suite_paramcharact(budget: Budget) -> SuiteReport:
    """Bisimilarity coincides with indistinguishability at every sampled slack.

    Agreement of bisimilar pairs is checked over blind enumeration; for
    non-bisimilar pairs a distinguishing formula is constructed from the
    definable-set family (a threshold over a member the pair measures
    differently) and verified by evaluation.
    """
    report = SuiteReport("paramcharact", seed=budget.seed)
    for kernel in _suite_corpus(budget):
        partition = equivalence_mod.bisimulation(kernel)
        base_grid = _kernel_grid(kernel)
        for e in budget.epsilons:
            family = generators(kernel, extended=True, formula_slack=e)
            ev = Evaluator(kernel)
            grid = tuple(sorted(set(base_grid) | {v + e for v in base_grid}))
            formulas, _ = _formulas(budget, grid, Fragment.FULL)
            states = kernel.states
            for i, m in enumerate(states):
                for n in states[i + 1 :]:
                    report.checked += 1
                    same = partition.same_block(m, n)
                    if same:
                        if not all(
                            (m in ev.extension(f, e)) == (n in ev.extension(f, e))
                            for f in formulas
                        ):
                            report.fail(
                                f"bisimilar pair {m},{n} distinguished at "
                                f"e={format_rate(e)}",
                                kernel,
                            )
                        continue
                    witness = None
                    for c in family.sorted_sets():
                        vm, vn = kernel.measure(m, c), kernel.measure(n, c)
                        if vm == vn:
                            continue
                        candidate = L(max(vm, vn) + e, family.formulas[c])
                        if (m in ev.extension(candidate, e)) != (
                            n in ev.extension(candidate, e)
                        ):
                            witness = candidate
                            break
                    if witness is None:
                        report.fail(
                            f"non-bisimilar pair {m},{n} not distinguished at "
                            f"e={format_rate(e)}",
                            kernel,
                        )
    return report


def suite_characterization(budget: Budget) -> SuiteReport:
    """The plain order matches the positive-fragment transfer test pairwise.

    The transfer side is decided exactly by extension-pair saturation; a
    bounded formula enumeration cross-checks the oracle (every enumerated
    positive formula's behavior pair must be reachable by the saturation).
    """
    report = SuiteReport("characterization", seed=budget.seed)
    for kernel in _suite_corpus(budget, max_states=min(budget.max_states, 4)):
        solver = OrderSolver(kernel)
        base_grid = _kernel_grid(kernel)
        for e in budget.epsilons:
            verdicts = transfer_plain(kernel, e)
            pairs = solver.plain_pairs(e)
            for m in kernel.states:
                for n in kernel.states:
                    report.checked += 1
                    holds = solver.block_pair_of(m, n) in pairs
                    if holds != verdicts[(m, n)]:
                        report.fail(
                            f"order/transfer disagree on ({m},{n}) at "
                            f"e={format_rate(e)}: order={holds}",
                            kernel,
                        )
            # oracle cross-check against enumerated formulas
            grid = tuple(sorted(set(base_grid) | {v + e for v in base_grid}))
            formulas, _ = _formulas(budget, grid, Fragment.POSITIVE)
            reachable = saturate_pairs(kernel, e, negated_literals=False)
            ev = Evaluator(kernel)
            for f in formulas:
                report.checked += 1
                if (ev.extension(f, _ZERO), ev.extension(f, e)) not in reachable:
                    report.fail(
                        f"enumerated behavior escapes the saturation at "
                        f"e={format_rate(e)}",
                        kernel,
                        f,
                    )
    return report


def suite_generalization(budget: Budget) -> SuiteReport:
    """Both directions of the essential-order characterization.

    The sound direction (transfer implies order membership) holds. The
    converse is a known defect of the asymmetric encoding: it fails already
    for reflexive pairs (a negated modality over a positive body whose
    extension inflates with the slack), so this suite stays red on any honest
    corpus; notes["incomplete"] counts those converse-direction failures.
    """
    report = SuiteReport("generalization", seed=budget.seed)
    incomplete = 0
    for kernel in _suite_corpus(budget, max_states=min(budget.max_states, 4)):
        solver = OrderSolver(kernel)
        base_grid = _kernel_grid(kernel)
        for e in budget.epsilons:
            verdicts = transfer_essential(kernel, e)
            pairs = solver.essential_pairs(e)
            for m in kernel.states:
                for n in kernel.states:
                    report.checked += 1
                    holds = solver.block_pair_of(m, n) in pairs
                    if verdicts[(m, n)] and not holds:
                        report.fail(
                            f"transfer-true pair ({m},{n}) escapes the essential "
                            f"order at e={format_rate(e)}",
                            kernel,
                        )
                    if holds and not verdicts[(m, n)]:
                        incomplete += 1
                        report.fail(
                            f"essentially ordered pair ({m},{n}) fails the "
                            f"encoded transfer at e={format_rate(e)}",
                            kernel,
                        )
            # oracle cross-check against enumerated formulas
            grid = tuple(sorted(set(base_grid) | {v + e for v in base_grid}))
            formulas, _ = _formulas(budget, grid, Fragment.FULL)
            reachable = saturate_pairs(kernel, e, negated_literals=True)
            ev = Evaluator(kernel)
            for f in formulas:
                report.checked += 1
                pair = (
                    ev.extension(f, _ZERO),
                    ev.extension(encode_abs(f, e), e),
                )
                if pair not in reachable:
                    report.fail(
                        f"enumerated encoded behavior escapes the saturation at "
                        f"e={format_rate(e)}",
                        kernel,
                        f,
                    )
    report.notes["incomplete"] = incomplete
    return report


def suite_pseudometric(budget: Budget) -> SuiteReport:
    """Pseudometric axioms, attainment, and the bisimilarity kernel."""
    report = SuiteReport("pseudometric", seed=budget.seed)
    small = _suite_corpus(budget, max_states=min(budget.max_states, 4))
    for kernel in small:
        states = kernel.states
        values: dict[tuple[str, str], Fraction] = {}
        for m in states:
            for n in states:
                report.checked += 1
                d = distance(kernel, m, kernel, n)
                values[(m, n)] = d.value
                if d.value != d.attained_at:
                    report.fail(f"distance not attained for ({m},{n})", kernel)
        for m in states:
            if values[(m, m)] != 0:
                report.fail(f"d({m},{m}) is not 0", kernel)
        for m in states:
            for n in states:
                report.checked += 1
                if values[(m, n)] != values[(n, m)]:
                    report.fail(f"asymmetric distance on ({m},{n})", kernel)
                for p in states:
                    if values[(m, p)] > values[(m, n)] + values[(n, p)]:
                        report.fail(
                            f"triangle inequality broken on ({m},{n},{p})", kernel
                        )
    # kernel characterization on the larger corpus
    for kernel in _suite_corpus(budget):
        partition = equivalence_mod.bisimulation(kernel)
        solver = OrderSolver(kernel)
        zero_pairs = solver.plain_pairs(_ZERO)
        for i, m in enumerate(kernel.states):
            for n in kernel.states[i + 1 :]:
                report.checked += 1
                both = (
                    solver.block_pair_of(m, n) in zero_pairs
                    and solver.block_pair_of(n, m) in zero_pairs
                )
                if both != partition.same_block(m, n):
                    report.fail(
                        f"zero-distance/bisimilarity mismatch on ({m},{n})", kernel
                    )
    return report


def _example_proofs(e: Rate) -> list[Proof]:
    e = ensure_rate(e)
    t = Top()
    proofs = [
        Proof(e, (), (ProofLine(L(e, t), Axiom("A1", t)),), L(e, t)),
        Proof(
            e,
            (),
            (
                ProofLine(
                    Implies(L(Fraction(3), t), L(Fraction(1), t)),
                    Axiom("A2", t, None, Fraction(1), Fraction(2)),
                ),
            ),
            Implies(L(Fraction(3), t), L(Fraction(1), t)),
        ),
        Proof(
            e,
            (),
            (
                ProofLine(Implies(And(t, t), t), Tautology()),
                ProofLine(
                    Implies(L(Fraction(2), And(t, t)), L(Fraction(2), t)),
                    RuleR1(1, Fraction(2)),
                ),
            ),
            Implies(L(Fraction(2), And(t, t)), L(Fraction(2), t)),
        ),
    ]
    body = And(t, Not(Top()))
    proofs.append(
        Proof(
            e,
            (),
            (
                ProofLine(
                    axiom_instance("A3", e, t, body, e, e),
                    Axiom("A3", t, body, e, e),
                ),
            ),
            axiom_instance("A3", e, t, body, e, e),
        )
    )
    return proofs


def suite_soundness(budget: Budget) -> SuiteReport:
    """Schema validity on every corpus kernel, and accepted proofs stay valid."""
    report = SuiteReport("soundness", seed=budget.seed)
    kernels = _suite_corpus(budget)
    pool_grid = (_ZERO, Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
    formulas, _ = _formulas(budget, pool_grid[:3], Fragment.FULL, depth=1)
    substitutions = formulas[: min(len(formulas), 8)]
    instantiations = 0
    for e in budget.epsilons:
        for phi in substitutions:
            for psi in substitutions[:4]:
                for r in pool_grid:
                    for s in pool_grid[:3]:
                        for name in ("A1", "A2", "A3", "A4"):
                            if name in ("A3", "A4") and r + s - e < 0:
                                continue
                            instance = axiom_instance(
                                name, e, phi,
                                psi if name in ("A3", "A4") else None,
                                r, s,
                            )
                            instantiations += 1
                            report.checked += 1
                            for kernel in kernels:
                                if not valid_on(kernel, instance, e):
                                    report.fail(
                                        f"{name} instance invalid at "
                                        f"e={format_rate(e)}",
                                        kernel,
                                        instance,
                                    )
                                    break
    report.notes["instantiations"] = instantiations
    for e in budget.epsilons:
        for proof in _example_proofs(e):
            report.checked += 1
            try:
                check(proof)
            except Exception as exc:
                report.fail(f"example proof rejected: {exc}")
                continue
            if proof.hypotheses:
                continue
            for kernel in kernels:
                if not valid_on(kernel, proof.conclusion, proof.epsilon):
                    report.fail(
                        "accepted conclusion not valid at its slack",
                        kernel,
                        proof.conclusion,
                    )
    return report


def suite_deduction(budget: Budget) -> SuiteReport:
    """Detachment across slack levels, pointwise and corpus-wide."""
    report = SuiteReport("deduction", seed=budget.seed)
    kernels = _suite_corpus(budget)
    positive_pairs = [
        (e2, e) for (e2, e) in budget.epsilon_pairs if e2 > 0 and e > 0
    ] or [(Fraction(1, 10), Fraction(1, 3))]
    evs = {k: Evaluator(k) for k in kernels}
    grids = {k: _kernel_grid(k) for k in kernels}
    for kernel in kernels:
        ev = evs[kernel]
        pos, _ = _formulas(budget, grids[kernel], Fragment.POSITIVE, depth=1)
        full, _ = _formulas(budget, grids[kernel], Fragment.FULL, depth=1)
        for phi in pos[: min(len(pos), 12)]:
            for psi in full[: min(len(full), 12)]:
                for e2, e in positive_pairs:
                    report.checked += 1
                    level = e2 + e
                    direct = ev.extension(Implies(phi, psi), level) & ev.extension(
                        phi, e2
                    )
                    if not direct <= ev.extension(psi, level):
                        report.fail(
                            "pointwise detachment broken", kernel, Implies(phi, psi)
                        )
                    contra = ev.extension(
                        Implies(Not(psi), Not(phi)), level
                    ) & ev.extension(phi, e2)
                    if not contra <= ev.extension(psi, level):
                        report.fail(
                            "pointwise contrapositive detachment broken",
                            kernel,
                            phi,
                        )
    # corpus-level reading: premises valid on every kernel force the conclusion
    shared_grid = (_ZERO, Fraction(1), Fraction(2))
    pos, _ = _formulas(budget, shared_grid, Fragment.POSITIVE, depth=1)
    full, _ = _formulas(budget, shared_grid, Fragment.FULL, depth=1)
    nonvacuous = 0
    for phi in pos[: min(len(pos), 10)]:
        for psi in full[: min(len(full), 10)]:
            for e2, e in positive_pairs[:2]:
                level = e2 + e
                report.checked += 1
                premises = all(
                    valid_on(k, Implies(phi, psi), level) and valid_on(k, phi, e2)
                    for k in kernels
                )
                if not premises:
                    continue
                nonvacuous += 1
                if not all(valid_on(k, psi, level) for k in kernels):
                    report.fail("corpus-level detachment broken", formula=phi)
    report.notes["nonvacuous"] = nonvacuous
    return report


def suite_l4(budget: Budget) -> SuiteReport:
    """Proof translation up and down re-checks and round-trips."""
    report = SuiteReport("l4-translation", seed=budget.seed)
    shifts = (Fraction(1, 2), Fraction(1), Fraction(1, 10))
    for e in budget.epsilons:
        for proof in _example_proofs(e):
            for shift_by in shifts:
                report.checked += 1
                try:
                    up = translate_proof(proof, shift_by, "up")
                    back = translate_proof(up, shift_by, "down")
                except Exception as exc:
                    report.fail(f"translation failed: {exc}")
                    continue
                if back != proof:
                    report.fail("down(up(proof)) differs from the original")
    return report


SUITES: dict[str, Callable[[Budget], SuiteReport]] = {
    "t2": suite_t2,
    "c2": suite_c2,
    "l1-positive-monotonicity": suite_l1,
    "l2-limit": suite_l2,
    "t1-generators": suite_t1,
    "c1-extensions": suite_c1,
    "l5-orders": suite_l5,
    "paramcharact": suite_paramcharact,
    "characterization": suite_characterization,
    "generalization": suite_generalization,
    "pseudometric": suite_pseudometric,
    "soundness": suite_soundness,
    "deduction": suite_deduction,
    "l4-translation": suite_l4,
}


def run_suite(name: str, budget: Optional[Budget] = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(
            f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}"
        )
    budget = budget or default_budget()
    start = time.monotonic()
    report = SUITES[name](budget)
    report.elapsed_s = time.monotonic() - start
    return report


def run_all(budget: Optional[Budget] = None) -> list[SuiteReport]:
    return [run_suite(name, budget) for name in SUITES]
