"""Checker for finite Hilbert-style derivations in the slack-indexed system.

Lines are justified by axiom-schema instances (A1-A4, with explicit
substitutions so checking is purely syntactic), propositional consequence of
earlier lines over modal atoms, modus ponens, the monotonicity rule, or a
named hypothesis. Formulas are compared modulo parser sugar. The two
infinitary rules of the system have no finite proof objects and are therefore
not representable here.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import IO, Union

from .errors import InternalCheckError, ProofCheckError
from .formula import (
    And,
    Formula,
    Implies,
    L,
    Not,
    encode_down,
    encode_up,
    implies_operands,
    modal_atoms,
    modal_indices,
    parse,
    print_formula,
    prop_eval,
    strip_sugar,
)
from .rational import Rate, ensure_rate, format_rate

MAX_TAUTOLOGY_ATOMS = 16


@dataclass(frozen=True)
class Axiom:
    name: str  # A1 | A2 | A3 | A4
    phi: Formula
    psi: Formula | None = None
    r: Rate | None = None
    s: Rate | None = None


@dataclass(frozen=True)
class Tautology:
    premises: tuple[int, ...] = ()


@dataclass(frozen=True)
class ModusPonens:
    antecedent: int
    implication: int


@dataclass(frozen=True)
class RuleR1:
    line: int
    rate: Rate


@dataclass(frozen=True)
class Hypothesis:
    index: int


Justification = Union[Axiom, Tautology, ModusPonens, RuleR1, Hypothesis]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class Proof:
    epsilon: Rate
    hypotheses: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "epsilon", ensure_rate(self.epsilon))


def axiom_instance(name: str, e: Rate, phi: Formula, psi: Formula | None,
                   r: Rate | None, s: Rate | None) -> Formula:
    """Build the schema instance; raises ValueError("negative index") when
    the A3/A4 index r+s-e would leave the grammar."""
    e = ensure_rate(e)
    if name == "A1":
        return L(e, phi)
    if name == "A2":
        return Implies(L(r + s, phi), L(r, phi))
    if name in ("A3", "A4"):
        if psi is None:
            raise ValueError("A3/A4 need a psi substitution")
        head = r + s - e
        if head < 0:
            raise ValueError(
                f"negative index: r+s-e = {format_rate(r + s)}-{format_rate(e)} < 0"
            )
        both = L(r, And(phi, psi))
        other = L(s, And(phi, Not(psi)))
        if name == "A3":
            return Implies(And(both, other), L(head, phi))
        return Implies(And(Not(both), Not(other)), Not(L(head, phi)))
    raise ValueError(f"unknown axiom {name!r}")


def check(proof: Proof) -> None:
    """Raise ProofCheckError at the first bad line; None when the proof checks."""
    stripped: list[Formula] = []
    hypotheses = [strip_sugar(h) for h in proof.hypotheses]
    for number, line in enumerate(proof.lines, start=1):
        formula = strip_sugar(line.formula)
        _check_line(proof, number, formula, line.by, stripped, hypotheses)
        stripped.append(formula)
    if not proof.lines:
        raise ProofCheckError(0, "proof has no lines")
    if strip_sugar(proof.conclusion) != stripped[-1]:
        raise ProofCheckError(
            len(proof.lines), "conclusion differs from the last line"
        )


def check_result(proof: Proof) -> tuple[bool, str | None]:
    try:
        check(proof)
        return True, None
    except ProofCheckError as exc:
        return False, str(exc)


def _reference(number: int, index: int, stripped: list[Formula]) -> Formula:
    if not 1 <= index <= len(stripped):
        raise ProofCheckError(number, f"dangling reference to line {index}")
    return stripped[index - 1]


def _check_line(
    proof: Proof,
    number: int,
    formula: Formula,
    by: Justification,
    stripped: list[Formula],
    hypotheses: list[Formula],
) -> None:
    if isinstance(by, Axiom):
        try:
            expected = axiom_instance(by.name, proof.epsilon, strip_sugar(by.phi),
                                      strip_sugar(by.psi) if by.psi is not None else None,
                                      by.r, by.s)
        except ValueError as exc:
            raise ProofCheckError(number, str(exc)) from exc
        if strip_sugar(expected) != formula:
            raise ProofCheckError(
                number,
                f"schema mismatch: {by.name} instance is {print_formula(expected)}",
            )
        return
    if isinstance(by, Hypothesis):
        if not 0 <= by.index < len(hypotheses):
            raise ProofCheckError(number, f"no hypothesis {by.index}")
        if hypotheses[by.index] != formula:
            raise ProofCheckError(number, "formula differs from the named hypothesis")
        return
    if isinstance(by, ModusPonens):
        antecedent = _reference(number, by.antecedent, stripped)
        implication = _reference(number, by.implication, stripped)
        parts = implies_operands(implication)
        if parts is None:
            raise ProofCheckError(
                number, f"line {by.implication} is not an implication"
            )
        if parts[0] != antecedent:
            raise ProofCheckError(
                number, f"line {by.antecedent} is not the antecedent of line {by.implication}"
            )
        if parts[1] != formula:
            raise ProofCheckError(number, "formula is not the consequent")
        return
    if isinstance(by, RuleR1):
        premise = _reference(number, by.line, stripped)
        parts = implies_operands(premise)
        if parts is None:
            raise ProofCheckError(number, f"line {by.line} is not an implication")
        expected = strip_sugar(Implies(L(by.rate, parts[0]), L(by.rate, parts[1])))
        if expected != formula:
            raise ProofCheckError(
                number, f"monotonicity instance is {print_formula(expected)}"
            )
        return
    if isinstance(by, Tautology):
        premises = [_reference(number, i, stripped) for i in by.premises]
        _check_tautology(number, premises, formula)
        return
    raise ProofCheckError(number, f"unknown justification {by!r}")


def _check_tautology(number: int, premises: list[Formula], formula: Formula) -> None:
    atoms: dict = {}
    for g in premises + [formula]:
        for atom in modal_atoms(g):
            atoms.setdefault(atom, None)
    atom_list = list(atoms)
    if len(atom_list) > MAX_TAUTOLOGY_ATOMS:
        raise ProofCheckError(
            number,
            f"tautology check over {len(atom_list)} modal atoms exceeds the "
            f"limit of {MAX_TAUTOLOGY_ATOMS}",
        )
    for bits in itertools.product((False, True), repeat=len(atom_list)):
        assignment = dict(zip(atom_list, bits))
        if all(prop_eval(p, assignment) for p in premises) and not prop_eval(
            formula, assignment
        ):
            raise ProofCheckError(
                number,
                "tautology check failed under assignment "
                + ", ".join(
                    f"{print_formula(a)}={'1' if assignment[a] else '0'}"
                    for a in atom_list
                ),
            )


# --- translation between slack levels ----------------------------------------


def translate_proof(proof: Proof, e: Rate, direction: str) -> Proof:
    """Shift a checked proof up or down by e; the result checks at the new slack."""
    e = ensure_rate(e)
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    if direction == "down":
        for where, f in _all_formulas(proof):
            low = min(modal_indices(f), default=None)
            if low is not None and low < e:
                raise ValueError(f"index underflow in {where}")
        if proof.epsilon - e < 0:
            raise ValueError("target epsilon negative")
        shift = lambda f: encode_down(f, e)
        new_epsilon = proof.epsilon - e
        delta = -e
    else:
        shift = lambda f: encode_up(f, e)
        new_epsilon = proof.epsilon + e
        delta = e

    def move(by: Justification) -> Justification:
        if isinstance(by, Axiom):
            if by.name == "A1":
                return Axiom("A1", shift(by.phi))
            if by.name == "A2":
                return Axiom("A2", shift(by.phi), None, by.r + delta, by.s)
            return Axiom(by.name, shift(by.phi), shift(by.psi), by.r + delta, by.s + delta)
        if isinstance(by, RuleR1):
            return RuleR1(by.line, by.rate + delta)
        return by

    translated = Proof(
        epsilon=new_epsilon,
        hypotheses=tuple(shift(h) for h in proof.hypotheses),
        lines=tuple(ProofLine(shift(l.formula), move(l.by)) for l in proof.lines),
        conclusion=shift(proof.conclusion),
    )
    try:
        check(translated)
    except ProofCheckError as exc:
        raise InternalCheckError(f"translated proof fails to check: {exc}") from exc
    return translated


def _all_formulas(proof: Proof):
    for i, h in enumerate(proof.hypotheses):
        yield f"hypothesis {i}", h
    for i, line in enumerate(proof.lines, start=1):
        yield f"line {i}", line.formula
        if isinstance(line.by, Axiom):
            yield f"line {i} substitution", line.by.phi
            if line.by.psi is not None:
                yield f"line {i} substitution", line.by.psi
    yield "conclusion", proof.conclusion


# --- JSON proof files ---------------------------------------------------------
#
# {"epsilon": "1/2", "hypotheses": ["L{1} T"],
#  "lines": [{"formula": "L{1/2} T", "by": {"axiom": "A1", "phi": "T"}},
#            {"formula": "...",      "by": {"mp": [1, 2]}},
#            {"formula": "...",      "by": {"r1": [1, "2"]}},
#            {"formula": "...",      "by": {"taut": [1]}},
#            {"formula": "...",      "by": {"hyp": 0}}],
#  "conclusion": "..."}


def _justification_from_doc(doc: dict, number: int) -> Justification:
    if not isinstance(doc, dict):
        raise ProofCheckError(number, '"by" must be an object')
    if "axiom" in doc:
        name = doc["axiom"]
        phi = parse(doc.get("phi", "T"))
        psi = parse(doc["psi"]) if "psi" in doc else None
        r = ensure_rate(doc["r"]) if "r" in doc else None
        s = ensure_rate(doc["s"]) if "s" in doc else None
        if name in ("A2", "A3", "A4") and (r is None or s is None):
            raise ProofCheckError(number, f"{name} needs rates r and s")
        return Axiom(name, phi, psi, r, s)
    if "mp" in doc:
        i, j = doc["mp"]
        return ModusPonens(int(i), int(j))
    if "r1" in doc:
        line, rate = doc["r1"]
        return RuleR1(int(line), ensure_rate(rate))
    if "taut" in doc:
        return Tautology(tuple(int(i) for i in doc["taut"]))
    if "hyp" in doc:
        return Hypothesis(int(doc["hyp"]))
    raise ProofCheckError(number, f"unknown justification keys {sorted(doc)}")


def loads_proof(text: str) -> Proof:
    doc = json.loads(text)
    lines = tuple(
        ProofLine(parse(entry["formula"]), _justification_from_doc(entry["by"], i))
        for i, entry in enumerate(doc.get("lines", []), start=1)
    )
    return Proof(
        epsilon=ensure_rate(doc["epsilon"]),
        hypotheses=tuple(parse(h) for h in doc.get("hypotheses", [])),
        lines=lines,
        conclusion=parse(doc["conclusion"]),
    )


def load_proof(source: Union[str, IO[str]]) -> Proof:
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            return loads_proof(fh.read())
    return loads_proof(source.read())


def _justification_to_doc(by: Justification) -> dict:
    if isinstance(by, Axiom):
        doc: dict = {"axiom": by.name, "phi": print_formula(by.phi)}
        if by.psi is not None:
            doc["psi"] = print_formula(by.psi)
        if by.r is not None:
            doc["r"] = format_rate(by.r)
        if by.s is not None:
            doc["s"] = format_rate(by.s)
        return doc
    if isinstance(by, ModusPonens):
        return {"mp": [by.antecedent, by.implication]}
    if isinstance(by, RuleR1):
        return {"r1": [by.line, format_rate(by.rate)]}
    if isinstance(by, Tautology):
        return {"taut": list(by.premises)}
    if isinstance(by, Hypothesis):
        return {"hyp": by.index}
    raise TypeError(f"unknown justification {by!r}")


def dumps_proof(proof: Proof) -> str:
    doc = {
        "epsilon": format_rate(proof.epsilon),
        "hypotheses": [print_formula(h) for h in proof.hypotheses],
        "lines": [
            {"formula": print_formula(l.formula), "by": _justification_to_doc(l.by)}
            for l in proof.lines
        ],
        "conclusion": print_formula(proof.conclusion),
    }
    return json.dumps(doc, indent=2) + "\n"
