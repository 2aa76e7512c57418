"""Backward proof search for the nonmonotonic multisuccedent calculus.

The calculus is shared-context and set-based with no weakening and no
cut. Axioms are Containment (sides share a member) plus the base's
stored atomic implications, matched exactly. Backward rules, principal
formula removed from its side, side formulas carried unchanged:

    L~   G, ~A |- D    <=  G |- A, D
    R~   G |- ~A, D    <=  G, A |- D
    L&   G, A & B |- D <=  G, A, B |- D
    R&   G |- A & B, D <=  G |- A, D   and  G |- B, D
    L|   G, A | B |- D <=  G, A |- D   and  G, B |- D
    R|   G |- A | B, D <=  G |- A, B, D
    L->  G, A -> B |- D <= G |- A, D   and  G, B |- D
    R->  G |- A -> B, D <= G, A |- B, D

Search backtracks over every compound principal on either side, in a
fixed order (antecedent compounds sorted by rendered text, then
succedent), so results and proof trees are deterministic. Every rule
strictly decreases the connective count, hence termination; memoization
is keyed on the sequent value itself, which for frozensets of formulas
is the canonical identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .base import AtomicImplication, MaterialBase, UnknownAtomError
from .formula import And, Atom, Formula, Imp, Neg, Or, Sequent, render

RULE_AXIOM_CONTAINMENT = "AxiomContainment"
RULE_AXIOM_BASE = "AxiomBase"
RULE_NAMES = {
    RULE_AXIOM_CONTAINMENT, RULE_AXIOM_BASE,
    "L∧", "R∧", "L∨", "R∨", "L→", "R→", "L¬", "R¬",
}

DEFAULT_NODE_BUDGET = 10_000_000


class ResourceLimitError(RuntimeError):
    """Search exceeded the configured node budget."""

    code = "ResourceLimit"

    def __init__(self, budget: int):
        super().__init__(f"node budget exhausted ({budget})")
        self.budget = budget


class InvalidProofError(ValueError):
    code = "InvalidProof"


class OverlappingGroupsError(ValueError):
    code = "OverlappingGroups"


@dataclass(frozen=True)
class ProofNode:
    conclusion: Sequent
    rule: str
    principal: Optional[Formula]
    premises: tuple["ProofNode", ...]


@dataclass(frozen=True)
class ProofStats:
    nodes: int
    memo_hits: int


@dataclass(frozen=True)
class QueryResult:
    derivable: bool
    proof: Optional[ProofNode]
    stats: ProofStats


def _expand(s: Sequent, principal: Formula, in_antecedent: bool) -> tuple[str, tuple[Sequent, ...]]:
    """Premises of the unique rule for this principal, backward reading."""
    ante, succ = s.antecedent, s.succedent
    if in_antecedent:
        rest = ante - {principal}
        match principal:
            case Neg(a):
                return "L¬", (Sequent(rest, succ | {a}),)
            case And(a, b):
                return "L∧", (Sequent(rest | {a, b}, succ),)
            case Or(a, b):
                return "L∨", (Sequent(rest | {a}, succ), Sequent(rest | {b}, succ))
            case Imp(a, b):
                return "L→", (Sequent(rest, succ | {a}), Sequent(rest | {b}, succ))
    else:
        rest = succ - {principal}
        match principal:
            case Neg(a):
                return "R¬", (Sequent(ante | {a}, rest),)
            case And(a, b):
                return "R∧", (Sequent(ante, rest | {a}), Sequent(ante, rest | {b}))
            case Or(a, b):
                return "R∨", (Sequent(ante, rest | {a, b}),)
            case Imp(a, b):
                return "R→", (Sequent(ante | {a}, rest | {b}),)
    raise ValueError(f"no rule for principal {render(principal)}")


def _principal_candidates(s: Sequent) -> list[tuple[Formula, bool]]:
    left = sorted((f for f in s.antecedent if not isinstance(f, Atom)), key=render)
    right = sorted((f for f in s.succedent if not isinstance(f, Atom)), key=render)
    return [(f, True) for f in left] + [(f, False) for f in right]


class Prover:
    """Decision procedure for one material base.

    The memo table persists across queries (sound: derivability depends
    only on the base, which is immutable), so batches share work.
    ``containment`` selects the axiom check: "formula" accepts any
    shared formula between the sides, "atomic" only shared atoms. The
    two agree on every query; the atomic engine exists as the slow
    reference for that admissibility check.
    """

    def __init__(self, base: MaterialBase, *, node_budget: int = DEFAULT_NODE_BUDGET,
                 memoize: bool = True, containment: str = "formula"):
        if containment not in ("formula", "atomic"):
            raise ValueError(f"containment must be 'formula' or 'atomic', got {containment!r}")
        self.base = base
        self.node_budget = node_budget
        self.memoize = memoize
        self.containment = containment
        self._memo: dict[Sequent, Optional[ProofNode]] = {}
        self._nodes = 0
        self._memo_hits = 0

    def derivable(self, s: Sequent) -> QueryResult:
        unknown = s.atoms() - self.base.atoms
        if unknown:
            raise UnknownAtomError(unknown)
        self._nodes = 0
        self._memo_hits = 0
        proof = self._prove(s)
        return QueryResult(proof is not None, proof, ProofStats(self._nodes, self._memo_hits))

    def derivable_batch(self, sequents: Iterable[Sequent]) -> list[QueryResult]:
        return [self.derivable(s) for s in sequents]

    def _axiom_rule(self, s: Sequent) -> Optional[str]:
        shared = s.antecedent & s.succedent
        if self.containment == "formula":
            if shared:
                return RULE_AXIOM_CONTAINMENT
        elif any(isinstance(f, Atom) for f in shared):
            return RULE_AXIOM_CONTAINMENT
        if s.is_atomic() and self.base.has_implication(
                (f.name for f in s.antecedent), (f.name for f in s.succedent)):
            return RULE_AXIOM_BASE
        return None

    def _prove(self, s: Sequent) -> Optional[ProofNode]:
        if self.memoize and s in self._memo:
            self._memo_hits += 1
            return self._memo[s]
        self._nodes += 1
        if self._nodes > self.node_budget:
            raise ResourceLimitError(self.node_budget)

        proof: Optional[ProofNode] = None
        axiom = self._axiom_rule(s)
        if axiom is not None:
            proof = ProofNode(s, axiom, None, ())
        else:
            for principal, in_antecedent in _principal_candidates(s):
                rule, premises = _expand(s, principal, in_antecedent)
                subproofs = []
                for premise in premises:
                    sub = self._prove(premise)
                    if sub is None:
                        break
                    subproofs.append(sub)
                if len(subproofs) == len(premises):
                    proof = ProofNode(s, rule, principal, tuple(subproofs))
                    break

        if self.memoize:
            self._memo[s] = proof
        return proof


def validate_proof(base: MaterialBase, node: ProofNode, *, containment: str = "formula") -> bool:
    """Re-check every rule application; raises InvalidProofError on any defect."""
    s = node.conclusion
    if node.rule in (RULE_AXIOM_CONTAINMENT, RULE_AXIOM_BASE):
        if node.premises:
            raise InvalidProofError(f"axiom node with premises at {s.render()}")
        if node.rule == RULE_AXIOM_CONTAINMENT:
            shared = s.antecedent & s.succedent
            ok = bool(shared) if containment == "formula" else any(
                isinstance(f, Atom) for f in shared)
        else:
            ok = s.is_atomic() and base.has_implication(
                (f.name for f in s.antecedent), (f.name for f in s.succedent))
        if not ok:
            raise InvalidProofError(f"bogus axiom {node.rule} at {s.render()}")
        return True
    if node.rule not in RULE_NAMES:
        raise InvalidProofError(f"unknown rule {node.rule!r}")
    if node.principal is None:
        raise InvalidProofError(f"rule {node.rule} without principal at {s.render()}")
    in_antecedent = node.rule.startswith("L")
    side = s.antecedent if in_antecedent else s.succedent
    if node.principal not in side:
        raise InvalidProofError(f"principal {render(node.principal)} not in sequent {s.render()}")
    rule, premises = _expand(s, node.principal, in_antecedent)
    if rule != node.rule:
        raise InvalidProofError(f"rule mismatch at {s.render()}: {node.rule} vs {rule}")
    if tuple(p.conclusion for p in node.premises) != premises:
        raise InvalidProofError(f"premises mismatch at {s.render()} for {node.rule}")
    for premise in node.premises:
        validate_proof(base, premise, containment=containment)
    return True


def proof_to_text(node: ProofNode, indent: int = 0) -> str:
    lines = [f"{'  ' * indent}[{node.rule}] {node.conclusion.render()}"]
    for premise in node.premises:
        lines.append(proof_to_text(premise, indent + 1))
    return "\n".join(lines)


def proof_to_json(node: ProofNode) -> dict:
    return {
        "sequent": node.conclusion.render(),
        "rule": node.rule,
        "premises": [proof_to_json(p) for p in node.premises],
    }


# ---------------------------------------------------------------------------
# Base-level analyses
# ---------------------------------------------------------------------------


def containment_audit(base: MaterialBase) -> dict[str, bool]:
    """Self-derivability a |- a for every atom of the base."""
    prover = Prover(base)
    return {a: prover.derivable(Sequent({Atom(a)}, {Atom(a)})).derivable
            for a in sorted(base.atoms)}


def transitivity_gaps(base: MaterialBase) -> list[tuple[str, str, str]]:
    """Chains a |- b, b |- c (singleton implications) where a |- c fails."""
    prover = Prover(base)
    singles = sorted((next(iter(i.lhs)), next(iter(i.rhs)))
                     for i in base.implications
                     if len(i.lhs) == 1 and len(i.rhs) == 1)
    gaps = []
    for a, b in singles:
        for b2, c in singles:
            if b2 != b:
                continue
            if not prover.derivable(Sequent({Atom(a)}, {Atom(c)})).derivable:
                gaps.append((a, b, c))
    return sorted(set(gaps))


def monotonicity_defeats(base: MaterialBase) -> list[tuple[AtomicImplication, str]]:
    """Pairs (implication, extra atom) where strengthening the lhs defeats it."""
    prover = Prover(base)
    defeats = []
    for imp in base.implications:
        for extra in sorted(base.atoms - imp.lhs - imp.rhs):
            widened = Sequent({Atom(a) for a in imp.lhs | {extra}},
                              {Atom(a) for a in imp.rhs})
            if not prover.derivable(widened).derivable:
                defeats.append((imp, extra))
    return defeats


@dataclass(frozen=True)
class IndependenceCell:
    pairs: int
    derivable: int


@dataclass(frozen=True)
class IndependenceReport:
    groups: dict
    pair_count: int
    derivable_count: int
    cells: dict
    derivable_pairs: tuple[tuple[str, str], ...]


def independence_matrix(base: MaterialBase, groups: Mapping[str, Iterable[str]]) -> IndependenceReport:
    """Cross-group derivability survey.

    For each unordered pair of atoms from different groups, tests both
    x |- y and y |- x; a pair counts as derivable if either direction
    succeeds. Groups must be disjoint and within the base vocabulary.
    """
    named = {name: frozenset(members) for name, members in groups.items()}
    seen: dict[str, str] = {}
    for name, members in named.items():
        unknown = members - base.atoms
        if unknown:
            raise UnknownAtomError(unknown)
        for atom in members:
            if atom in seen:
                raise OverlappingGroupsError(
                    f"atom {atom} in both {seen[atom]} and {name}")
            seen[atom] = name

    prover = Prover(base)
    cells: dict[tuple[str, str], IndependenceCell] = {}
    hits: list[tuple[str, str]] = []
    total_pairs = 0
    group_names = sorted(named)
    for i, g1 in enumerate(group_names):
        for g2 in group_names[i + 1:]:
            pairs = 0
            derivable = 0
            for x in sorted(named[g1]):
                for y in sorted(named[g2]):
                    pairs += 1
                    forward = prover.derivable(Sequent({Atom(x)}, {Atom(y)})).derivable
                    backward = prover.derivable(Sequent({Atom(y)}, {Atom(x)})).derivable
                    if forward or backward:
                        derivable += 1
                        hits.append((x, y))
            cells[(g1, g2)] = IndependenceCell(pairs, derivable)
            total_pairs += pairs
    return IndependenceReport(
        groups={n: named[n] for n in group_names},
        pair_count=total_pairs,
        derivable_count=sum(c.derivable for c in cells.values()),
        cells=cells,
        derivable_pairs=tuple(sorted(hits)),
    )


@dataclass(frozen=True)
class DdtResult:
    conditional_side: bool
    premise_side: bool

    @property
    def agree(self) -> bool:
        return self.conditional_side == self.premise_side


def ddt_check(base: MaterialBase, gamma: Iterable[Formula], a: Formula, b: Formula,
              delta: Iterable[Formula] = ()) -> DdtResult:
    """Deduction-detachment probe: G |- A->B, D  vs  G, A |- B, D."""
    gamma = frozenset(gamma)
    delta = frozenset(delta)
    prover = Prover(base)
    conditional = prover.derivable(Sequent(gamma, delta | {Imp(a, b)})).derivable
    premise = prover.derivable(Sequent(gamma | {a}, delta | {b})).derivable
    return DdtResult(conditional, premise)
