"""Dialogue-driven construction of material bases, with a nonmonotonic
multisuccedent sequent prover over the result.

The pieces, bottom to top:

- formula: propositional language, parser, canonical renderer, sequents
- base: material bases (atoms + atomic implications with provenance)
- prover: backward proof search with memoization, proof objects, analyses
- dialectic: event-sourced commitment protocol (the session engine)
- opponent: scripted and remote oracles that propose tensions/challenges
- service: HTTP facade over sessions and the prover
- cli: command-line front end (`elenchus ...`, `python -m elenchus ...`)
"""

from .base import (
    AtomicImplication,
    BaseFormatError,
    MaterialBase,
    UnknownAtomError,
    base_from_dict,
    base_to_dict,
    load_base,
    save_base,
)
from .dialectic import (
    DialecticError,
    DialecticalState,
    Event,
    Session,
    apply_event,
    extract_base,
    initial_state,
    load_session,
    replay,
    save_session,
    snapshot,
)
from .formula import (
    And,
    Atom,
    Formula,
    Imp,
    Neg,
    Or,
    ParseError,
    Sequent,
    parse_formula,
    parse_sequent,
    render,
    sequent,
)
from .opponent import (
    HttpOracle,
    OpponentProposal,
    OracleConfig,
    OracleUnavailableError,
    ScriptedOracle,
    integrate_proposal,
)
from .prover import (
    Prover,
    QueryResult,
    ResourceLimitError,
    containment_audit,
    ddt_check,
    independence_matrix,
    monotonicity_defeats,
    proof_to_json,
    proof_to_text,
    transitivity_gaps,
    validate_proof,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "AtomicImplication",
    "BaseFormatError",
    "DialecticError",
    "DialecticalState",
    "Event",
    "Formula",
    "HttpOracle",
    "Imp",
    "MaterialBase",
    "Neg",
    "OpponentProposal",
    "Or",
    "OracleConfig",
    "OracleUnavailableError",
    "ParseError",
    "Prover",
    "QueryResult",
    "ResourceLimitError",
    "ScriptedOracle",
    "Sequent",
    "Session",
    "UnknownAtomError",
    "apply_event",
    "base_from_dict",
    "base_to_dict",
    "containment_audit",
    "ddt_check",
    "extract_base",
    "independence_matrix",
    "initial_state",
    "integrate_proposal",
    "load_base",
    "load_session",
    "monotonicity_defeats",
    "parse_formula",
    "parse_sequent",
    "proof_to_json",
    "proof_to_text",
    "render",
    "replay",
    "save_base",
    "save_session",
    "sequent",
    "snapshot",
    "transitivity_gaps",
    "validate_proof",
]
