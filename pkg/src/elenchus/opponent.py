"""Opponent oracles: scripted scripts and a remote-LLM HTTP adapter.

An oracle only ever *proposes*; proposals are advisory. Everything the
opponent suggests is turned into candidate events and speculatively
applied through the same engine the respondent uses; whatever the
engine rejects is discarded and recorded, never raised to the caller.
Nothing enters the implication store here: that happens only through a
respondent AcceptTension event.

The HTTP adapter is provider-agnostic: endpoint, header template,
request template and a dotted response path are configuration, and the
credential is referenced by environment-variable name only, so it can
never leak into serialized configs or logs.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Protocol, Sequence

import requests

from .dialectic import (
    OPPONENT,
    DialecticError,
    DialecticalState,
    Event,
    PropositionRecord,
    ProposeTension,
    RaiseChallenge,
    apply_event,
    event_to_dict,
    snapshot,
)
from .formula import ATOM_NAME

log = logging.getLogger(__name__)


class OracleUnavailableError(Exception):
    """Endpoint unreachable, misconfigured, or persistently failing."""

    code = "OracleUnavailable"


class MalformedResponseError(Exception):
    """Oracle reply was not a usable proposal, even after the retry."""

    code = "MalformedResponse"


class EmptyDocumentError(ValueError):
    code = "EmptyDocument"


class ScriptFormatError(ValueError):
    code = "ScriptFormat"


# ---------------------------------------------------------------------------
# Proposals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensionProposal:
    lhs: frozenset
    rhs: frozenset
    rationale: str = ""
    id: str = ""  # optional pinned id; autogenerated from the seq otherwise


@dataclass(frozen=True)
class ChallengeProposal:
    question: str
    targets: frozenset = frozenset()
    id: str = ""


@dataclass(frozen=True)
class PropositionProposal:
    id: str
    text: str
    suggested_side: str = "commit"


@dataclass(frozen=True)
class OpponentProposal:
    tensions: tuple = ()
    challenges: tuple = ()
    new_propositions: tuple = ()

    def is_empty(self) -> bool:
        return not (self.tensions or self.challenges or self.new_propositions)


def _string_list(doc: dict, key: str) -> frozenset:
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise MalformedResponseError(f"{key!r} must be a list of strings")
    return frozenset(value)


def proposal_from_dict(doc: object) -> OpponentProposal:
    if not isinstance(doc, dict):
        raise MalformedResponseError("proposal must be a JSON object")
    tensions = []
    for t in doc.get("tensions", []):
        if not isinstance(t, dict):
            raise MalformedResponseError("tension entries must be objects")
        tensions.append(TensionProposal(
            _string_list(t, "lhs"), _string_list(t, "rhs"),
            t.get("rationale", "") or "", t.get("id", "") or ""))
    challenges = []
    for c in doc.get("challenges", []):
        if not isinstance(c, dict):
            raise MalformedResponseError("challenge entries must be objects")
        question = c.get("question")
        if not isinstance(question, str):
            raise MalformedResponseError("challenge without question text")
        challenges.append(ChallengeProposal(
            question, _string_list(c, "targets"), c.get("id", "") or ""))
    propositions = []
    for p in doc.get("newPropositions", []):
        if not isinstance(p, dict) or not isinstance(p.get("id"), str) \
                or not isinstance(p.get("text"), str):
            raise MalformedResponseError("newPropositions entries need id and text")
        propositions.append(PropositionProposal(
            p["id"], p["text"], p.get("suggestedSide", "commit")))
    return OpponentProposal(tuple(tensions), tuple(challenges), tuple(propositions))


def proposal_to_dict(proposal: OpponentProposal) -> dict:
    doc: dict = {"tensions": [], "challenges": [], "newPropositions": []}
    for t in proposal.tensions:
        entry = {"lhs": sorted(t.lhs), "rhs": sorted(t.rhs)}
        if t.rationale:
            entry["rationale"] = t.rationale
        if t.id:
            entry["id"] = t.id
        doc["tensions"].append(entry)
    for c in proposal.challenges:
        entry = {"question": c.question, "targets": sorted(c.targets)}
        if c.id:
            entry["id"] = c.id
        doc["challenges"].append(entry)
    for p in proposal.new_propositions:
        doc["newPropositions"].append(
            {"id": p.id, "text": p.text, "suggestedSide": p.suggested_side})
    return doc


class Oracle(Protocol):
    def propose(self, state: DialecticalState, transcript: Sequence[Event]) -> OpponentProposal:
        ...

    def extract_commitments(self, source: str) -> list[PropositionRecord]:
        ...


# ---------------------------------------------------------------------------
# Proposal integration (the validation pipeline)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegrationResult:
    state: DialecticalState
    events: tuple
    accepted_propositions: tuple
    discarded: tuple  # of {"item": ..., "reason": ..., "code": ...}


def integrate_proposal(state: DialecticalState, proposal: OpponentProposal,
                       timestamp: str = "") -> IntegrationResult:
    """Turn a proposal into opponent events, dropping whatever the engine rejects.

    Each candidate is applied speculatively with the real apply_event,
    so this filter cannot disagree with the protocol. New propositions
    are not events; they are validated for shape and passed along for
    the respondent to adopt (or not) in a later resolution.
    """
    events = []
    discarded = []
    seq = state.last_seq
    for c in proposal.challenges:
        cid = c.id or f"challenge-{seq + 1}"
        event = Event(seq + 1, OPPONENT, RaiseChallenge(cid, c.question, c.targets),
                      timestamp)
        try:
            state = apply_event(state, event)
        except DialecticError as e:
            discarded.append({"item": {"challenge": c.question}, "reason": str(e),
                              "code": e.code})
            continue
        events.append(event)
        seq += 1
    for t in proposal.tensions:
        tid = t.id or f"tension-{seq + 1}"
        event = Event(seq + 1, OPPONENT,
                      ProposeTension(tid, t.lhs, t.rhs, t.rationale), timestamp)
        try:
            state = apply_event(state, event)
        except DialecticError as e:
            discarded.append({
                "item": {"tension": f"{', '.join(sorted(t.lhs))} |- {', '.join(sorted(t.rhs))}"},
                "reason": str(e), "code": e.code})
            continue
        events.append(event)
        seq += 1
    propositions = []
    for p in proposal.new_propositions:
        if not ATOM_NAME.fullmatch(p.id) or not p.text \
                or p.suggested_side not in ("commit", "deny"):
            discarded.append({"item": {"proposition": p.id}, "reason": "malformed",
                              "code": "InvalidEvent"})
            continue
        propositions.append(p)
    for entry in discarded:
        log.info("discarded oracle %s: %s", next(iter(entry["item"])), entry["reason"])
    return IntegrationResult(state, tuple(events), tuple(propositions), tuple(discarded))


# ---------------------------------------------------------------------------
# Scripted oracle
# ---------------------------------------------------------------------------


class ScriptedOracle:
    """Deterministic oracle driven by a step-indexed script.

    Script shape:

        {"proposals": [{"step": 11, "tensions": [...], "challenges": [...],
                        "newPropositions": [...]}, ...],
         "commitments": [{"id": "p1", "text": "..."}, ...]}

    A proposal fires when the next event would be its step; any other
    step returns the empty proposal. "commitments" is what
    extract_commitments returns for any non-empty source document.
    """

    def __init__(self, script: dict):
        if not isinstance(script, dict):
            raise ScriptFormatError("script must be a JSON object")
        self._by_step = {}
        for entry in script.get("proposals", []):
            if not isinstance(entry, dict) or not isinstance(entry.get("step"), int):
                raise ScriptFormatError("script proposals need an integer step")
            try:
                self._by_step[entry["step"]] = proposal_from_dict(entry)
            except MalformedResponseError as e:
                raise ScriptFormatError(f"step {entry['step']}: {e}") from e
        self._commitments = []
        for c in script.get("commitments", []):
            if not isinstance(c, dict) or not isinstance(c.get("id"), str) \
                    or not isinstance(c.get("text"), str):
                raise ScriptFormatError("script commitments need id and text")
            self._commitments.append(PropositionRecord(c["id"], c["text"]))

    @classmethod
    def from_file(cls, path) -> "ScriptedOracle":
        with open(path, "r", encoding="utf-8") as f:
            try:
                return cls(json.load(f))
            except json.JSONDecodeError as e:
                raise ScriptFormatError(f"invalid JSON: {e}") from e

    def propose(self, state: DialecticalState, transcript: Sequence[Event]) -> OpponentProposal:
        step = state.last_seq + 1
        return self._by_step.get(step, OpponentProposal())

    def extract_commitments(self, source: str) -> list[PropositionRecord]:
        if not source.strip():
            raise EmptyDocumentError("source document is empty")
        return list(self._commitments)


# ---------------------------------------------------------------------------
# HTTP (LLM) oracle
# ---------------------------------------------------------------------------

PROPOSAL_INSTRUCTIONS = """\
You are the opponent in a commitment-tracking dialogue. Examine the
respondent's position and recent moves, then answer with a single JSON
object, no prose:

{"tensions": [{"lhs": ["<committed atom>", ...], "rhs": ["<denied or new atom>", ...],
               "rationale": "<why these cannot be jointly upheld>"}],
 "challenges": [{"question": "<short probing question>", "targets": ["<atom>", ...]}],
 "newPropositions": [{"id": "<token>", "text": "<proposition text>",
                      "suggestedSide": "commit"}]}

Every lhs atom must already be committed. An rhs atom is either already
denied or a new proposition you are introducing in newPropositions as a
candidate refinement. Leave lists empty when you have nothing to add.
"""

EXTRACTION_INSTRUCTIONS = """\
List the factual commitments asserted by the following document as a
single JSON object, no prose: {"commitments": [{"id": "<token>",
"text": "<one sentence>"}]}. Use short stable ids (p1, p2, ...).
"""


@dataclass
class OracleConfig:
    """Where and how to reach the remote oracle.

    ``credential_env`` names an environment variable; the secret itself
    is read at request time and never stored on the config, so dumping
    or logging a config cannot leak it. Header values may reference it
    as $CREDENTIAL.
    """

    endpoint: str
    credential_env: str = "ELENCHUS_ORACLE_KEY"
    headers: dict = field(default_factory=dict)
    request_template: dict = field(default_factory=dict)
    prompt_field: str = "prompt"
    response_path: str = ""
    timeout: float = 30.0
    retries: int = 2
    transcript_window: int = 20

    @classmethod
    def from_dict(cls, doc: dict) -> "OracleConfig":
        if not isinstance(doc, dict) or not isinstance(doc.get("endpoint"), str):
            raise ScriptFormatError('oracle config needs an "endpoint"')
        allowed = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in doc.items() if k in allowed})


def _walk_path(doc, path: str):
    """Follow a dotted path through dicts and lists: "choices.0.text"."""
    if not path:
        return doc
    current = doc
    for part in path.split("."):
        if isinstance(current, list):
            try:
                current = current[int(part)]
            except (ValueError, IndexError) as e:
                raise MalformedResponseError(f"response path {path!r} failed at {part!r}") from e
        elif isinstance(current, dict) and part in current:
            current = current[part]
        else:
            raise MalformedResponseError(f"response path {path!r} failed at {part!r}")
    return current


class HttpOracle:
    def __init__(self, config: OracleConfig):
        self.config = config

    def _headers(self) -> dict:
        resolved = {}
        for name, value in self.config.headers.items():
            if "$CREDENTIAL" in value:
                secret = os.environ.get(self.config.credential_env)
                if not secret:
                    raise OracleUnavailableError(
                        f"credential variable {self.config.credential_env} is not set")
                value = value.replace("$CREDENTIAL", secret)
            resolved[name] = value
        return resolved

    def _post(self, prompt: str) -> object:
        body = dict(self.config.request_template)
        body[self.config.prompt_field] = prompt
        headers = self._headers()
        last_error: Optional[Exception] = None
        for _ in range(self.config.retries + 1):
            try:
                response = requests.post(self.config.endpoint, json=body,
                                         headers=headers, timeout=self.config.timeout)
            except requests.RequestException as e:
                last_error = e
                continue
            if response.status_code // 100 == 2:
                try:
                    return response.json()
                except ValueError as e:
                    raise MalformedResponseError(f"reply is not JSON: {e}") from e
            last_error = OracleUnavailableError(
                f"endpoint returned {response.status_code}")
        raise OracleUnavailableError(str(last_error))

    def _ask(self, prompt: str) -> dict:
        """One exchange, with a single reformat retry on a garbled reply."""
        try:
            return self._extract_json(self._post(prompt))
        except MalformedResponseError as e:
            retry_prompt = (f"{prompt}\n\nYour previous reply could not be used "
                            f"({e}). Reply again with exactly one valid JSON object.")
            return self._extract_json(self._post(retry_prompt))

    def _extract_json(self, reply: object) -> dict:
        payload = _walk_path(reply, self.config.response_path)
        if isinstance(payload, str):
            try:
                payload = json.loads(payload)
            except json.JSONDecodeError as e:
                raise MalformedResponseError(f"reply text is not JSON: {e}") from e
        if not isinstance(payload, dict):
            raise MalformedResponseError("reply is not a JSON object")
        return payload

    def propose(self, state: DialecticalState, transcript: Sequence[Event]) -> OpponentProposal:
        view = snapshot(state)
        recent = [event_to_dict(e)
                  for e in list(transcript)[-self.config.transcript_window:]]
        prompt = "\n".join([
            PROPOSAL_INSTRUCTIONS,
            "Position: " + json.dumps(
                {"position": view["position"], "openTensions": view["openTensions"],
                 "openChallenges": view["openChallenges"]}, sort_keys=True),
            "Recent events: " + json.dumps(recent),
        ])
        return proposal_from_dict(self._ask(prompt))

    def extract_commitments(self, source: str) -> list[PropositionRecord]:
        if not source.strip():
            raise EmptyDocumentError("source document is empty")
        reply = self._ask(EXTRACTION_INSTRUCTIONS + "\n" + source)
        entries = reply.get("commitments")
        if not isinstance(entries, list):
            raise MalformedResponseError('reply lacks a "commitments" list')
        records = []
        for entry in entries:
            if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) \
                    or not isinstance(entry.get("text"), str):
                raise MalformedResponseError("malformed commitment entry")
            records.append(PropositionRecord(entry["id"], entry["text"]))
        return records


def load_oracle(spec: str):
    """Build an oracle from a CLI/env spec: scripted:PATH or http:CONFIG.json."""
    kind, _, arg = spec.partition(":")
    if kind == "scripted" and arg:
        return ScriptedOracle.from_file(arg)
    if kind == "http" and arg:
        with open(arg, "r", encoding="utf-8") as f:
            try:
                return HttpOracle(OracleConfig.from_dict(json.load(f)))
            except json.JSONDecodeError as e:
                raise ScriptFormatError(f"invalid JSON: {e}") from e
    raise ScriptFormatError(
        f"oracle spec must be scripted:PATH or http:CONFIG, got {spec!r}")
