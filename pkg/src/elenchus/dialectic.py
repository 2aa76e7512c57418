"""Event-sourced dialogue protocol: positions, tensions, challenges.

A session is an append-only log of events. State is always a pure fold
of the log, so replaying a stored session reproduces it exactly; no
handler mutates its input.

The respondent maintains a bilateral position [C : D] (commitments and
denials, disjoint). The opponent probes it with challenges and proposes
tensions, sequents lhs |- rhs claiming the position is incoherent: the
lhs lives in C and the rhs in D, except that rhs atoms may name
not-yet-positioned propositions offered as refinement targets (that is
how every implication of the shipped dialogue arose, the respondent
never denied anything). Accepting a tension applies its resolution
(retractions and/or a new committed proposition) and endorses the
sequent into the implication store I; contesting drops it without
touching I.

Retraction leaves no inferential residue: the atom disappears from the
position, open tensions are scrubbed (a tension scrubbed empty is
dropped), and every implication mentioning the atom is pruned from I.
The log keeps the full history either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

from .base import AtomicImplication, MaterialBase
from .formula import ATOM_NAME

RESPONDENT = "respondent"
OPPONENT = "opponent"
ACTORS = (RESPONDENT, OPPONENT)

ACTIVE = "active"
RETRACTED = "retracted"

OPEN = "open"
ACCEPTED = "accepted"
CONTESTED = "contested"
DROPPED = "dropped"
RESOLVED = "resolved"


class DialecticError(Exception):
    """Protocol violation; ``code`` is the stable wire name."""

    code = "DialecticError"

    def __init__(self, message: str, seq: Optional[int] = None):
        super().__init__(message)
        self.seq = seq


class BilateralViolationError(DialecticError):
    code = "BilateralViolation"


class DuplicateAtomIdError(DialecticError):
    code = "DuplicateAtomId"


class UnknownPropositionError(DialecticError):
    code = "UnknownProposition"


class UnknownTensionError(DialecticError):
    code = "UnknownTension"


class UnknownChallengeError(DialecticError):
    code = "UnknownChallenge"


class DoubleResolutionError(DialecticError):
    code = "DoubleResolution"


class StaleTensionError(DialecticError):
    code = "StaleTension"


class InvalidTensionError(DialecticError):
    code = "InvalidTension"


class ActorViolationError(DialecticError):
    code = "ActorViolation"


class InvalidEventError(DialecticError):
    code = "InvalidEvent"


class SessionFormatError(ValueError):
    code = "FormatError"


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropositionRecord:
    id: str
    text: str
    status: str = ACTIVE


@dataclass(frozen=True)
class Position:
    commitments: frozenset = frozenset()
    denials: frozenset = frozenset()


@dataclass(frozen=True)
class Addition:
    """New proposition introduced by a resolution, and which side it joins."""

    id: str
    text: str
    side: str  # "commit" | "deny"


@dataclass(frozen=True)
class Resolution:
    kind: str  # "retract" | "refine"
    retracted: frozenset = frozenset()
    added: Optional[Addition] = None
    # Optional explicit endorsed sequent (lhs, rhs); defaults to the
    # tension's own sides when absent.
    sequent: Optional[tuple] = None


@dataclass(frozen=True)
class Tension:
    id: str
    lhs: frozenset
    rhs: frozenset
    rationale: str = ""
    status: str = OPEN
    resolution: Optional[Resolution] = None


@dataclass(frozen=True)
class Challenge:
    id: str
    question: str
    targets: frozenset = frozenset()
    status: str = OPEN
    note: str = ""


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Commit:
    id: str
    text: str


@dataclass(frozen=True)
class Deny:
    id: str
    text: str


@dataclass(frozen=True)
class Retract:
    id: str


@dataclass(frozen=True)
class ProposeTension:
    id: str
    lhs: frozenset
    rhs: frozenset
    rationale: str = ""


@dataclass(frozen=True)
class AcceptTension:
    tension_id: str
    resolution: Resolution


@dataclass(frozen=True)
class ContestTension:
    tension_id: str


@dataclass(frozen=True)
class RaiseChallenge:
    id: str
    question: str
    targets: frozenset = frozenset()


@dataclass(frozen=True)
class ResolveChallenge:
    challenge_id: str
    note: str = ""


Action = Union[Commit, Deny, Retract, ProposeTension, AcceptTension,
               ContestTension, RaiseChallenge, ResolveChallenge]


@dataclass(frozen=True)
class Event:
    seq: int
    actor: str
    action: Action
    timestamp: str = ""


@dataclass(frozen=True)
class DialecticalState:
    propositions: dict = field(default_factory=dict)
    position: Position = Position()
    tensions: dict = field(default_factory=dict)
    challenges: dict = field(default_factory=dict)
    implications: tuple = ()
    last_seq: int = 0

    def open_tensions(self) -> list[Tension]:
        return [t for t in self.tensions.values() if t.status == OPEN]

    def open_challenges(self) -> list[Challenge]:
        return [c for c in self.challenges.values() if c.status == OPEN]

    def positioned(self) -> frozenset:
        return self.position.commitments | self.position.denials


def initial_state() -> DialecticalState:
    return DialecticalState()


# ---------------------------------------------------------------------------
# Event application
# ---------------------------------------------------------------------------


def _check_atom_id(atom_id: str, seq: int) -> None:
    if not isinstance(atom_id, str) or not ATOM_NAME.fullmatch(atom_id):
        raise InvalidEventError(f"invalid atom id {atom_id!r}", seq)


def _place(state: DialecticalState, atom_id: str, text: str, side: str,
           seq: int) -> DialecticalState:
    """Shared commit/deny path, also used by resolution additions."""
    _check_atom_id(atom_id, seq)
    if not text:
        raise InvalidEventError(f"proposition {atom_id} has empty text", seq)
    commitments, denials = state.position.commitments, state.position.denials
    if side == "commit":
        if atom_id in denials:
            raise BilateralViolationError(f"{atom_id} is already denied", seq)
        if atom_id in commitments:
            raise DuplicateAtomIdError(f"{atom_id} is already committed", seq)
        commitments = commitments | {atom_id}
    elif side == "deny":
        if atom_id in commitments:
            raise BilateralViolationError(f"{atom_id} is already committed", seq)
        if atom_id in denials:
            raise DuplicateAtomIdError(f"{atom_id} is already denied", seq)
        denials = denials | {atom_id}
    else:
        raise InvalidEventError(f"invalid side {side!r}", seq)
    propositions = dict(state.propositions)
    propositions[atom_id] = PropositionRecord(atom_id, text, ACTIVE)
    return replace(state, propositions=propositions,
                   position=Position(commitments, denials))


def _retract(state: DialecticalState, atom_id: str, seq: int) -> DialecticalState:
    if atom_id not in state.positioned():
        raise UnknownPropositionError(f"{atom_id} is not in the position", seq)
    propositions = dict(state.propositions)
    propositions[atom_id] = replace(propositions[atom_id], status=RETRACTED)
    position = Position(state.position.commitments - {atom_id},
                        state.position.denials - {atom_id})
    tensions = dict(state.tensions)
    for tid, t in state.tensions.items():
        if t.status != OPEN or atom_id not in (t.lhs | t.rhs):
            continue
        lhs, rhs = t.lhs - {atom_id}, t.rhs - {atom_id}
        status = DROPPED if not (lhs or rhs) else OPEN
        tensions[tid] = replace(t, lhs=lhs, rhs=rhs, status=status)
    state = replace(state, propositions=propositions, position=position,
                    tensions=tensions)
    return _prune_implications(state)


def _prune_implications(state: DialecticalState) -> DialecticalState:
    """Drop implications whose atoms left the position (no residue)."""
    atoms = state.positioned()
    kept = tuple(i for i in state.implications if (i.lhs | i.rhs) <= atoms)
    if len(kept) == len(state.implications):
        return state
    return replace(state, implications=kept)


def _apply_commit(state: DialecticalState, e: Event) -> DialecticalState:
    return _place(state, e.action.id, e.action.text, "commit", e.seq)


def _apply_deny(state: DialecticalState, e: Event) -> DialecticalState:
    return _place(state, e.action.id, e.action.text, "deny", e.seq)


def _apply_retract(state: DialecticalState, e: Event) -> DialecticalState:
    _check_atom_id(e.action.id, e.seq)
    return _retract(state, e.action.id, e.seq)


def validate_tension_shape(state: DialecticalState, lhs: frozenset, rhs: frozenset,
                           seq: Optional[int] = None) -> None:
    """Raises InvalidTensionError unless lhs |- rhs is proposable now.

    Shared by the event handler and the oracle proposal filter so the
    two can never drift apart.
    """
    if not (lhs or rhs):
        raise InvalidTensionError("tension with both sides empty", seq)
    commitments = state.position.commitments
    denials = state.position.denials
    overlap = lhs & rhs
    if overlap:
        # Self-tension: a single committed, undenied atom on both sides.
        if not (lhs == rhs and len(lhs) == 1):
            raise InvalidTensionError("sides overlap beyond a self-tension", seq)
        (atom,) = lhs
        if atom not in commitments:
            raise InvalidTensionError(f"self-tension atom {atom} not committed", seq)
        return
    missing = lhs - commitments
    if missing:
        raise InvalidTensionError(
            f"lhs atoms not committed: {', '.join(sorted(missing))}", seq)
    # rhs atoms are either denied or not yet positioned (refinement targets).
    misplaced = rhs & commitments
    if misplaced:
        raise InvalidTensionError(
            f"rhs atoms already committed: {', '.join(sorted(misplaced))}", seq)


def _apply_propose_tension(state: DialecticalState, e: Event) -> DialecticalState:
    a = e.action
    if not a.id:
        raise InvalidEventError("tension id is empty", e.seq)
    if a.id in state.tensions:
        raise InvalidTensionError(f"tension id {a.id} already used", e.seq)
    for atom in a.lhs | a.rhs:
        _check_atom_id(atom, e.seq)
    validate_tension_shape(state, a.lhs, a.rhs, e.seq)
    tensions = dict(state.tensions)
    tensions[a.id] = Tension(a.id, a.lhs, a.rhs, a.rationale, OPEN, None)
    return replace(state, tensions=tensions)


def _resolvable_tension(state: DialecticalState, tension_id: str, seq: int) -> Tension:
    t = state.tensions.get(tension_id)
    if t is None:
        raise UnknownTensionError(f"no tension {tension_id}", seq)
    if t.status in (ACCEPTED, CONTESTED):
        raise DoubleResolutionError(f"tension {tension_id} already {t.status}", seq)
    if t.status == DROPPED:
        raise StaleTensionError(
            f"tension {tension_id} was emptied by retraction", seq)
    return t


def _apply_accept_tension(state: DialecticalState, e: Event) -> DialecticalState:
    if e.actor != RESPONDENT:
        raise ActorViolationError("only the respondent can accept a tension", e.seq)
    t = _resolvable_tension(state, e.action.tension_id, e.seq)
    res = e.action.resolution
    if res.kind not in ("retract", "refine"):
        raise InvalidEventError(f"invalid resolution kind {res.kind!r}", e.seq)
    if res.kind == "retract":
        if not res.retracted:
            raise InvalidEventError("retract resolution retracts nothing", e.seq)
        if not res.retracted & (t.lhs | t.rhs):
            raise InvalidEventError(
                "retract resolution must retract a member of the tension", e.seq)
    if res.kind == "refine" and res.added is None:
        raise InvalidEventError("refine resolution adds no proposition", e.seq)

    missing = res.retracted - state.positioned()
    if missing:
        raise StaleTensionError(
            f"resolution retracts atoms not in the position: {', '.join(sorted(missing))}",
            e.seq)

    tensions = dict(state.tensions)
    tensions[t.id] = replace(t, status=ACCEPTED, resolution=res)
    state = replace(state, tensions=tensions)

    for atom in sorted(res.retracted):
        state = _retract(state, atom, e.seq)
    if res.added is not None:
        state = _place(state, res.added.id, res.added.text, res.added.side, e.seq)

    if res.sequent is not None:
        lhs, rhs = frozenset(res.sequent[0]), frozenset(res.sequent[1])
        if not lhs and not rhs:
            raise InvalidEventError("endorsed sequent is empty on both sides", e.seq)
        for atom in lhs | rhs:
            _check_atom_id(atom, e.seq)
        outside = (lhs | rhs) - state.positioned()
        if outside:
            raise StaleTensionError(
                f"endorsed sequent leaves the position: {', '.join(sorted(outside))}",
                e.seq)
    else:
        lhs, rhs = t.lhs, t.rhs
        # The default sides may mention an atom this very resolution retracted
        # (the implication is inserted, then pruned: no residue). What they may
        # not do is name an atom nobody ever positioned, e.g. a refinement
        # target the resolution did not actually add.
        unknown = {a for a in lhs | rhs if a not in state.propositions}
        if unknown:
            raise StaleTensionError(
                "endorsed sequent mentions propositions never positioned: "
                + ", ".join(sorted(unknown)), e.seq)

    endorsed = AtomicImplication(lhs, rhs, provenance=t.id)
    if endorsed not in state.implications:
        state = replace(state, implications=state.implications + (endorsed,))
    return _prune_implications(state)


def _apply_contest_tension(state: DialecticalState, e: Event) -> DialecticalState:
    if e.actor != RESPONDENT:
        raise ActorViolationError("only the respondent can contest a tension", e.seq)
    t = _resolvable_tension(state, e.action.tension_id, e.seq)
    tensions = dict(state.tensions)
    tensions[t.id] = replace(t, status=CONTESTED)
    return replace(state, tensions=tensions)


def _apply_raise_challenge(state: DialecticalState, e: Event) -> DialecticalState:
    a = e.action
    if not a.id:
        raise InvalidEventError("challenge id is empty", e.seq)
    if a.id in state.challenges:
        raise InvalidEventError(f"challenge id {a.id} already used", e.seq)
    if not a.question:
        raise InvalidEventError("challenge question is empty", e.seq)
    loose = a.targets - state.positioned()
    if loose:
        raise UnknownPropositionError(
            f"challenge targets outside the position: {', '.join(sorted(loose))}", e.seq)
    challenges = dict(state.challenges)
    challenges[a.id] = Challenge(a.id, a.question, a.targets, OPEN, "")
    return replace(state, challenges=challenges)


def _apply_resolve_challenge(state: DialecticalState, e: Event) -> DialecticalState:
    a = e.action
    c = state.challenges.get(a.challenge_id)
    if c is None:
        raise UnknownChallengeError(f"no challenge {a.challenge_id}", e.seq)
    if c.status == RESOLVED:
        raise DoubleResolutionError(f"challenge {a.challenge_id} already resolved", e.seq)
    challenges = dict(state.challenges)
    challenges[c.id] = replace(c, status=RESOLVED, note=a.note)
    return replace(state, challenges=challenges)


_HANDLERS = {
    Commit: _apply_commit,
    Deny: _apply_deny,
    Retract: _apply_retract,
    ProposeTension: _apply_propose_tension,
    AcceptTension: _apply_accept_tension,
    ContestTension: _apply_contest_tension,
    RaiseChallenge: _apply_raise_challenge,
    ResolveChallenge: _apply_resolve_challenge,
}


def apply_event(state: DialecticalState, event: Event) -> DialecticalState:
    """Pure transition; raises a DialecticError and leaves state untouched."""
    if event.actor not in ACTORS:
        raise InvalidEventError(f"unknown actor {event.actor!r}", event.seq)
    handler = _HANDLERS.get(type(event.action))
    if handler is None:
        raise InvalidEventError(f"unknown event {type(event.action).__name__}", event.seq)
    new_state = handler(state, event)
    return replace(new_state, last_seq=event.seq)


def replay(events: Iterable[Event], upto: Optional[int] = None) -> DialecticalState:
    """Fold events in order; sequence numbers must be contiguous from 1."""
    state = initial_state()
    for i, event in enumerate(events, start=1):
        if event.seq != i:
            raise InvalidEventError(
                f"sequence gap: expected {i}, found {event.seq}", event.seq)
        if upto is not None and event.seq > upto:
            break
        state = apply_event(state, event)
    return state


def extract_base(state: DialecticalState) -> MaterialBase:
    """Project the dialectical state onto a material base.

    Vocabulary is the current position (active atoms on either side);
    implications carry their tension id as provenance. The no-residue
    pruning keeps this total: I never mentions an atom outside C and D.
    """
    return MaterialBase(state.positioned(), state.implications)


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------


def _require(doc: dict, key: str, kinds, context: str):
    value = doc.get(key)
    if not isinstance(value, kinds):
        raise SessionFormatError(f"{context}: bad or missing {key!r}")
    return value


def _atom_list(doc: dict, key: str, context: str) -> frozenset:
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(a, str) for a in value):
        raise SessionFormatError(f"{context}: {key!r} must be a list of strings")
    return frozenset(value)


def _resolution_from_dict(doc: object, context: str) -> Resolution:
    if not isinstance(doc, dict):
        raise SessionFormatError(f"{context}: resolution must be an object")
    kind = _require(doc, "kind", str, context)
    retracted = _atom_list(doc, "retracted", context)
    added = None
    if doc.get("added") is not None:
        a = doc["added"]
        if not isinstance(a, dict):
            raise SessionFormatError(f"{context}: added must be an object")
        added = Addition(_require(a, "id", str, context),
                         _require(a, "text", str, context),
                         _require(a, "side", str, context))
    sequent = None
    if doc.get("sequent") is not None:
        s = doc["sequent"]
        if not isinstance(s, dict):
            raise SessionFormatError(f"{context}: sequent must be an object")
        sequent = (_atom_list(s, "lhs", context), _atom_list(s, "rhs", context))
    return Resolution(kind, retracted, added, sequent)


def _resolution_to_dict(res: Resolution) -> dict:
    doc: dict = {"kind": res.kind}
    if res.retracted:
        doc["retracted"] = sorted(res.retracted)
    if res.added is not None:
        doc["added"] = {"id": res.added.id, "text": res.added.text,
                        "side": res.added.side}
    if res.sequent is not None:
        doc["sequent"] = {"lhs": sorted(res.sequent[0]), "rhs": sorted(res.sequent[1])}
    return doc


def action_from_dict(doc: dict, context: str = "event") -> Action:
    kind = _require(doc, "kind", str, context)
    if kind == "commit":
        return Commit(_require(doc, "id", str, context), _require(doc, "text", str, context))
    if kind == "deny":
        return Deny(_require(doc, "id", str, context), _require(doc, "text", str, context))
    if kind == "retract":
        return Retract(_require(doc, "id", str, context))
    if kind == "propose_tension":
        t = _require(doc, "tension", dict, context)
        return ProposeTension(_require(t, "id", str, context),
                              _atom_list(t, "lhs", context),
                              _atom_list(t, "rhs", context),
                              t.get("rationale", ""))
    if kind == "accept_tension":
        return AcceptTension(_require(doc, "tensionId", str, context),
                             _resolution_from_dict(doc.get("resolution"), context))
    if kind == "contest_tension":
        return ContestTension(_require(doc, "tensionId", str, context))
    if kind == "raise_challenge":
        c = _require(doc, "challenge", dict, context)
        return RaiseChallenge(_require(c, "id", str, context),
                              _require(c, "question", str, context),
                              _atom_list(c, "targets", context))
    if kind == "resolve_challenge":
        return ResolveChallenge(_require(doc, "challengeId", str, context),
                                doc.get("note", ""))
    raise SessionFormatError(f"{context}: unknown event kind {kind!r}")


def action_to_dict(action: Action) -> dict:
    match action:
        case Commit(id=i, text=t):
            return {"kind": "commit", "id": i, "text": t}
        case Deny(id=i, text=t):
            return {"kind": "deny", "id": i, "text": t}
        case Retract(id=i):
            return {"kind": "retract", "id": i}
        case ProposeTension(id=i, lhs=lhs, rhs=rhs, rationale=r):
            tension = {"id": i, "lhs": sorted(lhs), "rhs": sorted(rhs)}
            if r:
                tension["rationale"] = r
            return {"kind": "propose_tension", "tension": tension}
        case AcceptTension(tension_id=tid, resolution=res):
            return {"kind": "accept_tension", "tensionId": tid,
                    "resolution": _resolution_to_dict(res)}
        case ContestTension(tension_id=tid):
            return {"kind": "contest_tension", "tensionId": tid}
        case RaiseChallenge(id=i, question=q, targets=targets):
            challenge = {"id": i, "question": q}
            if targets:
                challenge["targets"] = sorted(targets)
            return {"kind": "raise_challenge", "challenge": challenge}
        case ResolveChallenge(challenge_id=cid, note=note):
            doc = {"kind": "resolve_challenge", "challengeId": cid}
            if note:
                doc["note"] = note
            return doc
    raise TypeError(f"not an action: {action!r}")


def event_from_dict(doc: object, context: str = "event") -> Event:
    if not isinstance(doc, dict):
        raise SessionFormatError(f"{context}: event must be an object")
    seq = _require(doc, "seq", int, context)
    actor = _require(doc, "actor", str, context)
    action = action_from_dict(doc, context=f"{context} seq {seq}")
    return Event(seq, actor, action, doc.get("timestamp", ""))


def event_to_dict(event: Event) -> dict:
    doc = {"seq": event.seq, "actor": event.actor}
    if event.timestamp:
        doc["timestamp"] = event.timestamp
    doc.update(action_to_dict(event.action))
    return doc


@dataclass(frozen=True)
class Session:
    name: str
    events: tuple


def load_session(raw: bytes | str) -> Session:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SessionFormatError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SessionFormatError("session document must be a JSON object")
    name = _require(doc, "session", str, "session")
    events = doc.get("events")
    if not isinstance(events, list):
        raise SessionFormatError('"events" must be a list')
    parsed = tuple(event_from_dict(e, context=f"event {i}")
                   for i, e in enumerate(events, start=1))
    return Session(name, parsed)


def save_session(session: Session) -> bytes:
    doc = {"session": session.name,
           "events": [event_to_dict(e) for e in session.events]}
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Snapshots and exports
# ---------------------------------------------------------------------------


def tension_to_dict(t: Tension) -> dict:
    doc = {"id": t.id, "lhs": sorted(t.lhs), "rhs": sorted(t.rhs),
           "status": t.status}
    if t.rationale:
        doc["rationale"] = t.rationale
    if t.resolution is not None:
        doc["resolution"] = _resolution_to_dict(t.resolution)
    return doc


def challenge_to_dict(c: Challenge) -> dict:
    doc = {"id": c.id, "question": c.question, "targets": sorted(c.targets),
           "status": c.status}
    if c.note:
        doc["note"] = c.note
    return doc


def snapshot(state: DialecticalState) -> dict:
    """JSON-ready view of the whole state, deterministic ordering."""
    return {
        "lastSeq": state.last_seq,
        "position": {
            "commitments": sorted(state.position.commitments),
            "denials": sorted(state.position.denials),
        },
        "propositions": [
            {"id": p.id, "text": p.text, "status": p.status}
            for p in sorted(state.propositions.values(), key=lambda p: p.id)
        ],
        "openTensions": [tension_to_dict(t)
                         for t in sorted(state.open_tensions(), key=lambda t: t.id)],
        "openChallenges": [challenge_to_dict(c)
                           for c in sorted(state.open_challenges(), key=lambda c: c.id)],
        "tensions": [tension_to_dict(t)
                     for t in sorted(state.tensions.values(), key=lambda t: t.id)],
        "challenges": [challenge_to_dict(c)
                       for c in sorted(state.challenges.values(), key=lambda c: c.id)],
        "implications": [
            {"lhs": sorted(i.lhs), "rhs": sorted(i.rhs), "provenance": i.provenance}
            for i in state.implications
        ],
    }


def export_issue_records(state: DialecticalState) -> list[dict]:
    """One-way dump of the state as issue-like records (title, labels, body)."""
    records = []
    for p in sorted(state.propositions.values(), key=lambda p: p.id):
        side = ("commitment" if p.id in state.position.commitments
                else "denial" if p.id in state.position.denials
                else "retracted")
        records.append({
            "title": f"[{p.id}] {p.text}",
            "labels": ["proposition", side],
            "body": p.text,
        })
    for t in sorted(state.tensions.values(), key=lambda t: t.id):
        body = f"{', '.join(sorted(t.lhs))} |- {', '.join(sorted(t.rhs))}".strip()
        if t.rationale:
            body += f"\n\n{t.rationale}"
        records.append({
            "title": f"[{t.id}] tension",
            "labels": ["tension", t.status],
            "body": body,
        })
    for c in sorted(state.challenges.values(), key=lambda c: c.id):
        body = c.question
        if c.note:
            body += f"\n\n{c.note}"
        records.append({
            "title": f"[{c.id}] {c.question}",
            "labels": ["challenge", c.status],
            "body": body,
        })
    return records
