#!/usr/bin/env python3
"""Regenerate the PROV-O fixtures under src/elenchus/fixtures/.

The session is driven through the real engine (respondent events applied
directly, opponent events integrated from the oracle script), so the
shipped session, oracle script, and extracted base cannot drift apart.
Run from the repo root after any engine change that affects the wire
format, then commit the result.
"""

import json
import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from elenchus.base import save_base
from elenchus.dialectic import (
    RESPONDENT,
    Addition,
    AcceptTension,
    Commit,
    Event,
    Resolution,
    ResolveChallenge,
    Session,
    apply_event,
    extract_base,
    initial_state,
    replay,
    save_session,
)
from elenchus.opponent import ScriptedOracle, integrate_proposal

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "elenchus" / "fixtures"

TEXTS = {
    "p1": "Three core classes form the basis of PROV-O: Entity, Activity, Agent",
    "p2": "Entity is a thing with fixed aspects",
    "p3": "Activity is something that occurs over time and acts upon or with entities",
    "p4": "Agent bears responsibility for activities, entities, or other agents' activities",
    "p5": "used and wasGeneratedBy relate Activities to Entities",
    "p6": "wasInformedBy provides Activity-to-Activity dependency",
    "p7": "wasDerivedFrom expresses Entity-to-Entity transformation",
    "p8": "wasAssociatedWith and wasAttributedTo ascribe Agent responsibility",
    "p9": "actedOnBehalfOf expresses delegation with shared responsibility",
    "p10": "Three types of provenance chains: Activity-Entity, Activity-only, Entity-only",
    "p18": "Entity individuation is context-relative, fixed by the asserting context",
    "p20": "wasDerivedFrom suffices for cross-context Entity identity",
    "p23": "Expanded Terms add expressiveness, not just convenience",
    "p24": "The three chain types are not equivalent; wasDerivedFrom requires explicit assertion",
    "p25": "Delegation is hierarchical: responsibility distributes across a chain of agents",
    "p26": "Delegation is transitive: intermediaries remain answerable along the chain",
    "p27": "Activities are durational; instantaneous events mark their boundaries",
    "p28": "wasDerivedFrom asserts a broad causal dependency; qualified subtypes narrow it",
    "p29": "Agency is a pragmatic ascription of responsibility, not a metaphysical kind",
    "p30": "wasInformedBy is an independent relation, inferable but not reducible to used plus wasGeneratedBy",
}


def proposal(step, challenge=None, tensions=(), new_props=()):
    entry = {"step": step, "tensions": [], "challenges": [], "newPropositions": []}
    if challenge is not None:
        cid, question, targets = challenge
        entry["challenges"].append(
            {"id": cid, "question": question, "targets": targets})
    for tid, lhs, rhs, rationale in tensions:
        entry["tensions"].append(
            {"id": tid, "lhs": lhs, "rhs": rhs, "rationale": rationale})
    for pid in new_props:
        entry["newPropositions"].append(
            {"id": pid, "text": TEXTS[pid], "suggestedSide": "commit"})
    return entry


ORACLE_SCRIPT = {
    "proposals": [
        proposal(11,
                 challenge=("challenge-11", "Fixed aspects; entity change?", ["p2"]),
                 tensions=[("tension-11", ["p2"], ["p18"],
                            "Fixed aspects cannot survive entity change; "
                            "individuation looks context-relative.")],
                 new_props=["p18"]),
        proposal(15,
                 challenge=("challenge-12", "Activity duration; instants?", ["p3"]),
                 tensions=[("tension-12", ["p3"], ["p27"],
                            "Occurs over time clashes with instantaneous readings; "
                            "the stance on duration needs stating.")],
                 new_props=["p27"]),
        proposal(19,
                 challenge=("challenge-13", "Responsibility vs. causation?", ["p4"]),
                 tensions=[("tension-13", ["p4"], ["p29"],
                            "Responsibility talk slides into causation; "
                            "agency needs a pragmatic reading.")],
                 new_props=["p29"]),
        proposal(23,
                 challenge=("challenge-14", "wasInformedBy: shortcut?", ["p6"]),
                 tensions=[("tension-14", ["p6"], ["p30"],
                            "A mere shortcut would reduce to used plus wasGeneratedBy; "
                            "independence needs stating.")],
                 new_props=["p30"]),
        proposal(27,
                 challenge=("challenge-15", "Derivation criteria; identity?", ["p7"]),
                 tensions=[("tension-15", ["p7"], ["p28"],
                            "Transformation without criteria leaves derivation "
                            "unconstrained.")],
                 new_props=["p28"]),
        proposal(31,
                 challenge=("challenge-16", "Delegation responsibility?", ["p9"]),
                 tensions=[("tension-16a", ["p9"], ["p25"],
                            "Shared responsibility implies a hierarchy of "
                            "answerable agents."),
                           ("tension-16b", ["p9"], ["p26"],
                            "Delegation chains do not stop at one intermediary; "
                            "transitivity needs stating.")],
                 new_props=["p25", "p26"]),
        proposal(37,
                 challenge=("challenge-17", "Chain types equivalent?", ["p10"]),
                 tensions=[("tension-17", ["p10"], ["p24"],
                            "Three chain types invite an equivalence reading the "
                            "vocabulary does not support.")],
                 new_props=["p24"]),
        proposal(41,
                 tensions=[("tension-18", ["p18"], ["p23"],
                            "Context-relative individuation needs vocabulary "
                            "beyond the core terms.")],
                 new_props=["p23"]),
    ],
    "commitments": [{"id": f"p{i}", "text": TEXTS[f"p{i}"]} for i in range(1, 11)],
}

GROUPS = {
    "Entity": ["p18", "p23"],
    "Activity": ["p27"],
    "Agent": ["p29"],
    "wasInformedBy": ["p30"],
    "wasDerivedFrom": ["p28"],
    "delegation": ["p25", "p26"],
    "chain-type": ["p24"],
}

SOURCE_TEXT = """\
PROV-O expresses provenance records on the web. Its starting-point terms
give three core classes and a handful of properties relating them.

An Entity is a physical, digital, or conceptual thing with some fixed
aspects. An Activity is something that occurs over a period of time,
acting upon or with entities: consuming, processing, transforming, or
generating them. An Agent is something that bears some form of
responsibility for an activity taking place, for the existence of an
entity, or for another agent's activity.

Activities and entities are linked in two directions: an activity used
an entity, and an entity wasGeneratedBy an activity. Exchange of
entities between activities induces wasInformedBy, an
activity-to-activity dependency. When a new entity is produced from an
existing one, wasDerivedFrom records the entity-to-entity
transformation. Responsibility is ascribed through wasAssociatedWith
(agent to activity) and wasAttributedTo (agent to entity), and
actedOnBehalfOf records delegation between agents, with some
responsibility shared along the chain.

Provenance chains come in three shapes. An activity-entity chain
alternates generation and use. An activity-only chain strings
activities together by communication. An entity-only chain follows
derivations from one entity to the next.
"""


def refine(pid):
    return Resolution("refine", added=Addition(pid, TEXTS[pid], "commit"))


def build_session():
    oracle = ScriptedOracle(ORACLE_SCRIPT)
    state = initial_state()
    events = []

    def respond(action):
        nonlocal state
        event = Event(state.last_seq + 1, RESPONDENT, action)
        state = apply_event(state, event)
        events.append(event)

    def consult():
        nonlocal state
        result = integrate_proposal(state, oracle.propose(state, events))
        assert not result.discarded, result.discarded
        state = result.state
        events.extend(result.events)

    for i in range(1, 11):
        respond(Commit(f"p{i}", TEXTS[f"p{i}"]))

    consult()                                        # 11-12: challenge-11, tension-11
    respond(AcceptTension("tension-11", refine("p18")))            # 13
    respond(Commit("p20", TEXTS["p20"]))                           # 14

    consult()                                        # 15-16: challenge-12, tension-12
    respond(AcceptTension("tension-12", refine("p27")))            # 17
    respond(ResolveChallenge(
        "challenge-12",
        "Durational activities; instantaneous events mark boundaries."))   # 18

    consult()                                        # 19-20: challenge-13, tension-13
    respond(AcceptTension("tension-13", refine("p29")))            # 21
    respond(ResolveChallenge(
        "challenge-13", "Agency read as pragmatic ascription."))   # 22

    consult()                                        # 23-24: challenge-14, tension-14
    respond(AcceptTension("tension-14", refine("p30")))            # 25
    respond(ResolveChallenge(
        "challenge-14", "Independent relation: inferable, not reducible."))  # 26

    consult()                                        # 27-28: challenge-15, tension-15
    respond(AcceptTension("tension-15", refine("p28")))            # 29
    respond(ResolveChallenge(
        "challenge-15",
        "Broad causal dependency; qualified subtypes narrow it."))  # 30

    consult()                            # 31-33: challenge-16, tension-16a, tension-16b
    respond(AcceptTension("tension-16a", refine("p25")))           # 34
    respond(AcceptTension("tension-16b", refine("p26")))           # 35
    respond(ResolveChallenge("challenge-16", "Hierarchical and transitive."))  # 36

    consult()                                        # 37-38: challenge-17, tension-17
    respond(AcceptTension("tension-17", refine("p24")))            # 39
    respond(ResolveChallenge(
        "challenge-17",
        "Not equivalent; wasDerivedFrom requires explicit assertion."))  # 40

    consult()                              # 41: tension-18, the follow-up to challenge-11
    respond(AcceptTension(
        "tension-18",
        Resolution("refine", retracted=frozenset({"p20"}),
                   added=Addition("p23", TEXTS["p23"], "commit"))))  # 42
    respond(ResolveChallenge(
        "challenge-11",
        "Context-relative individuation; Expanded Terms supply the "
        "expressiveness; the cross-context identity claim was withdrawn."))  # 43

    stamped = [replace(e, timestamp=f"2025-11-04T14:{e.seq:02d}:00Z") for e in events]
    return Session("provo-core-structures", tuple(stamped)), state


def main():
    session, state = build_session()
    assert state.last_seq == 43
    assert len(state.position.commitments) == 19
    assert not state.position.denials
    assert not state.open_tensions()
    assert len(state.implications) == 9

    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "provo_session.json").write_bytes(save_session(session))

    replayed = replay(session.events)
    assert replayed == state, "replay drifted from the driving state"
    (FIXTURES / "provo_base.json").write_bytes(save_base(extract_base(replayed)))

    for name, doc in [("provo_oracle_script.json", ORACLE_SCRIPT),
                      ("provo_groups.json", GROUPS)]:
        (FIXTURES / name).write_text(json.dumps(doc, indent=2) + "\n",
                                     encoding="utf-8")
    (FIXTURES / "provo_source.txt").write_text(SOURCE_TEXT, encoding="utf-8")

    print(f"wrote {len(session.events)} events, "
          f"{len(state.position.commitments)} commitments, "
          f"{len(state.implications)} implications -> {FIXTURES}")


if __name__ == "__main__":
    main()
