import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elenchus.base import AtomicImplication
from elenchus.dialectic import (
    OPPONENT,
    RESPONDENT,
    AcceptTension,
    ActorViolationError,
    Addition,
    BilateralViolationError,
    Commit,
    ContestTension,
    Deny,
    DialecticError,
    DoubleResolutionError,
    DuplicateAtomIdError,
    Event,
    InvalidEventError,
    InvalidTensionError,
    ProposeTension,
    RaiseChallenge,
    Resolution,
    ResolveChallenge,
    Retract,
    Session,
    SessionFormatError,
    StaleTensionError,
    UnknownChallengeError,
    UnknownPropositionError,
    UnknownTensionError,
    apply_event,
    event_from_dict,
    event_to_dict,
    export_issue_records,
    extract_base,
    initial_state,
    load_session,
    replay,
    save_session,
    snapshot,
)


def run(*actions, actors=None):
    """Apply actions with auto seq; actor defaults to respondent except
    tension/challenge proposals."""
    state = initial_state()
    for i, action in enumerate(actions, start=1):
        if actors is not None:
            actor = actors[i - 1]
        elif isinstance(action, (ProposeTension, RaiseChallenge)):
            actor = OPPONENT
        else:
            actor = RESPONDENT
        state = apply_event(state, Event(i, actor, action))
    return state


def test_commit_deny_build_position():
    state = run(Commit("a", "alpha"), Deny("b", "beta"))
    assert state.position.commitments == frozenset({"a"})
    assert state.position.denials == frozenset({"b"})


def test_bilateral_violation():
    with pytest.raises(BilateralViolationError):
        run(Commit("a", "alpha"), Deny("a", "alpha"))
    with pytest.raises(BilateralViolationError):
        run(Deny("a", "alpha"), Commit("a", "alpha"))


def test_duplicate_commit_rejected():
    with pytest.raises(DuplicateAtomIdError):
        run(Commit("a", "alpha"), Commit("a", "again"))


def test_retract_then_recommit_allowed():
    state = run(Commit("a", "alpha"), Retract("a"), Deny("a", "alpha, reversed"))
    assert state.position.denials == {"a"}
    assert state.propositions["a"].status == "active"


def test_retract_unknown_raises():
    with pytest.raises(UnknownPropositionError):
        run(Retract("ghost"))


def test_tension_shape_rules():
    base_events = (Commit("a", "alpha"), Commit("b", "beta"))
    # lhs must be committed
    with pytest.raises(InvalidTensionError):
        run(*base_events, ProposeTension("t1", {"ghost"}, {"x"}))
    # rhs must not be committed (unless the self-tension special case)
    with pytest.raises(InvalidTensionError):
        run(*base_events, ProposeTension("t1", {"a"}, {"b"}))
    # both sides empty is no tension at all
    with pytest.raises(InvalidTensionError):
        run(*base_events, ProposeTension("t1", set(), set()))
    # self-tension on a committed atom is allowed
    state = run(*base_events, ProposeTension("t1", {"a"}, {"a"}))
    assert "t1" in {t.id for t in state.open_tensions()}
    # rhs naming a denied atom is allowed
    state = run(Commit("a", "alpha"), Deny("c", "gamma"),
                ProposeTension("t1", {"a"}, {"c"}))
    assert state.tensions["t1"].rhs == {"c"}
    # rhs naming a fresh refinement target is allowed
    state = run(*base_events, ProposeTension("t1", {"a"}, {"fresh"}))
    assert state.tensions["t1"].rhs == {"fresh"}


def test_duplicate_tension_id_rejected():
    with pytest.raises(InvalidTensionError):
        run(Commit("a", "alpha"),
            ProposeTension("t1", {"a"}, {"x"}),
            ProposeTension("t1", {"a"}, {"y"}))


def test_accept_refine_inserts_traced_implication():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}),
                AcceptTension("t1", Resolution(
                    "refine", added=Addition("b", "beta", "commit"))))
    assert state.position.commitments == {"a", "b"}
    assert state.implications == (AtomicImplication({"a"}, {"b"}, provenance="t1"),)
    assert not state.open_tensions()


def test_accept_is_respondent_only():
    with pytest.raises(ActorViolationError):
        run(Commit("a", "alpha"),
            ProposeTension("t1", {"a"}, {"b"}),
            AcceptTension("t1", Resolution(
                "refine", added=Addition("b", "beta", "commit"))),
            actors=[RESPONDENT, OPPONENT, OPPONENT])


def test_contest_drops_tension_without_implication():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}),
                ContestTension("t1"))
    assert not state.open_tensions()
    assert state.implications == ()
    assert state.tensions["t1"].status == "contested"


def test_accept_by_retraction_leaves_no_residue():
    state = run(Commit("a", "alpha"), Deny("b", "beta"),
                ProposeTension("t1", {"a"}, {"b"}),
                AcceptTension("t1", Resolution(
                    "retract", retracted=frozenset({"a"}))))
    assert state.position.commitments == frozenset()
    assert state.implications == ()
    assert state.tensions["t1"].status == "accepted"


def test_refine_with_simultaneous_retraction():
    # the recorded dialogue's pattern: refine one claim, withdraw another
    state = run(Commit("a", "alpha"), Commit("z", "doomed"),
                ProposeTension("t1", {"a"}, {"b"}),
                AcceptTension("t1", Resolution(
                    "refine", retracted=frozenset({"z"}),
                    added=Addition("b", "beta", "commit"))))
    assert state.position.commitments == {"a", "b"}
    assert [i.provenance for i in state.implications] == ["t1"]


def test_explicit_endorsed_sequent_overrides_tension_sides():
    state = run(Commit("a", "alpha"), Commit("c", "gamma"),
                ProposeTension("t1", {"a", "c"}, {"b"}),
                AcceptTension("t1", Resolution(
                    "refine", added=Addition("b", "beta", "commit"),
                    sequent=(frozenset({"a"}), frozenset({"b"})))))
    assert state.implications == (AtomicImplication({"a"}, {"b"}),)


def test_explicit_sequent_must_stay_positioned():
    with pytest.raises(StaleTensionError):
        run(Commit("a", "alpha"),
            ProposeTension("t1", {"a"}, {"b"}),
            AcceptTension("t1", Resolution(
                "refine", added=Addition("b", "beta", "commit"),
                sequent=(frozenset({"a"}), frozenset({"nowhere"})))))


def test_default_sequent_needs_the_target_added():
    # refine that adds some OTHER atom leaves the tension's rhs unknown
    with pytest.raises(StaleTensionError):
        run(Commit("a", "alpha"),
            ProposeTension("t1", {"a"}, {"b"}),
            AcceptTension("t1", Resolution(
                "refine", added=Addition("other", "text", "commit"))))


def test_double_resolution_rejected():
    with pytest.raises(DoubleResolutionError):
        run(Commit("a", "alpha"),
            ProposeTension("t1", {"a"}, {"b"}),
            AcceptTension("t1", Resolution(
                "refine", added=Addition("b", "beta", "commit"))),
            AcceptTension("t1", Resolution(
                "refine", added=Addition("b2", "again", "commit"))))
    with pytest.raises(UnknownTensionError):
        run(Commit("a", "alpha"), ContestTension("never-proposed"))


def test_retract_scrubs_open_tensions():
    state = run(Commit("a", "alpha"), Commit("b", "beta"),
                ProposeTension("t1", {"a", "b"}, {"c"}),
                Retract("a"))
    assert state.tensions["t1"].lhs == {"b"}
    assert state.tensions["t1"].status == "open"


def test_retract_drops_emptied_tension_and_blocks_late_accept():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"a"}),
                Retract("a"))
    assert state.tensions["t1"].status == "dropped"
    with pytest.raises(StaleTensionError):
        apply_event(state, Event(4, RESPONDENT, AcceptTension(
            "t1", Resolution("retract", retracted=frozenset({"a"})))))


def test_retraction_prunes_implications():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}),
                AcceptTension("t1", Resolution(
                    "refine", added=Addition("b", "beta", "commit"))),
                Retract("a"))
    assert state.implications == ()
    assert extract_base(state).atoms == {"b"}


def test_challenge_lifecycle():
    state = run(Commit("a", "alpha"),
                RaiseChallenge("c1", "why though?", frozenset({"a"})),
                ResolveChallenge("c1", "answered"))
    assert state.challenges["c1"].status == "resolved"
    assert state.challenges["c1"].note == "answered"
    with pytest.raises(DoubleResolutionError):
        apply_event(state, Event(4, RESPONDENT, ResolveChallenge("c1", "again")))
    with pytest.raises(UnknownChallengeError):
        apply_event(state, Event(4, RESPONDENT, ResolveChallenge("nope", "")))


def test_challenge_targets_must_be_positioned():
    with pytest.raises(UnknownPropositionError):
        run(RaiseChallenge("c1", "about what?", frozenset({"ghost"})))


def test_replay_requires_contiguous_seq():
    events = [Event(1, RESPONDENT, Commit("a", "alpha")),
              Event(3, RESPONDENT, Commit("b", "beta"))]
    with pytest.raises(InvalidEventError):
        replay(events)


def test_replay_upto_prefix():
    events = [Event(1, RESPONDENT, Commit("a", "alpha")),
              Event(2, RESPONDENT, Commit("b", "beta"))]
    state = replay(events, upto=1)
    assert state.position.commitments == {"a"}


def test_extract_base_excludes_open_tensions():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}))
    base = extract_base(state)
    assert base.atoms == {"a"}
    assert base.implications == ()


def test_wire_roundtrip_all_kinds():
    actions = [
        Commit("a", "alpha"),
        Deny("b", "beta"),
        Retract("a"),
        ProposeTension("t1", frozenset({"x"}), frozenset({"y"}), "because"),
        AcceptTension("t1", Resolution("refine", retracted=frozenset({"z"}),
                                       added=Addition("n", "new", "commit"),
                                       sequent=(frozenset({"x"}), frozenset({"n"})))),
        AcceptTension("t2", Resolution("retract", retracted=frozenset({"x"}))),
        ContestTension("t3"),
        RaiseChallenge("c1", "hm?", frozenset({"a"})),
        ResolveChallenge("c1", "ok"),
    ]
    for i, action in enumerate(actions, start=1):
        event = Event(i, RESPONDENT, action, timestamp="2025-11-04T10:00:00Z")
        doc = event_to_dict(event)
        assert event_from_dict(doc) == event
        assert json.loads(json.dumps(doc)) == doc


def test_session_save_load_byte_stable():
    events = (Event(1, RESPONDENT, Commit("a", "alpha"), "2025-11-04T10:00:00Z"),)
    payload = save_session(Session("demo", events))
    session = load_session(payload)
    assert session.name == "demo"
    assert session.events == events
    assert save_session(session) == payload


def test_malformed_session_documents():
    with pytest.raises(SessionFormatError):
        load_session(b"[]")
    with pytest.raises(SessionFormatError):
        load_session(b'{"session": "x", "events": [{"seq": 1}]}')
    with pytest.raises(SessionFormatError):
        load_session(b'{"session": "x", "events": [{"seq": 1, "actor": "respondent", "kind": "alien"}]}')


def test_snapshot_shape():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}),
                RaiseChallenge("c1", "hm?", frozenset({"a"})))
    view = snapshot(state)
    assert view["position"]["commitments"] == ["a"]
    assert [t["id"] for t in view["openTensions"]] == ["t1"]
    assert [c["id"] for c in view["openChallenges"]] == ["c1"]
    assert view["lastSeq"] == 3
    assert json.loads(json.dumps(view)) == view


def test_issue_export_records():
    state = run(Commit("a", "alpha"),
                ProposeTension("t1", {"a"}, {"b"}),
                RaiseChallenge("c1", "hm?", frozenset({"a"})))
    records = export_issue_records(state)
    labels = {label for r in records for label in r["labels"]}
    assert {"commitment", "tension", "challenge"} <= labels
    assert all(r["title"] and isinstance(r["body"], str) for r in records)


# ---- randomized protocol walks ----


def random_walk(seed: int, steps: int = 12):
    """Drive a random but legal-biased event sequence; returns (state, events)."""
    rng = random.Random(seed)
    state = initial_state()
    events = []
    atoms = [f"x{i}" for i in range(5)]
    next_tension = next_challenge = 0

    def emit(actor, action):
        nonlocal state
        event = Event(state.last_seq + 1, actor, action)
        state = apply_event(state, event)
        events.append(event)

    for _ in range(steps):
        roll = rng.random()
        committed = sorted(state.position.commitments)
        open_tensions = sorted(t.id for t in state.open_tensions())
        try:
            if roll < 0.35 or not committed:
                atom = rng.choice(atoms)
                side = rng.choice([Commit, Deny])
                emit(RESPONDENT, side(atom, f"text for {atom}"))
            elif roll < 0.5:
                emit(RESPONDENT,
                     Retract(rng.choice(sorted(state.positioned()))))
            elif roll < 0.7:
                next_tension += 1
                lhs = {rng.choice(committed)}
                rhs = {rng.choice([f"new{next_tension}", rng.choice(atoms)])}
                emit(OPPONENT, ProposeTension(f"t{next_tension}", lhs, rhs))
            elif roll < 0.85 and open_tensions:
                tid = rng.choice(open_tensions)
                tension = state.tensions[tid]
                if rng.random() < 0.5 and tension.rhs:
                    target = next(iter(tension.rhs))
                    if target not in state.positioned():
                        res = Resolution("refine", added=Addition(
                            target, f"text {target}", "commit"))
                    else:
                        res = Resolution("retract", retracted=frozenset(
                            {next(iter(tension.lhs or tension.rhs))}))
                else:
                    emit(RESPONDENT, ContestTension(tid))
                    continue
                emit(RESPONDENT, AcceptTension(tid, res))
            else:
                next_challenge += 1
                emit(OPPONENT, RaiseChallenge(
                    f"c{next_challenge}", "why?",
                    frozenset({rng.choice(committed)})))
        except DialecticError:
            continue  # illegal pick: state must be left untouched
    return state, events


def check_invariants(state):
    assert not (state.position.commitments & state.position.denials)
    positioned = state.positioned()
    for imp in state.implications:
        assert imp.lhs | imp.rhs <= positioned, "residue after retraction"
        assert imp.provenance in state.tensions
        assert state.tensions[imp.provenance].status == "accepted"
    extract_base(state)  # must never raise on a legal state


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10_000))
def test_random_walks_preserve_invariants(seed):
    check_invariants(random_walk(seed)[0])


def test_longer_walks_sampled():
    for seed in range(150):
        check_invariants(random_walk(seed, steps=25)[0])
