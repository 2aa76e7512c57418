"""Command-line front end.

Exit codes: `prove` exits 0 when the sequent is derivable, 1 when it is
not, 2 on any error; `verify-provo` exits 0 only if every check passes;
everything else exits 0 on success and 2 on error. `--json` switches
each command to a stable machine-readable schema on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .base import (
    BaseFormatError,
    UnknownAtomError,
    base_to_dict,
    load_base,
    save_base,
)
from .dialectic import (
    RESPONDENT,
    Addition,
    AcceptTension,
    Commit,
    ContestTension,
    Deny,
    DialecticError,
    Event,
    Resolution,
    ResolveChallenge,
    Retract,
    Session,
    SessionFormatError,
    apply_event,
    export_issue_records,
    extract_base,
    initial_state,
    load_session,
    replay,
    save_session,
    snapshot,
)
from .formula import ParseError, parse_sequent
from .opponent import ScriptFormatError, integrate_proposal, load_oracle
from .prover import (
    Prover,
    ResourceLimitError,
    containment_audit,
    independence_matrix,
    monotonicity_defeats,
    proof_to_json,
    proof_to_text,
    transitivity_gaps,
)
from .verify import all_pass, run_checks

USAGE_ERROR = 2


def _read_base(path: str):
    return load_base(Path(path).read_bytes())


def _analysis_doc(base, groups_path=None) -> dict:
    doc = {
        "containmentAudit": containment_audit(base),
        "transitivityGaps": [list(g) for g in transitivity_gaps(base)],
        "monotonicityDefeats": [
            {"lhs": sorted(i.lhs), "rhs": sorted(i.rhs), "extra": extra}
            for i, extra in monotonicity_defeats(base)],
    }
    if groups_path:
        groups = json.loads(Path(groups_path).read_text(encoding="utf-8"))
        report = independence_matrix(base, groups)
        doc["independence"] = {
            "groups": {name: sorted(members)
                       for name, members in report.groups.items()},
            "pairCount": report.pair_count,
            "derivableCount": report.derivable_count,
            "derivablePairs": [list(p) for p in report.derivable_pairs],
        }
    return doc


def cmd_prove(args) -> int:
    base = _read_base(args.base)
    target = parse_sequent(args.sequent)
    prover = Prover(base, node_budget=args.budget) if args.budget else Prover(base)
    result = prover.derivable(target)
    if args.json:
        doc = {"sequent": target.render(), "derivable": result.derivable,
               "stats": {"nodes": result.stats.nodes,
                         "memoHits": result.stats.memo_hits}}
        if args.proof and result.proof is not None:
            doc["proof"] = proof_to_json(result.proof)
        print(json.dumps(doc, indent=2))
    else:
        print("true" if result.derivable else "false")
        if args.proof and result.proof is not None:
            print(proof_to_text(result.proof))
    return 0 if result.derivable else 1


def cmd_analyze(args) -> int:
    base = _read_base(args.base)
    doc = _analysis_doc(base, args.groups)
    if args.json:
        print(json.dumps(doc, indent=2))
        return 0
    failing = sorted(a for a, ok in doc["containmentAudit"].items() if not ok)
    print(f"atoms: {len(base.atoms)}  implications: {len(base.implications)}")
    print("containment: " + ("all atoms self-derivable" if not failing
                             else f"FAILING for {', '.join(failing)}"))
    if doc["transitivityGaps"]:
        print("transitivity gaps:")
        for a, b, c in doc["transitivityGaps"]:
            print(f"  {a} |- {b}, {b} |- {c}, but not {a} |- {c}")
    else:
        print("transitivity gaps: none")
    print(f"monotonicity defeats: {len(doc['monotonicityDefeats'])} "
          "(lhs strengthenings that lose the implication)")
    if "independence" in doc:
        ind = doc["independence"]
        print(f"independence: {ind['pairCount']} cross-group pairs, "
              f"{ind['derivableCount']} derivable")
        for x, y in ind["derivablePairs"]:
            print(f"  derivable: {x} / {y}")
    return 0


def cmd_verify_provo(args) -> int:
    results = run_checks()
    if args.json:
        print(json.dumps({
            "checks": [{"group": r.group, "name": r.name, "passed": r.passed,
                        "detail": r.detail} for r in results],
            "allPass": all_pass(results)}, indent=2))
    else:
        for r in results:
            print(r.line())
        passed = sum(1 for r in results if r.passed)
        print(f"{passed}/{len(results)} checks passed")
    return 0 if all_pass(results) else 1


def cmd_replay(args) -> int:
    session = load_session(Path(args.session).read_bytes())
    state = replay(session.events, upto=args.to)
    if args.export_base:
        Path(args.export_base).write_bytes(save_base(extract_base(state)))
    if args.export_issues:
        records = export_issue_records(state)
        Path(args.export_issues).write_text(
            json.dumps(records, indent=2) + "\n", encoding="utf-8")
    view = snapshot(state)
    if args.json:
        view["session"] = session.name
        print(json.dumps(view, indent=2))
        return 0
    print(f"session: {session.name}")
    print(f"events applied: {state.last_seq}")
    print(f"commitments: {len(view['position']['commitments'])}  "
          f"denials: {len(view['position']['denials'])}  "
          f"open tensions: {len(view['openTensions'])}  "
          f"open challenges: {len(view['openChallenges'])}  "
          f"implications: {len(view['implications'])}")
    for imp in view["implications"]:
        print(f"  {', '.join(imp['lhs'])} |- {', '.join(imp['rhs'])}"
              f"   [{imp['provenance']}]")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    oracle = load_oracle(args.oracle) if args.oracle else None
    serve(addr=args.addr, data_dir=args.data, oracle=oracle)
    return 0


# ----- local interactive session loop -----

SESSION_HELP = """\
commands:
  commit ID TEXT          commit a proposition
  deny ID TEXT            deny a proposition
  retract ID              retract a positioned proposition
  oracle                  consult the opponent oracle
  accept TID retract A[,B...]
  accept TID refine NEWID TEXT...   (use 'accept TID refine -A NEWID TEXT' to
                          also retract A while refining)
  contest TID             reject a tension
  resolve CID [NOTE]      close a challenge
  show                    position, open tensions, open challenges
  base                    extracted material base
  prove SEQUENT           query the extracted base
  quit                    save and leave
"""


def _session_command(state, line):
    """Parse one REPL line into an action, or handle it locally (returns None)."""
    parts = line.split()
    head = parts[0]
    if head == "commit" and len(parts) >= 3:
        return Commit(parts[1], " ".join(parts[2:]))
    if head == "deny" and len(parts) >= 3:
        return Deny(parts[1], " ".join(parts[2:]))
    if head == "retract" and len(parts) == 2:
        return Retract(parts[1])
    if head == "contest" and len(parts) == 2:
        return ContestTension(parts[1])
    if head == "resolve" and len(parts) >= 2:
        return ResolveChallenge(parts[1], " ".join(parts[2:]))
    if head == "accept" and len(parts) >= 3:
        tid, mode = parts[1], parts[2]
        if mode == "retract" and len(parts) == 4:
            return AcceptTension(tid, Resolution(
                "retract", retracted=frozenset(parts[3].split(","))))
        if mode == "refine" and len(parts) >= 5:
            rest = parts[3:]
            retracted = frozenset()
            if rest[0].startswith("-"):
                retracted = frozenset(rest[0][1:].split(","))
                rest = rest[1:]
            if len(rest) >= 2:
                return AcceptTension(tid, Resolution(
                    "refine", retracted=retracted,
                    added=Addition(rest[0], " ".join(rest[1:]), "commit")))
    raise ValueError(f"cannot parse {line!r}; try 'help'")


def _session_loop(path: Path, oracle, out=sys.stdout) -> int:
    session = load_session(path.read_bytes())
    state = replay(session.events)
    events = list(session.events)

    def save():
        path.write_bytes(save_session(Session(session.name, tuple(events))))

    print(f"session {session.name!r}, {state.last_seq} events; "
          "'help' lists commands", file=out)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        if line == "quit":
            break
        if line == "help":
            print(SESSION_HELP, file=out)
            continue
        if line == "show":
            view = snapshot(state)
            print(json.dumps(view, indent=2), file=out)
            continue
        if line == "base":
            print(json.dumps(base_to_dict(extract_base(state)), indent=2),
                  file=out)
            continue
        if line.startswith("prove "):
            try:
                result = Prover(extract_base(state)).derivable(
                    parse_sequent(line[len("prove "):]))
                print("true" if result.derivable else "false", file=out)
            except (ParseError, UnknownAtomError, ResourceLimitError) as e:
                print(f"error: {e}", file=out)
            continue
        if line == "oracle":
            if oracle is None:
                print("error: no oracle configured (use --oracle)", file=out)
                continue
            result = integrate_proposal(state, oracle.propose(state, events))
            state = result.state
            events.extend(result.events)
            save()
            for event in result.events:
                print(f"  opponent: seq {event.seq} "
                      f"{type(event.action).__name__}", file=out)
            for item in result.discarded:
                print(f"  discarded: {item['item']} ({item['reason']})", file=out)
            for p in result.accepted_propositions:
                print(f"  suggested {p.suggested_side}: {p.id} {p.text!r}",
                      file=out)
            if not result.events and not result.discarded:
                print("  oracle has nothing to propose", file=out)
            continue
        try:
            action = _session_command(state, line)
            event = Event(state.last_seq + 1, RESPONDENT, action)
            state = apply_event(state, event)
            events.append(event)
            save()
            print(f"  applied seq {event.seq}", file=out)
        except (DialecticError, ValueError) as e:
            print(f"error: {e}", file=out)
    save()
    return 0


def cmd_session(args) -> int:
    path = Path(args.file)
    oracle = load_oracle(args.oracle) if args.oracle else None
    if args.action == "new":
        if path.exists():
            print(f"error: {path} already exists; use 'session step'",
                  file=sys.stderr)
            return USAGE_ERROR
        path.write_bytes(save_session(Session(args.name, ())))
    elif not path.exists():
        print(f"error: {path} not found; use 'session new'", file=sys.stderr)
        return USAGE_ERROR
    return _session_loop(path, oracle)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elenchus",
        description="Material-base construction and nonmonotonic sequent proving")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="decide a sequent over a base file")
    p.add_argument("--base", required=True, help="material base JSON file")
    p.add_argument("sequent", help="e.g. 'p2, p23 |- p18'")
    p.add_argument("--proof", action="store_true", help="print the proof tree")
    p.add_argument("--budget", type=int, default=None,
                   help="node budget for the search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("analyze", help="structural analyses over a base file")
    p.add_argument("--base", required=True)
    p.add_argument("--groups", help="JSON file: group name -> atom list")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-provo",
                       help="run the embedded fixture checks (PASS/FAIL lines)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_provo)

    p = sub.add_parser("replay", help="replay a session log and summarize")
    p.add_argument("--session", required=True, help="session JSON file")
    p.add_argument("--to", type=int, default=None,
                   help="stop after this sequence number")
    p.add_argument("--export-base", help="write the extracted base here")
    p.add_argument("--export-issues",
                   help="write issue-style records (title/labels/body) here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--addr", default=os.environ.get("ELENCHUS_ADDR",
                                                    "127.0.0.1:8040"))
    p.add_argument("--data", default=os.environ.get("ELENCHUS_DATA",
                                                    "elenchus-data"))
    p.add_argument("--oracle",
                   help="scripted:PATH or http:CONFIG.json opponent oracle")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("session", help="interactive local session loop")
    p.add_argument("action", choices=["new", "step"])
    p.add_argument("--file", required=True, help="session JSON file")
    p.add_argument("--name", default="untitled", help="name for a new session")
    p.add_argument("--oracle", help="scripted:PATH or http:CONFIG.json")
    p.set_defaults(func=cmd_session)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (BaseFormatError, SessionFormatError, ScriptFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except UnknownAtomError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except DialecticError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
