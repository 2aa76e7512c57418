"""Built-in verification suite over the shipped PROV-O fixtures.

Every expectation here is pinned: a deliberate engine change that moves
one of these answers is a breaking change and should be treated as such.
The checks cover the replay of the recorded session, the derivability
profile of the extracted base (consequences, nontransitivity,
nonmonotonicity, explicitation, supraclassicality, retraction hygiene),
the cross-group independence survey, and the containment audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .base import MaterialBase, load_base, save_base
from .dialectic import AcceptTension, Session, extract_base, load_session, replay
from .formula import parse_sequent
from .prover import Prover, containment_audit, independence_matrix

_FIXTURES = files("elenchus") / "fixtures"

EXPECTED_ATOMS = 19
EXPECTED_IMPLICATIONS = 9
EXPECTED_CROSS_PAIRS = 34

# query text -> expected derivability, grouped by the property they pin down
QUERY_GROUPS: tuple = (
    ("base-consequences", (
        ("p2 |- p18", True),
        ("p3 |- p27", True),
        ("p4 |- p29", True),
        ("p6 |- p30", True),
        ("p7 |- p28", True),
        ("p9 |- p25", True),
        ("p9 |- p26", True),
        ("p10 |- p24", True),
        ("p18 |- p23", True),
    )),
    ("nontransitivity", (
        ("p2 |- p18", True),
        ("p18 |- p23", True),
        ("p2 |- p23", False),
    )),
    ("nonmonotonicity", (
        ("p2 |- p18", True),
        ("p2, p23 |- p18", False),
        ("p9 |- p25", True),
        ("p9, p26 |- p25", False),
    )),
    ("explicitation", (
        ("|- p2 -> p18", True),
        ("|- p3 -> p27", True),
        ("|- p4 -> p29", True),
        ("|- p6 -> p30", True),
        ("|- p7 -> p28", True),
        ("|- p9 -> p25", True),
        ("|- p9 -> p26", True),
        ("|- p10 -> p24", True),
        ("|- p18 -> p23", True),
        ("|- p2 -> p23", False),
    )),
    ("supraclassicality", (
        ("|- p2 | ~p2", True),
        ("p2 & ~p2 |-", True),
    )),
    ("core-extension-boundary", (
        ("|- (p2 -> p18) & (p18 -> p23) -> (p2 -> p23)", True),
        ("p2 |- p23", False),
        ("|- p2 -> p23", False),
    )),
    ("directionality", (
        ("p7 |- p28", True),
        ("p28 |- p7", False),
    )),
    ("view-independence", (
        ("p2 |- p27", False),
        ("p2 |- p29", False),
        ("p3 |- p18", False),
        ("p3 |- p29", False),
        ("p4 |- p18", False),
        ("p4 |- p27", False),
        ("p7 |- p30", False),
        ("p6 |- p28", False),
    )),
    ("strengthening-defeat", (
        ("p7 |- p28", True),
        ("p7, p24 |- p28", False),
    )),
    ("delegation-branching", (
        ("p9 |- p25", True),
        ("p9 |- p26", True),
        ("p9, p25 |- p26", False),
    )),
    ("single-route", (
        ("p3 |- p27", True),
        ("p3 |- p18", False),
        ("p3 |- p25", False),
    )),
    ("retraction-hygiene", (
        ("p7 |- p18", False),
        ("p7 |- p23", False),
        ("p28 |- p18", False),
        ("p18 |- p23", True),
    )),
)


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f"  ({self.detail})" if self.detail and not self.passed else ""
        return f"{status}  {self.group}: {self.name}{suffix}"


def fixture_bytes(name: str) -> bytes:
    return (_FIXTURES / name).read_bytes()


def fixture_text(name: str) -> str:
    return (_FIXTURES / name).read_text(encoding="utf-8")


def fixture_session() -> Session:
    return load_session(fixture_bytes("provo_session.json"))


def fixture_base() -> MaterialBase:
    return load_base(fixture_bytes("provo_base.json"))


def fixture_groups() -> dict:
    import json

    return json.loads(fixture_text("provo_groups.json"))


def fixture_oracle_script() -> dict:
    import json

    return json.loads(fixture_text("provo_oracle_script.json"))


def _replay_checks() -> list[CheckResult]:
    results = []
    session = fixture_session()
    state = replay(session.events)
    base = extract_base(state)

    def check(name, passed, detail=""):
        results.append(CheckResult("replay", name, passed, detail))

    commitments = len(state.position.commitments)
    check("19 active commitments", commitments == 19, f"got {commitments}")
    denials = len(state.position.denials)
    check("0 denials", denials == 0, f"got {denials}")
    open_tensions = len(state.open_tensions())
    check("0 open tensions", open_tensions == 0, f"got {open_tensions}")
    implications = len(state.implications)
    check("9 implications", implications == 9, f"got {implications}")
    open_challenges = len(state.open_challenges())
    check("all challenges resolved", open_challenges == 0, f"{open_challenges} open")

    shipped = fixture_bytes("provo_base.json")
    check("extracted base is byte-identical to the shipped base",
          save_base(base) == shipped)

    accepted = {e.action.tension_id for e in session.events
                if isinstance(e.action, AcceptTension)}
    orphaned = [i.provenance for i in state.implications
                if i.provenance not in accepted]
    check("every implication traces to an accepted tension",
          not orphaned, f"orphaned: {orphaned}")
    return results


def _query_checks(base: MaterialBase) -> list[CheckResult]:
    prover = Prover(base)
    results = []
    for group, queries in QUERY_GROUPS:
        for text, expected in queries:
            got = prover.derivable(parse_sequent(text)).derivable
            want = "derivable" if expected else "not derivable"
            results.append(CheckResult(group, f"{text}  [{want}]", got == expected,
                                       f"got {got}"))
    return results


def _independence_checks(base: MaterialBase) -> list[CheckResult]:
    report = independence_matrix(base, fixture_groups())
    return [
        CheckResult("independence", f"{EXPECTED_CROSS_PAIRS} cross-group pairs",
                    report.pair_count == EXPECTED_CROSS_PAIRS,
                    f"got {report.pair_count}"),
        CheckResult("independence", "no cross-group pair derivable",
                    report.derivable_count == 0,
                    f"derivable: {list(report.derivable_pairs)}"),
    ]


def _containment_checks(base: MaterialBase) -> list[CheckResult]:
    audit = containment_audit(base)
    failing = sorted(a for a, ok in audit.items() if not ok)
    return [
        CheckResult("containment", f"audit covers {EXPECTED_ATOMS} atoms",
                    len(audit) == EXPECTED_ATOMS, f"got {len(audit)}"),
        CheckResult("containment", "p |- p for every atom", not failing,
                    f"failing: {failing}"),
    ]


def run_checks() -> list[CheckResult]:
    results = _replay_checks()
    base = fixture_base()
    results += _query_checks(base)
    results += _independence_checks(base)
    results += _containment_checks(base)
    return results


def all_pass(results) -> bool:
    return all(r.passed for r in results)
