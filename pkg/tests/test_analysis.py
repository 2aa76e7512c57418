import pytest

from elenchus.base import UnknownAtomError, base_from_dict
from elenchus.formula import Atom
from elenchus.prover import (
    OverlappingGroupsError,
    containment_audit,
    ddt_check,
    independence_matrix,
    monotonicity_defeats,
    transitivity_gaps,
)


def chain_base():
    return base_from_dict({
        "atoms": ["a", "b", "c", "d"],
        "implications": [{"lhs": ["a"], "rhs": ["b"]},
                         {"lhs": ["b"], "rhs": ["c"]}],
    })


def test_containment_audit_covers_every_atom():
    audit = containment_audit(chain_base())
    assert audit == {"a": True, "b": True, "c": True, "d": True}
    assert list(audit) == sorted(audit)


def test_transitivity_gaps_found():
    assert transitivity_gaps(chain_base()) == [("a", "b", "c")]


def test_transitivity_gap_closes_when_shortcut_added():
    base = base_from_dict({
        "atoms": ["a", "b", "c"],
        "implications": [{"lhs": ["a"], "rhs": ["b"]},
                         {"lhs": ["b"], "rhs": ["c"]},
                         {"lhs": ["a"], "rhs": ["c"]}],
    })
    assert transitivity_gaps(base) == []


def test_monotonicity_defeats_exact_membership():
    # every (implication, extra atom) pair defeats, since membership is exact
    defeats = monotonicity_defeats(chain_base())
    assert len(defeats) == 2 * 2
    assert ({(tuple(sorted(i.lhs)), tuple(sorted(i.rhs)), extra)
             for i, extra in defeats}
            == {(("a",), ("b",), "c"), (("a",), ("b",), "d"),
                (("b",), ("c",), "a"), (("b",), ("c",), "d")})


def test_independence_matrix_counts_cross_pairs():
    base = chain_base()
    report = independence_matrix(base, {"left": ["a"], "right": ["c", "d"]})
    assert report.pair_count == 2
    # a |- c and c |- a both fail, a |- d and d |- a both fail
    assert report.derivable_count == 0
    assert report.derivable_pairs == ()


def test_independence_matrix_spots_derivable_pairs():
    report = independence_matrix(chain_base(), {"x": ["a"], "y": ["b"]})
    assert report.pair_count == 1
    assert report.derivable_count == 1
    assert report.derivable_pairs == (("a", "b"),)


def test_groups_must_be_disjoint_and_known():
    base = chain_base()
    with pytest.raises(OverlappingGroupsError):
        independence_matrix(base, {"x": ["a", "b"], "y": ["b"]})
    with pytest.raises(UnknownAtomError):
        independence_matrix(base, {"x": ["a"], "y": ["ghost"]})


def test_ddt_probe_reports_both_sides():
    base = chain_base()
    result = ddt_check(base, (), Atom("a"), Atom("b"))
    assert result.conditional_side and result.premise_side and result.agree
    result = ddt_check(base, (), Atom("a"), Atom("c"))
    assert not result.conditional_side and not result.premise_side
    assert result.agree
