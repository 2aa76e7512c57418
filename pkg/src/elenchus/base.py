"""Material bases: an atom vocabulary plus endorsed atomic implications.

A base fixes the language (a finite set of atoms) and the good atomic
sequents over it. The consequence relation a base underwrites is the
union of its stored implications and Containment (every sequent whose
sides share a member). Containment is decided lazily by ``is_axiom``,
never enumerated.

Membership of a stored implication is exact: ``{p9} |- {p25}`` being in
the base says nothing about ``{p9, p26} |- {p25}``. That exactness is
what keeps the relation nonmonotonic, so there is deliberately no
subset closure here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .formula import ATOM_NAME, Sequent


class BaseFormatError(ValueError):
    """Base document does not match the expected JSON shape."""

    code = "FormatError"


class UnknownAtomError(ValueError):
    """A sequent or implication mentions an atom outside the base vocabulary."""

    code = "UnknownAtom"

    def __init__(self, names: Iterable[str]):
        self.names = sorted(names)
        super().__init__(f"unknown atoms: {', '.join(self.names)}")


@dataclass(frozen=True)
class AtomicImplication:
    """One endorsed atomic sequent lhs |- rhs, with free-form provenance.

    Provenance is carried metadata (which tension produced this) and is
    excluded from equality so membership tests compare sides only.
    """

    lhs: frozenset[str]
    rhs: frozenset[str]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lhs", frozenset(self.lhs))
        object.__setattr__(self, "rhs", frozenset(self.rhs))
        for name in self.lhs | self.rhs:
            if not ATOM_NAME.fullmatch(name):
                raise ValueError(f"invalid atom name: {name!r}")

    @property
    def redundant(self) -> bool:
        """True when the sides overlap; Containment already yields these."""
        return bool(self.lhs & self.rhs)

    def sides(self) -> tuple[frozenset[str], frozenset[str]]:
        return (self.lhs, self.rhs)


@dataclass(frozen=True)
class MaterialBase:
    atoms: frozenset[str]
    implications: tuple[AtomicImplication, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        # Canonical order and no duplicate pairs, so two bases with the same
        # content compare equal however they were assembled.
        unique: dict = {}
        for imp in self.implications:
            unique.setdefault(imp.sides(), imp)
        ordered = sorted(unique.values(),
                         key=lambda i: (sorted(i.lhs), sorted(i.rhs)))
        object.__setattr__(self, "implications", tuple(ordered))
        for name in self.atoms:
            if not ATOM_NAME.fullmatch(name):
                raise ValueError(f"invalid atom name: {name!r}")
        loose = set()
        for imp in self.implications:
            loose |= (imp.lhs | imp.rhs) - self.atoms
        if loose:
            raise UnknownAtomError(loose)
        object.__setattr__(self, "_pairs", frozenset(unique))

    def is_axiom(self, s: Sequent) -> bool:
        """Axiom test: formula-level Containment, or exact stored implication.

        Containment fires on any shared formula between the sides
        (compound ones included; decomposition would reach the same
        verdict, this is just the shortcut). Stored implications only
        apply to fully atomic sequents and only by exact side equality.
        """
        unknown = s.atoms() - self.atoms
        if unknown:
            raise UnknownAtomError(unknown)
        if s.antecedent & s.succedent:
            return True
        if s.is_atomic():
            pair = (frozenset(f.name for f in s.antecedent),
                    frozenset(f.name for f in s.succedent))
            return pair in self._pairs
        return False

    def has_implication(self, lhs: Iterable[str], rhs: Iterable[str]) -> bool:
        return (frozenset(lhs), frozenset(rhs)) in self._pairs

    def redundant_implications(self) -> list[AtomicImplication]:
        return [i for i in self.implications if i.redundant]


def load_base(raw: bytes | str) -> MaterialBase:
    """Parse a base document; raises BaseFormatError / UnknownAtomError."""
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise BaseFormatError(f"invalid JSON: {e}") from e
    return base_from_dict(doc)


def base_from_dict(doc: object) -> MaterialBase:
    if not isinstance(doc, dict):
        raise BaseFormatError("base document must be a JSON object")
    atoms = doc.get("atoms")
    implications = doc.get("implications")
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise BaseFormatError('"atoms" must be a list of strings')
    if len(set(atoms)) != len(atoms):
        raise BaseFormatError('"atoms" contains duplicates')
    if not isinstance(implications, list):
        raise BaseFormatError('"implications" must be a list')
    parsed = []
    for i, entry in enumerate(implications):
        if not isinstance(entry, dict):
            raise BaseFormatError(f"implication {i} must be an object")
        lhs, rhs = entry.get("lhs"), entry.get("rhs")
        for side, label in ((lhs, "lhs"), (rhs, "rhs")):
            if not isinstance(side, list) or not all(isinstance(a, str) for a in side):
                raise BaseFormatError(f'implication {i}: "{label}" must be a list of strings')
        provenance = entry.get("provenance", "")
        if not isinstance(provenance, str):
            raise BaseFormatError(f'implication {i}: "provenance" must be a string')
        try:
            parsed.append(AtomicImplication(frozenset(lhs), frozenset(rhs), provenance))
        except ValueError as e:
            raise BaseFormatError(f"implication {i}: {e}") from e
    try:
        return MaterialBase(frozenset(atoms), tuple(parsed))
    except ValueError as e:
        if isinstance(e, UnknownAtomError):
            raise
        raise BaseFormatError(str(e)) from e


def base_to_dict(base: MaterialBase) -> dict:
    """Canonical dict form: atoms and implication sides sorted."""
    return {
        "atoms": sorted(base.atoms),
        "implications": [
            {"lhs": sorted(i.lhs), "rhs": sorted(i.rhs), "provenance": i.provenance}
            for i in sorted(base.implications, key=lambda i: (sorted(i.lhs), sorted(i.rhs)))
        ],
    }


def save_base(base: MaterialBase) -> bytes:
    """Canonical serialization; load(save(b)) reproduces b byte for byte."""
    return (json.dumps(base_to_dict(base), indent=2) + "\n").encode("utf-8")
