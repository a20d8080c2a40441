"""Persistent vocabulary and learned user-word entries.

The vocabulary holds the system's Objects and Goals plus the relation
stating which goals apply to which objects. Every unknown user word accrues
one membership function per candidate system term; ratings are folded into
the store immediately, so the lexicon is the single source of truth.

Serialization is a single JSON document (schema version ``fuzzylex-v1``),
written atomically and round-tripping every field at full precision.
"""
from __future__ import annotations

import enum
import json
import os
import tempfile
from pathlib import Path
from typing import Iterator

from .decision import CandidateScore, DecisionResult, decision_coefficient, final_decision
from .errors import (
    ConflictError,
    DomainError,
    NotFoundError,
    ParseError,
    UnsupportedVersionError,
)
from .trapezoid import Trapezoid, construct

FORMAT_VERSION = "fuzzylex-v1"


class TermKind(enum.Enum):
    """The two kinds of system vocabulary terms."""

    OBJECT = "object"
    GOAL = "goal"

    @classmethod
    def parse(cls, text: str) -> "TermKind":
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise DomainError(f"kind must be 'object' or 'goal', got {text!r}") from None

    @property
    def other(self) -> "TermKind":
        return TermKind.GOAL if self is TermKind.OBJECT else TermKind.OBJECT


def _key(identifier: str) -> str:
    return identifier.casefold()


class Vocabulary:
    """System terms and the goal-on-object applicability relation.

    Identifiers are unique per kind, matched case-insensitively, and listed
    in insertion order so candidate enumeration is deterministic.
    """

    def __init__(self) -> None:
        self._terms: dict[TermKind, dict[str, str]] = {
            TermKind.OBJECT: {},
            TermKind.GOAL: {},
        }
        self._pairs: dict[tuple[str, str], None] = {}  # (goal key, object key)

    @property
    def objects(self) -> list[str]:
        return list(self._terms[TermKind.OBJECT].values())

    @property
    def goals(self) -> list[str]:
        return list(self._terms[TermKind.GOAL].values())

    @property
    def applicability(self) -> list[tuple[str, str]]:
        terms = self._terms
        return [
            (terms[TermKind.GOAL][g], terms[TermKind.OBJECT][o])
            for g, o in self._pairs
        ]

    def add_term(self, kind: TermKind, identifier: str) -> None:
        identifier = str(identifier).strip()
        if not identifier:
            raise DomainError("term identifier must be non-empty")
        if _key(identifier) in self._terms[kind]:
            raise ConflictError(f"{kind.value} {identifier!r} already exists")
        self._terms[kind][_key(identifier)] = identifier

    def has_term(self, kind: TermKind, identifier: str) -> bool:
        return _key(str(identifier)) in self._terms[kind]

    def canonical(self, kind: TermKind, identifier: str) -> str:
        """Stored casing of a term; raises if it does not exist."""
        try:
            return self._terms[kind][_key(str(identifier))]
        except KeyError:
            raise NotFoundError(f"unknown {kind.value} {identifier!r}") from None

    def set_applicable(self, goal: str, obj: str) -> None:
        pair = (_key(self.canonical(TermKind.GOAL, goal)),
                _key(self.canonical(TermKind.OBJECT, obj)))
        self._pairs.setdefault(pair, None)

    def is_applicable(self, goal: str, obj: str) -> bool:
        return (_key(goal), _key(obj)) in self._pairs

    def candidates_for(self, term: str, kind: TermKind) -> list[str]:
        """Terms of the other kind related to ``term`` by applicability.

        For an object: the goals applicable to it. For a goal: the objects
        it applies to. Order follows the relation's insertion order.
        """
        key = _key(self.canonical(kind, term))
        if kind is TermKind.OBJECT:
            found = [g for g, o in self._pairs if o == key]
            return [self._terms[TermKind.GOAL][g] for g in found]
        found = [o for g, o in self._pairs if g == key]
        return [self._terms[TermKind.OBJECT][o] for o in found]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self._terms == other._terms and self._pairs == other._pairs


class UserWordEntry:
    """One learned user word: a membership function per candidate term."""

    def __init__(self, surface: str, kind: TermKind) -> None:
        self.surface = surface
        self.kind = kind
        self.functions: dict[str, Trapezoid] = {}

    def _stored_key(self, candidate: str) -> str | None:
        key = _key(candidate)
        return next((c for c in self.functions if _key(c) == key), None)

    def function_for(self, candidate: str) -> Trapezoid | None:
        stored = self._stored_key(candidate)
        return self.functions[stored] if stored is not None else None

    def put_function(self, candidate: str, t: Trapezoid) -> None:
        stored = self._stored_key(candidate)
        self.functions[stored if stored is not None else candidate] = t

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UserWordEntry):
            return NotImplemented
        return (
            self.surface == other.surface
            and self.kind == other.kind
            and self.functions == other.functions
        )


class Lexicon:
    """Vocabulary plus the map of learned user-word entries."""

    def __init__(self, vocabulary: Vocabulary | None = None) -> None:
        self.vocabulary = vocabulary if vocabulary is not None else Vocabulary()
        self._entries: dict[tuple[TermKind, str], UserWordEntry] = {}

    # -- vocabulary management -------------------------------------------

    def add_term(self, kind: TermKind, identifier: str) -> None:
        self.vocabulary.add_term(kind, identifier)

    def set_applicable(self, goal: str, obj: str) -> None:
        self.vocabulary.set_applicable(goal, obj)

    def candidates_for(self, term: str, kind: TermKind) -> list[str]:
        return self.vocabulary.candidates_for(term, kind)

    def replace_vocabulary(self, vocabulary: Vocabulary) -> None:
        """Swap the vocabulary, refusing removals that would orphan entries."""
        for entry in self._entries.values():
            for candidate in entry.functions:
                if not vocabulary.has_term(entry.kind, candidate):
                    raise ConflictError(
                        f"cannot remove {entry.kind.value} {candidate!r}: "
                        f"entry {entry.surface!r} has a learned function for it"
                    )
        self.vocabulary = vocabulary

    # -- learned entries ---------------------------------------------------

    def entries(self) -> Iterator[UserWordEntry]:
        return iter(self._entries.values())

    def has_entry(self, surface: str, kind: TermKind) -> bool:
        return (kind, _key(surface)) in self._entries

    def entry(self, surface: str, kind: TermKind) -> UserWordEntry:
        try:
            return self._entries[(kind, _key(surface))]
        except KeyError:
            raise NotFoundError(
                f"no learned entry for {kind.value} word {surface!r}"
            ) from None

    def record_rating(
        self, surface: str, kind: TermKind, candidate: str, theta: float
    ) -> Trapezoid:
        """Fold one possibility degree into the (surface, candidate) function.

        The first rating constructs the departure function; later ones
        adjust it.
        """
        surface = str(surface).strip()
        if not surface:
            raise DomainError("user word must be non-empty")
        canonical = self.vocabulary.canonical(kind, candidate)
        entry = self._entries.get((kind, _key(surface)))
        if entry is None:
            entry = UserWordEntry(surface, kind)
            self._entries[(kind, _key(surface))] = entry
        existing = entry.function_for(canonical)
        updated = construct(theta) if existing is None else existing.adjust(theta)
        entry.put_function(canonical, updated)
        return updated

    def interpret(self, surface: str, kind: TermKind) -> DecisionResult:
        """Rank the entry's candidates and pick the best interpretation."""
        entry = self.entry(surface, kind)
        scores = [
            CandidateScore(candidate, decision_coefficient(t))
            for candidate, t in entry.functions.items()
        ]
        return final_decision(scores)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self.vocabulary == other.vocabulary and self._entries == other._entries

    # -- serialization -----------------------------------------------------

    def to_document(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "vocabulary": {
                "objects": self.vocabulary.objects,
                "goals": self.vocabulary.goals,
                "applicability": [list(pair) for pair in self.vocabulary.applicability],
            },
            "entries": [
                {
                    "surface": entry.surface,
                    "kind": entry.kind.value,
                    "functions": [
                        {
                            "candidate": candidate,
                            "gamma": t.gamma,
                            "alpha": t.alpha,
                            "beta": t.beta,
                            "delta": t.delta,
                            "left_count": t.left_count,
                            "right_count": t.right_count,
                        }
                        for candidate, t in entry.functions.items()
                    ],
                }
                for entry in self._entries.values()
            ],
        }

    @classmethod
    def from_document(cls, document: object) -> "Lexicon":
        if not isinstance(document, dict):
            raise ParseError("lexicon document must be a JSON object")
        version = document.get("version")
        if version != FORMAT_VERSION:
            raise UnsupportedVersionError(
                f"unsupported lexicon version {version!r}, expected {FORMAT_VERSION!r}"
            )
        lexicon = cls()
        vocab = _field(document, "vocabulary", dict, "")
        for name in _field(vocab, "objects", list, "vocabulary"):
            _wrap_domain(lambda: lexicon.add_term(TermKind.OBJECT, _string(name, "vocabulary.objects")),
                         "vocabulary.objects")
        for name in _field(vocab, "goals", list, "vocabulary"):
            _wrap_domain(lambda: lexicon.add_term(TermKind.GOAL, _string(name, "vocabulary.goals")),
                         "vocabulary.goals")
        for i, pair in enumerate(_field(vocab, "applicability", list, "vocabulary")):
            where = f"vocabulary.applicability[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"{where}: expected a [goal, object] pair")
            _wrap_domain(lambda: lexicon.set_applicable(_string(pair[0], where), _string(pair[1], where)),
                         where)
        for i, raw in enumerate(_field(document, "entries", list, "")):
            where = f"entries[{i}]"
            if not isinstance(raw, dict):
                raise ParseError(f"{where}: expected an object")
            surface = _string(_field(raw, "surface", str, where), where)
            kind = _wrap_domain(lambda: TermKind.parse(_field(raw, "kind", str, where)), where)
            entry = UserWordEntry(surface, kind)
            for j, fn in enumerate(_field(raw, "functions", list, where)):
                fwhere = f"{where}.functions[{j}]"
                if not isinstance(fn, dict):
                    raise ParseError(f"{fwhere}: expected an object")
                candidate = _string(_field(fn, "candidate", str, fwhere), fwhere)
                if not lexicon.vocabulary.has_term(kind, candidate):
                    raise ParseError(
                        f"{fwhere}: candidate {candidate!r} is not a vocabulary {kind.value}"
                    )
                trapezoid = _wrap_domain(
                    lambda: Trapezoid(
                        gamma=_number(fn, "gamma", fwhere),
                        alpha=_number(fn, "alpha", fwhere),
                        beta=_number(fn, "beta", fwhere),
                        delta=_number(fn, "delta", fwhere),
                        left_count=_count(fn, "left_count", fwhere),
                        right_count=_count(fn, "right_count", fwhere),
                    ),
                    fwhere,
                )
                entry.put_function(candidate, trapezoid)
            if not entry.functions:
                raise ParseError(f"{where}: entry has no functions")
            if lexicon.has_entry(surface, kind):
                raise ParseError(f"{where}: duplicate entry for {kind.value} {surface!r}")
            lexicon._entries[(kind, _key(surface))] = entry
        return lexicon


# -- document field helpers ---------------------------------------------

def _field(mapping: dict, name: str, expected: type, where: str) -> object:
    path = f"{where}.{name}" if where else name
    if name not in mapping:
        raise ParseError(f"missing field {path!r}")
    value = mapping[name]
    if not isinstance(value, expected):
        raise ParseError(f"field {path!r} must be a {expected.__name__}")
    return value


def _string(value: object, where: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _number(mapping: dict, name: str, where: str) -> float:
    path = f"{where}.{name}"
    if name not in mapping:
        raise ParseError(f"missing field {path!r}")
    value = mapping[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"field {path!r} must be a number")
    return float(value)


def _count(mapping: dict, name: str, where: str) -> int:
    path = f"{where}.{name}"
    if name not in mapping:
        raise ParseError(f"missing field {path!r}")
    value = mapping[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"field {path!r} must be an integer")
    return value


def _wrap_domain(action, where: str):
    """Re-raise value errors from constructors as parse errors with context."""
    try:
        return action()
    except (DomainError, ConflictError, NotFoundError) as exc:
        raise ParseError(f"{where}: {exc}" if where else str(exc)) from None


# -- file persistence ----------------------------------------------------

def dumps(lexicon: Lexicon) -> str:
    return json.dumps(lexicon.to_document(), indent=2) + "\n"


def save(lexicon: Lexicon, destination: str | Path) -> None:
    """Write the lexicon document atomically (temp file, then rename)."""
    destination = Path(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(
        dir=destination.parent, prefix=destination.name, suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(dumps(lexicon))
        os.replace(tmp, destination)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def loads(text: str) -> Lexicon:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return Lexicon.from_document(document)


def load(source: str | Path) -> Lexicon:
    with open(source, encoding="utf-8") as handle:
        return loads(handle.read())
