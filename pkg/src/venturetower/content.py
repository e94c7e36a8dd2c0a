"""Content pack: the data-driven game definition.

A pack is a single JSON document with top-level keys ``levels``, ``floors``,
``taxonomies`` and ``profile_questionnaire``. The engine is content-agnostic;
everything the game presents (curriculum text, quizzes, exercises, the feature
floors) comes from the loaded pack. A built-in default pack ships with the
package.

Packs are immutable after loading and safe to share across request handlers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

from .errors import ParseError, ValidationError

LEVEL_COUNT = 8
FLOOR_COUNT = 6

#: The six fixed areas of the entrepreneur profile questionnaire.
PROFILE_AREAS = (
    "personal trades",
    "achievement motivation",
    "attitude",
    "framework conditions",
    "skills",
    "knowledge and work experience",
)


class FloorKind(str, Enum):
    BUSINESS_PLAN = "business_plan"
    RECREATION = "recreation"
    LIFT_STATION = "lift_station"
    VIRTUAL_MARKET = "virtual_market"
    CHAT = "chat"
    TOP_LIST = "top_list"


@dataclass(frozen=True)
class ContentUnit:
    heading: str
    body: str


@dataclass(frozen=True)
class QuizQuestion:
    id: str
    prompt: str
    options: tuple[str, ...]
    correct_index: int


@dataclass(frozen=True)
class ExerciseRef:
    """A scored in-level exercise: classification over a taxonomy, or ordering."""

    id: str
    kind: str  # "classification" | "ordering"
    title: str
    taxonomy: str | None = None  # classification only
    stages: tuple[str, ...] = ()  # ordering only


@dataclass(frozen=True)
class Level:
    number: int
    title: str
    content_units: tuple[ContentUnit, ...]
    quiz: tuple[QuizQuestion, ...]
    exercises: tuple[ExerciseRef, ...]


@dataclass(frozen=True)
class Floor:
    kind: FloorKind
    title: str
    static_resources: tuple[tuple[str, str], ...] = ()  # (label, uri)


@dataclass(frozen=True)
class Taxonomy:
    name: str
    categories: tuple[str, ...]
    items: tuple[tuple[str, str], ...]  # (label, category)

    def category_of(self, label: str) -> str:
        for item_label, category in self.items:
            if item_label == label:
                return category
        raise KeyError(label)


@dataclass(frozen=True)
class ProfileItem:
    id: str
    area: str
    text: str


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]


@dataclass(frozen=True)
class ContentPack:
    version: str
    levels: tuple[Level, ...]
    floors: tuple[Floor, ...]
    taxonomies: dict[str, Taxonomy]
    profile_questionnaire: tuple[ProfileItem, ...]

    def level(self, number: int) -> Level:
        for lv in self.levels:
            if lv.number == number:
                return lv
        raise KeyError(number)

    def floor(self, kind: FloorKind) -> Floor:
        for fl in self.floors:
            if fl.kind == kind:
                return fl
        raise KeyError(kind)

    def level_titles(self) -> list[str]:
        return [lv.title for lv in self.levels]


# ---------------------------------------------------------------------------
# Parsing


def _expect(value, kind, path: str):
    if not isinstance(value, kind) or (kind is not bool and isinstance(value, bool)):
        want = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(f"{path}: expected {want}, got {type(value).__name__}")
    return value


def _get(obj: dict, key: str, kind, path: str):
    if key not in obj:
        raise ParseError(f"{path}: missing required key '{key}'")
    return _expect(obj[key], kind, f"{path}.{key}")


def _parse_question(raw, path: str) -> QuizQuestion:
    _expect(raw, dict, path)
    options = tuple(
        _expect(o, str, f"{path}.options[{i}]")
        for i, o in enumerate(_get(raw, "options", list, path))
    )
    return QuizQuestion(
        id=_get(raw, "id", str, path),
        prompt=_get(raw, "prompt", str, path),
        options=options,
        correct_index=_get(raw, "correct_index", int, path),
    )


def _parse_exercise(raw, path: str) -> ExerciseRef:
    _expect(raw, dict, path)
    kind = _get(raw, "kind", str, path)
    taxonomy = raw.get("taxonomy")
    if taxonomy is not None:
        _expect(taxonomy, str, f"{path}.taxonomy")
    stages = tuple(
        _expect(s, str, f"{path}.stages[{i}]") for i, s in enumerate(raw.get("stages", []))
    )
    return ExerciseRef(
        id=_get(raw, "id", str, path),
        kind=kind,
        title=_get(raw, "title", str, path),
        taxonomy=taxonomy,
        stages=stages,
    )


def _parse_level(raw, path: str) -> Level:
    _expect(raw, dict, path)
    units = tuple(
        ContentUnit(
            heading=_get(u, "heading", str, f"{path}.content_units[{i}]"),
            body=_get(u, "body", str, f"{path}.content_units[{i}]"),
        )
        for i, u in enumerate(_get(raw, "content_units", list, path))
        if _expect(u, dict, f"{path}.content_units[{i}]")
    )
    quiz = tuple(
        _parse_question(q, f"{path}.quiz[{i}]")
        for i, q in enumerate(_get(raw, "quiz", list, path))
    )
    exercises = tuple(
        _parse_exercise(e, f"{path}.exercises[{i}]")
        for i, e in enumerate(_get(raw, "exercises", list, path))
    )
    return Level(
        number=_get(raw, "number", int, path),
        title=_get(raw, "title", str, path),
        content_units=units,
        quiz=quiz,
        exercises=exercises,
    )


def _parse_floor(raw, path: str) -> Floor:
    _expect(raw, dict, path)
    kind_raw = _get(raw, "kind", str, path)
    try:
        kind = FloorKind(kind_raw)
    except ValueError:
        raise ParseError(f"{path}.kind: unknown floor kind '{kind_raw}'") from None
    resources_raw = raw.get("static_resources", [])
    _expect(resources_raw, list, f"{path}.static_resources")
    static = []
    for i, r in enumerate(resources_raw):
        rpath = f"{path}.static_resources[{i}]"
        _expect(r, dict, rpath)
        static.append((_get(r, "label", str, rpath), _get(r, "uri", str, rpath)))
    return Floor(kind=kind, title=_get(raw, "title", str, path), static_resources=tuple(static))


def _parse_taxonomy(name: str, raw, path: str) -> Taxonomy:
    _expect(raw, dict, path)
    categories = tuple(
        _expect(c, str, f"{path}.categories[{i}]")
        for i, c in enumerate(_get(raw, "categories", list, path))
    )
    items = []
    for i, pair in enumerate(_get(raw, "items", list, path)):
        ipath = f"{path}.items[{i}]"
        _expect(pair, list, ipath)
        if len(pair) != 2:
            raise ParseError(f"{ipath}: expected [label, category] pair")
        items.append((_expect(pair[0], str, ipath), _expect(pair[1], str, ipath)))
    return Taxonomy(name=name, categories=categories, items=tuple(items))


def parse_pack(document) -> ContentPack:
    """Build a ContentPack from a parsed JSON document, without validating invariants."""
    _expect(document, dict, "$")
    levels = tuple(
        _parse_level(lv, f"levels[{i}]")
        for i, lv in enumerate(_get(document, "levels", list, "$"))
    )
    floors = tuple(
        _parse_floor(fl, f"floors[{i}]")
        for i, fl in enumerate(_get(document, "floors", list, "$"))
    )
    taxonomies_raw = _get(document, "taxonomies", dict, "$")
    taxonomies = {
        _expect(name, str, "taxonomies"): _parse_taxonomy(name, raw, f"taxonomies.{name}")
        for name, raw in taxonomies_raw.items()
    }
    profile = []
    for i, item in enumerate(document.get("profile_questionnaire", [])):
        ipath = f"profile_questionnaire[{i}]"
        _expect(item, dict, ipath)
        profile.append(
            ProfileItem(
                id=_get(item, "id", str, ipath),
                area=_get(item, "area", str, ipath),
                text=_get(item, "text", str, ipath),
            )
        )
    return ContentPack(
        version=_get(document, "version", str, "$"),
        levels=levels,
        floors=floors,
        taxonomies=taxonomies,
        profile_questionnaire=tuple(profile),
    )


def load_pack(source: bytes | str) -> ContentPack:
    """Parse and validate a pack document.

    Raises ParseError for malformed documents and ValidationError (carrying the
    full report) for structurally invalid packs; never returns a pack with
    error diagnostics.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}") from exc
    if not source.strip():
        raise ParseError("empty document")
    try:
        document = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    pack = parse_pack(document)
    report = validate_pack(pack)
    if not report.ok:
        raise ValidationError(report)
    return pack


# ---------------------------------------------------------------------------
# Validation


def validate_pack(pack: ContentPack) -> ValidationReport:
    """Check every pack invariant; violations are diagnostics, not exceptions.

    Diagnostics come out in document order so reports are deterministic.
    """
    out: list[Diagnostic] = []

    def err(path: str, message: str):
        out.append(Diagnostic("error", path, message))

    if len(pack.levels) != LEVEL_COUNT:
        err("levels", f"expected {LEVEL_COUNT} levels, found {len(pack.levels)}")
    seen_titles: set[str] = set()
    referenced: list[tuple[str, str]] = []  # (taxonomy name, path)
    for i, level in enumerate(pack.levels):
        lpath = f"levels[{i}]"
        if level.number != i + 1:
            err(f"{lpath}.number", f"expected level number {i + 1}, found {level.number}")
        if not level.title.strip():
            err(f"{lpath}.title", "level title is blank")
        if level.title in seen_titles:
            err(f"{lpath}.title", f"duplicate level title '{level.title}'")
        seen_titles.add(level.title)
        if not level.quiz:
            err(f"{lpath}.quiz", "level has no assessment questions")
        seen_qids: set[str] = set()
        for j, q in enumerate(level.quiz):
            qpath = f"{lpath}.quiz[{j}]"
            if len(q.options) < 2:
                err(f"{qpath}.options", f"question needs at least 2 options, found {len(q.options)}")
            if not (0 <= q.correct_index < len(q.options)):
                err(
                    f"{qpath}.correct_index",
                    f"correct_index {q.correct_index} out of range for {len(q.options)} options",
                )
            if q.id in seen_qids:
                err(f"{qpath}.id", f"duplicate question id '{q.id}'")
            seen_qids.add(q.id)
        for j, ex in enumerate(level.exercises):
            epath = f"{lpath}.exercises[{j}]"
            if ex.kind == "classification":
                if not ex.taxonomy:
                    err(f"{epath}.taxonomy", "classification exercise needs a taxonomy")
                else:
                    referenced.append((ex.taxonomy, f"{epath}.taxonomy"))
            elif ex.kind == "ordering":
                if len(ex.stages) < 2:
                    err(f"{epath}.stages", "ordering exercise needs at least 2 stages")
                if len(set(ex.stages)) != len(ex.stages):
                    err(f"{epath}.stages", "ordering stages must be unique")
            else:
                err(f"{epath}.kind", f"unknown exercise kind '{ex.kind}'")

    if len(pack.floors) != FLOOR_COUNT:
        err("floors", f"expected {FLOOR_COUNT} floors, found {len(pack.floors)}")
    seen_kinds: set[FloorKind] = set()
    for i, floor in enumerate(pack.floors):
        fpath = f"floors[{i}]"
        if floor.kind in seen_kinds:
            err(f"{fpath}.kind", f"duplicate floor kind '{floor.kind.value}'")
        seen_kinds.add(floor.kind)
        if not floor.title.strip():
            err(f"{fpath}.title", "floor title is blank")

    for name, tax in pack.taxonomies.items():
        tpath = f"taxonomies.{name}"
        if len(set(tax.categories)) != len(tax.categories):
            err(f"{tpath}.categories", "categories must be unique")
        seen_labels: set[str] = set()
        for i, (label, category) in enumerate(tax.items):
            ipath = f"{tpath}.items[{i}]"
            if category not in tax.categories:
                err(ipath, f"item '{label}' assigned to unknown category '{category}'")
            if label in seen_labels:
                err(ipath, f"duplicate item label '{label}'")
            seen_labels.add(label)

    for name, path in referenced:
        if name not in pack.taxonomies:
            err(path, f"exercise references unknown taxonomy '{name}'")

    if pack.profile_questionnaire:
        areas_present: set[str] = set()
        seen_ids: set[str] = set()
        for i, item in enumerate(pack.profile_questionnaire):
            ipath = f"profile_questionnaire[{i}]"
            if item.area not in PROFILE_AREAS:
                err(f"{ipath}.area", f"unknown profile area '{item.area}'")
            else:
                areas_present.add(item.area)
            if item.id in seen_ids:
                err(f"{ipath}.id", f"duplicate profile item id '{item.id}'")
            seen_ids.add(item.id)
        for area in PROFILE_AREAS:
            if area not in areas_present:
                err("profile_questionnaire", f"profile area '{area}' has no items")

    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# Serialization


def pack_to_document(pack: ContentPack) -> dict:
    """ContentPack back to the plain-JSON document shape."""
    return {
        "version": pack.version,
        "levels": [
            {
                "number": lv.number,
                "title": lv.title,
                "content_units": [{"heading": u.heading, "body": u.body} for u in lv.content_units],
                "quiz": [
                    {
                        "id": q.id,
                        "prompt": q.prompt,
                        "options": list(q.options),
                        "correct_index": q.correct_index,
                    }
                    for q in lv.quiz
                ],
                "exercises": [
                    {
                        "id": e.id,
                        "kind": e.kind,
                        "title": e.title,
                        **({"taxonomy": e.taxonomy} if e.taxonomy is not None else {}),
                        **({"stages": list(e.stages)} if e.stages else {}),
                    }
                    for e in lv.exercises
                ],
            }
            for lv in pack.levels
        ],
        "floors": [
            {
                "kind": fl.kind.value,
                "title": fl.title,
                "static_resources": [{"label": l, "uri": u} for l, u in fl.static_resources],
            }
            for fl in pack.floors
        ],
        "taxonomies": {
            name: {"categories": list(t.categories), "items": [list(pair) for pair in t.items]}
            for name, t in pack.taxonomies.items()
        },
        "profile_questionnaire": [
            {"id": p.id, "area": p.area, "text": p.text} for p in pack.profile_questionnaire
        ],
    }


def serialize_pack(pack: ContentPack) -> bytes:
    return json.dumps(pack_to_document(pack), ensure_ascii=False, indent=2).encode("utf-8")


@lru_cache(maxsize=1)
def default_pack() -> ContentPack:
    """The built-in curriculum pack: 8 levels, 6 floors, taxonomies, questionnaire."""
    data = resources.files("venturetower.data").joinpath("default_pack.json").read_bytes()
    return load_pack(data)
