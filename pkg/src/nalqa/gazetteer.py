"""Gazetteer of standalone names, trigger words, patterns and role maps."""
from __future__ import annotations

import csv
import io
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ontology import Ontology

log = logging.getLogger(__name__)

ENTITY_KINDS = ("specific", "generic")
RELATION_KINDS = ("relation-noun", "relation-verb", "relation-prep")
KINDS = ENTITY_KINDS + RELATION_KINDS
NO_PATTERN = "no pattern"
COLUMNS = ["g_name", "g_category", "g_pattern", "g_type", "g_alias", "g_map", "g_group_map"]
SKIP_GROUP = "_"


class GazetteerError(ValueError):
    pass


@dataclass(frozen=True)
class Slot:
    """One side of a relation pattern with the roles its fillers receive."""
    classes: Tuple[str, ...]
    roles: Tuple[str, ...]

    def accepts(self, cls: str, onto: Ontology) -> bool:
        if not self.classes:
            return True
        return cls in onto.parents and any(onto.subclass_of(cls, c) for c in self.classes if c in onto.parents)

    def roles_for(self, cls: Optional[str], onto: Ontology) -> List[str]:
        """Event attributes a filler of class ``cls`` fills; ``None`` means any filler."""
        if not self.roles:
            return []
        if cls is None:
            chosen = self.roles[0]
        else:
            if not self.accepts(cls, onto):
                return []
            chosen = self.roles[0]
            if len(self.roles) == len(self.classes) and len(self.roles) > 1:
                for c, r in zip(self.classes, self.roles):
                    if c in onto.parents and onto.subclass_of(cls, c):
                        chosen = r
                        break
        return [r for r in chosen.split("&&") if r]


@dataclass(frozen=True)
class GazetteerEntry:
    name: str
    category: str
    pattern: str
    kind: str
    alias: str = ""
    map: str = ""
    group_map: Tuple[str, ...] = ()

    @property
    def is_relation(self) -> bool:
        return self.kind in RELATION_KINDS

    @property
    def has_pattern(self) -> bool:
        return bool(self.pattern) and self.pattern != NO_PATTERN

    def names(self) -> Tuple[str, ...]:
        return (self.name, self.alias) if self.alias else (self.name,)

    def slots(self) -> Tuple[Optional[Slot], Optional[Slot]]:
        """Left and right slots of a relation entry."""
        if not self.is_relation or not self.has_pattern:
            return None, None
        left_c, right_c = _split_relation(self.pattern)
        if self.map and self.map != "no map":
            left_r, right_r = _split_relation(self.map)
        else:
            left_r, right_r = (), ()
        return Slot(left_c, left_r), Slot(right_c, right_r)

    def bind(self, phrase: str, token: str) -> Optional[List[Tuple[str, str]]]:
        """Instantiate ``{TOKEN}`` with ``token`` and full-match ``phrase``.

        Returns the attribute bindings read off the capture groups, or None
        when the phrase does not satisfy the pattern.
        """
        if not self.has_pattern:
            return [(self.group_map[0], phrase)] if self.group_map else []
        regex = self.pattern.replace("{TOKEN}", re.escape(token))
        m = re.fullmatch(regex, phrase)
        if m is None:
            return None
        out: List[Tuple[str, str]] = []
        for i, attr in enumerate(self.group_map, start=1):
            if attr == SKIP_GROUP or i > len(m.groups()):
                continue
            value = m.group(i)
            if value is None or not value.strip():
                continue
            out.append((attr, value.strip()))
        return out


_SLOT = re.compile(r"\{([^{}]*)\}")


def _split_relation(text: str) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    if "<RELATION>" not in text:
        raise GazetteerError(f"relation pattern or map lacks <RELATION>: {text!r}")
    left, right = text.split("<RELATION>", 1)

    def side(s: str) -> Tuple[str, ...]:
        m = _SLOT.search(s)
        if m is None:
            raise GazetteerError(f"expected {{...}} in {text!r}")
        body = m.group(1).strip()
        return tuple(x.strip().lower() for x in body.split("|") if x.strip()) if body else ()

    return side(left), side(right)


@dataclass(frozen=True)
class NamedEntity:
    category: str
    attributes: Tuple[Tuple[str, str], ...]
    phrase: str
    offset: Optional[Tuple[int, int]] = None   # (sentence index, token offset)
    kind: str = "entity"  # entity | anaphor | event | wh

    @property
    def anaphor(self) -> bool:
        return self.kind == "anaphor"

    @property
    def is_entity(self) -> bool:
        return self.kind == "entity"

    def get(self, attr: str) -> Optional[str]:
        for k, v in self.attributes:
            if k == attr:
                return v
        return None

    def __str__(self) -> str:
        inner = ",".join(f"{k}(X,{v})" for k, v in self.attributes)
        return f"{self.category}({inner})"


@dataclass
class Gazetteer:
    entries: List[GazetteerEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_name: Dict[str, List[GazetteerEntry]] = {}
        self._relations: Dict[str, List[GazetteerEntry]] = {}
        for e in self.entries:
            self._index(e)

    def _index(self, e: GazetteerEntry) -> None:
        if e.is_relation:
            for n in e.names():
                self._relations.setdefault(n, []).append(e)
        else:
            for n in e.names():
                self._by_name.setdefault(n, []).append(e)

    def add(self, e: GazetteerEntry) -> None:
        self.entries.append(e)
        self._index(e)

    def knows(self, word: str) -> bool:
        return word in self._by_name or word in self._relations

    def names(self) -> List[str]:
        return list(self._by_name) + list(self._relations)

    def direct_match(self, phrase: str) -> Optional[Tuple[str, GazetteerEntry]]:
        for e in self._by_name.get(phrase, []):
            if e.kind == "specific":
                return e.category, e
        return None

    def direct_entity(self, phrase: str) -> Optional[NamedEntity]:
        hit = self.direct_match(phrase)
        if hit is None:
            return None
        cat, e = hit
        attrs = e.bind(phrase, phrase) if e.has_pattern else None
        if attrs is None:
            attrs = [(e.group_map[0], phrase)] if e.group_map else []
        return NamedEntity(cat, tuple(attrs), phrase)

    def second_pass_match(self, phrase: str, head: Optional[str] = None) -> Optional[NamedEntity]:
        tokens = phrase.split()
        order: List[str] = []
        if head:
            order.append(head)
        order.extend(t for t in tokens if t not in order)
        for tok in order:
            for e in self._by_name.get(tok, []):
                if not e.has_pattern:
                    continue
                attrs = e.bind(phrase, tok)
                if attrs is not None:
                    return NamedEntity(e.category, tuple(attrs), phrase)
        return None

    def lookup(self, word: str, kinds: Sequence[str] = RELATION_KINDS) -> Optional[GazetteerEntry]:
        """Exact relation-entry lookup."""
        for e in self._relations.get(word, []):
            if e.kind in kinds:
                return e
        return None

    def relation_trigger(self, word: str, kinds: Sequence[str] = RELATION_KINDS) -> Optional[GazetteerEntry]:
        """Longest contiguous multi-word trigger inside ``word``."""
        parts = word.split()
        for n in range(len(parts), 0, -1):
            for i in range(len(parts) - n + 1):
                e = self.lookup(" ".join(parts[i:i + n]), kinds)
                if e is not None:
                    return e
        return None

    def contingency_trigger(self, event_cat: str, entity_cat: str, onto: Ontology
                            ) -> Optional[Tuple[GazetteerEntry, str]]:
        """A relation entry of ``event_cat`` (or an ancestor event class) whose
        pattern admits ``entity_cat``; returns the entry and the mapped role."""
        chain = [c for c in onto._linear_ancestors(event_cat) if onto.is_event_class(c)]
        for cat in chain:
            for e in self.entries:
                if not e.is_relation or e.category != cat or not e.has_pattern:
                    continue
                for slot in e.slots():
                    if slot is None or not slot.classes:
                        continue
                    if entity_cat in slot.classes or any(
                            c in onto.parents and onto.subclass_of(entity_cat, c) for c in slot.classes):
                        roles = slot.roles_for(entity_cat, onto)
                        if roles:
                            return e, roles[0]
        return None

    def validate(self, onto: Ontology) -> None:
        for e in self.entries:
            if e.category not in onto.parents:
                raise GazetteerError(f"entry {e.name!r}: unknown category {e.category!r}")
            if e.is_relation:
                if not onto.is_event_class(e.category):
                    raise GazetteerError(f"relation entry {e.name!r} must have an event category")
                left, right = e.slots()
                schema = {a.name for a in onto.attribute_schema(e.category)}
                for slot in (left, right):
                    if slot is None:
                        continue
                    for c in slot.classes:
                        if c not in onto.parents:
                            raise GazetteerError(f"entry {e.name!r}: unknown pattern class {c!r}")
                    for r in slot.roles:
                        for part in r.split("&&"):
                            if part and part not in schema:
                                raise GazetteerError(
                                    f"entry {e.name!r}: role {part!r} is not an attribute of {e.category}")
            else:
                if not onto.is_entity_class(e.category):
                    raise GazetteerError(f"name entry {e.name!r} must have an entity category")
                schema = {a.name for a in onto.attribute_schema(e.category)}
                for g in e.group_map:
                    if g != SKIP_GROUP and g not in schema:
                        raise GazetteerError(f"entry {e.name!r}: {g!r} is not an attribute of {e.category}")


def _check_entry(e: GazetteerEntry, lineno: int) -> None:
    if e.kind not in KINDS:
        raise GazetteerError(f"line {lineno}: unknown g_type {e.kind!r}")
    if e.kind in ENTITY_KINDS and e.has_pattern:
        if e.pattern.count("{TOKEN}") != 1:
            raise GazetteerError(f"line {lineno}: pattern must contain {{TOKEN}} exactly once")
        if "(?" in e.pattern or re.search(r"\\[1-9]", e.pattern):
            raise GazetteerError(f"line {lineno}: pattern uses constructs outside the supported dialect")
        try:
            re.compile(e.pattern.replace("{TOKEN}", "x"))
        except re.error as exc:
            raise GazetteerError(f"line {lineno}: bad pattern: {exc}") from None
    if e.is_relation:
        try:
            e.slots()
        except GazetteerError as exc:
            raise GazetteerError(f"line {lineno}: {exc}") from None
        if "&&" in e.map:
            log.warning("line %d: map %r uses '&&'; the slot fills every listed role", lineno, e.map)


def load_gazetteer(text: str, onto: Optional[Ontology] = None) -> Gazetteer:
    gaz = Gazetteer()
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip() or row[0].startswith("#"):
            continue
        if row[0] == "g_name":
            continue
        if len(row) < 4:
            raise GazetteerError(f"line {lineno}: expected at least 4 columns, got {len(row)}")
        row = row + [""] * (len(COLUMNS) - len(row))
        name, cat, pattern, kind, alias, rmap, gmap = row[:7]
        groups = tuple(g.strip() for g in gmap.split(",") if g.strip())
        e = GazetteerEntry(name, cat, pattern, kind, alias, rmap, groups)
        _check_entry(e, lineno)
        gaz.add(e)
    if onto is not None:
        gaz.validate(onto)
    return gaz


def serialize_gazetteer(gaz: Gazetteer) -> str:
    out = ["\t".join(COLUMNS)]
    for e in gaz.entries:
        out.append("\t".join([e.name, e.category, e.pattern, e.kind, e.alias, e.map, ",".join(e.group_map)]))
    return "\n".join(out) + "\n"


def with_aliases_expanded(gaz: Gazetteer) -> Gazetteer:
    """Equivalent gazetteer where every alias is a separate entry of its own."""
    entries: List[GazetteerEntry] = []
    for e in gaz.entries:
        entries.append(GazetteerEntry(e.name, e.category, e.pattern, e.kind, "", e.map, e.group_map))
        if e.alias:
            entries.append(GazetteerEntry(e.alias, e.category, e.pattern, e.kind, "", e.map, e.group_map))
    return Gazetteer(entries)


def iter_entity_entries(gaz: Gazetteer) -> Iterable[GazetteerEntry]:
    return (e for e in gaz.entries if not e.is_relation)
