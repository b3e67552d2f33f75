"""Discourse integration: entities and events of a document become network triples."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .depparse import DepGraph
from .gazetteer import Gazetteer, GazetteerEntry, NamedEntity, Slot
from .nlu import Relation, assign_categories, chunk, infer_relations
from .ontology import Ontology
from .semnet import IS, SemanticNetwork, Triple, object_id, serialize

log = logging.getLogger(__name__)

Offset = Tuple[int, int]


class DiscourseError(ValueError):
    pass


class SchemaViolation(DiscourseError):
    pass


class UnresolvedAnaphorError(DiscourseError):
    pass


@dataclass(frozen=True)
class Trigger:
    event_class: str
    entry: GazetteerEntry
    relation: Optional[Relation]
    sentence: int
    anchor: int  # token offset used for document ordering


@dataclass
class Event:
    id: str
    cls: str
    roles: Dict[str, str] = field(default_factory=dict)


@dataclass
class DiscourseState:
    entities: Dict[Offset, NamedEntity] = field(default_factory=dict)
    object_ids: Dict[Offset, str] = field(default_factory=dict)
    relations: List[Tuple[int, Relation]] = field(default_factory=list)
    events: List[Event] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def ordered(self) -> List[NamedEntity]:
        return [self.entities[k] for k in sorted(self.entities)]


def instantiate_entities(nes: Sequence[NamedEntity], onto: Ontology, salt: str = ""
                         ) -> Tuple[List[Triple], Dict[Offset, str]]:
    """One object per entity mention: an `is` triple plus one triple per attribute."""
    triples: List[Triple] = []
    ids: Dict[Offset, str] = {}
    for ne in nes:
        if not ne.is_entity:
            continue
        schema = {a.name for a in onto.attribute_schema(ne.category)} if ne.category in onto.parents else None
        if schema is None:
            raise SchemaViolation(f"unknown entity class '{ne.category}'")
        oid = object_id(salt, "entity", *(ne.offset or (len(ids), 0)), ne.phrase)
        ids[ne.offset] = oid
        triples.append(Triple(oid, IS, ne.category))
        for attr, value in ne.attributes:
            if attr not in schema:
                raise SchemaViolation(f"attribute '{attr}' is not part of class '{ne.category}'")
            if value in onto.parents:
                # a leaf may not share its label with a class node
                value = value[:1].upper() + value[1:]
            triples.append(Triple(oid, attr, value))
    return triples, ids


def trigger_events(relations: Sequence[Tuple[int, Relation]], gaz: Gazetteer,
                   mentions: Sequence[NamedEntity] = ()) -> List[Trigger]:
    """Gazetteer entries fired by relation link words and by event-noun mentions."""
    out: List[Trigger] = []
    for sent, r in relations:
        if r.kind == "svo":
            e = gaz.lookup(r.link_word, ("relation-verb",))
            anchor = r.verb or 0
        elif r.kind == "prepositional":
            e = gaz.lookup(r.link_word, ("relation-prep",))
            anchor = r.dependent or 0
        else:
            continue
        if e is not None:
            out.append(Trigger(e.category, e, r, sent, anchor))
    for m in mentions:
        if m.kind == "event":
            head = m.phrase.split()[-1]
            e = gaz.lookup(head, ("relation-noun",))
            if e is not None:
                out.append(Trigger(e.category, e, None, m.offset[0], m.offset[1]))
    out.sort(key=lambda t: (t.sentence, t.anchor))
    return out


def resolve_anaphor(anaphor: NamedEntity, classes: Sequence[str], entities: Sequence[NamedEntity],
                    onto: Ontology) -> NamedEntity:
    """Nearest earlier entity whose class satisfies one of ``classes`` (any class if empty)."""
    if anaphor.offset is None:
        raise UnresolvedAnaphorError(f"anaphor '{anaphor.phrase}' has no offset")
    best = None
    for ne in entities:
        if not ne.is_entity or ne.offset is None or ne.offset >= anaphor.offset:
            continue
        if ne.category == "variable":
            continue
        if classes and not any(c in onto.parents and onto.subclass_of(ne.category, c) for c in classes):
            continue
        if best is None or ne.offset > best.offset:
            best = ne
    if best is None:
        raise UnresolvedAnaphorError(
            f"no earlier entity of class {'|'.join(classes) or 'any'} for '{anaphor.phrase}' at "
            f"{anaphor.offset[0]}.{anaphor.offset[1]}")
    return best


def _comparable(onto: Ontology, a: str, b: str) -> bool:
    return onto.subclass_of(a, b) or onto.subclass_of(b, a)


class _Integrator:
    def __init__(self, gaz: Gazetteer, onto: Ontology, salt: str):
        self.gaz = gaz
        self.onto = onto
        self.salt = salt
        self.state = DiscourseState()

    def _subject_of_verb(self, sent: int, verb: int) -> Optional[int]:
        for s, r in self.state.relations:
            if s == sent and r.kind == "svo" and r.verb == verb and r.governor is not None:
                return r.governor
        return None

    def _fillers(self, t: Trigger, graphs: Sequence[DepGraph]) -> Tuple[Optional[int], Optional[int]]:
        r = t.relation
        if r.kind == "svo":
            return r.governor, r.dependent
        g = graphs[t.sentence]
        gov = g.token(r.governor)
        if gov.pos == "V":
            return self._subject_of_verb(t.sentence, gov.offset), r.dependent
        return r.governor, r.dependent

    def _filler(self, sent: int, off: Optional[int], slot: Optional[Slot]) -> List[Tuple[str, str]]:
        """(role, object id) pairs a phrase at ``off`` contributes through ``slot``."""
        if off is None or slot is None or not any(slot.roles):
            return []
        ne = self.state.entities.get((sent, off))
        if ne is None:
            return []
        if ne.anaphor:
            ne = resolve_anaphor(ne, slot.classes, self.state.ordered(), self.onto)
        if not ne.is_entity:
            return []
        oid = self.state.object_ids[ne.offset]
        return [(role, oid) for role in slot.roles_for(ne.category, self.onto)]

    def _place(self, cls: str, roles: List[Tuple[str, str]]) -> Event:
        ev = next((e for e in self.state.events if _comparable(self.onto, e.cls, cls)), None)
        if ev is None:
            ev = Event(object_id(self.salt, "event", len(self.state.events)), cls)
            self.state.events.append(ev)
        elif self.onto.subclass_of(cls, ev.cls):
            ev.cls = cls
        schema = {a.name for a in self.onto.attribute_schema(ev.cls)}
        for role, oid in roles:
            if role not in schema:
                raise SchemaViolation(f"role '{role}' is not an attribute of event class '{ev.cls}'")
            prev = ev.roles.get(role)
            if prev is None:
                ev.roles[role] = oid
            elif prev != oid:
                msg = f"conflicting values for '{role}' of {ev.cls} event; keeping the first"
                self.state.warnings.append(msg)
                log.warning(msg)
        return ev

    def _keep(self, ne: NamedEntity) -> bool:
        return ne.kind != "wh"

    def run(self, graphs: Sequence[DepGraph]) -> List[Triple]:
        mentions: List[NamedEntity] = []
        for i, g in enumerate(graphs):
            nes = assign_categories(chunk(g), self.gaz, self.onto, sentence=i)
            for ne in nes:
                if self._keep(ne):
                    self.state.entities[ne.offset] = ne
            mentions.extend(nes)
            self.state.relations.extend((i, r) for r in infer_relations(g, self.gaz))
        triples, ids = instantiate_entities(self.state.ordered(), self.onto, self.salt)
        self.state.object_ids = ids
        for t in trigger_events(self.state.relations, self.gaz, mentions):
            roles: List[Tuple[str, str]] = []
            if t.relation is not None:
                left_off, right_off = self._fillers(t, graphs)
                for off, slot in zip((left_off, right_off), t.entry.slots()):
                    roles.extend(self._filler(t.sentence, off, slot))
            self._place(t.event_class, roles)
        self._finish()
        for ev in self.state.events:
            triples.append(Triple(ev.id, IS, ev.cls))
            triples.extend(Triple(ev.id, role, oid) for role, oid in ev.roles.items())
        return triples + self._extra_triples()

    def _finish(self) -> None:
        pass

    def _extra_triples(self) -> List[Triple]:
        return []


def integrate(graphs: Sequence[DepGraph], gaz: Gazetteer, onto: Ontology,
              kb: Optional[SemanticNetwork] = None, doc_index: int = 0
              ) -> Tuple[List[Triple], DiscourseState]:
    """Triples for one document; ids are salted by the current KB and the document index."""
    salt = object_id(serialize(kb) if kb is not None else "", doc_index)
    it = _Integrator(gaz, onto, salt)
    triples = it.run(graphs)
    return triples, it.state


def integrate_into(net: SemanticNetwork, graphs: Sequence[DepGraph], gaz: Gazetteer, onto: Ontology,
                   doc_index: int = 0) -> List[Triple]:
    triples, _ = integrate(graphs, gaz, onto, net, doc_index)
    net.extend(triples)
    return triples
