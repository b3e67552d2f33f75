"""Sentence-level understanding: noun phrase chunks, their categories, and relations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .depparse import DepGraph, DepToken
from .gazetteer import Gazetteer, NamedEntity
from .ontology import Ontology

PRONOUNS = {"it", "he", "she", "they", "its", "his", "her", "their", "him", "them"}
WH_WORDS = {"who", "whom", "what", "which", "whose"}
WH_DETERMINERS = {"which", "what", "how many"}
RELATIVE_PRONOUNS = {"who", "whom", "which", "that"}
VERB_RELS = ("i", "rel", "vrel", "comp", "pcomp-c")


@dataclass(frozen=True)
class NounPhrase:
    tokens: Tuple[DepToken, ...]
    head: DepToken
    modifiers: Tuple[DepToken, ...] = ()
    end_modifiers: Tuple[DepToken, ...] = ()

    @property
    def offset(self) -> int:
        return self.head.offset

    @property
    def text(self) -> str:
        return " ".join(t.word for t in self.tokens)

    @property
    def ner_text(self) -> str:
        """Phrase handed to category assignment, without determiners."""
        return " ".join(t.word for t in self.tokens if t.pos != "Det")

    @property
    def determiners(self) -> List[str]:
        return [t.word.lower() for t in self.modifiers if t.pos == "Det"]

    @property
    def is_bare(self) -> bool:
        """Only determiners besides the head (a genitive is a separate phrase)."""
        return all(t.pos == "Det" for t in self.modifiers) and not self.end_modifiers

    def categories(self) -> List[str]:
        """Grammar symbol of every token, in order."""
        out = []
        for t in self.tokens:
            if t is self.head:
                out.append("HEAD")
            elif t.pos == "Det":
                out.append("DET")
            elif t.pos == "A":
                out.append("MODIFIER_ADJ")
            else:
                out.append("MODIFIER_NOMINAL")
        return out


def chunk(g: DepGraph) -> List[NounPhrase]:
    """Maximal noun phrases; each modifier joins the chunk of its dependency head."""
    nps = []
    for h in g.tokens:
        if h.pos != "N" or h.relation == "nn":
            continue
        deps = g.dependents(h.offset)
        mods = [t for t in deps if t.offset < h.offset and (
            (t.pos == "Det" and t.relation == "det")
            or (t.pos == "A" and t.relation == "mod")
            or (t.pos == "N" and t.relation == "nn"))]
        ends = [t for t in deps if t.offset > h.offset and t.pos == "N" and t.relation == "nn"]
        toks = tuple(sorted(mods + [h] + ends, key=lambda t: t.offset))
        nps.append(NounPhrase(toks, h, tuple(mods), tuple(sorted(ends, key=lambda t: t.offset))))
    return nps


def _class_noun(word: str, onto: Optional[Ontology]) -> Optional[str]:
    if onto is None:
        return None
    w = word.lower()
    if w in onto.parents and onto.is_entity_class(w):
        return w
    return None


def assign_categories(nps: Sequence[NounPhrase], gaz: Gazetteer, onto: Optional[Ontology] = None,
                      sentence: int = 0) -> List[NamedEntity]:
    """Two-pass category assignment, one result per phrase in input order.

    Pronouns come back as anaphors, wh-words as wh mentions and bare event nouns
    ("the case") as event mentions; none of those are entities.
    """
    out = []
    for np in nps:
        head = np.head.word
        low = head.lower()
        where = (sentence, np.offset)
        if low in PRONOUNS and len(np.tokens) == 1:
            out.append(NamedEntity("variable", (), np.text, where, "anaphor"))
            continue
        if low in WH_WORDS and len(np.tokens) == 1:
            out.append(NamedEntity("variable", (), np.text, where, "wh"))
            continue
        if any(d in WH_DETERMINERS for d in np.determiners):
            cls = _class_noun(head, onto) or "variable"
            out.append(NamedEntity(cls, (), np.ner_text, where, "wh"))
            continue
        trig = gaz.lookup(head, ("relation-noun",)) if np.is_bare else None
        if trig is not None:
            out.append(NamedEntity(trig.category, (), np.text, where, "event"))
            continue
        phrase = np.ner_text or np.text
        ent = gaz.direct_entity(phrase) or gaz.second_pass_match(phrase, head)
        if ent is not None:
            out.append(NamedEntity(ent.category, ent.attributes, phrase, where))
            continue
        cls = _class_noun(head, onto)
        if cls is not None and any(a.name == "desc" for a in onto.attribute_schema(cls)):
            out.append(NamedEntity(cls, (("desc", phrase),), phrase, where))
            continue
        out.append(NamedEntity("variable", (("var_desc", phrase),), phrase, where))
    return out


@dataclass(frozen=True)
class Relation:
    """A dependency-derived relation between token offsets.

    svo: governor is the subject, dependent the object (either may be None),
    link_word the verb lemma, possibly fused with a preposition ("side with").
    prepositional: governor is the modified verb or noun, link_word the preposition.
    possession: governor owns dependent.  appositive: dependent renames governor.
    """
    kind: str
    governor: Optional[int]
    link_word: str
    dependent: Optional[int]
    verb: Optional[int] = None


def _with_conjuncts(g: DepGraph, offset: Optional[int]) -> List[Optional[int]]:
    if offset is None:
        return [None]
    out = [offset]
    for c in g.dependents(offset, "conj"):
        out.extend(_with_conjuncts(g, c.offset))
    return out


def _is_passive(g: DepGraph, v: DepToken) -> bool:
    if v.relation == "vrel":
        return True
    return any(a.word == "be" for a in g.dependents(v.offset, "aux"))


def infer_relations(g: DepGraph, gaz: Optional[Gazetteer] = None) -> List[Relation]:
    """Possession, appositive, subject-verb-object and prepositional relations.

    With a gazetteer, a verb and a preposition it governs are fused into one
    link word when the pair is a known trigger.
    """
    rels: List[Relation] = []
    used_preps = set()
    for t in g.tokens:
        if t.relation == "gen" and t.head:
            rels.append(Relation("possession", t.offset, "", t.head))
        elif t.relation == "appo" and t.head:
            rels.append(Relation("appositive", t.head, "", t.offset))

    for v in g.tokens:
        if v.pos != "V":
            continue
        subj = next((d.offset for d in g.dependents(v.offset, "s")), None)
        obj = next((d.offset for d in g.dependents(v.offset, "obj")), None)
        if v.word == "be":
            pred = next((d.offset for d in g.dependents(v.offset, "pred") if d.pos == "N"), None)
            rels.append(Relation("svo", subj, "be", pred, v.offset))
            continue
        if v.relation not in VERB_RELS:
            continue
        preps = [p for p in g.dependents(v.offset, "mod") if p.pos == "Prep"]
        if subj is not None and g.token(subj).word.lower() in RELATIVE_PRONOUNS and v.relation == "rel":
            subj = v.head
        elif v.relation == "rel" and subj is None:
            subj = v.head
        if _is_passive(g, v):
            if obj is None:
                obj = v.head if v.relation == "vrel" else None
            agent = next((p for p in preps if p.word == "by"), None)
            subj = None
            if agent is not None:
                pc = g.dependents(agent.offset, "pcomp-n")
                if pc:
                    subj = pc[0].offset
                    used_preps.add(agent.offset)
        fused = []
        if gaz is not None:
            for p in preps:
                if p.offset in used_preps:
                    continue
                if gaz.lookup(f"{v.word} {p.word}", ("relation-verb",)) is not None:
                    fused.append(p)
        for p in fused:
            used_preps.add(p.offset)
            pcs = g.dependents(p.offset, "pcomp-n")
            target = pcs[0].offset if pcs else None
            for s in _with_conjuncts(g, subj):
                for o in _with_conjuncts(g, target):
                    rels.append(Relation("svo", s, f"{v.word} {p.word}", o, v.offset))
        if obj is not None or not fused:
            for s in _with_conjuncts(g, subj):
                for o in _with_conjuncts(g, obj):
                    rels.append(Relation("svo", s, v.word, o, v.offset))

    for p in g.tokens:
        if p.pos != "Prep" or p.offset in used_preps or not p.head:
            continue
        pcs = g.dependents(p.offset, "pcomp-n")
        if not pcs:
            continue
        for o in _with_conjuncts(g, pcs[0].offset):
            rels.append(Relation("prepositional", p.head, p.word, o))
    return rels


def np_index(nps: Sequence[NounPhrase]) -> Dict[int, NounPhrase]:
    return {np.offset: np for np in nps}
