"""Question answering: query networks, path reduction, selective matching and responses."""
from __future__ import annotations

import difflib
import re
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .depparse import DepGraph, OutOfSubsetError, mini_parse
from .discourse import Offset, _Integrator
from .gazetteer import Gazetteer, NamedEntity, Slot
from .nlu import WH_WORDS, assign_categories, chunk
from .ontology import Ontology, iter_placeholders
from .semnet import IS, PathSequence, SemanticNetwork, Triple, enumerate_paths, object_id

MARKER = "X"
MARKER_EDGE = "desc"
WH_ADVERB_CLASS = {"when": "date", "where": "location"}
WH_PRONOUN_CLASS = {"who": "legal_entity", "whom": "legal_entity", "what": "variable", "which": "variable"}
LIST_VERBS = {"list", "name"}
CONNECTIVES = ("by", "against", "on", "at", "in", "of", "with", "for")


class ReasonerError(ValueError):
    pass


class NoMarkerError(ReasonerError):
    pass


@dataclass
class QueryNetwork:
    net: SemanticNetwork
    form: str  # wh | count | yes-no | list
    wh_word: Optional[str] = None
    marker: Optional[str] = None  # object whose desc leaf is X
    events: List[str] = field(default_factory=list)
    unused: List[str] = field(default_factory=list)  # mentioned phrases no event took up


def question_form(g: DepGraph) -> Tuple[str, Optional[str]]:
    """Classify a question as wh, count, yes-no or list, returning the wh-word too."""
    if not g.tokens:
        return "yes-no", None
    first = g.tokens[0]
    low = first.word.lower()
    wh = next((t.word.lower() for t in g.tokens
               if (t.pos == "Adv" and t.relation == "wh") or t.word.lower() in WH_WORDS
               or (t.pos == "Det" and t.word.lower() in ("which", "what"))), None)
    if low == "how many":
        return "count", "how many"
    if low in LIST_VERBS or (first.pos == "N" and first.word in ("List", "Name") and first.head == 0):
        return "list", None
    if first.pos == "Aux" or (first.pos == "V" and first.word == "be" and wh is None):
        if wh is None:
            return "yes-no", None
    if wh is not None:
        return "wh", wh
    return "yes-no", None


def _target(g: DepGraph, form: str, nes: Sequence[NamedEntity]) -> Optional[NamedEntity]:
    if form == "count":
        return next((ne for ne in nes if ne.kind == "wh"), None)
    if form == "list":
        root = next((t for t in g.tokens if t.head == 0), None)
        if root is None:
            return None
        off = None
        if root.pos == "V":
            off = next((d.offset for d in g.dependents(root.offset, "obj")), None)
        else:
            for p in g.dependents(root.offset, "mod"):
                off = next((d.offset for d in g.dependents(p.offset, "pcomp-n")), off)
        return next((ne for ne in nes if ne.offset == (g.index, off)), None)
    if form == "wh":
        return next((ne for ne in nes if ne.kind == "wh"), None)
    return None


def _target_class(ne: Optional[NamedEntity], wh_word: Optional[str]) -> str:
    if ne is not None and ne.category != "variable":
        return ne.category
    if ne is not None:
        w = ne.phrase.lower()
        return WH_PRONOUN_CLASS.get(w, "variable")
    return WH_ADVERB_CLASS.get(wh_word or "", "variable")


class _QueryIntegrator(_Integrator):
    def __init__(self, gaz, onto, salt, form, target: Optional[Offset], target_cls: str):
        super().__init__(gaz, onto, salt)
        self.form = form
        self.target = target
        self.target_cls = target_cls
        self.marker = object_id(salt, "marker")
        self.placed = False

    def _keep(self, ne: NamedEntity) -> bool:
        return ne.kind != "wh" and ne.offset != self.target

    def _filler(self, sent: int, off: Optional[int], slot: Optional[Slot]) -> List[Tuple[str, str]]:
        if self.target is not None and (sent, off) == self.target:
            if self.placed or slot is None or not any(slot.roles):
                return []
            cls = self.target_cls
            roles = slot.roles_for(cls, self.onto) if slot.accepts(cls, self.onto) else []
            if not roles:
                roles = slot.roles_for(None, self.onto)
            if not roles:
                return []
            self.placed = True
            return [(roles[0], self.marker)]
        return super()._filler(sent, off, slot)

    def _finish(self) -> None:
        if self.form == "yes-no":
            return
        if any(self.marker in ev.roles.values() for ev in self.state.events):
            self.placed = True
            return
        self.placed = False
        if not self.state.events:
            raise NoMarkerError("the question does not mention any known event")
        ev = self.state.events[0]
        hit = self.gaz.contingency_trigger(ev.cls, self.target_cls, self.onto)
        if hit is None or hit[1] in ev.roles:
            raise NoMarkerError(
                f"no trigger relates a {self.target_cls} to a {ev.cls} event")
        ev.roles[hit[1]] = self.marker
        self.placed = True

    def _extra_triples(self) -> List[Triple]:
        if not self.placed:
            return []
        return [Triple(self.marker, IS, self.target_cls), Triple(self.marker, MARKER_EDGE, MARKER)]


def build_query_network(g: DepGraph, gaz: Gazetteer, onto: Ontology) -> QueryNetwork:
    """Semantic network of a question with the answer marker X on one leaf."""
    form, wh = question_form(g)
    nes = assign_categories(chunk(g), gaz, onto, sentence=g.index)
    target = _target(g, form, nes)
    cls = _target_class(target, wh)
    q = _QueryIntegrator(gaz, onto, object_id("query"), form,
                         target.offset if target is not None else None, cls)
    graphs = [g] if g.index == 0 else [None] * g.index + [g]
    triples = q.run(graphs)
    net = SemanticNetwork(set(onto.parents))
    # the marker object must be typed before edges point at it
    extra = [t for t in triples if t.node1 == q.marker]
    for t in extra + [t for t in triples if t.node1 != q.marker]:
        net.insert(t)
    used = {oid for ev in q.state.events for oid in ev.roles.values()}
    unused = [ne.phrase for off, ne in sorted(q.state.entities.items())
              if ne.is_entity and q.state.object_ids.get(off) not in used]
    return QueryNetwork(net, form, wh, q.marker if q.placed else None,
                        [e.id for e in q.state.events], unused)


# --- reduction and matching ------------------------------------------------------

@dataclass
class Reduced:
    Q: List[PathSequence]
    A: Optional[PathSequence]
    under_constrained: bool = False


def reduce(netlike: Union[QueryNetwork, SemanticNetwork]) -> Reduced:
    """Split the query paths into the constraint set Q and the answer path A."""
    net = netlike.net if isinstance(netlike, QueryNetwork) else netlike
    paths = enumerate_paths(net)
    answer = [p for p in paths if p.n1 == MARKER and p.e1 == MARKER_EDGE]
    if len(answer) > 1:
        raise ReasonerError("query network carries more than one answer marker")
    Q = [p for p in paths if p not in answer]
    A = answer[0] if answer else None
    return Reduced(Q, A, A is not None and not Q)


@dataclass(frozen=True)
class Answer:
    value: str  # leaf n1 of the matching stored path
    obj: str    # n2
    event: str  # n3


@dataclass
class MatchOutcome:
    kind: str  # answers | confirmed | event-missing | knowledge-missing
    answers: List[Answer] = field(default_factory=list)
    events: List[str] = field(default_factory=list)  # events that confirmed or answered
    coherent: List[str] = field(default_factory=list)  # events satisfying Q, whether or not A matched
    failed: List[PathSequence] = field(default_factory=list)
    Q: List[PathSequence] = field(default_factory=list)
    A: Optional[PathSequence] = None

    @property
    def ok(self) -> bool:
        return self.kind in ("answers", "confirmed")


def _class_ok(stored: str, wanted: str, onto: Ontology, relax: bool) -> bool:
    if stored == wanted:
        return True
    return relax and stored in onto.parents and wanted in onto.parents and onto.subclass_of(stored, wanted)


def path_matches(q: PathSequence, s: PathSequence, onto: Ontology, relax: bool) -> bool:
    """Condition (1): literal n1, e1, e2, e3 and n4 (n4 relaxed to subclasses)."""
    return (q.n1 == s.n1 and q.e1 == s.e1 and q.e2 == s.e2 and q.e3 == s.e3
            and _class_ok(s.n4, q.n4, onto, relax))


def answer_matches(a: PathSequence, s: PathSequence, onto: Ontology, relax: bool) -> bool:
    """Condition (2): e2, e3 and n4 only."""
    return a.e2 == s.e2 and a.e3 == s.e3 and _class_ok(s.n4, a.n4, onto, relax)


def match(Q: Sequence[PathSequence], A: Optional[PathSequence], S: Sequence[PathSequence],
          onto: Ontology, relax: bool = True) -> MatchOutcome:
    by_event: "OrderedDict[str, List[PathSequence]]" = OrderedDict()
    for s in S:
        by_event.setdefault(s.n3, []).append(s)
    root = (list(Q) + ([A] if A is not None else []))[0].n4 if (Q or A is not None) else None
    coherent = [ev for ev, paths in by_event.items()
                if _class_ok(paths[0].n4, root, onto, relax)
                and all(any(path_matches(q, s, onto, relax) for s in paths) for q in Q)]
    if not Q and A is None:
        return MatchOutcome("knowledge-missing", Q=list(Q), A=A)
    if A is None:
        if coherent:
            return MatchOutcome("confirmed", events=sorted(coherent), coherent=sorted(coherent), Q=list(Q))
        return _failure(Q, A, S, onto, relax)
    answers: List[Answer] = []
    seen = set()
    events = []
    for ev in sorted(coherent):
        hits = [s for s in by_event[ev] if answer_matches(A, s, onto, relax)]
        if hits:
            events.append(ev)
        for s in hits:
            if (s.n1, s.n2, s.n3) in seen:
                continue
            seen.add((s.n1, s.n2, s.n3))
            answers.append(Answer(s.n1, s.n2, s.n3))
    if answers:
        return MatchOutcome("answers", answers, events, sorted(coherent), Q=list(Q), A=A)
    if coherent:
        return MatchOutcome("knowledge-missing", coherent=sorted(coherent), Q=list(Q), A=A)
    return _failure(Q, A, S, onto, relax)


def _failure(Q, A, S, onto, relax) -> MatchOutcome:
    for q in Q:
        if not any(path_matches(q, s, onto, relax) for s in S):
            return MatchOutcome("event-missing", failed=[q], Q=list(Q), A=A)
    return MatchOutcome("event-missing", failed=list(Q), Q=list(Q), A=A)


# --- responses -------------------------------------------------------------------

def label(cls: str) -> str:
    return cls.replace("_", " ")


def render_object(kb: SemanticNetwork, onto: Ontology, obj: str) -> str:
    """Identifying leaf values of an object, in the class's display order."""
    attrs = kb.atomic_attributes(obj)
    cls = kb.class_of(obj)
    order = onto.display_attributes(cls) if cls in onto.parents else []
    vals = [v for name in order for e, v in attrs if e == name]
    if not vals:
        vals = [v for _, v in attrs]
    return " ".join(vals)


def _involving(paths: Sequence[PathSequence], names: Dict[str, str]) -> str:
    seen: "OrderedDict[Tuple[str, str], None]" = OrderedDict()
    for p in paths:
        seen[(names.get(p.n2, p.n1), p.e2)] = None
    return " and ".join(f"{n} as {label(e)}" for n, e in seen)


def explain(outcome: MatchOutcome, names: Optional[Dict[str, str]] = None) -> str:
    """Explanation for a failed match; ``names`` maps query objects to display text."""
    names = names or {}
    if outcome.kind == "event-missing":
        cls = label(outcome.failed[0].n4) if outcome.failed else "such"
        return f"There is no such {cls} event involving {_involving(outcome.failed, names)}."
    if outcome.kind == "knowledge-missing":
        if outcome.A is None:
            return "The question does not constrain any event."
        cls = label(outcome.A.n4)
        about = f"the {label(outcome.A.e2)} of the {cls} event"
        if outcome.Q:
            about += f" involving {_involving(outcome.Q, names)}"
        return f"We do not have information about {about}."
    raise ReasonerError(f"no explanation for outcome '{outcome.kind}'")


def _fill_template(template: str, values: Dict[str, Optional[str]]) -> str:
    out = template
    for name in iter_placeholders(template):
        v = values.get(name)
        ph = f"<{name}>"
        if v is not None:
            out = out.replace(ph, v)
            continue
        elided = re.sub(r"\s+(?:%s)\s+%s" % ("|".join(CONNECTIVES), re.escape(ph)), "", out)
        if elided == out:
            elided = re.sub(r"^%s\s+" % re.escape(ph), "", out)
        if elided == out:
            elided = out.replace(ph, "")
        out = elided
    return re.sub(r"\s{2,}", " ", out).strip()


def _event_line(template: str, ans: Answer, value: str, Q: Sequence[PathSequence],
                kb: SemanticNetwork, onto: Ontology) -> str:
    ev = ans.event
    roles = dict((e, o) for e, o in kb.object_attributes(ev))
    cls = kb.class_of(ev) or ""
    event = label(cls)
    if template.startswith("<EVENT>"):
        event = event.capitalize()
    values: Dict[str, Optional[str]] = {"EVENT": event, "ANSWER": value}
    for name in iter_placeholders(template):
        if name in values:
            continue
        obj = roles.get(name.lower())
        values[name] = render_object(kb, onto, obj) if obj is not None else None
    line = _fill_template(template, values)
    constrained = {q.e2 for q in Q}
    for role, conn in (("plaintiff", "by"), ("defendant", "against")):
        if role in roles and role not in constrained and f"<{role.upper()}>" not in template:
            line += f" {conn} {render_object(kb, onto, roles[role])}"
    return line


def respond(outcome: MatchOutcome, qn: QueryNetwork, onto: Ontology, kb: SemanticNetwork) -> str:
    if not outcome.ok:
        names = {p.n2: render_object(qn.net, onto, p.n2) for p in outcome.Q}
        return explain(outcome, {k: v for k, v in names.items() if v})
    if qn.form == "yes-no":
        return "Yes, it is true"
    values = list(OrderedDict((render_object(kb, onto, a.obj) or a.value, None) for a in outcome.answers))
    if qn.form == "count":
        return str(len(values))
    template = onto.response_template_for(outcome.A.e2)
    if template.strip() == "<ANSWER>":
        return " and ".join(values)
    lines = []
    for a in outcome.answers:
        line = _event_line(template, a, render_object(kb, onto, a.obj) or a.value, outcome.Q, kb, onto)
        if line not in lines:
            lines.append(line)
    return "\n".join(lines)


# --- pipeline --------------------------------------------------------------------

@dataclass
class Response:
    text: str
    kind: str  # answer | explanation | error
    exit_code: int


FUNCTION_WORDS = {"?", ".", ","}


def misspelled(question: str, gaz: Gazetteer, onto: Ontology, lexicon, cutoff: float = 0.8) -> List[str]:
    """Lower-case unknown tokens that look like a slip of a known word.

    Unknown words with no close known spelling are left to the parser, which
    rejects them as outside the supported language.
    """
    known_parts = set()
    for n in gaz.names():
        known_parts.update(n.split())
    vocab = set(onto.parents)
    for cls in onto.parents:
        vocab.update(a.name for a in onto.attribute_schema(cls))
    out = []
    for raw in question.split():
        w = raw.strip("?.!,")
        if w.endswith("'s"):
            w = w[:-2]
        if not w or not w[:1].islower():
            continue
        if w in lexicon or w in known_parts or w in vocab or w in FUNCTION_WORDS:
            continue
        if any(w in k.split() for k in lexicon if " " in k):
            continue
        if difflib.get_close_matches(w, sorted(_vocabulary(lexicon, known_parts, vocab)), n=1, cutoff=cutoff):
            out.append(w)
    return out


def _vocabulary(lexicon, parts, vocab) -> set:
    words = set(parts) | set(vocab)
    for k in lexicon:
        words.update(k.split())
    return {w for w in words if w[:1].islower()}


def spelling_response(question: str, bad: Iterable[str]) -> str:
    bad = set(bad)
    text = question.strip().rstrip("?.!").strip()
    words = [f"_{w}_" if w.strip(",") in bad else w for w in text.split()]
    return "There are some spelling errors in the question. " + " ".join(words)


def answer(question: Union[str, DepGraph], kb: SemanticNetwork, gaz: Gazetteer, onto: Ontology,
           relax: bool = True, lexicon=None) -> Response:
    if isinstance(question, str):
        if lexicon is None:
            from .resources import default_lexicon
            lexicon = default_lexicon()
        bad = misspelled(question, gaz, onto, lexicon)
        if bad:
            return Response(spelling_response(question, bad), "explanation", 1)
        try:
            g = mini_parse(question, gaz, lexicon)
        except OutOfSubsetError as exc:
            return Response(f"The question could not be parsed: {exc}", "error", 2)
    else:
        g = question
    try:
        qn = build_query_network(g, gaz, onto)
    except ReasonerError as exc:
        return Response(f"The question could not be understood: {exc}", "error", 2)
    red = reduce(qn)
    if red.under_constrained and qn.unused:
        names = " and ".join(qn.unused)
        return Response(f"The question does not relate {names} to any event.", "explanation", 1)
    outcome = match(red.Q, red.A, enumerate_paths(kb), onto, relax)
    text = respond(outcome, qn, onto, kb)
    return Response(text, "answer" if outcome.ok else "explanation", 0 if outcome.ok else 1)
