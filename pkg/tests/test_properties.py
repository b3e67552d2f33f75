"""Randomized invariants for networks, matching, file formats and inheritance."""
from collections import defaultdict

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nalqa.depparse import DepGraph, DepToken, parse_file, serialize
from nalqa.gazetteer import GazetteerEntry, Gazetteer, load_gazetteer, serialize_gazetteer
from nalqa.ontology import load_ontology, serialize_ontology
from nalqa.reasoner import MARKER, MARKER_EDGE, match
from nalqa.resources import default_ontology
from nalqa.semnet import IS, PathSequence, SemanticNetwork, enumerate_paths, parse
from nalqa.semnet import serialize as serialize_net

ONTO = default_ontology()
EVENT_CLASSES = ["legal_proceeding", "filing", "trial", "resolution", "appeal"]
ENTITY_CLASSES = ["company", "court", "judge", "person", "date", "variable"]
ROLES = ["plaintiff", "defendant", "preside_by", "occur_on", "occur_at", "nature_of_case"]
ATTRS = ["org_name", "per_fname", "per_lname", "year", "var_desc"]
NAMES = ["Acme", "Initech", "Hooli", "Umbrella", "2002", "2003"]

FAST = settings(deadline=None, suppress_health_check=[HealthCheck.too_slow])


# --- (a) path enumeration --------------------------------------------------------

@st.composite
def networks(draw):
    """Events pointing at entities; every leaf value is distinct so leaves have one parent."""
    net = SemanticNetwork()
    n_ent = draw(st.integers(0, 6))
    ents = []
    counter = 0
    for i in range(n_ent):
        oid = f"n{i}"
        net.insert((oid, IS, draw(st.sampled_from(ENTITY_CLASSES))))
        for a in draw(st.lists(st.sampled_from(ATTRS), max_size=3, unique=True)):
            counter += 1
            net.insert((oid, a, f"v{counter}"))
        ents.append(oid)
    for j in range(draw(st.integers(0, 4))):
        ev = f"e{j}"
        net.insert((ev, IS, draw(st.sampled_from(EVENT_CLASSES))))
        if ents:
            for r in draw(st.lists(st.sampled_from(ROLES), max_size=4, unique=True)):
                net.insert((ev, r, draw(st.sampled_from(ents))))
    return net


def in_degree(net, node):
    return sum(1 for t in net if t.node2 == node)


@settings(FAST, max_examples=1000)
@given(networks())
def test_paths_follow_the_three_rules(net):
    paths = enumerate_paths(net)
    triples = set(net)
    for p in paths:
        assert not net.is_object(p.n1) and not net.is_class(p.n1)
        assert net.edges_from(p.n1) == [] and in_degree(net, p.n1) == 1
        assert net.is_class(p.n4)
        assert net.is_object(p.n2) and net.is_object(p.n3) and p.n2 != p.n3
        assert p.e3 == IS and p.n1 != MARKER
        assert (p.n2, p.e1, p.n1) in triples and (p.n3, p.e2, p.n2) in triples and (p.n3, IS, p.n4) in triples
    expected = 0
    for ev, edge, ent in net:
        if edge != IS and net.is_object(ent):
            expected += sum(1 for t in net if t.node1 == ent and t.edge != IS and not net.is_object(t.node2))
    assert len(paths) == expected
    assert len(set(paths)) == len(paths)


# --- (b, c) matching ----------------------------------------------------------------

@st.composite
def kb_paths(draw, max_events=5):
    """Stored paths for up to ``max_events`` events with role/value leaves."""
    out = []
    for j in range(draw(st.integers(0, max_events))):
        cls = draw(st.sampled_from(EVENT_CLASSES))
        for k, role in enumerate(draw(st.lists(st.sampled_from(ROLES), max_size=4, unique=True))):
            obj = f"o{j}_{k}"
            for attr in draw(st.lists(st.sampled_from(ATTRS[:2]), min_size=1, max_size=2, unique=True)):
                out.append(PathSequence(draw(st.sampled_from(NAMES)), attr, obj, role, f"ev{j}", IS, cls))
    return out


@st.composite
def queries(draw):
    cls = draw(st.sampled_from(EVENT_CLASSES))
    Q = []
    for k, role in enumerate(draw(st.lists(st.sampled_from(ROLES), max_size=2, unique=True))):
        Q.append(PathSequence(draw(st.sampled_from(NAMES)), draw(st.sampled_from(ATTRS[:2])), f"q{k}", role,
                              "qe", IS, cls))
    A = None
    if draw(st.booleans()):
        A = PathSequence(MARKER, MARKER_EDGE, "qx", draw(st.sampled_from(ROLES)), "qe", IS, cls)
    return Q, A


def naive_match(Q, A, S, relax):
    """Conditions (1)-(3) by brute force over every stored path and event."""
    def cls_ok(stored, wanted):
        return stored == wanted or (relax and ONTO.subclass_of(stored, wanted))

    def q_ok(q, s):
        return (q.n1, q.e1, q.e2, q.e3) == (s.n1, s.e1, s.e2, s.e3) and cls_ok(s.n4, q.n4)

    events = {s.n3 for s in S}
    good = {ev for ev in events if all(any(q_ok(q, s) and s.n3 == ev for s in S) for q in Q)}
    if A is None:
        return good, set()
    values = {(s.n1, s.n2, s.n3) for s in S
              if s.n3 in good and (s.e2, s.e3) == (A.e2, A.e3) and cls_ok(s.n4, A.n4)}
    return {v[2] for v in values}, values


@settings(FAST, max_examples=500)
@given(kb_paths(max_events=5), queries())
def test_relaxation_is_monotone(S, query):
    Q, A = query
    strict = match(Q, A, S, ONTO, relax=False)
    loose = match(Q, A, S, ONTO, relax=True)
    assert {(a.value, a.obj, a.event) for a in strict.answers} <= {(a.value, a.obj, a.event) for a in loose.answers}
    assert set(strict.events) <= set(loose.events)
    if (Q or A) and all(not ONTO.children(p.n4) for p in Q + ([A] if A else [])):
        assert strict.kind == loose.kind and strict.answers == loose.answers


@settings(FAST, max_examples=500)
@given(kb_paths(max_events=5), queries(), st.booleans())
def test_matcher_equals_naive(S, query, relax):
    Q, A = query
    if not Q and A is None:
        return
    out = match(Q, A, S, ONTO, relax=relax)
    events, values = naive_match(Q, A, S, relax)
    if A is None:
        assert (out.kind == "confirmed") == bool(events)
        assert set(out.events) == events
        return
    got = [(a.value, a.obj, a.event) for a in out.answers]
    assert len(got) == len(set(got))
    assert set(got) == values
    assert (out.kind == "answers") == bool(values)


@settings(FAST, max_examples=200)
@given(kb_paths(max_events=3))
def test_yes_no_agrees_with_wh(S):
    for s in S:
        others = [p for p in S if p.n3 == s.n3 and p != s and p.n2 != s.n2][:1]
        Q = [p._replace(n2="q", n3="qe") for p in others]
        yes = match(Q + [s._replace(n2="x", n3="qe")], None, S, ONTO, relax=False).kind == "confirmed"
        A = PathSequence(MARKER, MARKER_EDGE, "qx", s.e2, "qe", IS, s.n4)
        wh = match([q for q in Q], A, S, ONTO, relax=False)
        assert yes == any(a.value == s.n1 for a in wh.answers)


# --- (d) round trips ----------------------------------------------------------------

@settings(FAST, max_examples=200)
@given(networks())
def test_network_round_trip(net):
    assert parse(serialize_net(net)) == net


label = st.text(st.characters(whitelist_categories=("Lu", "Ll", "Nd"), whitelist_characters="&.-_ "),
                min_size=1, max_size=12).map(str.strip).filter(bool)


@st.composite
def dep_graphs(draw):
    n = draw(st.integers(1, 8))
    root = draw(st.integers(1, n))
    toks = []
    heads = {}
    order = list(range(1, n + 1))
    attached = [root]
    for off in order:
        if off == root:
            heads[off] = 0
        else:
            heads[off] = None
    for off in order:
        if heads[off] is None:
            heads[off] = draw(st.sampled_from(attached))
            attached.append(off)
    words = {}
    for off in order:
        words[off] = draw(label).replace(" ", "_")
    for off in order:
        h = heads[off]
        toks.append(DepToken(off, draw(st.sampled_from(["N", "V", "Prep", "Det", "A"])),
                             draw(st.sampled_from(["s", "obj", "mod", "pcomp-n", "det", "i"])),
                             words[off], h, "fin" if h == 0 else words[h]))
    return DepGraph(toks)


@settings(FAST, max_examples=200)
@given(st.lists(dep_graphs(), max_size=3))
def test_parse_file_round_trip(graphs):
    graphs = [DepGraph(g.tokens, i) for i, g in enumerate(graphs)]
    assert parse_file(serialize(graphs)) == graphs


@st.composite
def gazetteers(draw):
    entries = []
    for _ in range(draw(st.integers(0, 6))):
        name = draw(label)
        if draw(st.booleans()):
            entries.append(GazetteerEntry(name, "company", r"({TOKEN})(\sInc[.]?)?", "specific",
                                          draw(st.sampled_from(["", "Co"])), "", ("org_name",)))
        else:
            entries.append(GazetteerEntry(name.lower(), draw(st.sampled_from(["filing", "resolution"])),
                                          "{COMPANY}<RELATION>{COMPANY}", "relation-verb", "",
                                          "{PLAINTIFF}<RELATION>{DEFENDANT}", ()))
    return Gazetteer(entries)


@settings(FAST, max_examples=200)
@given(gazetteers())
def test_gazetteer_round_trip(gaz):
    again = load_gazetteer(serialize_gazetteer(gaz), ONTO)
    assert again.entries == gaz.entries


# --- (e) inheritance ----------------------------------------------------------------

@st.composite
def ontology_texts(draw):
    n = draw(st.integers(2, 9))
    names = [f"k{i}" for i in range(n)]
    groups = defaultdict(list)
    for i in range(1, n):
        for p in draw(st.lists(st.integers(0, i - 1), min_size=1, max_size=2, unique=True)):
            groups[names[p]].append(names[i])
    lines = [f"{p}(X) => " + " | ".join(f"{c}(X)" for c in cs) for p, cs in groups.items()]
    for c in draw(st.lists(st.sampled_from(names), max_size=4, unique=True)):
        attrs = draw(st.lists(st.sampled_from(["a", "b", "c"]), min_size=1, max_size=2, unique=True))
        lines.append(f"attribute({c}(X), [" + ", ".join(f"{a}(X, _)" for a in attrs) + "])")
    for i, c in enumerate(draw(st.lists(st.sampled_from(names), max_size=3))):
        lines.append(f"i{i} <- {c}(X)")
    return "\n".join(lines) + "\n", names


@settings(FAST, max_examples=200)
@given(ontology_texts())
def test_inheritance(generated):
    text, names = generated
    onto = load_ontology(text)
    known = [c for c in names if c in onto.parents]
    for a in known:
        assert onto.subclass_of(a, a)
        for b in known:
            if not onto.subclass_of(a, b):
                continue
            for c in known:
                if onto.subclass_of(b, c):
                    assert onto.subclass_of(a, c)
            parent_attrs = {x.name for x in onto.attribute_schema(b)}
            assert parent_attrs <= {x.name for x in onto.attribute_schema(a)}
    for e, classes in onto.instances.items():
        for c in classes:
            for d in known:
                if onto.subclass_of(c, d):
                    assert onto.instance_of(e, d)
    assert load_ontology(serialize_ontology(onto)).clauses() == onto.clauses()
