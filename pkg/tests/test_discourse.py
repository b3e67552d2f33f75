from pathlib import Path

import pytest

from nalqa.depparse import mini_parse, parse_file
from nalqa.discourse import (SchemaViolation, UnresolvedAnaphorError, instantiate_entities, integrate,
                             integrate_into, resolve_anaphor, trigger_events)
from nalqa.gazetteer import NamedEntity
from nalqa.nlu import Relation, assign_categories, chunk, infer_relations
from nalqa.resources import default_gazetteer, default_ontology
from nalqa.semnet import SemanticNetwork

FIX = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def gaz():
    return default_gazetteer()


@pytest.fixture(scope="module")
def onto():
    return default_ontology()


def canonical(triples):
    """Replace generated ids by a description of the object they name."""
    cls = {t.node1: t.node2 for t in triples if t.edge == "is"}
    leaves = {}
    for t in triples:
        if t.edge != "is" and t.node2 not in cls:
            leaves.setdefault(t.node1, []).append(f"{t.edge}={t.node2}")

    def name(n):
        if n not in cls:
            return n
        return f"{cls[n]}[{','.join(sorted(leaves.get(n, [])))}]"
    return {(name(a), e, name(b)) for a, e, b in triples}


COURT = "court[court_type=federal,org_name=federal court]"
ATT = "company[org_name=AT&T]"
MSFT = "company[org_name=Microsoft]"
CASE = "variable[var_desc=complex patent lawsuit]"
RES = "resolution[]"

ACCEPTANCE = {
    (COURT, "is", "court"), (COURT, "org_name", "federal court"), (COURT, "court_type", "federal"),
    (ATT, "is", "company"), (ATT, "org_name", "AT&T"),
    (CASE, "is", "variable"), (CASE, "var_desc", "complex patent lawsuit"),
    (MSFT, "is", "company"), (MSFT, "org_name", "Microsoft"),
    (RES, "is", "resolution"), (RES, "occur_at", COURT), (RES, "prevailing_party", ATT),
    (RES, "nature_of_case", CASE), (RES, "plaintiff", ATT), (RES, "defendant", MSFT),
}


def test_acceptance_sentence(gaz, onto):
    graphs = parse_file((FIX / "court_sides_with_att.parse").read_text())
    triples, state = integrate(graphs, gaz, onto)
    assert len(triples) == 15
    assert canonical(triples) == ACCEPTANCE
    assert state.warnings == []


def test_filing_sentence(gaz, onto):
    triples, _ = integrate(parse_file((FIX / "att_files_against_msft.parse").read_text()), gaz, onto)
    lp = "legal_proceeding[]"
    assert canonical(triples) == {
        (lp, "is", "legal_proceeding"), (lp, "plaintiff", ATT), (lp, "defendant", MSFT),
        (ATT, "is", "company"), (ATT, "org_name", "AT&T"),
        (MSFT, "is", "company"), (MSFT, "org_name", "Microsoft"),
    }


def test_instantiate_company(onto):
    ne = NamedEntity("company", (("org_name", "AT&T"),), "AT&T", (0, 1))
    triples, ids = instantiate_entities([ne], onto)
    a1 = ids[(0, 1)]
    assert set(triples) == {(a1, "is", "company"), (a1, "org_name", "AT&T")}


def test_instantiate_bare_and_judge(onto):
    bare = NamedEntity("company", (), "it", (0, 1))
    judge = NamedEntity("judge", (("per_fname", "William"), ("per_lname", "Pauley III"), ("profession", "Judge")),
                        "Judge William Pauley III", (0, 2))
    triples, _ = instantiate_entities([bare, judge], onto)
    assert len(triples) == 1 + 4


def test_foreign_attribute(onto):
    ne = NamedEntity("company", (("per_fname", "Ann"),), "Ann", (0, 1))
    with pytest.raises(SchemaViolation):
        instantiate_entities([ne], onto)


def test_triggers(gaz, onto):
    g = mini_parse("A federal court has sided with AT&T")
    (t,) = trigger_events([(0, r) for r in infer_relations(g, gaz)], gaz)
    assert t.event_class == "resolution"
    assert t.entry.map == "{OCCUR_AT}<RELATION>{PREVAILING_PARTY}"
    rel = Relation("svo", None, "walk", None, 1)
    assert trigger_events([(0, rel)], gaz) == []


def test_noun_trigger(gaz, onto):
    g = mini_parse("When was the ruling?")
    nes = assign_categories(chunk(g), gaz, onto)
    (t,) = trigger_events([], gaz, nes)
    assert t.event_class == "resolution" and t.relation is None


def _ne(cls, phrase, off, kind="entity"):
    return NamedEntity(cls, (), phrase, (0, off), kind)


def test_anaphor_skips_variable_and_court(onto):
    ents = [_ne("court", "federal court", 3), _ne("company", "AT&T", 7), _ne("variable", "lawsuit", 12)]
    it = _ne("variable", "it", 13, "anaphor")
    got = resolve_anaphor(it, ("person", "organization"), ents, onto)
    assert got.phrase == "AT&T"


def test_anaphor_nearest(onto):
    ents = [_ne("company", "AT&T", 1), _ne("company", "Microsoft", 3)]
    got = resolve_anaphor(_ne("variable", "it", 5, "anaphor"), ("organization",), ents, onto)
    assert got.phrase == "Microsoft"


def test_anaphor_first_token(onto):
    with pytest.raises(UnresolvedAnaphorError):
        resolve_anaphor(_ne("variable", "it", 1, "anaphor"), ("organization",), [], onto)


def test_no_triggers_entities_only(gaz, onto):
    g = parse_file("1\tN\ts\tMicrosoft\tfin(E0)\n")
    triples, state = integrate(g, gaz, onto)
    assert state.events == []
    assert {t.edge for t in triples} == {"is", "org_name"}


def test_reingest_doubles_entities(gaz, onto):
    net = SemanticNetwork(set(onto.parents))
    graphs = parse_file((FIX / "att_files_against_msft.parse").read_text())
    integrate_into(net, graphs, gaz, onto, doc_index=0)
    integrate_into(net, graphs, gaz, onto, doc_index=1)
    assert len(net) == 14
    assert sum(1 for t in net if t == (t.node1, "is", "company")) == 4
