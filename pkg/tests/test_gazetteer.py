import pytest

from nalqa.gazetteer import GazetteerError, load_gazetteer, serialize_gazetteer
from nalqa.resources import default_gazetteer, default_ontology, read_data


@pytest.fixture(scope="module")
def gaz():
    return default_gazetteer()


@pytest.fixture(scope="module")
def onto():
    return default_ontology()


def test_direct_match_date(gaz):
    assert gaz.direct_match("Monday")[0] == "date"


def test_direct_match_alias(gaz):
    cat, entry = gaz.direct_match("HP")
    assert (cat, entry.name) == ("company", "Hewlett-Packard")


def test_direct_match_is_case_sensitive(gaz):
    assert gaz.direct_match("deal") is None
    assert gaz.direct_match("Deal") is not None


@pytest.mark.parametrize("phrase,head,expected", [
    ("Excite Inc.", "Excite", "company(org_name(X,Excite))"),
    ("Oracle Corp.", "Corp.", "company(org_name(X,Oracle))"),
    ("Andrew Garcia", "Garcia", "person(per_fname(X,Andrew),per_lname(X,Garcia))"),
    ("federal court", "court", "court(org_name(X,federal court),court_type(X,federal))"),
])
def test_second_pass(gaz, phrase, head, expected):
    assert str(gaz.second_pass_match(phrase, head)) == expected


def test_second_pass_rejects_non_matching(gaz):
    assert gaz.second_pass_match("walked quickly", "walked") is None


def test_relation_triggers(gaz):
    e = gaz.relation_trigger("side with")
    assert e.category == "resolution"
    assert e.pattern == "{COURT}<RELATION>{PERSON|ORGANIZATION}"
    assert e.map == "{OCCUR_AT}<RELATION>{PREVAILING_PARTY}"
    f = gaz.relation_trigger("filing")
    assert (f.category, f.pattern) == ("filing", "no pattern")
    assert gaz.relation_trigger("walk") is None


def test_contingency(gaz, onto):
    e, role = gaz.contingency_trigger("filing", "date", onto)
    assert (e.name, e.map, role) == ("file on", "{}<RELATION>{OCCUR_ON}", "occur_on")
    e, _ = gaz.contingency_trigger("legal_proceeding", "date", onto)
    assert e.name == "occur on"
    assert gaz.contingency_trigger("resolution", "location", onto) is None


def test_slots(gaz, onto):
    left, right = gaz.lookup("file").slots()
    assert left.accepts("company", onto)
    assert left.roles_for("company", onto) == ["plaintiff"]
    assert right.roles_for("variable", onto) == []


def test_bad_token_count():
    with pytest.raises(GazetteerError, match="line 1"):
        load_gazetteer("Foo\tcompany\t({TOKEN})({TOKEN})\tspecific\t\t\torg_name\n")


def test_bad_kind():
    with pytest.raises(GazetteerError):
        load_gazetteer("Foo\tcompany\t({TOKEN})\tweird\t\t\torg_name\n")


def test_role_must_be_attribute(onto):
    with pytest.raises(GazetteerError, match="not an attribute"):
        load_gazetteer("zap\tfiling\t{COMPANY}<RELATION>{}\trelation-verb\t\t{COLOUR}<RELATION>{}\t\n", onto)


def test_entity_category_must_be_entity_class(onto):
    with pytest.raises(GazetteerError):
        load_gazetteer("Zed\tfiling\t({TOKEN})\tspecific\t\t\torg_name\n", onto)


def test_round_trip(gaz, onto):
    text = serialize_gazetteer(gaz)
    again = load_gazetteer(text, onto)
    assert again.entries == gaz.entries
    assert serialize_gazetteer(again) == text


def test_shipped_file_loads(onto):
    assert len(load_gazetteer(read_data("gazetteer.tsv"), onto).entries) > 100
