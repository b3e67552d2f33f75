from pathlib import Path

import pytest

from nalqa.depparse import (MultipleRootsError, OutOfSubsetError, ParseError, ParseFormatError,
                            mini_parse, parse_file, serialize, serialize_graph)

FIX = Path(__file__).parent / "fixtures"
QUESTIONS = (FIX / "questions.txt").read_text().splitlines()
GOLD = parse_file((FIX / "questions_gold.parse").read_text())


def test_gold_corpus_shape():
    assert len(QUESTIONS) == len(GOLD) == 45


@pytest.mark.parametrize("i", range(45), ids=[f"q{i + 1}" for i in range(45)])
def test_mini_parse_matches_gold(i):
    got = mini_parse(QUESTIONS[i], index=i)
    assert serialize_graph(got) == serialize_graph(GOLD[i])
    assert got == GOLD[i]


def test_filing_sentence():
    g = mini_parse("AT&T file against Microsoft")
    rows = [(t.word, t.relation, t.head) for t in g]
    assert rows == [("AT&T", "s", 2), ("file", "i", 0), ("against", "mod", 2), ("Microsoft", "pcomp-n", 3)]
    assert g == parse_file((FIX / "att_files_against_msft.parse").read_text())[0]


def test_object_wh():
    g = mini_parse("Microsoft sues whom?")
    whom = g.tokens[2]
    assert (whom.word, whom.relation, g.head_of(whom).word) == ("whom", "obj", "sue")


def test_acceptance_sentence_matches_fixture():
    s = "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft."
    assert mini_parse(s) == parse_file((FIX / "court_sides_with_att.parse").read_text())[0]


def test_appositive_and_genitive():
    g = mini_parse("Andrew Garcia, a former employee, sued AT&T's lawsuit.")
    rels = {t.word: t.relation for t in g}
    assert rels["employee"] == "appo"
    assert rels["AT&T"] == "gen"
    assert rels["Andrew Garcia"] == "s"


def test_out_of_subset():
    with pytest.raises(OutOfSubsetError) as err:
        mini_parse("Colorless green ideas sleep furiously between")
    assert err.value.token


def test_second_root_marker_rejected():
    with pytest.raises(MultipleRootsError):
        parse_file((FIX / "two_root_markers.parse").read_text())


def test_single_root_marker_loads():
    text = (FIX / "two_root_markers.parse").read_text().replace("(E1)", "(E0)")
    (g,) = parse_file(text)
    assert len(g) == 9
    assert {t.word for t in g.roots()} == {"who", "preside", "case"}


def test_empty_file():
    assert parse_file("") == []


def test_self_head():
    with pytest.raises(ParseFormatError):
        parse_file("1\tN\ts\tAT&T\tAT&T(1)\n")


def test_bad_column_count():
    with pytest.raises(ParseFormatError) as err:
        parse_file("1\tN\ts\tAT&T\n")
    assert err.value.lineno == 1


def test_cycle():
    with pytest.raises(ParseError):
        parse_file("1\tN\ts\ta\tb(2)\n2\tN\ts\tb\ta(1)\n3\tV\ti\tc\tfin(E0)\n")


def test_round_trip_gold():
    assert parse_file(serialize(GOLD)) == GOLD
