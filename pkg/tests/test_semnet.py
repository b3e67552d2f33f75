from pathlib import Path

import pytest

from nalqa.semnet import (KindViolation, NetworkError, PathSequence, SemanticNetwork, Triple,
                          enumerate_paths, object_id, parse, serialize)

FIX = Path(__file__).parent / "fixtures"

FILING = [
    ("e1", "is", "legal_proceeding"), ("e1", "plaintiff", "e2"), ("e1", "defendant", "e3"),
    ("e2", "is", "company"), ("e2", "org_name", "AT&T"),
    ("e3", "is", "company"), ("e3", "org_name", "Microsoft"),
]


def net_of(triples):
    net = SemanticNetwork()
    net.extend(triples)
    return net


def test_insert_is_idempotent():
    net = net_of([("e2", "is", "company"), ("e2", "org_name", "AT&T"), ("e2", "org_name", "AT&T")])
    assert len(net) == 2


def test_object_to_object_edge():
    net = net_of(FILING)
    assert Triple("e1", "plaintiff", "e2") in net
    assert net.object_attributes("e1") == [("plaintiff", "e2"), ("defendant", "e3")]


def test_edge_out_of_class_node():
    net = net_of([("e2", "is", "company")])
    with pytest.raises(KindViolation):
        net.insert(("company", "org_name", "AT&T"))


def test_second_class_rejected():
    net = net_of([("e2", "is", "company")])
    with pytest.raises(KindViolation):
        net.insert(("e2", "is", "court"))


def test_is_a_synonym():
    net = net_of([("e2", "is_a", "company")])
    assert net.class_of("e2") == "company"


def test_filing_kb_paths():
    kb = parse((FIX / "kb_filing_2002.tsv").read_text())
    got = {str(p) for p in enumerate_paths(kb)}
    assert got == {
        "Microsoft, org_name, bf99, defendant, 1b1c0, is, filing",
        "AT&T, org_name, 6360, plaintiff, 1b1c0, is, filing",
        "2002, year, a039, occur_on, 1b1c0, is, filing",
        "federal court, org_name, b7, occur_at, 1b1c0, is, filing",
        "federal, court_type, b7, occur_at, 1b1c0, is, filing",
    }


def test_empty_network_has_no_paths():
    assert enumerate_paths(SemanticNetwork()) == []


def test_path_count_against_brute_force():
    net = net_of([
        ("ev", "is", "filing"), ("a", "is", "company"), ("b", "is", "judge"),
        ("a", "org_name", "Acme"), ("a", "desc", "maker"),
        ("b", "per_fname", "Ann"), ("b", "per_lname", "Lee"), ("b", "profession", "Judge"),
        ("ev", "plaintiff", "a"), ("ev", "preside_by", "b"),
    ])
    leaves = [t for t in net if t.edge != "is" and not net.is_object(t.node2)]
    links = [t for t in net if net.is_object(t.node2)]
    expected = {PathSequence(l.node2, l.edge, l.node1, k.edge, k.node1, "is", net.class_of(k.node1))
                for l in leaves for k in links if k.node2 == l.node1}
    got = enumerate_paths(net)
    assert len(got) == 5
    assert set(got) == expected


def test_round_trip_filing():
    net = net_of(FILING)
    text = serialize(net)
    assert len(text.splitlines()) == 7
    assert parse(text) == net


def test_empty_round_trip():
    assert serialize(SemanticNetwork()) == ""
    assert len(parse("")) == 0


def test_malformed_line_names_line():
    with pytest.raises(NetworkError, match="line 2"):
        parse("e1\tis\tfiling\ne1\tplaintiff\n")


def test_tab_in_label_refused():
    net = net_of([("e1", "is", "filing"), ("e1", "desc", "a\tb")])
    with pytest.raises(NetworkError):
        serialize(net)


def test_check_detects_dangling_object():
    net = SemanticNetwork()
    net.insert(("e1", "org_name", "x"))
    with pytest.raises(KindViolation):
        net.check()


def test_object_id_stable():
    assert object_id("a", 1) == object_id("a", 1)
    assert object_id("a", 1) != object_id("a", 2)
