import hashlib
import shutil
from pathlib import Path

import pytest

from nalqa.cli import main

FIX = Path(__file__).parent / "fixtures"


def digest(d: Path) -> str:
    h = hashlib.sha256()
    for p in sorted(d.rglob("*")):
        h.update(p.name.encode())
        if p.is_file():
            h.update(p.read_bytes())
    return h.hexdigest()


@pytest.fixture
def kb(tmp_path, monkeypatch):
    d = tmp_path / "kb"
    monkeypatch.setenv("NALQA_KB", str(d))
    assert main(["init"]) == 0
    return d


def test_init_refuses_then_forces(kb, capsys):
    (kb / "network.tsv").write_text("e\tis\tfiling\n")
    assert main(["init"]) == 2
    assert "--force" in capsys.readouterr().err
    assert main(["init", "--force"]) == 0
    assert (kb / "network.tsv").read_text() == ""


def test_ingest_filing_sentence(kb, capsys):
    assert main(["ingest", "--parses", str(FIX / "att_files_against_msft.parse")]) == 0
    assert len((kb / "network.tsv").read_text().splitlines()) == 7
    assert "legal_proceeding" in capsys.readouterr().out


def test_ingest_empty(kb, tmp_path):
    empty = tmp_path / "empty.parse"
    empty.write_text("")
    assert main(["ingest", "--parses", str(empty)]) == 0
    assert (kb / "network.tsv").read_text() == ""


def test_ingest_bad_document_skipped(kb, tmp_path, capsys):
    f = tmp_path / "two.parse"
    good = (FIX / "att_files_against_msft.parse").read_text()
    f.write_text("# document one\n1\tN\ts\tAT&T\n# document two\n" + good)
    assert main(["ingest", "--parses", str(f)]) == 1
    assert len((kb / "network.tsv").read_text().splitlines()) == 7
    assert "skipped" in capsys.readouterr().err


def test_ingest_twice_doubles_entities(kb):
    for _ in range(2):
        main(["ingest", "--parses", str(FIX / "att_files_against_msft.parse")])
    lines = (kb / "network.tsv").read_text().splitlines()
    assert len(lines) == 14
    assert sum(l.endswith("\tis\tcompany") for l in lines) == 4


def test_ask_codes_and_no_mutation(kb, capsys):
    shutil.copy(FIX / "kb_filing_2002.tsv", kb / "network.tsv")
    before = digest(kb)
    assert main(["ask", "When did AT&T file its case against Microsoft?"]) == 0
    assert capsys.readouterr().out == "Filing took place on 2002\n"
    assert main(["ask", "When was the filing of the case against Microsoft by RealNetworks?"]) == 1
    assert capsys.readouterr().out == "There is no such filing event involving RealNetworks as plaintiff.\n"
    assert main(["ask", "Microsoft quux zorp?"]) == 2
    assert digest(kb) == before


def test_ask_parse_file_and_no_relax(kb, tmp_path, capsys):
    shutil.copy(FIX / "relax_kb.tsv", kb / "network.tsv")
    q = "Who presided the case against Microsoft?"
    assert main(["ask", q]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3
    assert main(["ask", "--no-relax", q]) == 1
    from nalqa.depparse import mini_parse, serialize_graph
    pf = tmp_path / "q.parse"
    pf.write_text(serialize_graph(mini_parse(q)))
    assert main(["ask", "--parse", str(pf), "--explain"]) == 0
    err = capsys.readouterr().err
    assert "Q: Microsoft, org_name" in err


def test_ask_without_kb(tmp_path, monkeypatch):
    monkeypatch.setenv("NALQA_KB", str(tmp_path / "nowhere"))
    assert main(["ask", "Who sues Microsoft?"]) == 2


def test_kb_flag_beats_environment(kb, tmp_path, monkeypatch, capsys):
    assert main(["ingest", "--parses", str(FIX / "att_files_against_msft.parse")]) == 0
    monkeypatch.setenv("NALQA_KB", str(tmp_path / "nowhere"))
    capsys.readouterr()
    assert main(["--kb", str(kb), "ask", "Who sues Microsoft?"]) == 0
    assert capsys.readouterr().out == "AT&T\n"


def test_eval(tmp_path, capsys):
    assert main(["eval", "score", str(FIX / "judgments_three_systems.tsv")]) == 0
    assert capsys.readouterr().out == "AnswerBus\t0\nNaLURI\t4\nSTART\t2\n"
    f = tmp_path / "t.txt"
    f.write_text("1\n2\n3\n")
    assert main(["eval", "stats", str(f)]) == 0
    assert "mean=2.0000" in capsys.readouterr().out
    f.write_text("")
    assert main(["eval", "stats", str(f)]) == 2
