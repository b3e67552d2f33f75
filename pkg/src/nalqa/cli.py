"""Command line: nalqa init | ingest | ask | eval."""
from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .depparse import DepGraph, OutOfSubsetError, ParseError, mini_parse, parse_file
from .discourse import DiscourseError, integrate
from .evaluation import (EvaluationError, format_stats, format_totals, load_judgments, load_times,
                         score, systems_of, time_stats)
from .gazetteer import Gazetteer, GazetteerError, load_gazetteer
from .ontology import Ontology, OntologyError, load_ontology
from .reasoner import ReasonerError, answer, build_query_network, match, reduce, respond
from .resources import default_lexicon, read_data
from .semnet import NetworkError, SemanticNetwork, enumerate_paths, parse, serialize

ONTOLOGY_FILE = "ontology.xi"
GAZETTEER_FILE = "gazetteer.tsv"
NETWORK_FILE = "network.tsv"
DOC_MARKER = re.compile(r"^#\s*document\b.*$", re.MULTILINE)

log = logging.getLogger("nalqa")


class CliError(Exception):
    pass


def kb_dir(args: argparse.Namespace) -> Path:
    return Path(args.kb or os.environ.get("NALQA_KB") or "kb")


def load_kb(d: Path) -> Tuple[Ontology, Gazetteer, SemanticNetwork]:
    missing = [f for f in (ONTOLOGY_FILE, GAZETTEER_FILE, NETWORK_FILE) if not (d / f).is_file()]
    if missing:
        raise CliError(f"{d} is not a knowledge directory (missing {', '.join(missing)}); run 'nalqa init'")
    onto = load_ontology((d / ONTOLOGY_FILE).read_text(encoding="utf-8"))
    gaz = load_gazetteer((d / GAZETTEER_FILE).read_text(encoding="utf-8"), onto)
    net = parse((d / NETWORK_FILE).read_text(encoding="utf-8"), onto.parents)
    return onto, gaz, net


def cmd_init(args: argparse.Namespace) -> int:
    d = kb_dir(args)
    if d.exists() and any(d.iterdir()) and not args.force:
        raise CliError(f"{d} is not empty; use --force to reset it")
    d.mkdir(parents=True, exist_ok=True)
    (d / ONTOLOGY_FILE).write_text(read_data("cyberlaw.xi"), encoding="utf-8")
    (d / GAZETTEER_FILE).write_text(read_data("gazetteer.tsv"), encoding="utf-8")
    (d / NETWORK_FILE).write_text("", encoding="utf-8")
    print(f"initialized {d}")
    return 0


def split_documents(text: str) -> List[str]:
    """A parse file holds one document, or several separated by '# document' lines."""
    parts = DOC_MARKER.split(text)
    docs = [p for p in parts if p.strip()]
    return docs or []


def cmd_ingest(args: argparse.Namespace) -> int:
    d = kb_dir(args)
    onto, gaz, net = load_kb(d)
    before = len(net)
    failures = 0
    doc_index = sum(1 for t in net if t.edge == "is" and onto.is_event_class(t.node2))
    for path in args.parses:
        text = Path(path).read_text(encoding="utf-8")
        for n, doc in enumerate(split_documents(text), start=1):
            name = f"{path}#{n}"
            try:
                graphs = parse_file(doc)
                triples, state = integrate(graphs, gaz, onto, net, doc_index)
                trial = net.copy()
                trial.extend(triples)
            except (ParseError, DiscourseError, NetworkError) as exc:
                failures += 1
                print(f"{name}: skipped: {exc}", file=sys.stderr)
                continue
            net = trial
            doc_index += 1
            ents = sum(1 for ne in state.entities.values() if ne.is_entity)
            print(f"{name}: {len(graphs)} sentences, {ents} entities, {len(state.events)} events, "
                  f"{len(triples)} triples")
            for ev in state.events:
                roles = ", ".join(f"{r}={state_name(state, net, onto, o)}" for r, o in ev.roles.items())
                print(f"  event {ev.cls}: {roles}")
            for w in state.warnings:
                print(f"  warning: {w}")
    (d / NETWORK_FILE).write_text(serialize(net), encoding="utf-8")
    print(f"network: {before} -> {len(net)} triples")
    return 1 if failures else 0


def state_name(state, net: SemanticNetwork, onto: Ontology, oid: str) -> str:
    from .reasoner import render_object
    return render_object(net, onto, oid) or oid[:8]


def _question_graph(args: argparse.Namespace) -> Optional[DepGraph]:
    if args.parse is None:
        return None
    graphs = parse_file(Path(args.parse).read_text(encoding="utf-8"))
    if len(graphs) != 1:
        raise ParseError(f"{args.parse}: expected one question, found {len(graphs)} sentences")
    return graphs[0]


def cmd_ask(args: argparse.Namespace) -> int:
    if (args.question is None) == (args.parse is None):
        raise CliError("give either a question or --parse FILE")
    onto, gaz, net = load_kb(kb_dir(args))
    relax = not args.no_relax
    try:
        q = _question_graph(args)
    except ParseError as exc:
        print(f"The question could not be parsed: {exc}")
        return 2
    res = answer(q if q is not None else args.question, net, gaz, onto, relax=relax)
    print(res.text)
    if args.explain and res.kind != "error":
        _explain(q if q is not None else args.question, net, gaz, onto, relax)
    return res.exit_code


def _explain(question, net, gaz, onto, relax) -> None:
    try:
        g = question if isinstance(question, DepGraph) else mini_parse(question, gaz, default_lexicon())
        qn = build_query_network(g, gaz, onto)
    except (OutOfSubsetError, ReasonerError):
        return
    red = reduce(qn)
    out = match(red.Q, red.A, enumerate_paths(net), onto, relax)
    err = sys.stderr
    print(f"form: {qn.form}", file=err)
    for p in red.Q:
        print(f"Q: {p}", file=err)
    print(f"A: {red.A if red.A is not None else '-'}", file=err)
    print(f"outcome: {out.kind} {' '.join(out.events)}".rstrip(), file=err)


def cmd_eval(args: argparse.Namespace) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    if args.what == "score":
        js = load_judgments(text)
        sys.stdout.write(format_totals(score(systems_of(js), js)))
    else:
        sys.stdout.write(format_stats(time_stats(load_times(text), args.estimator)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nalqa", description="Question answering over a cyberlaw semantic network.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--kb", help="knowledge directory (default: $NALQA_KB, else ./kb)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("init", help="write the shipped ontology and gazetteer and an empty network")
    s.add_argument("--force", action="store_true", help="reset a non-empty directory")
    s.set_defaults(func=cmd_init)

    s = sub.add_parser("ingest", help="integrate parsed documents into the network")
    s.add_argument("--parses", action="append", required=True, metavar="FILE")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("ask", help="answer a question")
    s.add_argument("question", nargs="?")
    s.add_argument("--parse", metavar="FILE", help="dependency parse of the question")
    s.add_argument("--no-relax", action="store_true", help="match event classes literally")
    s.add_argument("--explain", action="store_true", help="print query paths and outcome to stderr")
    s.set_defaults(func=cmd_ask)

    s = sub.add_parser("eval", help="score judgments or summarize response times")
    s.add_argument("what", choices=("score", "stats"))
    s.add_argument("file")
    s.add_argument("--estimator", choices=("sample", "population"), default="sample")
    s.set_defaults(func=cmd_eval)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, OntologyError, GazetteerError, NetworkError, EvaluationError, ParseError, OSError) as exc:
        print(f"nalqa: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
