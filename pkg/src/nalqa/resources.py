"""Shipped ontology, gazetteer and lexicon."""
from __future__ import annotations

import csv
import io
from functools import lru_cache
from importlib import resources
from typing import Dict, List, NamedTuple

from .gazetteer import Gazetteer, load_gazetteer
from .ontology import Ontology, load_ontology


def read_data(name: str) -> str:
    return resources.files("nalqa").joinpath("data", name).read_text(encoding="utf-8")


class LexEntry(NamedTuple):
    word: str
    pos: str
    lemma: str
    form: str


Lexicon = Dict[str, List[LexEntry]]


def load_lexicon(text: str) -> Lexicon:
    lex: Lexicon = {}
    for row in csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE):
        if not row or row[0] == "word" or row[0].startswith("#"):
            continue
        e = LexEntry(*row)
        lex.setdefault(e.word, []).append(e)
    return lex


@lru_cache(maxsize=None)
def default_ontology() -> Ontology:
    return load_ontology(read_data("cyberlaw.xi"))


@lru_cache(maxsize=None)
def default_gazetteer() -> Gazetteer:
    return load_gazetteer(read_data("gazetteer.tsv"), default_ontology())


@lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    return load_lexicon(read_data("lexicon.tsv"))
