"""Dependency parses: the portable parse-file format and a small rule-based parser."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .gazetteer import iter_entity_entries

ROOT_WORD = "fin"


class ParseError(ValueError):
    pass


class ParseFormatError(ParseError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class MultipleRootsError(ParseError):
    pass


class OutOfSubsetError(ParseError):
    def __init__(self, token: str, msg: str = ""):
        super().__init__(f"unhandled token '{token}'" + (f": {msg}" if msg else ""))
        self.token = token


@dataclass(frozen=True)
class DepToken:
    offset: int
    pos: str
    relation: str
    word: str
    head: int  # 0 is the sentence root
    head_word: str = ROOT_WORD

    @property
    def is_root_child(self) -> bool:
        return self.head == 0


@dataclass
class DepGraph:
    tokens: List[DepToken]
    index: int = 0
    root_marker: str = "E0"
    _by_offset: Dict[int, DepToken] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_offset = {t.offset: t for t in self.tokens}
        self.validate()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DepGraph)
            and self.tokens == other.tokens
            and self.index == other.index
            and self.root_marker == other.root_marker
        )

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def token(self, offset: int) -> DepToken:
        return self._by_offset[offset]

    def head_of(self, tok: DepToken) -> Optional[DepToken]:
        return None if tok.head == 0 else self._by_offset[tok.head]

    def dependents(self, offset: int, relation: Optional[str] = None) -> List[DepToken]:
        return [t for t in self.tokens if t.head == offset and (relation is None or t.relation == relation)]

    def roots(self) -> List[DepToken]:
        return [t for t in self.tokens if t.head == 0]

    def validate(self) -> None:
        offsets = [t.offset for t in self.tokens]
        if offsets != list(range(1, len(offsets) + 1)):
            raise ParseError(f"offsets must run 1..n in order, got {offsets}")
        for t in self.tokens:
            if t.head == t.offset:
                raise ParseError(f"token {t.offset} '{t.word}' is its own head")
            if t.head != 0 and t.head not in self._by_offset:
                raise ParseError(f"token {t.offset} '{t.word}' points at missing head {t.head}")
        if self.tokens and not self.roots():
            raise ParseError("sentence has no root attachment")
        for t in self.tokens:
            seen = set()
            cur = t
            while cur.head != 0:
                if cur.offset in seen:
                    raise ParseError(f"head links from token {t.offset} form a cycle")
                seen.add(cur.offset)
                cur = self._by_offset[cur.head]


_HEAD_RE = re.compile(r"^(.*?)\s*\(\s*(E\d+|\d+)\s*\)$")


def _parse_block(lines: Sequence[Tuple[int, str]], index: int) -> DepGraph:
    tokens = []
    markers = set()
    for lineno, line in lines:
        cols = line.split("\t")
        if len(cols) != 5:
            raise ParseFormatError(lineno, f"expected 5 tab-separated columns, got {len(cols)}")
        off, pos, rel, word, head = (c.strip() for c in cols)
        if not off.isdigit():
            raise ParseFormatError(lineno, f"offset '{off}' is not a positive integer")
        m = _HEAD_RE.match(head)
        if not m or not word or not pos:
            raise ParseFormatError(lineno, f"malformed token line {line!r}")
        head_word, ref = m.group(1), m.group(2)
        if ref.startswith("E"):
            markers.add(ref)
            h = 0
            head_word = ROOT_WORD
        else:
            h = int(ref)
            if h == int(off):
                raise ParseFormatError(lineno, f"token {off} is its own head")
        tokens.append(DepToken(int(off), pos, rel, word, h, head_word))
    if len(markers) > 1:
        raise MultipleRootsError(
            f"sentence {index} has {len(markers)} root markers ({', '.join(sorted(markers))})"
        )
    try:
        return DepGraph(tokens, index, markers.pop() if markers else "E0")
    except ParseError as exc:
        raise ParseFormatError(lines[0][0], str(exc)) from None


def parse_file(text: str) -> List[DepGraph]:
    """Read blank-line separated sentence blocks; lines starting with '#' are ignored."""
    graphs: List[DepGraph] = []
    block: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            continue
        if not line.strip():
            if block:
                graphs.append(_parse_block(block, len(graphs)))
                block = []
            continue
        block.append((lineno, line))
    if block:
        graphs.append(_parse_block(block, len(graphs)))
    return graphs


def serialize_graph(g: DepGraph) -> str:
    lines = []
    for t in g.tokens:
        head = f"{ROOT_WORD}({g.root_marker})" if t.head == 0 else f"{t.head_word}({t.head})"
        lines.append(f"{t.offset}\t{t.pos}\t{t.relation}\t{t.word}\t{head}")
    return "\n".join(lines) + "\n"


def serialize(graphs: Sequence[DepGraph]) -> str:
    return "\n".join(serialize_graph(g) for g in graphs)


# --- minimal rule-based parser -------------------------------------------------

TITLES = {"judge", "Judge", "Justice"}
FRAGMENT_HEADS = {"List", "Name", "list", "name"}
RELATIVE_PRONOUNS = {"who", "whom", "which", "that"}
WH_PRONOUNS = {"who", "whom", "what", "which", "Who", "Whom", "What", "Which"}


@dataclass
class _Tok:
    surface: str
    pos: str = ""
    lemma: str = ""
    form: str = ""
    rel: str = ""
    head: Optional[int] = None  # index into the token list; -1 is the root

    @property
    def word(self) -> str:
        if self.pos in ("V", "Aux") or self.form == "pl":
            return self.lemma
        return self.surface


@dataclass
class _NP:
    start: int
    end: int  # inclusive
    head: int


def _split_words(sentence: str) -> List[Tuple[str, bool]]:
    """Whitespace tokens with trailing punctuation removed; the flag marks a genitive 's."""
    text = sentence.strip()
    while text and text[-1] in "?.!":
        text = text[:-1].rstrip()
    out: List[Tuple[str, bool]] = []
    for raw in text.split():
        trail = []
        while raw.endswith(",") and len(raw) > 1:
            raw = raw[:-1]
            trail.append(",")
        gen = False
        if raw.endswith("'s") and len(raw) > 2:
            raw, gen = raw[:-2], True
        out.append((raw, gen))
        out.extend((t, False) for t in trail)
    return out


class _MiniParser:
    def __init__(self, gazetteer, lexicon):
        self.gaz = gazetteer
        self.lex = lexicon
        names = [n for e in iter_entity_entries(gazetteer) for n in e.names() if " " in n]
        names += [w for w in lexicon if " " in w]
        self.multi = {tuple(n.split()) for n in names}
        self.max_multi = max((len(m) for m in self.multi), default=1)
        self.first_names = {
            e.name for e in gazetteer.entries if e.category == "person" and e.kind == "generic"
        }

    # tokens ------------------------------------------------------------------
    def _known(self, w: str, first: bool) -> bool:
        return w in self.lex or (first and w.lower() in self.lex) or self.gaz.knows(w)

    def tokenize(self, sentence: str) -> List[_Tok]:
        words = _split_words(sentence)
        toks: List[_Tok] = []
        gens: List[bool] = []
        i = 0
        while i < len(words):
            merged = None
            for n in range(min(self.max_multi, len(words) - i), 1, -1):
                span = tuple(w for w, _ in words[i:i + n])
                cand = span if span in self.multi else None
                if cand is None and i == 0:
                    low = (span[0].lower(),) + span[1:]
                    cand = low if low in self.multi else None
                if cand is not None:
                    merged = (" ".join(span), n)
                    break
            if merged is None and words[i][0] in self.first_names:
                j = i + 1
                while j < len(words) and words[j][0][:1].isupper() and not self._known(words[j][0], False):
                    j += 1
                if j > i + 1:
                    merged = (" ".join(w for w, _ in words[i:j]), j - i)
            if merged is None:
                merged = (words[i][0], 1)
            toks.append(_Tok(merged[0]))
            gens.append(words[i + merged[1] - 1][1])
            i += merged[1]
        for t, g in zip(toks, gens):
            if g:
                t.form = "gen"
        return toks

    def _readings(self, t: _Tok, first: bool):
        r = self.lex.get(t.surface)
        if r is None and first:
            r = self.lex.get(t.surface.lower()) or self.lex.get(t.surface[:1].lower() + t.surface[1:])
        return r or []

    def tag(self, toks: List[_Tok]) -> None:
        for i, t in enumerate(toks):
            gen = t.form == "gen"
            readings = self._readings(t, i == 0)
            if not readings:
                s = t.surface
                if self.gaz.knows(s) or s[:1].isupper() or s[:1].isdigit() or s in ("&",):
                    t.pos, t.lemma, t.form = "N", s, "prop"
                else:
                    raise OutOfSubsetError(s, "not in the lexicon or gazetteer")
            else:
                chosen = readings[0]
                if len({r.pos for r in readings}) > 1:
                    prev = toks[i - 1] if i else None
                    nxt = toks[i + 1].surface if i + 1 < len(toks) else ""
                    want = "V"
                    if prev is not None and prev.pos in ("Det", "A") or prev is not None and prev.form == "gen":
                        want = "N"
                    elif i == 0 and nxt == "of":
                        want = "N"
                    chosen = next((r for r in readings if r.pos == want), readings[0])
                t.pos, t.lemma, t.form = chosen.pos, chosen.lemma, chosen.form
            if gen:
                t.form = "gen"
        for i, t in enumerate(toks):
            if t.lemma in ("what", "which") and t.pos == "N" and i + 1 < len(toks) and toks[i + 1].pos in ("N", "A"):
                t.pos, t.form = "Det", "-"

    # chunks --------------------------------------------------------------------
    def chunk(self, toks: List[_Tok]) -> List[_NP]:
        nps: List[_NP] = []
        i = 0
        n = len(toks)
        while i < n:
            if toks[i].pos not in ("Det", "A", "N"):
                i += 1
                continue
            j = i
            if toks[i].pos == "N" and toks[i].form == "pron":
                nps.append(_NP(i, i, i))
                i += 1
                continue
            while j + 1 < n:
                nxt = toks[j + 1]
                if nxt.pos not in ("Det", "A", "N") or nxt.form in ("pron", "gen"):
                    break
                if nxt.pos == "Det" and any(toks[k].pos == "N" for k in range(i, j + 1)):
                    break
                j += 1
            nouns = [k for k in range(i, j + 1) if toks[k].pos == "N" and toks[k].form != "gen" or k == j and toks[k].pos == "N"]
            if not nouns:
                if all(toks[k].pos == "A" for k in range(i, j + 1)):
                    i = j + 1
                    continue
                raise OutOfSubsetError(toks[j].surface, "noun phrase without a noun")
            head = nouns[-1]
            for k in range(i, j + 1):
                if toks[k].lemma in TITLES and k < j and all(toks[m].form == "prop" for m in range(k + 1, j + 1)):
                    head = k
                    break
            for k in range(i, j + 1):
                if k == head:
                    continue
                t = toks[k]
                t.head = head
                if k > head:
                    t.rel = "nn"
                elif t.pos == "Det":
                    t.rel = "det"
                elif t.pos == "A":
                    t.rel = "mod"
                elif t.form == "gen":
                    t.rel = "gen"
                else:
                    t.rel = "nn"
            nps.append(_NP(i, j, head))
            i = j + 1
        return nps

    # clauses -------------------------------------------------------------------
    def parse(self, sentence: str, index: int = 0) -> DepGraph:
        toks = self.tokenize(sentence)
        if not toks:
            raise OutOfSubsetError("", "empty sentence")
        self.tag(toks)
        nps = self.chunk(toks)
        items: List[Tuple[str, int]] = []  # (kind, token index or np index)
        np_at = {np.start: (k, np) for k, np in enumerate(nps)}
        i = 0
        while i < len(toks):
            if i in np_at:
                k, np = np_at[i]
                items.append(("NP", k))
                i = np.end + 1
                continue
            t = toks[i]
            items.append((t.pos, i))
            i += 1

        def tok_of(item: Tuple[str, int]) -> int:
            return nps[item[1]].head if item[0] == "NP" else item[1]

        consumed = set()  # NP indices that already have a clause role
        passive = set()
        aux_of: Dict[int, int] = {}

        # auxiliaries vs copula / main verbs
        for p, (kind, ti) in enumerate(items):
            if kind != "Aux":
                continue
            t = toks[ti]
            later_verbs = [q for q in range(p + 1, len(items)) if items[q][0] == "V"]
            if t.lemma == "do":
                if not later_verbs:
                    raise OutOfSubsetError(t.surface, "auxiliary without a verb")
                aux_of[ti] = items[later_verbs[0]][1]
            elif t.lemma == "have":
                nxt = items[p + 1] if p + 1 < len(items) else None
                if nxt and nxt[0] == "V" and toks[nxt[1]].form == "past":
                    aux_of[ti] = nxt[1]
                else:
                    t.pos = "V"
            else:
                nxt = items[p + 1] if p + 1 < len(items) else None
                last = items[-1]
                if nxt and nxt[0] == "V" and toks[nxt[1]].form == "past":
                    aux_of[ti] = nxt[1]
                    passive.add(nxt[1])
                elif (last[0] == "V" and toks[last[1]].form == "past" and p < len(items) - 1
                      and all(k in ("NP", "Prep") for k, _ in items[p + 1:-1])):
                    aux_of[ti] = last[1]
                    passive.add(last[1])
                else:
                    t.pos = "V"
        for ti, vi in aux_of.items():
            toks[ti].rel, toks[ti].head = "aux", vi
        items = [("V", ti) if kind == "Aux" and toks[ti].pos == "V" else (kind, ti) for kind, ti in items]

        # prepositions: attachment and objects
        stranded: List[int] = []
        prep_site: Dict[int, int] = {}
        for p, (kind, ti) in enumerate(items):
            if kind != "Prep":
                continue
            prev = items[p - 1] if p else None
            if prev is None:
                raise OutOfSubsetError(toks[ti].surface, "sentence-initial preposition")
            if prev[0] in ("NP", "V"):
                site = tok_of(prev)
            elif prev[0] == "Prep":
                site = prep_site[prev[1]]
            else:
                raise OutOfSubsetError(toks[ti].surface, "preposition has nothing to attach to")
            prep_site[ti] = site
            toks[ti].rel, toks[ti].head = "mod", site
            nxt = items[p + 1] if p + 1 < len(items) else None
            if nxt and nxt[0] == "NP":
                h = nps[nxt[1]].head
                toks[h].rel, toks[h].head = "pcomp-n", ti
                consumed.add(nxt[1])
            elif nxt and nxt[0] == "V" and toks[nxt[1]].form == "ing":
                toks[nxt[1]].rel, toks[nxt[1]].head = "pcomp-c", ti
            elif nxt is None or nxt[0] == "Prep":
                stranded.append(ti)
            else:
                raise OutOfSubsetError(toks[ti].surface, "preposition without an object")

        # appositions, conjunctions, punctuation
        for p, (kind, ti) in enumerate(items):
            if kind != "U":
                continue
            left = items[p - 1] if p else None
            right = items[p + 1] if p + 1 < len(items) else None
            if not (left and left[0] == "NP"):
                raise OutOfSubsetError(toks[ti].surface)
            lh = nps[left[1]].head
            toks[ti].rel, toks[ti].head = "punc", lh
            if right and right[0] == "NP" and right[1] not in consumed:
                rh = nps[right[1]].head
                toks[rh].rel = "conj" if toks[ti].form == "conj" else "appo"
                toks[rh].head = lh
                consumed.add(right[1])

        # fragment such as "List of ..."
        main: Optional[int] = None
        clause_start = 0
        if items[0][0] == "NP" and toks[nps[items[0][1]].head].surface in FRAGMENT_HEADS:
            h = nps[items[0][1]].head
            toks[h].rel, toks[h].head = "i", -1
            consumed.add(items[0][1])
            main = h
        pred_adj: Optional[int] = None
        for p in range(1, len(items)):
            if items[p][0] == "C" and items[p - 1][0] == "A":
                pred_adj = items[p - 1][1]
        comp_pending: Optional[int] = None  # index of "that"
        clause_verbs: List[Tuple[int, int, int]] = []  # (verb token, item pos, clause start)

        for p, (kind, ti) in enumerate(items):
            t = toks[ti]
            if kind == "Adv":
                t.rel, t.head = "wh", -1
                continue
            if kind == "C":
                if t.lemma != "that" or main is None:
                    raise OutOfSubsetError(t.surface)
                comp_pending = ti
                clause_start = p + 1
                continue
            if kind != "V" or t.rel == "pcomp-c":
                if kind == "V" and t.rel == "pcomp-c":
                    self._take_object(items, p, nps, toks, consumed)
                continue
            prev = items[p - 1] if p else None
            governed = any(v == ti for v in aux_of.values())
            if comp_pending is not None:
                t.rel = "comp"
                t.head = pred_adj if pred_adj is not None else main
                toks[comp_pending].rel, toks[comp_pending].head = "c", ti
                comp_pending = None
                clause_verbs.append((ti, p, clause_start))
                continue
            if (prev and prev[0] == "NP" and toks[nps[prev[1]].head].lemma in RELATIVE_PRONOUNS
                    and p >= 2 and items[p - 2][0] == "NP" and nps[prev[1]].start == nps[prev[1]].end):
                ante = nps[items[p - 2][1]].head
                t.rel, t.head = "rel", ante
                w = nps[prev[1]].head
                toks[w].rel, toks[w].head = "s", ti
                consumed.add(prev[1])
                self._take_object(items, p, nps, toks, consumed)
                continue
            if main is not None and not governed and prev and prev[0] == "NP":
                if t.form == "ing":
                    t.rel, t.head = "rel", nps[prev[1]].head
                    self._take_object(items, p, nps, toks, consumed)
                elif p >= 2 and items[p - 2][0] == "NP":
                    t.rel, t.head = "rel", nps[items[p - 2][1]].head
                    h = nps[prev[1]].head
                    toks[h].rel, toks[h].head = "s", ti
                    consumed.add(prev[1])
                    self._take_object(items, p, nps, toks, consumed)
                else:
                    t.rel, t.head = "vrel", nps[prev[1]].head
                continue
            if main is not None:
                raise OutOfSubsetError(t.surface, "second finite verb")
            t.rel, t.head = "i", -1
            main = ti
            clause_verbs.append((ti, p, clause_start))

        for ti, p, start in clause_verbs:
            self._clause_args(ti, p, start, items, nps, toks, consumed, passive, stranded)

        for t in toks:
            if t.head is None:
                raise OutOfSubsetError(t.surface, "no grammatical role")
        out = []
        for k, t in enumerate(toks):
            if t.head == -1:
                out.append(DepToken(k + 1, t.pos, t.rel, t.word, 0, ROOT_WORD))
            else:
                out.append(DepToken(k + 1, t.pos, t.rel, t.word, t.head + 1, toks[t.head].word))
        return DepGraph(out, index)

    def _take_object(self, items, p, nps, toks, consumed) -> bool:
        nxt = items[p + 1] if p + 1 < len(items) else None
        if nxt and nxt[0] == "NP" and nxt[1] not in consumed:
            h = nps[nxt[1]].head
            toks[h].rel, toks[h].head = "obj", items[p][1]
            consumed.add(nxt[1])
            return True
        return False

    def _clause_args(self, vi, p, start, items, nps, toks, consumed, passive, stranded) -> None:
        verb = toks[vi]
        before = [items[q][1] for q in range(start, p) if items[q][0] == "NP" and items[q][1] not in consumed]
        if verb.lemma == "be" and verb.pos == "V":
            for k in before:
                h = nps[k].head
                toks[h].rel, toks[h].head = ("pred" if toks[h].surface in WH_PRONOUNS else "s"), vi
                consumed.add(k)
            has_subject = any(toks[nps[k].head].rel == "s" for k in before)
            q = p + 1
            if q < len(items) and items[q][0] == "NP" and items[q][1] not in consumed:
                h = nps[items[q][1]].head
                toks[h].rel, toks[h].head = ("pred" if has_subject else "s"), vi
                consumed.add(items[q][1])
                q += 1
            if q < len(items) and items[q][0] == "A":
                toks[items[q][1]].rel, toks[items[q][1]].head = "pred", vi
            return
        if before:
            near = before.pop()
            h = nps[near].head
            toks[h].rel, toks[h].head = ("obj" if vi in passive else "s"), vi
            consumed.add(near)
        has_obj = vi not in passive and self._take_object(items, p, nps, toks, consumed)
        for k in reversed(before):
            h = nps[k].head
            if stranded:
                prep = stranded.pop(0)
                toks[h].rel, toks[h].head = "pcomp-n", prep
            elif not has_obj and vi not in passive:
                toks[h].rel, toks[h].head = "obj", vi
                has_obj = True
            else:
                raise OutOfSubsetError(toks[h].surface, "fronted phrase without a role")
            consumed.add(k)
        if stranded:
            raise OutOfSubsetError(toks[stranded[0]].surface, "preposition without an object")


_PARSER_CACHE: Dict[int, _MiniParser] = {}


def mini_parse(sentence: str, gazetteer=None, lexicon=None, index: int = 0) -> DepGraph:
    """Parse one sentence of the constrained question/news subset.

    Raises OutOfSubsetError naming the first token the rules cannot place.
    """
    if gazetteer is None or lexicon is None:
        from .resources import default_gazetteer, default_lexicon
        gazetteer = gazetteer or default_gazetteer()
        lexicon = lexicon or default_lexicon()
    key = id(gazetteer) ^ id(lexicon)
    parser = _PARSER_CACHE.get(key)
    if parser is None or parser.gaz is not gazetteer or parser.lex is not lexicon:
        parser = _PARSER_CACHE[key] = _MiniParser(gazetteer, lexicon)
    return parser.parse(sentence, index)
