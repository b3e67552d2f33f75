"""Generate src/nalqa/data/lexicon.tsv (word, pos, lemma, form)."""
from pathlib import Path

VERBS = """
accuse accuses accused accusing
appeal appeals appealed appealing
chair chairs chaired chairing
close closes closed -
commit commits committed committing
conceal conceals concealed concealing
conclude concludes concluded concluding
dismiss dismisses dismissed dismissing
engage engages engaged engaging
file files filed -
initiate initiates initiated initiating
involve involves involved involving
list lists listed listing
lose loses lost losing
name names named naming
occur occurs occurred occurring
plead pleads pleaded pleading
preside presides presided presiding
resolve resolves resolved resolving
rule rules ruled -
sentence sentences sentenced sentencing
settle settles settled settling
side sides sided siding
sue sues sued suing
throw throws threw throwing
win wins won winning
"""
IRREGULAR_PART = {"throw": "thrown"}
AUX = """
be is are was were be been being
do do does did
have has have had
"""
NOUNS = """
action actions
agreement agreements
appeal appeals
attorney attorneys
brief briefs
case cases
closing closings
company companies
compression -
conspiracy conspiracies
court courts
crime crimes
deal deals
decision decisions
defendant defendants
employee employees
evidence -
filing filings
fraud -
information -
judge judges
lawsuit lawsuits
list lists
name names
organization organizations
patent patents
plaintiff plaintiffs
right rights
ruling rulings
settlement settlements
spamming -
speech -
time times
trial trials
year years
"""
PRONOUNS = "it they he she who whom what which we you i"
GENITIVES = "its their his her whose"
DETS = "a an the any this these those some every all each no"
PREPS = "against by with over in on of for to at from into about between under after before during"
ADJ = "federal complex former legal true antitrust long-awaited green new high supreme superior district District appeals civil criminal"
ADV = "when where why"


def rows():
    for line in VERBS.split("\n"):
        if not line.strip():
            continue
        base, pres3, past, ing = line.split()
        yield base, "V", base, "base"
        yield pres3, "V", base, "pres3"
        yield past, "V", base, "past"
        if base in IRREGULAR_PART:
            yield IRREGULAR_PART[base], "V", base, "past"
        if ing != "-":
            yield ing, "V", base, "ing"
    for line in AUX.split("\n"):
        if not line.strip():
            continue
        lemma, *forms = line.split()
        for f in dict.fromkeys(forms):
            yield f, "Aux", lemma, "aux"
    for line in NOUNS.split("\n"):
        if not line.strip():
            continue
        sg, pl = line.split()
        yield sg, "N", sg, "sg"
        if pl != "-":
            yield pl, "N", sg, "pl"
    for w in PRONOUNS.split():
        yield w, "N", w, "pron"
    for w in GENITIVES.split():
        yield w, "N", w, "gen"
    for w in DETS.split():
        yield w, "Det", w, "-"
    yield "how many", "Det", "how many", "-"
    for w in PREPS.split():
        yield w, "Prep", w, "-"
    for w in ADJ.split():
        yield w, "A", w, "-"
    for w in ADV.split():
        yield w, "Adv", w, "wh"
    yield "that", "C", "that", "-"
    yield "and", "U", "and", "conj"
    yield "or", "U", "or", "conj"
    yield ",", "U", ",", "punc"


out = ["word\tpos\tlemma\tform"] + ["\t".join(r) for r in rows()]
Path(__file__).resolve().parents[1].joinpath("src/nalqa/data/lexicon.tsv").write_text("\n".join(out) + "\n")
