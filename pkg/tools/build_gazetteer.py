"""Regenerate src/nalqa/data/gazetteer.tsv from the tables below."""
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "nalqa" / "data" / "gazetteer.tsv"

rows = []


def add(name, cat, pattern, kind, alias="", rmap="", groups=""):
    rows.append([name, cat, pattern, kind, alias, rmap, groups])


# companies
add("Microsoft", "company", r"({TOKEN})(\sCorporation|\sCorp[.]?)?", "specific", "", "", "org_name")
add("Excite", "company", r"({TOKEN})(\sIncorporated|\sInc[.,]?)?", "specific", "", "", "org_name")
add("Hewlett-Packard", "company", r"({TOKEN})(\sCompany|\sCo[.]?)?", "specific", "HP", "", "org_name")
add("AT&T", "company", r"({TOKEN})(\sCorporation|\sCorp[.]?|\sInc[.]?)?", "specific", "", "", "org_name")
add("RealNetworks", "company", r"({TOKEN})(\sIncorporated|\sInc[.]?)?", "specific", "", "", "org_name")
add("Vonage", "company", r"({TOKEN})(\sHoldings|\sCorporation|\sCorp[.]?)?", "specific", "", "", "org_name")
add("Google", "company", r"({TOKEN})(\sIncorporated|\sInc[.]?)?", "specific", "", "", "org_name")
add("Apple", "company", r"({TOKEN})(\sComputer|\sIncorporated|\sInc[.]?)?", "specific", "", "", "org_name")
add("Sun", "company", r"({TOKEN})(\sMicrosystems)?", "specific", "", "", "org_name")
add("Fujitsu", "company", r"({TOKEN})(\sLimited|\sLtd[.]?)?", "specific", "", "", "org_name")
add("International Business Machines", "company", r"({TOKEN})(\sCorporation|\sCorp[.]?)?", "specific", "IBM", "", "org_name")
add("Corporation", "company", r"((([A-Z][\w'&.-]*)\s)*([A-Z][\w'&.-]*))\s{TOKEN}", "generic", "Corp.", "", "org_name")
add("Incorporated", "company", r"((([A-Z][\w'&.-]*)\s)*([A-Z][\w'&.-]*))\s{TOKEN}", "generic", "Inc.", "", "org_name")
add("Electronic Frontier Foundation", "ngo", r"({TOKEN})", "specific", "EFF", "", "org_name")
add("Association", "ngo", r"((([\w'&.-]+)\s)+{TOKEN}(\s[\w'&.,-]+)*)", "generic", "association", "", "org_name")
add("Office", "government", r"((([\w'&.-]+)\s)+{TOKEN})", "generic", "office", "", "org_name")
add("Court", "court", r"((([Ss]upreme|[Ss]uperior|[Ff]ederal|[Dd]istrict|[Aa]ppeals)\s)?{TOKEN})", "generic", "court", "", "org_name,_,court_type")

# people
for first in ["Andrew", "David", "William", "James", "John", "Rob", "George", "Howard",
              "Eliot", "Ira", "Marilyn", "Michael", "Ronald"]:
    add(first, "person", r"({TOKEN})\s(([A-Z][a-z']+)(\s[A-Z][A-Za-z'.]*)*)", "generic", "", "", "per_fname,per_lname")
add("Judge", "judge", r"(([\w.&-]+\s)*)({TOKEN})(\s(([A-Z][a-z']+)\s(([A-Z][A-Za-z'.]*)(\s[A-Z][A-Za-z'.]*)*)))?",
    "generic", "judge", "", "_,_,profession,_,_,per_fname,per_lname")
add("Justice", "judge", r"(([\w.&-]+\s)*)({TOKEN})(\s(([A-Z][a-z']+)\s(([A-Z][A-Za-z'.]*)(\s[A-Z][A-Za-z'.]*)*)))?",
    "generic", "justice", "", "_,_,profession,_,_,per_fname,per_lname")

# dates
for day in ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]:
    add(day, "date", r"({TOKEN})", "specific", "", "", "day_of_week")
for month in ["January", "February", "March", "April", "May", "June", "July", "August",
              "September", "October", "November", "December"]:
    add(month, "date", r"((([A-Z][a-z]+),?\s)?((\d\d?)\s))?({TOKEN})(,?\s(\d\d\d\d))?", "generic", "", "",
        "_,_,day_of_week,_,day_of_month,month,_,year")
for year in range(1990, 2011):
    add(str(year), "date", r"({TOKEN})", "specific", "", "", "year")

# locations
add("California", "location", r"({TOKEN})", "specific", "", "", "state")
add("New York", "location", r"({TOKEN})", "specific", "", "", "state")
add("Malaysia", "location", r"({TOKEN})", "specific", "", "", "country")
add("U.S.", "location", r"({TOKEN})", "specific", "", "", "country")
add("Deal", "location", r"({TOKEN})", "specific", "", "", "city")
add("Redmond", "location", r"({TOKEN})", "specific", "", "", "city")

# relation triggers
ANY = "{LEGAL_ENTITY}"
add("sue", "legal_proceeding", "{LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}", "relation-verb", "", "{PLAINTIFF}<RELATION>{DEFENDANT}")
add("accuse", "legal_proceeding", "{LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}", "relation-verb", "", "{PLAINTIFF}<RELATION>{DEFENDANT}")
add("file against", "legal_proceeding", "{PERSON|ORGANIZATION}<RELATION>{PERSON|ORGANIZATION}", "relation-verb", "", "{PLAINTIFF}<RELATION>{DEFENDANT}")
add("file", "filing", "{LEGAL_ENTITY}<RELATION>{VARIABLE}", "relation-verb", "", "{PLAINTIFF}<RELATION>{}")
add("file on", "filing", "{VARIABLE}<RELATION>{DATE}", "relation-verb", "", "{}<RELATION>{OCCUR_ON}")
add("occur on", "legal_proceeding", "{VARIABLE}<RELATION>{DATE}", "relation-verb", "", "{}<RELATION>{OCCUR_ON}")
add("initiate", "legal_proceeding", "{LEGAL_ENTITY}<RELATION>{VARIABLE}", "relation-verb", "", "{PLAINTIFF}<RELATION>{}")
add("side with", "resolution", "{COURT}<RELATION>{PERSON|ORGANIZATION}", "relation-verb", "", "{OCCUR_AT}<RELATION>{PREVAILING_PARTY}")
add("rule on", "resolution", "{JUDGE|COURT}<RELATION>{DATE}", "relation-verb", "", "{PRESIDE_BY|OCCUR_AT}<RELATION>{OCCUR_ON}")
add("rule against", "resolution", "{JUDGE|COURT}<RELATION>{PERSON|ORGANIZATION}", "relation-verb", "", "{PRESIDE_BY|OCCUR_AT}<RELATION>{LOSING_PARTY}")
add("sentence", "resolution", "{JUDGE|COURT}<RELATION>{PERSON}", "relation-verb", "", "{PRESIDE_BY|OCCUR_AT}<RELATION>{DEFENDANT}")
add("win", "resolution", "{PERSON|ORGANIZATION}<RELATION>{VARIABLE}", "relation-verb", "", "{PREVAILING_PARTY}<RELATION>{}")
add("lose", "resolution", "{PERSON|ORGANIZATION}<RELATION>{VARIABLE}", "relation-verb", "", "{LOSING_PARTY}<RELATION>{}")
for verb in ["rule", "settle", "throw out", "dismiss", "resolve", "close", "conclude"]:
    add(verb, "resolution", "{JUDGE|COURT}<RELATION>{VARIABLE}", "relation-verb", "", "{PRESIDE_BY|OCCUR_AT}<RELATION>{}")
for verb in ["preside", "preside over", "chair"]:
    add(verb, "legal_proceeding", "{JUDGE}<RELATION>{VARIABLE}", "relation-verb", "", "{PRESIDE_BY}<RELATION>{}")
add("plead", "trial", "{PERSON|ORGANIZATION}<RELATION>{VARIABLE}", "relation-verb", "", "{DEFENDANT}<RELATION>{}")
add("appeal", "appeal", "{PERSON|ORGANIZATION}<RELATION>{VARIABLE}", "relation-verb", "", "{PLAINTIFF}<RELATION>{}")
add("against", "legal_proceeding", "{FILING|VARIABLE|LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}", "relation-prep", "", "{}<RELATION>{DEFENDANT}")
add("by", "legal_proceeding", "{VARIABLE|LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}", "relation-prep", "", "{}<RELATION>{PLAINTIFF}")
add("in", "legal_proceeding", "{LEGAL_ENTITY}<RELATION>{VARIABLE}", "relation-prep", "", "{}<RELATION>{NATURE_OF_CASE}")
add("over", "legal_proceeding", "{LEGAL_ENTITY}<RELATION>{VARIABLE}", "relation-prep", "", "{}<RELATION>{NATURE_OF_CASE}")
for noun, cat in [("filing", "filing"), ("trial", "trial"), ("closing", "resolution"), ("ruling", "resolution"),
                  ("case", "legal_proceeding"), ("lawsuit", "legal_proceeding"), ("appeal", "appeal")]:
    add(noun, cat, "no pattern", "relation-noun")

header = ["g_name", "g_category", "g_pattern", "g_type", "g_alias", "g_map", "g_group_map"]
OUT.write_text("\n".join("\t".join(r) for r in [header] + rows) + "\n", encoding="utf-8")
print(f"wrote {len(rows)} entries to {OUT}")
