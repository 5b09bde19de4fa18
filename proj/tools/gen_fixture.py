#!/usr/bin/env python3
"""Writes the bundled transcription fixture (data/fixture) and the mini
fixture (data/mini).

The corpus is synthetic. Entity years, mention flags, subject areas, section
kinds, intents and sentiments are allocated so that running the real
pipeline over the files reproduces the published aggregate counts. Texts are
templated prose; they carry no content from the original articles.

Usage: tools/gen_fixture.py [data_dir]
"""

import csv
import io
import json
import os
import random
import shutil
import sys

SEED_DOI = "10.1016/s0140-6736(97)11096-0"
POINTER = "Wakefield et al., 1998"

# year -> (entities, mentioning)
YEARS = {
    1998: (12, 0), 1999: (22, 0), 2000: (20, 0), 2001: (21, 0), 2002: (20, 0),
    2003: (20, 0), 2004: (20, 3), 2005: (22, 4), 2006: (24, 6), 2007: (24, 5),
    2008: (20, 4), 2009: (28, 2), 2010: (30, 8), 2011: (40, 10), 2012: (42, 12),
    2013: (45, 14), 2014: (48, 16), 2015: (50, 16), 2016: (51, 17), 2017: (56, 34),
}
PERIODS = ((1998, 2004, "P1"), (2005, 2010, "P2"), (2011, 2017, "P3"))

# area -> assignments in P1, P2, P3
AREAS = {
    "medicine": (94, 95, 191),
    "social sciences": (3, 20, 67),
    "nursing": (20, 27, 34),
    "biochemistry, genetics and molecular biology": (12, 15, 32),
    "psychology": (10, 12, 36),
    "pharmacology, toxicology and pharmaceutics": (12, 12, 30),
    "immunology and microbiology": (10, 10, 32),
    "arts and humanities": (3, 6, 19),
    "neuroscience": (5, 5, 14),
    "environmental science": (0, 4, 13),
    "agricultural and biological sciences": (3, 3, 10),
    "health professions": (3, 3, 9),
    "computer science": (2, 2, 9),
    "mathematics": (2, 2, 6),
    "business, management and accounting": (2, 1, 5),
    "engineering": (0, 1, 6),
    "dentistry": (0, 2, 5),
    "multidisciplinary": (3, 1, 3),
    "decision sciences": (0, 1, 6),
    "economics, econometrics and finance": (0, 2, 3),
    "earth and planetary sciences": (0, 0, 1),
    "chemical engineering": (0, 0, 1),
    "materials science": (1, 0, 0),
    "physics and astronomy": (1, 0, 0),
}
CATEGORIES_PER_AREA = {
    "medicine": 45, "social sciences": 20, "nursing": 15,
    "biochemistry, genetics and molecular biology": 12, "psychology": 10,
    "pharmacology, toxicology and pharmaceutics": 8, "immunology and microbiology": 8,
    "arts and humanities": 8, "neuroscience": 6, "environmental science": 5,
    "agricultural and biological sciences": 5, "health professions": 4,
    "computer science": 4, "mathematics": 3, "business, management and accounting": 3,
    "engineering": 3, "dentistry": 2, "multidisciplinary": 1, "decision sciences": 2,
    "economics, econometrics and finance": 2, "earth and planetary sciences": 1,
    "chemical engineering": 1, "materials science": 1, "physics and astronomy": 1,
}

# Per period: classified entities, ISBN-classified among them, entities
# without a venue id, ISSN-pending, ISBN-pending.
PERIOD_PLAN = {
    "P1": dict(classified=126, isbn=8, no_id=4, issn_pending=2, isbn_pending=3),
    "P2": dict(classified=139, isbn=10, no_id=4, issn_pending=2, isbn_pending=3),
    "P3": dict(classified=311, isbn=20, no_id=8, issn_pending=6, isbn_pending=7),
}
NO_ID_WITH_TITLE = 4
PAYWALLED = 22
PAYWALLED_2015 = 6
CITATIONS_2015 = 45

INTENTS = {
    "discusses": 226, "disputes": 114, "credits": 95, "cites for information": 90,
    "cites as evidence": 74, "qualifies": 70, "describes": 60,
    "obtains background from": 56, "critiques": 55, "includes excerpt from": 8,
    "obtains support from": 6, "uses data from": 5, "uses conclusions from": 4,
    "ridicules": 4, "extends": 1, "updates": 1, "refutes": 1,
}
SENTIMENT_TOTALS = {"neutral": 549, "negative": 300, "positive": 21}
SENTIMENT_2015 = {"negative": 25, "neutral": 20, "positive": 0}
SECTIONS = {
    "introduction": 166, "discussion": 61, "background": 36, "results": 28,
    "conclusions": 17, "method": 15, "abstract": 5,
    "first section": 120, "middle section": 220, "final section": 89,
    "none": 113,
}
TOTAL_CITATIONS = 870

KEYWORD_TITLES = {
    "introduction": ["Introduction"],
    "background": ["Background"],
    "method": ["Methods", "Materials and methods"],
    "results": ["Results", "Findings"],
    "discussion": ["Discussion"],
    "conclusions": ["Conclusions", "Conclusion"],
}
RESIDUAL_TITLES = {
    "first section": ["Vaccines and the public", "Overview", "The controversy in context",
                      "Case presentation", "Setting the scene"],
    "middle section": ["Media coverage", "Parental decision making", "Trust in science",
                       "Case series", "Policy implications", "Ethical considerations",
                       "Measles resurgence", "Regulatory response"],
    "final section": ["Concluding remarks", "Outlook", "Final thoughts",
                      "Implications for practice", "Summary"],
}

THEMES = {
    "vaccine": ["vaccine", "vaccination", "measles", "mumps", "rubella", "immunisation",
                "coverage", "uptake", "dose", "schedule", "safety", "adverse"],
    "autism": ["autism", "autistic", "spectrum", "diagnosis", "developmental", "children",
               "prevalence", "symptoms", "onset", "regression", "screening", "behaviour"],
    "bowel": ["bowel", "intestinal", "inflammation", "gut", "mucosa", "biopsy",
              "endoscopy", "enterocolitis", "gastrointestinal", "microbiota", "permeability",
              "digestive"],
    "media": ["media", "newspaper", "coverage", "journalists", "public", "controversy",
              "debate", "scare", "narrative", "television", "headlines", "audience"],
    "misconduct": ["fraud", "misconduct", "integrity", "ethics", "falsified", "scandal",
                   "investigation", "editors", "publication", "peer", "review", "trust"],
    "policy": ["policy", "mandates", "legislation", "exemptions", "school", "government",
               "campaign", "compliance", "refusal", "hesitancy", "parents", "community"],
    "epidemiology": ["cohort", "incidence", "risk", "population", "registry", "association",
                     "confidence", "interval", "study", "sample", "analysis", "outbreak"],
    "society": ["social", "movement", "culture", "identity", "activism", "online",
                "forums", "belief", "expertise", "knowledge", "risk", "science"],
}
THEME_FOR_AREA = {
    "medicine": ["vaccine", "epidemiology", "bowel"],
    "social sciences": ["media", "society", "policy"],
    "nursing": ["vaccine", "policy"],
    "psychology": ["autism", "society"],
    "neuroscience": ["autism"],
    "arts and humanities": ["society", "misconduct"],
    "immunology and microbiology": ["vaccine", "bowel"],
    "biochemistry, genetics and molecular biology": ["autism", "bowel"],
    "pharmacology, toxicology and pharmaceutics": ["vaccine", "misconduct"],
}

FILLER = [
    "The {a} of {b} has been examined in several settings.",
    "Further work on {a} and {b} is needed.",
    "Reports on {a} often mention {b}.",
    "Our data on {a} were collected over several years.",
    "Attention to {a} increased once {b} became a concern.",
    "Most of the {a} literature treats {b} as a secondary issue.",
    "Clinicians described {a} in terms of {b}.",
    "The relationship between {a} and {b} remains a topic of interest.",
]
ANCHOR_MENTION = [
    "The article linking {a} to {b}, since retracted, is still cited ({p}).",
    "The retracted report on {a} and {b} fuelled the debate ({p}).",
    "Claims about {a} were withdrawn when the journal retracted the article ({p}).",
    "Although retracted, the study of {a} shaped views on {b} ({p}).",
]
ANCHOR_PLAIN = [
    "A link between {a} and {b} was suggested ({p}).",
    "Earlier work described {a} in children with {b} ({p}).",
    "One case series proposed a role for {a} in {b} ({p}).",
    "The hypothesis on {a} and {b} drew wide attention ({p}).",
    "Concerns about {a} followed an early report ({p}).",
]


def issn_with_check(seven):
    s = sum(int(c) * (8 - i) for i, c in enumerate(seven))
    c = (11 - s % 11) % 11
    return seven[:4] + "-" + seven[4:] + ("X" if c == 10 else str(c))


def isbn13_with_check(twelve):
    s = sum(int(c) * (1 if i % 2 == 0 else 3) for i, c in enumerate(twelve))
    return twelve + str((10 - s % 10) % 10)


def period_of(year):
    for lo, hi, name in PERIODS:
        if lo <= year <= hi:
            return name
    raise ValueError(year)


def grid_priorities(data_dir):
    out = {}
    with open(os.path.join(data_dir, "decision_grid.csv"), newline="") as f:
        for row in csv.DictReader(f):
            inner = round(float(row["inner"]) * 10)
            out[row["function"]] = int(row["row"]) * 10 + int(row["column"]) * 10 + inner
    return out


class Entity:
    def __init__(self, doi, year):
        self.doi = doi
        self.year = year
        self.period = period_of(year)
        self.mentioning = False
        self.paywalled = False
        self.venue = None  # ("issn"|"isbn", id) or None
        self.venue_kind = "none"  # issn | isbn | issn-pending | isbn-pending | none
        self.source_title = ""
        self.areas = []
        self.categories = []
        self.isbn_route = None
        self.retracted = False
        self.citations = []  # dicts: section, intent, sentiment, mention
        self.structured = True
        self.numeric_pointer = None
        self.xml = False
        self.themes = []


def build(rng, data_dir):
    entities = []
    serial = 0
    for year, (n, _) in sorted(YEARS.items()):
        for _ in range(n):
            serial += 1
            entities.append(Entity("10.5555/cite.%d.%04d" % (year, serial), year))
    assert len(entities) == 615

    # Mentions and paywalls. Paywalled entities have no citations and so
    # cannot mention the retraction.
    by_year = {}
    for e in entities:
        by_year.setdefault(e.year, []).append(e)
    for year, group in by_year.items():
        for e in rng.sample(group, YEARS[year][1]):
            e.mentioning = True
    quiet_2015 = [e for e in by_year[2015] if not e.mentioning]
    for e in rng.sample(quiet_2015, PAYWALLED_2015):
        e.paywalled = True
    quiet = [e for e in entities if not e.mentioning and not e.paywalled and e.year != 2015]
    for e in rng.sample(quiet, PAYWALLED - PAYWALLED_2015):
        e.paywalled = True

    assign_venues(rng, entities)
    assign_citations(rng, entities, grid_priorities(data_dir))
    for e in entities:
        picks = [t for a in e.areas for t in THEME_FOR_AREA.get(a, [])]
        pool = picks or list(THEMES)
        e.themes = [rng.choice(pool), rng.choice(list(THEMES))]
        if e.mentioning or rng.random() < 0.2:
            e.themes.append("misconduct")
    return entities


def assign_venues(rng, entities):
    categories = {}
    for area, n in CATEGORIES_PER_AREA.items():
        names = [area + " (miscellaneous)"]
        names += ["%s subfield %02d" % (area, i) for i in range(1, n)]
        categories[area] = names
    counters = {a: 0 for a in AREAS}

    def next_category(area):
        names = categories[area]
        c = names[counters[area] % len(names)]
        counters[area] += 1
        return c

    for pi, (pname, plan) in enumerate(PERIOD_PLAN.items()):
        group = [e for e in entities if e.period == pname]
        rng.shuffle(group)
        n_unclassified = plan["no_id"] + plan["issn_pending"] + plan["isbn_pending"]
        assert len(group) == plan["classified"] + n_unclassified, pname
        it = iter(group)
        classified = [next(it) for _ in range(plan["classified"])]
        for _ in range(plan["no_id"]):
            next(it).venue_kind = "none"
        for _ in range(plan["issn_pending"]):
            next(it).venue_kind = "issn-pending"
        for _ in range(plan["isbn_pending"]):
            next(it).venue_kind = "isbn-pending"

        counts = {a: c[pi] for a, c in AREAS.items() if c[pi] > 0}
        # ISBN venues carry exactly one area.
        isbn_entities = classified[:plan["isbn"]]
        issn_entities = classified[plan["isbn"]:]
        singles = sorted(counts, key=lambda a: (-counts[a], a))
        for i, e in enumerate(isbn_entities):
            area = singles[i % 4]
            counts[area] -= 1
            e.venue_kind = "isbn"
            e.areas = [area]
            e.isbn_route = "area" if i % 2 == 0 else "category"
        multiset = [a for a in sorted(counts) for _ in range(counts[a])]
        n = len(issn_entities)
        assert len(multiset) >= n and max(counts.values()) <= n
        for i, a in enumerate(multiset):
            issn_entities[i % n].areas.append(a)
        for e in issn_entities:
            e.venue_kind = "issn"

    for e in entities:
        if e.venue_kind == "isbn":
            area = e.areas[0]
            if e.isbn_route == "area":
                e.categories = [area + " (miscellaneous)"]
            else:
                names = categories[area]
                e.categories = [names[1 + counters[area] % (len(names) - 1)]] if len(names) > 1 \
                    else [names[0]]
                counters[area] += 1
                if e.categories[0].endswith("(miscellaneous)"):
                    e.isbn_route = "area"
        elif e.venue_kind == "issn":
            e.categories = [next_category(a) for a in e.areas]

    # Identifiers and titles.
    issn_serial = 1000000
    isbn_serial = 0
    no_id = [e for e in entities if e.venue_kind == "none"]
    for e in no_id[:NO_ID_WITH_TITLE]:
        e.source_title = "Proceedings of the Vaccine Policy Forum %d" % e.year
    for e in entities:
        if e.venue_kind in ("issn", "issn-pending"):
            issn_serial += 7
            e.venue = ("issn", issn_with_check("%07d" % issn_serial))
            e.source_title = "Journal of Health Studies %d" % (issn_serial % 997)
        elif e.venue_kind in ("isbn", "isbn-pending"):
            isbn_serial += 1
            e.venue = ("isbn", isbn13_with_check("978555%06d" % isbn_serial))
            e.source_title = "Perspectives on Public Health, volume %d" % isbn_serial

    retracted = [e for e in entities if e.period == "P3" and e.venue_kind == "issn"]
    rng.choice(retracted).retracted = True


def assign_citations(rng, entities, priorities):
    full = [e for e in entities if not e.paywalled]
    assert len(full) == 593
    y2015 = [e for e in full if e.year == 2015]
    rest = [e for e in full if e.year != 2015]
    counts = {e.doi: 1 for e in full}
    counts[rng.choice(y2015).doi] += CITATIONS_2015 - len(y2015)
    extra = TOTAL_CITATIONS - sum(counts.values())
    while extra > 0:
        e = rng.choice(rest)
        if counts[e.doi] < 5:
            counts[e.doi] += 1
            extra -= 1

    # Unstructured documents hold exactly the `none` citations.
    rng.shuffle(rest)
    need = SECTIONS["none"]
    for e in rest:
        c = counts[e.doi]
        if need == 0:
            break
        if c <= need:
            e.structured = False
            need -= c
    assert need == 0

    slots = [k for k, n in SECTIONS.items() if k not in ("none", "abstract") for _ in range(n)]
    rng.shuffle(slots)
    structured = [e for e in full if e.structured]
    abstract_docs = set(e.doi for e in rng.sample(structured, SECTIONS["abstract"]))
    for e in full:
        kinds = []
        n = counts[e.doi]
        if not e.structured:
            kinds = ["none"] * n
        else:
            if e.doi in abstract_docs:
                kinds.append("abstract")
            while len(kinds) < n:
                kinds.append(slots.pop())
        e.citations = [{"section": k} for k in kinds]
    assert not slots

    # Intent/sentiment pairs: strongly negative intents are negative; the
    # rest of the negatives and all positives come from the other intents.
    negative_intents = {"disputes", "critiques", "ridicules", "refutes"}
    positive_pool = {"credits", "obtains support from", "uses data from",
                     "uses conclusions from", "extends", "cites as evidence"}
    pairs = []
    for intent, n in INTENTS.items():
        pairs += [[intent, "negative" if intent in negative_intents else None] for _ in range(n)]
    assert len(pairs) == TOTAL_CITATIONS
    open_pairs = [p for p in pairs if p[1] is None]
    rng.shuffle(open_pairs)
    positives = [p for p in open_pairs if p[0] in positive_pool][:SENTIMENT_TOTALS["positive"]]
    for p in positives:
        p[1] = "positive"
    remaining_neg = SENTIMENT_TOTALS["negative"] - sum(1 for p in pairs if p[1] == "negative")
    for p in [p for p in open_pairs if p[1] is None][:remaining_neg]:
        p[1] = "negative"
    for p in pairs:
        if p[1] is None:
            p[1] = "neutral"

    neg = [p for p in pairs if p[1] == "negative"]
    neu = [p for p in pairs if p[1] == "neutral"]
    pos = [p for p in pairs if p[1] == "positive"]
    rng.shuffle(neg)
    rng.shuffle(neu)
    take_2015 = neg[:SENTIMENT_2015["negative"]] + neu[:SENTIMENT_2015["neutral"]]
    others = neg[SENTIMENT_2015["negative"]:] + neu[SENTIMENT_2015["neutral"]:] + pos
    rng.shuffle(take_2015)
    rng.shuffle(others)
    for e in full:
        pool = take_2015 if e.year == 2015 else others
        for c in e.citations:
            c["intent"], c["sentiment"] = pool.pop()
    assert not take_2015 and not others

    by_priority = sorted(priorities, key=lambda f: priorities[f])
    for e in full:
        for c in e.citations:
            c["mention"] = False
            lower = [f for f in by_priority if priorities[f] > priorities[c["intent"]]]
            c["candidates"] = [c["intent"]]
            if lower and rng.random() < 0.3:
                c["candidates"].append(rng.choice(lower))
                rng.shuffle(c["candidates"])
        if e.mentioning:
            chosen = rng.sample(e.citations, rng.randint(1, len(e.citations)))
            for c in chosen:
                c["mention"] = True

    numeric = rng.sample(full, 80)
    for e in numeric:
        e.numeric_pointer = "[%d]" % rng.randint(1, 60)
    for e in rng.sample(full, 60):
        e.xml = True
    for e in entities:
        if e.paywalled and rng.random() < 0.3:
            e.xml = True


# ----------------------------------------------------------------------------
# Text rendering


def words(rng, e, n=2):
    pool = [w for t in e.themes for w in THEMES[t]]
    return [rng.choice(pool) for _ in range(n)]


def filler(rng, e):
    a, b = words(rng, e)
    return rng.choice(FILLER).format(a=a, b=b)


def anchor(rng, e, mention):
    a, b = words(rng, e)
    p = e.numeric_pointer if e.numeric_pointer else POINTER
    template = rng.choice(ANCHOR_MENTION if mention else ANCHOR_PLAIN)
    text = template.format(a=a, b=b, p=p)
    if e.numeric_pointer:
        text = text.replace("(" + p + ")", p)
    return text


def abstract_text(rng, e, citation=None):
    sentences = []
    for i in range(rng.randint(4, 6)):
        a, b, c = words(rng, e, 3)
        sentences.append(rng.choice([
            "This study examines {a} and {b} among {c} groups.",
            "We analysed {a} in relation to {b}.",
            "Findings on {a} suggest a role for {b} and {c}.",
            "The {a} debate shaped attitudes toward {b}.",
            "We review {a}, {b} and {c} in recent literature.",
        ]).format(a=a, b=b, c=c))
    if any(t == "misconduct" for t in e.themes) and e.mentioning:
        sentences.append("We also discuss how retraction affected the {a} literature.".format(
            a=words(rng, e, 1)[0]))
    if citation is not None:
        sentences.insert(2, anchor(rng, e, citation["mention"]))
    return sentences


def section_block(rng, e, cites):
    """Sentences of one section: fillers with anchors at least two apart."""
    out = [filler(rng, e)]
    for c in cites:
        out.append(anchor(rng, e, c["mention"]))
        out.append(filler(rng, e))
        out.append(filler(rng, e))
    return out


def layout(rng, e):
    """Ordered (title, citations) pairs; citation order follows the text."""
    body = [c for c in e.citations if c["section"] != "abstract"]
    need = {}
    for c in body:
        need.setdefault(c["section"], []).append(c)
    first = need.pop("first section", None)
    final = need.pop("final section", None)
    middle_residual = need.pop("middle section", None)
    sections = []
    if first:
        sections.append((rng.choice(RESIDUAL_TITLES["first section"]), first))
    else:
        sections.append(("Introduction", need.pop("introduction", [])))
    order = ["introduction", "background", "method", "results", "discussion"]
    for k in order:
        if k in need:
            sections.append((rng.choice(KEYWORD_TITLES[k]), need.pop(k)))
    if middle_residual:
        sections.append((rng.choice(RESIDUAL_TITLES["middle section"]), middle_residual))
    if "conclusions" in need:
        concl = need.pop("conclusions")
        if final:
            sections.append((rng.choice(KEYWORD_TITLES["conclusions"]), concl))
        else:
            sections.append((rng.choice(KEYWORD_TITLES["conclusions"]), concl))
    if final:
        if len(sections) == 1 and first is None and not sections[0][1]:
            pass
        sections.append((rng.choice(RESIDUAL_TITLES["final section"]), final))
    elif not sections[-1][0] in sum(KEYWORD_TITLES.values(), []):
        sections.append(("Conclusions", []))
    if len(sections) == 1:
        sections.append(("Conclusions", []))
    if middle_residual:
        # the residual middle section must sit strictly inside
        idx = [i for i, s in enumerate(sections) if s[1] is middle_residual][0]
        assert 0 < idx < len(sections) - 1
    assert not need, need
    return sections


def render(rng, e):
    """Returns (filename, text, ordered citations)."""
    abstract_cite = next((c for c in e.citations if c["section"] == "abstract"), None)
    abstract = abstract_text(rng, e, abstract_cite)
    ordered = [abstract_cite] if abstract_cite else []
    stem = e.doi.replace("/", "_")
    if e.paywalled:
        if e.xml:
            return stem + ".xml", xml_doc(e, abstract, None, None), []
        return stem + ".txt", "@doi %s\n@abstract\n%s\n" % (e.doi, " ".join(abstract)), []
    if not e.structured:
        paragraphs = []
        sentences = section_block(rng, e, e.citations)
        ordered += e.citations
        for i in range(0, len(sentences), 4):
            paragraphs.append(" ".join(sentences[i:i + 4]))
        if e.xml:
            return stem + ".xml", xml_doc(e, abstract, None, paragraphs), ordered
        text = "@doi %s\n@abstract\n%s\n@body\n%s\n" % (
            e.doi, " ".join(abstract), "\n\n".join(paragraphs))
        return stem + ".txt", text, ordered
    sections = []
    for title, cites in layout(rng, e):
        sentences = section_block(rng, e, cites)
        ordered += cites
        sections.append((title, [" ".join(sentences[i:i + 4]) for i in range(0, len(sentences), 4)]))
    if e.xml:
        return stem + ".xml", xml_doc(e, abstract, sections, None), ordered
    parts = ["@doi %s" % e.doi, "@abstract", " ".join(abstract)]
    for title, paragraphs in sections:
        parts.append("@section " + title)
        parts.append("\n\n".join(paragraphs))
    return stem + ".txt", "\n".join(parts) + "\n", ordered


def xml_doc(e, abstract, sections, flat):
    out = ['<?xml version="1.0" encoding="UTF-8"?>', "<article>", "<front>",
           "<article-id pub-id-type=\"doi\">%s</article-id>" % e.doi,
           "<abstract><p>%s</p></abstract>" % " ".join(abstract), "</front>"]
    if sections is not None:
        out.append("<body>")
        for title, paragraphs in sections:
            out.append("<sec><title>%s</title>" % title)
            out += ["<p>%s</p>" % p for p in paragraphs]
            out.append("</sec>")
        out.append("</body>")
    elif flat is not None:
        out.append("<body>")
        out += ["<p>%s</p>" % p for p in flat]
        out.append("</body>")
    out.append("</article>")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# Writers


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)


def exchange(target, body):
    return json.dumps({"request": {"method": "GET", "target": target},
                       "response": {"status": 200, "body": body}}, sort_keys=True)


def write_fixture(out, rng, entities, all_entities):
    if os.path.exists(out):
        shutil.rmtree(out)
    os.makedirs(out)

    dates = {}
    for e in entities:
        dates[e.doi] = "%d-%02d-%02d" % (e.year, rng.randint(1, 12), rng.randint(1, 28))
    records = [{"oci": "0200-%d" % i, "citing": e.doi, "cited": SEED_DOI,
                "creation": dates[e.doi], "timespan": "", "journal_sc": "no",
                "author_sc": "no"} for i, e in enumerate(entities)]
    if entities:
        dup = dict(records[len(records) // 2])
        dup["oci"] = "0200-dup"
        dup["creation"] = "%d-12-31" % int(dup["creation"][:4])
        records.insert(1, dup)
    lines = [exchange("/citations/" + SEED_DOI, records)]
    order = sorted(entities, key=lambda e: (dates[e.doi], e.doi))
    for i in range(0, len(order), 10):
        batch = order[i:i + 10]
        body = []
        for e in batch:
            meta = {"doi": e.doi, "year": str(e.year), "title": title_of(e),
                    "source_id": "", "source_title": e.source_title}
            if e.venue:
                meta["source_id"] = "%s:%s" % e.venue
            body.append(meta)
        lines.append(exchange("/metadata/" + "__".join(e.doi for e in batch), body))
    write(os.path.join(out, "coci.ndjson"), "\n".join(lines) + "\n")

    rw = [["10.1016/s0140-6736(97)11096-0", "yes", "partial retraction 2004; full retraction 2010"]]
    for e in entities:
        if e.retracted:
            rw.append([e.doi, "no", ""])
            rw.append([e.doi.upper(), "yes", "retraction"])
    rw.append(["10.5555/unrelated.0001", "yes", "retraction"])
    write(os.path.join(out, "retraction_watch.csv"), csv_text(["doi", "retracted", "nature"], rw))

    write_tables(os.path.join(out, "tables"), entities, all_entities)

    texts = os.path.join(out, "texts")
    os.makedirs(texts)
    patterns = [["*", POINTER, "literal"]]
    citations_by_doi = {}
    for e in entities:
        name, text, ordered = render(rng, e)
        write(os.path.join(texts, name), text)
        citations_by_doi[e.doi] = ordered
        if e.numeric_pointer:
            patterns.append([e.doi, e.numeric_pointer, "literal"])
    write(os.path.join(out, "patterns.csv"), csv_text(["doi", "pattern", "kind"], patterns))

    log = []
    for e in sorted(entities, key=lambda e: e.doi):
        for idx, c in enumerate(citations_by_doi[e.doi]):
            base = {"doi": e.doi, "pointer_index": idx, "annotator": "fixture"}
            if rng.random() < 0.05:
                log.append(dict(base, version=1, candidates=c["candidates"], intent=c["intent"],
                                sentiment=None, retraction_mentioned=None))
                log.append(dict(base, version=2, candidates=[], intent=None,
                                sentiment=c["sentiment"], retraction_mentioned=c["mention"]))
            else:
                log.append(dict(base, version=1, candidates=c["candidates"], intent=c["intent"],
                                sentiment=c["sentiment"], retraction_mentioned=c["mention"]))
    write(os.path.join(out, "annotations.jsonl"),
          "".join(json.dumps(r, sort_keys=True) + "\n" for r in log))

    expected = expected_totals(entities, citations_by_doi)
    write(os.path.join(out, "expected.json"), json.dumps(expected, indent=2, sort_keys=True) + "\n")
    return expected


def title_of(e):
    t = " and ".join(THEMES[x][0] for x in e.themes[:2])
    return "%s, revisited: a study from %d" % (t.capitalize(), e.year)


def write_tables(out, entities, all_entities):
    journals = []
    disciplines = []
    isbn_lcc = []
    areas_rows = [[a, a] for a in sorted(AREAS)]
    cat_rows = []
    for area, n in CATEGORIES_PER_AREA.items():
        for i in range(1, n):
            name = "%s subfield %02d" % (area, i)
            cat_rows.append([name, name, area])
    prefix_iter = iter("%s%s" % (x, y) for x in "ABCDEFGHJKLMNPQRSTVZ" for y in "ABCDEFGHJKLMNPQRSTVWXYZ")
    prefix_of = {}

    def prefix(discipline):
        if discipline not in prefix_of:
            prefix_of[discipline] = next(prefix_iter)
            disciplines.append([prefix_of[discipline], discipline])
        return prefix_of[discipline]

    # Tables cover every entity of the full corpus so the mini fixture sees
    # the same classification.
    tie_label = "public health and society"
    areas_rows += [[tie_label, "medicine"], [tie_label, "social sciences"]]
    pending_isbn = 0
    for e in all_entities:
        if e.venue_kind == "issn":
            journals.append([e.venue[1], ";".join(e.areas), ";".join(e.categories)])
        elif e.venue_kind == "isbn":
            label = e.areas[0] if e.isbn_route == "area" else e.categories[0]
            isbn_lcc.append([e.venue[1], "%s%d.5" % (prefix(label), 100 + len(isbn_lcc))])
        elif e.venue_kind == "isbn-pending":
            pending_isbn += 1
            kind = pending_isbn % 3
            if kind == 0:
                isbn_lcc.append([e.venue[1], "%s%d" % (prefix(tie_label), 300 + pending_isbn)])
            elif kind == 1:
                isbn_lcc.append([e.venue[1], "ZZ%d" % (400 + pending_isbn)])
            # kind 2: ISBN absent from the LCC snapshot
    write(os.path.join(out, "scimago_journals.csv"),
          csv_text(["issn", "areas", "categories"], sorted(journals)))
    write(os.path.join(out, "lcc_disciplines.csv"), csv_text(["prefix", "discipline"], disciplines))
    write(os.path.join(out, "scimago_areas.csv"), csv_text(["label", "area"], areas_rows))
    write(os.path.join(out, "scimago_categories.csv"),
          csv_text(["label", "category", "parent_area"], cat_rows))
    write(os.path.join(out, "isbn_lcc.csv"), csv_text(["isbn", "lcc"], sorted(isbn_lcc)))


def expected_totals(entities, citations_by_doi):
    cites = [c for e in entities for c in citations_by_doi[e.doi]]
    tally = lambda key: {k: sum(1 for c in cites if c[key] == k) for k in sorted(set(c[key] for c in cites))}
    area_hist = {}
    for e in entities:
        for a in e.areas:
            area_hist[a] = area_hist.get(a, 0) + 1
    return {
        "entities": len(entities),
        "mentioning": sum(e.mentioning for e in entities),
        "citations": len(cites),
        "sentiment": tally("sentiment"),
        "intent": tally("intent"),
        "section": tally("section"),
        "with_source_id": sum(e.venue is not None for e in entities),
        "with_source_title": sum(bool(e.source_title) for e in entities),
        "classified": sum(bool(e.areas) for e in entities),
        "areas": area_hist,
        "categories": len(set(c for e in entities for c in e.categories)),
        "retracted": sum(e.retracted for e in entities),
        "paywalled": sum(e.paywalled for e in entities),
    }


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    data_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(root, "data")
    rng = random.Random(19980228)
    entities = build(rng, data_dir)
    expected = write_fixture(os.path.join(data_dir, "fixture"), random.Random(7), entities, entities)
    assert expected["entities"] == 615 and expected["citations"] == 870, expected
    assert expected["mentioning"] == 151
    assert expected["sentiment"] == {"negative": 300, "neutral": 549, "positive": 21}
    assert expected["intent"] == dict(sorted(INTENTS.items()))
    assert expected["with_source_id"] == 599 and expected["with_source_title"] == 603
    assert expected["classified"] == 576 and len(expected["areas"]) == 24
    assert expected["categories"] == 170, expected["categories"]
    assert expected["retracted"] == 1 and expected["paywalled"] == 22

    # Mini fixture: a handful of entities covering every code path.
    pick = []
    want = [lambda e: e.paywalled, lambda e: not e.structured, lambda e: e.xml and not e.paywalled,
            lambda e: e.venue_kind == "isbn", lambda e: e.venue_kind == "isbn-pending",
            lambda e: e.venue_kind == "none", lambda e: e.mentioning,
            lambda e: e.numeric_pointer is not None,
            lambda e: any(c["section"] == "abstract" for c in e.citations)]
    for cond in want:
        pick.append(next(e for e in entities if cond(e) and e not in pick))
    for year in (1999, 2006, 2013, 2016):
        pick += [e for e in entities if e.year == year and e not in pick][:4]
    pick.sort(key=lambda e: e.doi)
    write_fixture(os.path.join(data_dir, "mini"), random.Random(11), pick, entities)
    write(os.path.join(data_dir, "mini", "pipeline.json"), json.dumps({
        "seed_doi": SEED_DOI,
        "endpoint": "coci.ndjson",
        "retraction_db": "retraction_watch.csv",
        "tables_dir": "tables",
        "texts_dir": "texts",
        "patterns": "patterns.csv",
        "annotation_store": "annotations.jsonl",
        "periods": [1998, 2004, 2010, 2017],
        "model": {"field": "abstract", "k": 3, "seed": 1, "passes": 50, "lambda": 0.6},
        "mtm": {"groupings": ["period", "year", "area"], "area_top_n": 10},
        "output_dir": "out",
    }, indent=2) + "\n")
    print("fixture: %d entities, %d citations" % (expected["entities"], expected["citations"]))


if __name__ == "__main__":
    main()
