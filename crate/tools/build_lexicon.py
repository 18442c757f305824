#!/usr/bin/env python3
"""Build the bundled lexicon fixtures from the corpus and hand-tagged vocabulary.

Reads  crates/core/lexicon/corpus.txt and the fixture documents, then emits:
  crates/core/lexicon/pos.tsv            word<TAB>tag for every content word
  crates/core/lexicon/unigrams.tsv       corpus word counts
  crates/core/lexicon/bigrams.tsv        corpus adjacent-word-pair counts
  crates/core/lexicon/replacements.jsonl replacement candidate sets

Also validates the statistical invariants the detector tests rely on:
every adjective-noun / adverb-verb collocation used in fixtures/real.txt is
frequent in the corpus, and every replacement candidate for a collocated noun
never follows that adjective in the corpus (so substitution creates a
zero-count pair) while staying frequent enough as a unigram.
"""

import json
import re
import sys
from collections import Counter
from datetime import date
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
CORE = ROOT / "crates" / "core"

# ---------------------------------------------------------------- tokenizer
# Mirrors the Rust scanner: date patterns before numbers, numbers with
# optional thousands separators and decimal part, words with apostrophes,
# everything else single-char punctuation.

WORD_RE = re.compile(r"[A-Za-z]+(?:['’][A-Za-z]+)*")
NUMBER_RE = re.compile(r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?")
DATE_ISO_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
DATE_SLASH_RE = re.compile(r"\d{1,2}/\d{1,2}/\d{4}")
DATE_MONTH_RE = re.compile(
    r"(?:January|February|March|April|May|June|July|August|September|October"
    r"|November|December|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)"
    r"\.? \d{1,2}, \d{4}"
)


def _valid_date(kind, text):
    try:
        if kind == "iso":
            y, m, d = text.split("-")
            date(int(y), int(m), int(d))
            return True
        if kind == "slash":
            a, b, y = text.split("/")
            a, b, y = int(a), int(b), int(y)
            ok = False
            try:
                date(y, b, a)
                ok = True
            except ValueError:
                pass
            try:
                date(y, a, b)
                ok = True
            except ValueError:
                pass
            return ok
        return True  # month-name pattern checked loosely; day range is enough
    except ValueError:
        return False


def tokenize(text):
    """Yield (surface, cls) with cls in WORD | NUMBER | DATE | PUNCT | BREAK.

    BREAK marks sentence ends so bigram extraction can mirror the Rust
    detector's within-sentence adjacency.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        matched = False
        for kind, rex in (("iso", DATE_ISO_RE), ("slash", DATE_SLASH_RE), ("month", DATE_MONTH_RE)):
            m = rex.match(text, i)
            if m and not (m.end() < n and text[m.end()].isdigit()) and _valid_date(kind, m.group()):
                out.append((m.group(), "DATE"))
                i = m.end()
                matched = True
                break
        if matched:
            continue
        m = NUMBER_RE.match(text, i)
        if m and not (m.end() < n and text[m.end()].isdigit()):
            out.append((m.group(), "NUMBER"))
            i = m.end()
            continue
        m = WORD_RE.match(text, i)
        if m:
            out.append((m.group(), "WORD"))
            i = m.end()
            continue
        out.append((ch, "PUNCT"))
        if ch in ".!?" and (i + 1 >= n or text[i + 1].isspace()):
            out.append(("", "BREAK"))
        i += 1
    out.append(("", "BREAK"))
    return out


# ------------------------------------------------------------ function words
# Must match FUNCTION_WORDS in crates/core/src/text/pos.rs.

FUNCTION_WORDS = {
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "no", "each", "every",
    "either", "neither", "both", "all", "most", "few", "several", "such", "i", "you", "he", "she",
    "it", "we", "they", "me", "him", "her", "us", "them", "my", "your", "his", "its", "our",
    "their", "mine", "yours", "hers", "ours", "theirs", "myself", "yourself", "himself",
    "herself", "itself", "ourselves", "themselves", "who", "whom", "whose", "which", "what",
    "where", "when", "why", "how", "of", "in", "on", "at", "by", "for", "with", "about",
    "against", "between", "among", "into", "through", "during", "before", "after", "above",
    "below", "to", "from", "up", "down", "over", "under", "again", "further", "then", "once",
    "here", "there", "and", "but", "or", "nor", "so", "yet", "if", "because", "as", "until",
    "while", "although", "though", "unless", "since", "whether", "not", "only", "than", "too",
    "very", "just", "also", "now", "be", "am", "is", "are", "was", "were", "been", "being",
    "have", "has", "had", "having", "do", "does", "did", "doing", "will", "would", "shall",
    "should", "can", "could", "may", "might", "must", "ought", "there's", "it's", "don't",
    "doesn't", "didn't", "isn't", "aren't", "wasn't", "weren't", "won't", "wouldn't", "can't",
    "couldn't", "shouldn't", "per",
}

# ------------------------------------------------------------------ POS tags
# One tag per surface form, the most frequent reading in the fixture texts.

NOUNS = """
abstract account accounts agents alarm alder anchor anchorage approaches arrival arrivals
assignments association auction auctions authority autumn awning backlog baggage balance
bale bales ballast bar barrels basin bathing bay beach beacon beds bell berth berths bethel
bidding board boarding bolts bond bonds book books boom box briquettes brokers bulletin
bulletins business candles cargo carters case casks catch caution cellars chain chains
channel chaplain claim class clerks cloth coal coasters collection collector colliers
commission commissioners company complaint consignment consignments contract contracts
change cordage cost count court cover crane cranes crates creek crew crews crossings crown
current customs cut damage dark day days dealers delivery demand depth desks dinner dispute
districts dockhands drainage dredger dredging drift dues dusk dust duty dye edge effect elevators
end engine error estuary evening exchange exports fairs farms fee fees feet ferry fever fine
fire fish fishery fleet flood floor flour fortnight fund gale garrison gate gates gauges
glass grain grounds hall hand harbor head health height hides hills hour hours houses hulk
hundred hundredweight ice imports inspection insurance insurers interruption inventory
invoices iron isles jetty jib keels keepers kettles labor lamp lamps lantern lazarette leaf
ledger ledgers levy life light lime line link load loan locker lofts logkeeping loss mail
maintenance makers manifest manifests mark market marks mason master masters merchants
mildew month moon morning mouth movement movements nails night nightfall nights noon notice
number numbers october offenders officer officers offices oil order overflow overtime oyster
packet pans paperwork papers parcel parcels passenger passengers passes pence penny pier
pilot pilotage pilots pitch plan point pork port porters ports pounds powder price prices
privileges proceeds produce protest pumps quarter quarters quay quays rafters rainfall rate
rates readings receipts record records register relief remainder remark remarks repairs rest
returns revenue review rigging rise road roadstead roof room rope rounds routes rust sack
sacks sail sailings sale salt scaffold scale schedule schooner season seasons seam seamen
service shackle shed sheds shellfish shifts shilling shillings shingle shoaling shore
shortfall side silk sitting smell smiths smoking soundings space speed spring stalls stacks
stock stone storage store storm storms subscription sugar summer surcharge surplus survey
surveyors swell tally tannery tar tariff tarpaulins tea tenths terms tide tides timber time
timetable toll ton tonnage tons total totals town trade traffic treasurer treasury turning
valley vessel vessels voyage voyages wage wagon wagons walk wall warehouse water waterline
wave weather week weeks weights wharf wick widows wind winter witnesses wool work works
wreck year yards
""".split()

POSSESSIVE_NOUNS = [
    "quarter's", "seamen's", "season's", "mason's", "collector's",
]

VERBS = """
abolished added adjourned advise alarmed allowing answer approved argued ask asks assigned
auctioned backed banked begins bends bid blamed boarded booked brought bundled buoyed burned
called calls came carried carries certified charged cleared close closed collected
complained conducted confirmed counted crowd crowded declare declined delayed did discharged
disrupted doubled drafted dredged drew drifted drove ended ending entered examined expected
faded fell filed filled fined flooded follow followed follows fouled forfeit forged found
gained gave goes granted guided handled hauled heard held hidden holds improved involved
judged keep kept landed leaving let lifted list lists lit logged lost made measured met
moored move moved noted observed occupied opened ordered parted passed patrol paid
petitioned pleaded posted praised predict predicted produced protested published pumped put
raised ran read received recorded recovered refloated remain renewed rendered reopened
replaced report reported requires reroofed returned reviewed rose ruined ruled runs sailed
sails seized sealed sells sent set sets settled share shifted shipped show showed shown
shows signed silted slowed sold speak spoils stacked standing stands stood swept taken takes
tallied thanked took uncovered undersold vacated verified visited wait waited waived weighed
welcomed weeping went withdrew wintering worked
""".split()

ADJS = """
bonded brisk broad busy calm canvas central clear coasting cold condemned consolidated
copper covered cracked curing customary damaged deep deeper deepest double dry early east
eastern empty extra fair far firm first fishing following forbidden foreign fresh full good
half heavy idle imported inward largest last late leading level little local long low lower
middle mild modest narrow new next ninth north northern old open outer outward poor previous
quarterly quiet rare reduced registered remaining rising rough safe salted same seasonal
second senior seventh sound southern spare spoiled steady third twelfth unchanged unclaimed
undeclared upcountry upper used west western wet whaling whole wide wider woolen
""".split()

ADVS = """
abroad alone already aside ashore away back carefully daily however instead nearly quickly
rarely roughly sharply slack slowly soon southerly steadily still together twice weekly
""".split()

EXTRA_FUNCTION = """
save via across along behind beneath despite near off onto out past within without
everything inside one two three nine twelve forty
""".split()

POS_OVERRIDES = {
    # words whose dominant fixture reading differs from the bulk lists
    "ashore": "adv",
    "brisk": "adj",
    "daily": "adv",
    "firm": "adj",
    "sound": "adj",
    "nothing": "noun",
    "slack": "adj",
}

# ------------------------------------------------------- replacement pools
# Candidates are corpus nouns. For nouns that appear after an adjective in
# fixtures/real.txt, the validator asserts the candidate never follows that
# adjective in the corpus and is frequent enough to raise pair suspicion.

POOLS = {
    "demand": ["tonnage", "paperwork", "storage"],
    "cargo": ["rope", "cordage", "flour"],
    "vessels": ["barrels", "crates", "parcels"],
    "surplus": ["auction", "voyage", "storm"],
    "inspection": ["tide", "survey", "storm"],
    "rainfall": ["grain", "wool", "coal"],
    "merchants": ["pilots", "brokers", "dockhands"],
    "produce": ["salt", "grain", "flour"],
    "channel": ["basin", "jetty", "quay"],
    "clerks": ["porters", "surveyors", "watchmen"],
    "harbor": ["estuary", "basin", "anchorage"],
    "quay": ["jetty", "pier", "basin"],
    "tide": ["current", "morning", "evening"],
    "timber": ["grain", "coal", "wool"],
    "grain": ["wool", "coal", "salt"],
    "wool": ["grain", "coal", "salt"],
    "coal": ["grain", "wool", "salt"],
    "warehouse": ["shed", "exchange", "hall"],
    "auction": ["sale", "exchange", "market"],
    "paperwork": ["ledgers", "manifests", "books"],
    "voyages": ["sailings", "routes", "rounds"],
    "consignments": ["parcels", "sacks", "crates"],
    "crates": ["barrels", "parcels", "sacks"],
    "barrels": ["crates", "sacks", "bales"],
    "quarter": ["season", "month", "year"],
    "berth": ["anchorage", "basin", "jetty"],
    "treasury": ["exchange", "authority", "fund"],
    "trade": ["business", "market"],
    "brokers": ["dealers", "masters", "pilots"],
    "pilots": ["masters", "watchmen", "surveyors"],
    "totals": ["receipts", "proceeds", "accounts"],
    "duty": ["levy", "fee", "surcharge"],
    "tariff": ["levy", "fee", "surcharge"],
    "authority": ["court", "commission", "exchange"],
    "master": ["collector", "treasurer", "chaplain"],
    "contract": ["subscription", "schedule"],
    "loan": ["fund", "levy", "fee"],
    "treasurer": ["collector", "chaplain", "master"],
    "surveyors": ["smiths", "porters", "watchmen"],
    "exports": ["imports", "receipts", "totals"],
    "imports": ["exports", "receipts", "totals"],
    "revenue": ["receipts", "proceeds", "totals"],
}

# Relations: near-synonyms first, the rest associated; no antonyms for the
# domain pools. The "addition" entry reproduces a thesaurus-style set.
SYNONYM_HINTS = {
    "quay": ["jetty", "pier"],
    "harbor": ["anchorage"],
    "berth": ["anchorage"],
    "duty": ["levy", "fee"],
    "tariff": ["levy", "fee"],
    "totals": ["accounts"],
    "auction": ["sale"],
    "trade": ["business"],
    "brokers": ["dealers"],
    "voyages": ["sailings"],
    "consignments": ["parcels"],
    "revenue": ["receipts", "proceeds"],
}

ADDITION_ENTRY = {
    "word": "addition",
    "synonyms": ["extension", "inclusion", "enlargement", "annexation", "augmentation"],
    "antonyms": ["decrease", "lessening", "loss", "reduction", "shrinkage"],
    "associated": ["moreover"],
}

QUOTA_PAIRS = [
    ("steady", "demand"), ("seasonal", "cargo"), ("foreign", "vessels"),
    ("modest", "surplus"), ("careful", "inspection"), ("heavy", "rainfall"),
    ("local", "merchants"), ("fresh", "produce"), ("narrow", "channel"),
    ("senior", "clerks"), ("slowly", "recovered"), ("steadily", "increased"),
    ("carefully", "recorded"), ("sharply", "declined"),
]

BENFORD = {d: __import__("math").log10(1 + 1 / d) for d in range(1, 10)}


def build_pos_dict():
    tags = {}
    for words, tag in ((NOUNS, "noun"), (VERBS, "verb"), (ADJS, "adj"), (ADVS, "adv")):
        for w in words:
            if w in POS_OVERRIDES:
                continue
            if w in tags and tags[w] != tag:
                sys.exit(f"pos dict: {w} listed as both {tags[w]} and {tag}")
            tags[w] = tag
    for w, t in POS_OVERRIDES.items():
        tags[w] = t
    for w in POSSESSIVE_NOUNS:
        tags[w] = "noun"
    for w in EXTRA_FUNCTION:
        tags[w] = "function"
    # extra tagged vocabulary used by real.txt / bank.txt only
    extras = {
        "careful": "adj", "increased": "verb", "recovered": "verb", "declined": "verb",
        "watchmen": "noun", "gaugers": "noun", "invoices": "noun",
    }
    for w, t in extras.items():
        tags.setdefault(w, t)
    return tags


def words_of(tokens):
    return [s.lower() for s, c in tokens if c == "WORD"]


def sentence_word_runs(tokens):
    """Runs of consecutive WORD tokens: any other token breaks adjacency."""
    run = []
    for s, c in tokens:
        if c == "WORD":
            run.append(s.lower())
        else:
            if run:
                yield run
            run = []
    if run:
        yield run


def first_digit(surface):
    for ch in surface:
        if ch.isdigit() and ch != "0":
            return int(ch)
    return None


def benford_score(tokens):
    digits = [first_digit(s) for s, c in tokens if c == "NUMBER"]
    digits = [d for d in digits if d is not None]
    if not digits:
        return None, 0
    return sum(BENFORD[d] for d in digits) / len(digits), len(digits)


def main():
    corpus = (CORE / "lexicon" / "corpus.txt").read_text()
    real = (CORE / "fixtures" / "real.txt").read_text()
    real_benford = (CORE / "fixtures" / "real_benford.txt").read_text()
    bank_raw = (CORE / "fixtures" / "bank.txt").read_text()
    bank = "\n".join(line[2:].lstrip() if line.startswith("S:") else line
                     for line in bank_raw.splitlines())

    pos = build_pos_dict()
    errors = []

    # vocabulary coverage
    for name, text in (("corpus", corpus), ("real", real),
                       ("real_benford", real_benford), ("bank", bank)):
        missing = sorted({
            w for w in words_of(tokenize(text))
            if w not in FUNCTION_WORDS and w not in pos
        })
        if missing:
            errors.append(f"{name}: untagged words: {' '.join(missing)}")

    # frequency tables from the corpus only
    ctok = tokenize(corpus)
    unigrams = Counter(words_of(ctok))
    bigrams = Counter()
    for run in sentence_word_runs(ctok):
        for a, b in zip(run, run[1:]):
            bigrams[(a, b)] += 1

    # quota collocations must be corpus-frequent
    for a, b in QUOTA_PAIRS:
        c = bigrams[(a, b)]
        if c < 5:
            errors.append(f"quota pair '{a} {b}' appears {c} times in corpus, need >= 5")

    # real.txt scored pairs and their corpus statistics
    rtok = tokenize(real)
    pairs = []
    for run in sentence_word_runs(rtok):
        tags = [pos.get(w, "function" if w in FUNCTION_WORDS else "other") for w in run]
        for i in range(len(run) - 1):
            kind = None
            if tags[i] == "adj" and tags[i + 1] == "noun":
                kind = "adj-noun"
            elif tags[i] == "adv" and tags[i + 1] == "verb":
                kind = "adv-verb"
            if kind:
                a, b = run[i], run[i + 1]
                cnt = bigrams[(a, b)]
                susp = unigrams[a] * unigrams[b] / (cnt + 1)
                pairs.append((kind, a, b, cnt, unigrams[a], unigrams[b], susp))

    print("real.txt scored pairs (kind, pair, corpus bigram, f1, f2, suspicion):")
    for kind, a, b, cnt, f1, f2, susp in pairs:
        flag = ""
        if cnt < 5 and susp > 60:
            flag = "  <-- unexpected suspicious pair"
            errors.append(f"real.txt pair '{a} {b}' bigram={cnt} suspicion={susp:.0f}")
        print(f"  {kind:9s} {a} {b}: bigram={cnt} f=({f1},{f2}) susp={susp:.1f}{flag}")
    if pairs:
        mean = sum(p[-1] for p in pairs) / len(pairs)
        print(f"real.txt mean pair suspicion: {mean:.2f} over {len(pairs)} pairs")

    # candidate validity for collocated nouns
    adjectives_before = {}
    for kind, a, b, cnt, _, _, _ in pairs:
        if kind == "adj-noun":
            adjectives_before.setdefault(b, set()).add(a)
    for noun, cands in POOLS.items():
        for c in cands:
            if unigrams[c] == 0:
                errors.append(f"candidate '{c}' (for {noun}) absent from corpus")
            if pos.get(c) != "noun":
                errors.append(f"candidate '{c}' (for {noun}) tagged {pos.get(c)}, want noun")
        for adj in adjectives_before.get(noun, ()):
            b = bigrams[(adj, noun)]
            for c in cands:
                if bigrams[(adj, c)] != 0:
                    errors.append(f"corpus contains '{adj} {c}' ({bigrams[(adj, c)]}x); "
                                  f"breaks zero-pair guarantee for {noun}")
                if unigrams[c] * (b + 1) <= unigrams[noun]:
                    errors.append(f"candidate '{c}' too rare for '{adj} {noun}': "
                                  f"f(c)={unigrams[c]} vs f(n)={unigrams[noun]}, bigram={b}")

    # fixture statistics
    print(f"\ncorpus: {sum(unigrams.values())} word tokens, {len(unigrams)} types")
    print(f"bigram('of','the') = {bigrams[('of', 'the')]}")
    rwords = words_of(rtok)
    rtypes = Counter(rwords)
    hapax = sum(1 for c in rtypes.values() if c == 1)
    ntypes = sum(1 for w in rtypes if pos.get(w) == "noun")
    pooled = sum(1 for w in rtypes if w in POOLS)
    score, nnum = benford_score(rtok)
    print(f"real.txt: {len(rwords)} word tokens, {len(rtypes)} types, "
          f"{hapax} hapax, {ntypes} noun types ({pooled} with pools)")
    print(f"real.txt: {nnum} numbers, benford score {score:.5f}")
    bscore, bn = benford_score(tokenize(real_benford))
    print(f"real_benford.txt: {bn} numbers, benford score {bscore:.5f}")
    dates = [s for s, c in rtok if c == "DATE"]
    print(f"real.txt dates: {dates}")

    if errors:
        print("\nVALIDATION FAILURES:")
        for e in errors:
            print(f"  - {e}")
        sys.exit(1)

    # emit fixtures
    lex = CORE / "lexicon"
    with open(lex / "pos.tsv", "w") as f:
        for w in sorted(pos):
            f.write(f"{w}\t{pos[w]}\n")
    with open(lex / "unigrams.tsv", "w") as f:
        for w in sorted(unigrams):
            f.write(f"{w}\t{unigrams[w]}\n")
    with open(lex / "bigrams.tsv", "w") as f:
        for (a, b), c in sorted(bigrams.items()):
            f.write(f"{a}\t{b}\t{c}\n")
    entries = []
    for noun in sorted(POOLS):
        syns = [c for c in POOLS[noun] if c in SYNONYM_HINTS.get(noun, [])]
        assoc = [c for c in POOLS[noun] if c not in syns]
        entries.append({"word": noun, "synonyms": syns, "antonyms": [], "associated": assoc})
    entries.append(ADDITION_ENTRY)
    entries.sort(key=lambda e: e["word"])
    with open(lex / "replacements.jsonl", "w") as f:
        for e in entries:
            f.write(json.dumps(e, sort_keys=True) + "\n")

    print("\nwrote pos.tsv, unigrams.tsv, bigrams.tsv, replacements.jsonl")


if __name__ == "__main__":
    main()
