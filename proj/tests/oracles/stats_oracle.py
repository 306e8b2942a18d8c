#!/usr/bin/env python3
"""Reference corpus statistics from corpus.jsonl and keywords.jsonl.

usage: stats_oracle.py CORPUS KEYWORDS MONTHLY_OUT COUNTS_OUT

Body words are whitespace-separated tokens that are not pure punctuation,
which matches the engine's tokenizer on corpora whose punctuation is
space-separated (as the e2e fixture is).
"""

import json
import sys
import unicodedata
from collections import Counter, defaultdict


def is_punct_token(tok):
    return all(unicodedata.category(c).startswith("P") or c in "؟؛،" for c in tok)


def main(corpus_path, keywords_path, monthly_out, counts_out):
    docs = [json.loads(l) for l in open(corpus_path, encoding="utf-8") if l.strip()]
    phrases = {}
    for l in open(keywords_path, encoding="utf-8"):
        if l.strip():
            j = json.loads(l)
            phrases[j["id"]] = [p["text"] for p in j["phrases"]]
    months = defaultdict(Counter)
    first_seen = defaultdict(dict)
    with open(counts_out, "w", encoding="utf-8") as f:
        f.write("doc_id\tbody_words\tphrase_words\n")
        for d in docs:
            body = sum(1 for t in d["body"].split() if not is_punct_token(t))
            words = [w for p in phrases.get(d["id"], []) for w in p.split()]
            f.write(f"{d['id']}\t{body}\t{len(words)}\n")
            date = d.get("published_at")
            if date and len(date) >= 7 and date[4] == "-":
                m = date[:7]
                for w in words:
                    months[m][w] += 1
    with open(monthly_out, "w", encoding="utf-8") as f:
        f.write("month\trank\tword\tcount\n")
        for m in sorted(months):
            # ties broken by word order (code point)
            top = sorted(months[m].items(), key=lambda kv: (-kv[1], kv[0]))[:3]
            for i, (w, n) in enumerate(top, start=1):
                f.write(f"{m}\t{i}\t{w}\t{n}\n")


if __name__ == "__main__":
    main(*sys.argv[1:5])
