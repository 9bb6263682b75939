#!/usr/bin/env python3
"""Convert DUC-style SGML document sets into the corpus layout.

The evaluation harness expects:

    <out>/docs/<id>.txt      plain document text
    <out>/gold/<id>.<k>.txt  one reference summary per assessor

This reads the two SGML shapes those collections use:

  * document files: one or more <DOC> blocks, each with a <DOCNO> id and
    <TEXT> body (paragraph tags inside the body are dropped);
  * per-document abstract files ("perdocs"): <SUM> blocks carrying
    DOCREF="<id>" and SUMMARIZER="<letter>" attributes around the summary
    text.

Document ids are used as file stems and must not contain dots. The data
itself is distributed by NIST under a usage agreement and is not bundled
here; point this script at your local copy.
"""

import argparse
import re
import sys
from pathlib import Path

DOC_BLOCK = re.compile(r"<DOC>(.*?)</DOC>", re.S)
DOCNO = re.compile(r"<DOCNO>\s*(\S+?)\s*</DOCNO>")
TEXT_BLOCK = re.compile(r"<TEXT>(.*?)</TEXT>", re.S)
SUM_BLOCK = re.compile(r"<SUM([^>]*)>(.*?)</SUM>", re.S)
ATTR = re.compile(r'(\w+)\s*=\s*"([^"]*)"')
TAG = re.compile(r"<[^>]+>")


def clean(markup):
    return re.sub(r"\s+", " ", TAG.sub(" ", markup)).strip()


def convert_documents(paths, docs_dir):
    written = 0
    for path in paths:
        content = path.read_text(encoding="utf-8", errors="replace")
        for block in DOC_BLOCK.finditer(content):
            docno = DOCNO.search(block.group(1))
            texts = TEXT_BLOCK.findall(block.group(1))
            if not docno or not texts:
                print(f"skipping a <DOC> without DOCNO or TEXT in {path}", file=sys.stderr)
                continue
            doc_id = docno.group(1)
            if "." in doc_id:
                print(f"skipping {doc_id!r}: dots collide with the gold naming", file=sys.stderr)
                continue
            body = "\n\n".join(clean(t) for t in texts)
            (docs_dir / f"{doc_id}.txt").write_text(body + "\n", encoding="utf-8")
            written += 1
    return written


def convert_perdocs(paths, gold_dir):
    written = 0
    for path in paths:
        content = path.read_text(encoding="utf-8", errors="replace")
        for block in SUM_BLOCK.finditer(content):
            attrs = dict(ATTR.findall(block.group(1)))
            doc_ref = attrs.get("DOCREF")
            tag = attrs.get("SUMMARIZER", "0")
            if not doc_ref or "." in doc_ref:
                print(f"skipping a <SUM> without a usable DOCREF in {path}", file=sys.stderr)
                continue
            summary = clean(block.group(2))
            (gold_dir / f"{doc_ref}.{tag}.txt").write_text(summary + "\n", encoding="utf-8")
            written += 1
    return written


def gather(arg):
    path = Path(arg)
    if path.is_dir():
        return sorted(p for p in path.rglob("*") if p.is_file())
    return [path]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--documents", required=True, nargs="+",
                        help="SGML document files or directories of them")
    parser.add_argument("--perdocs", nargs="*", default=[],
                        help="per-document abstract files or directories")
    parser.add_argument("--out", required=True, type=Path, help="corpus root to write")
    args = parser.parse_args()

    docs_dir = args.out / "docs"
    gold_dir = args.out / "gold"
    docs_dir.mkdir(parents=True, exist_ok=True)
    gold_dir.mkdir(parents=True, exist_ok=True)

    doc_paths = [p for arg in args.documents for p in gather(arg)]
    n_docs = convert_documents(doc_paths, docs_dir)
    sum_paths = [p for arg in args.perdocs for p in gather(arg)]
    n_sums = convert_perdocs(sum_paths, gold_dir)
    print(f"wrote {n_docs} document(s) and {n_sums} gold summar(ies) under {args.out}")


if __name__ == "__main__":
    main()
