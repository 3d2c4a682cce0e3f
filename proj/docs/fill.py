#!/usr/bin/env python3
"""Refreshes the example blocks in docs/*.md from tests/golden and data/."""
import pathlib, re

root = pathlib.Path(__file__).resolve().parent.parent
pattern = re.compile(r"(<!-- (golden|file): (\S+) -->\n```\w*\n)(.*?)(```)", re.S)

def fill(m):
    src = root / ("tests/golden" if m.group(2) == "golden" else ".") / m.group(3)
    body = src.read_text()
    return m.group(1) + body + ("" if body.endswith("\n") else "\n") + m.group(5)

for doc in sorted((root / "docs").glob("*.md")):
    doc.write_text(pattern.sub(fill, doc.read_text()))
