# File name: corpus_service.py
# Created: 2/10/2026 2:57 PM
# Purpose: Assembles the check corpus: bundled .mcw files, small generator instances, seeded random expressions
# Notes:
# - Relative corpus dirs are tried against the working dir first, then the repository root
# - Random entries are reproducible from the seed alone
# Used: Yes

from __future__ import annotations

import logging
import random
from pathlib import Path

from main.core.configurator import resolve
from main.core.errors import McwError
from main.handlers.expr import parse_expression
from main.handlers.generators import generate
from main.handlers.oracle import Corpus, random_expression


log = logging.getLogger(__name__)

_REPO_ROOT = Path(__file__).resolve().parents[3]

SMALL_FAMILIES = [
    ("path", "1"),
    ("path", "6"),
    ("cycle", "5"),
    ("cycle", "6"),
    ("clique", "5"),
    ("complete-bipartite", "2x3"),
    ("grid", "3x3"),
]


class Service:
    def corpus_dir(self, directory: str | None = None) -> Path:
        raw = Path(resolve(directory, "cli.corpus_dir"))
        if raw.is_absolute() or raw.is_dir():
            return raw
        return _REPO_ROOT / raw

    def load_files(self, corpus: Corpus, directory: str | None = None) -> Corpus:
        folder = self.corpus_dir(directory)
        if not folder.is_dir():
            raise McwError(f"corpus directory {folder} not found")
        for path in sorted(folder.glob("*.mcw")):
            text = path.read_text(encoding="utf-8")
            try:
                e = parse_expression(text)
            except McwError as exc:
                raise McwError(f"{path.name}: {exc}") from None
            note = text.splitlines()[0].lstrip("; ").strip() if text.startswith(";") else ""
            corpus.add(path.stem, e, note)
        log.debug("loaded %d corpus files from %s", len(corpus), folder)
        return corpus

    def add_families(self, corpus: Corpus) -> Corpus:
        for family, size in SMALL_FAMILIES:
            corpus.add(f"gen-{family}-{size}", generate(family, size), "generated")
        return corpus

    def add_random(self, corpus: Corpus, count: int, seed: int = 0, max_n: int = 10, max_k: int = 4) -> Corpus:
        rng = random.Random(seed)
        for idx in range(count):
            n = rng.randint(1, max_n)
            k = rng.randint(1, max_k)
            corpus.add(f"random-{seed}-{idx}", random_expression(rng, n, k), f"n~{n} k={k}")
        return corpus

    def build(self, directory: str | None = None, families: bool = True, random_count: int = 0, seed: int = 0) -> Corpus:
        corpus = self.load_files(Corpus(), directory)
        if families:
            self.add_families(corpus)
        if random_count:
            self.add_random(corpus, random_count, seed)
        return corpus


CorpusService = Service()
