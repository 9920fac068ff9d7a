from __future__ import annotations

import random
from pathlib import Path

import networkx as nx
import pytest

import main.core.configurator as configurator
from main.handlers.expr import Expression, parse_expression
from main.handlers.geval import LabeledGraph


REPO_ROOT = Path(__file__).resolve().parents[1]
CORPUS_DIR = REPO_ROOT / "corpus"


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Every test sees built-in defaults unless it writes its own mcw.json."""
    path = tmp_path / "mcw.json"
    monkeypatch.setattr(configurator, "_CONFIG_PATH", str(path))
    return path


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


def mcw(body: str, k: int) -> Expression:
    return parse_expression(f"#mcw k={k}\n{body}\n")


def corpus_expression(name: str) -> Expression:
    return parse_expression((CORPUS_DIR / f"{name}.mcw").read_text(encoding="utf-8"))


def random_connected_graph(rng: random.Random, n: int, p: float = 0.35) -> LabeledGraph:
    while True:
        g = nx.gnp_random_graph(n, p, seed=rng.randrange(1 << 30))
        if nx.is_connected(g):
            return LabeledGraph.from_networkx(g)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260318)
