"""The shipped corpus of small functor presentations.

Hand-written entries cover each branch of the product-preservation
trichotomy; the rest come from ``random_presentation`` with fixed seeds
and are regenerated by ``write_corpus``.
"""

from __future__ import annotations

import json
import random
from importlib import resources
from pathlib import Path

from gradcat.functors.presentation import Presentation

RANDOM_SEEDS = tuple(range(12))
VARIABLES = ("x", "y", "z")

NAMED = {
    "id": ([("v", 1)], []),
    "c01": ([("u", 1)], [(("u", ["x"]), ("u", ["y"]))]),
    "constant-1": ([("c", 0)], []),
    "square": ([("p", 2)], []),
    "x-plus-x": ([("l", 1), ("r", 1)], []),
    "cube": ([("t", 3)], []),
    "unordered-pair": ([("p", 2)], [(("p", ["x", "y"]), ("p", ["y", "x"]))]),
    "maybe": ([("v", 1), ("n", 0)], []),
    "constant-2": ([("a", 0), ("b", 0)], []),
    "c01-binary": ([("p", 2)], [(("p", ["x", "y"]), ("p", ["z", "x"]))]),
    "first-projection": ([("p", 2)], [(("p", ["x", "y"]), ("p", ["x", "z"]))]),
    "collapse-to-point": ([("u", 1), ("c", 0)], [(("u", ["x"]), ("c", []))]),
}


def named_presentation(name: str) -> Presentation:
    ops, eqs = NAMED[name]
    return Presentation.build(name, ops, eqs)


def random_presentation(seed: int) -> Presentation:
    """One or two symbols of arity <= 3 and up to two random equations."""
    rng = random.Random(seed)
    symbols = "fgh"[: rng.randint(1, 2)]
    ops = [(s, rng.randint(0, 3)) for s in symbols]
    eqs = []
    for _ in range(rng.randint(0, 2)):
        sides = []
        for _ in range(2):
            sym, n = rng.choice(ops)
            sides.append((sym, [rng.choice(VARIABLES) for _ in range(n)]))
        eqs.append(tuple(sides))
    return Presentation.build(f"random-{seed}", ops, eqs)


def corpus_documents() -> dict[str, dict]:
    """File name -> JSON document for every corpus entry."""
    pres = [named_presentation(n) for n in NAMED] + [random_presentation(s) for s in RANDOM_SEEDS]
    return {f"{H.name}.json": {"version": 1, "kind": "functor", **H.to_json()} for H in pres}


def write_corpus(directory: Path) -> None:
    for fname, doc in corpus_documents().items():
        (directory / fname).write_text(json.dumps(doc, indent=2) + "\n")


def corpus_files() -> list:
    return sorted((p for p in resources.files(__name__).iterdir() if p.name.endswith(".json")),
                  key=lambda p: p.name)


def load_corpus() -> list[Presentation]:
    """Every shipped presentation, sorted by name."""
    out = [Presentation.from_json(json.loads(p.read_text())) for p in corpus_files()]
    return sorted(out, key=lambda H: H.name)
