"""The fixed instance corpus shared by the acceptance suite and ``seplearn verify``."""

from __future__ import annotations

from dataclasses import dataclass

from .generators import BandParams, band_graph, book, clique, cycle, path, random_graph, star, wheel6
from .graph import Graph

RANDOM_PROBABILITIES = (0.1, 0.2, 0.3, 0.5)
RANDOM_PER_PROBABILITY = 52
RANDOM_SEED_BASE = 1000


@dataclass(frozen=True)
class Instance:
    name: str
    graph: Graph


def named_corpus() -> list[Instance]:
    out = [Instance("wheel6", wheel6())]
    out += [Instance(f"path{n}", path(n)) for n in range(3, 9)]
    out += [Instance(f"cycle{n}", cycle(n)) for n in range(4, 9)]
    out += [Instance(f"clique{n}", clique(n)) for n in range(2, 6)]
    out += [Instance(f"star{n}", star(n)) for n in range(4, 9)]
    out += [Instance(f"book{m}", book(m)) for m in range(3, 9)]
    out.append(Instance("band-3-3-3", band_graph(BandParams(3, 3, 3))))
    return out


def random_corpus(per_probability: int = RANDOM_PER_PROBABILITY, seed_base: int = RANDOM_SEED_BASE) -> list[Instance]:
    """G(n, p) instances with n cycling through 4..12 for each probability."""
    out = []
    for j, p in enumerate(RANDOM_PROBABILITIES):
        for i in range(per_probability):
            n = 4 + i % 9
            seed = seed_base + 1000 * j + i
            out.append(Instance(f"gnp-n{n}-p{p}-s{seed}", random_graph(n, p, seed)))
    return out


def standard_corpus() -> list[Instance]:
    return named_corpus() + random_corpus()
