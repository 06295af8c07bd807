import random

import pytest

from metrized import laplacian_pair, optimalize
from metrized.catalog import random_graph

CORPUS_SEED = 20240611
CORPUS_SIZE = 200

_acceptance_lines = []


@pytest.fixture(scope="session")
def record_criterion():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def record(number, ok, text):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        _acceptance_lines.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def make_corpus(seed=CORPUS_SEED, size=CORPUS_SIZE):
    rng = random.Random(seed)
    return [random_graph(rng, max_vertices=12, max_edges=25, max_term=50) for _ in range(size)]


@pytest.fixture(scope="session")
def corpus():
    """(raw graph, optimalized graph, subdivision map, exact pair) per corpus entry."""
    out = []
    for g in make_corpus():
        opt, smap = optimalize(g)
        out.append((g, opt, smap, laplacian_pair(opt)))
    return out
