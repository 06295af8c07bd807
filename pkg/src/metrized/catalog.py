"""Named example graphs and a random connected multigraph generator."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .graph import Edge, MetrizedGraph

__all__ = ["complete_graph", "k5", "loop_and_parallels", "segment", "circle", "random_graph", "DEMOS"]


def complete_graph(n: int, length=Fraction(1)) -> MetrizedGraph:
    labels = [str(i) for i in range(1, n + 1)]
    return MetrizedGraph.from_edges(
        [(a, b, length) for a, b in itertools.combinations(labels, 2)], labels
    )


def k5() -> MetrizedGraph:
    """K5 with every edge of length 1/10 (total length 1)."""
    return complete_graph(5, Fraction(1, 10))


def loop_and_parallels() -> MetrizedGraph:
    """Three vertices: a loop of length 1/3 at 3, edges 1-3 and 2-3 of length 1/9,
    and two parallel 1-2 edges of length 2/9. Total length 1."""
    ninth = Fraction(1, 9)
    return MetrizedGraph(
        ("1", "2", "3"),
        (
            Edge("1", "3", ninth),
            Edge("2", "3", ninth),
            Edge("3", "3", 3 * ninth),
            Edge("1", "2", 2 * ninth),
            Edge("1", "2", 2 * ninth),
        ),
    )


def segment(length=Fraction(1)) -> MetrizedGraph:
    return MetrizedGraph.from_edges([("a", "b", length)])


def circle(length=Fraction(1)) -> MetrizedGraph:
    """A circle realized as an equilateral triangle."""
    a = Fraction(length) / 3
    return MetrizedGraph.from_edges([("1", "2", a), ("2", "3", a), ("3", "1", a)])


DEMOS = {"k5": k5, "fig2": loop_and_parallels}


def random_graph(
    rng: random.Random,
    max_vertices: int = 12,
    max_edges: int = 25,
    max_term: int = 50,
    loop_prob: float = 0.15,
    parallel_prob: float = 0.15,
) -> MetrizedGraph:
    """A random connected multigraph with rational edge lengths.

    A random spanning tree guarantees connectivity (and bridges when few extra
    edges are drawn); extra edges are self-loops, copies of existing endpoint
    pairs, or fresh random pairs. Numerators and denominators of lengths are
    drawn from 1..max_term.
    """
    v = rng.randint(1, max_vertices)
    labels = list(range(v))
    rng.shuffle(labels)

    def length():
        return Fraction(rng.randint(1, max_term), rng.randint(1, max_term))

    pairs = [(labels[k], labels[rng.randrange(k)]) for k in range(1, v)]
    lo = 1 if v == 1 else 0
    extra = rng.randint(lo, max(lo, max_edges - len(pairs)))
    for _ in range(extra):
        x = rng.random()
        if x < loop_prob or v == 1:
            p = rng.choice(labels)
            pairs.append((p, p))
        elif x < loop_prob + parallel_prob and pairs:
            pairs.append(rng.choice(pairs))
        else:
            a, b = rng.sample(labels, 2)
            pairs.append((a, b))
    rng.shuffle(pairs)
    return MetrizedGraph(tuple(range(v)), tuple(Edge(a, b, length()) for a, b in pairs))
