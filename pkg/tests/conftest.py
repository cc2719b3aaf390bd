import random

import pytest
from hypothesis import settings, strategies as st

from squarish.graph import LatticeGraph, unit_step_graph

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def grid_subgraph(cells) -> LatticeGraph:
    """Induced subgraph of the integer grid on the given (i, j) cells."""
    return unit_step_graph([(2 * i, 2 * j) for i, j in cells], label="sub")


def largest_component(g: LatticeGraph) -> LatticeGraph:
    comps = g.components()
    if not comps:
        return g
    return g.induced(max(comps, key=len))


@st.composite
def connected_grid_subgraphs(draw, width=4, height=3, min_size=2, max_size=8):
    box = [(i, j) for i in range(width) for j in range(height)]
    cells = draw(st.sets(st.sampled_from(box), min_size=min_size, max_size=max_size))
    return largest_component(grid_subgraph(cells))


@st.composite
def symmetric_grid_subgraphs(draw, half_width=3, height=4):
    """Cells with x < 0 chosen freely, mirrored to x > 0, plus any axis cells
    (x = 0); the result is symmetric under the vertical reflection."""
    left = [(i, j) for i in range(-half_width, 0) for j in range(height)]
    axis = [(0, j) for j in range(height)]
    a = draw(st.sets(st.sampled_from(left), min_size=1, max_size=len(left)))
    b = draw(st.sets(st.sampled_from(axis), max_size=len(axis)))
    cells = set(a) | {(-i, j) for i, j in a} | set(b)
    return grid_subgraph(cells)


def random_connected_subgraphs(count, seed=0, width=4, height=3, size=(3, 8)):
    rng = random.Random(seed)
    box = [(i, j) for i in range(width) for j in range(height)]
    out = []
    while len(out) < count:
        cells = rng.sample(box, rng.randint(*size))
        g = grid_subgraph(cells)
        if g.num_vertices and g.is_connected():
            out.append(g)
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


# one summary line per acceptance criterion, shown at the end of every run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
