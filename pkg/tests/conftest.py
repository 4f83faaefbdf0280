import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from geoatoms.catalog import CONSTRUCTIONS, SYNTHETIC, build_named
from geoatoms.surface_map import EmbeddedGraph, classify_surface

# Derandomized so that repeated runs of the suite are byte-identical.
settings.register_profile("repro", derandomize=True, deadline=None, print_blob=False,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")


def random_quartic(rng: random.Random, nv: int, surface=None) -> EmbeddedGraph:
    """Shuffled connected 4-regular signed rotation system."""
    while True:
        darts = list(range(4 * nv))
        rng.shuffle(darts)
        rotations = tuple(tuple(darts[4 * v:4 * v + 4]) for v in range(nv))
        signs = tuple(rng.choice((1, -1)) for _ in range(2 * nv))
        g = EmbeddedGraph(rotations, signs, surface)
        if g.is_connected():
            break
    if surface is None:
        inv = classify_surface(g)
        if inv.surface is not None:
            g = EmbeddedGraph(rotations, signs, inv.surface)
    return g


@st.composite
def quartic_maps(draw, max_vertices=3):
    nv = draw(st.integers(1, max_vertices))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_quartic(random.Random(seed), nv)


@pytest.fixture(scope="session")
def atoms():
    return {name: build_named(name) for name in CONSTRUCTIONS}


@pytest.fixture(scope="session")
def synthetic():
    return dict(SYNTHETIC)


# acceptance criteria record one line each; printed after the run
ACCEPTANCE = {}


def record(number: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
