import pytest

from qgroth.cartan import cartan_datum
from qgroth.characters import CategoryQ
from qgroth.qcartan import quantum_cartan
from qgroth.quiver import QuiverContext, QuiverDatum
from qgroth.torus import YTorus

# The worked orientations used throughout: heights as in the source examples.
PAPER_XI = {
    "A1": (0,),
    "A2": (2, 1),
    "A3": (2, 3, 2),
    "A4": (0, 1, 0, 1),
    "D4": (0, 0, 1, 2),
}


@pytest.fixture(scope="session")
def contexts():
    cache = {}

    def get(name: str, xi=None) -> QuiverContext:
        cd = cartan_datum(name)
        xi = tuple(xi) if xi is not None else PAPER_XI.get(name)
        key = (name, xi)
        if key not in cache:
            q = QuiverDatum.from_xi(cd, xi) if xi else QuiverDatum.bipartite(cd)
            cache[key] = QuiverContext(q)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def categories(contexts):
    cache = {}

    def get(name: str, xi=None) -> CategoryQ:
        ctx = contexts(name, xi)
        key = id(ctx)
        if key not in cache:
            cache[key] = CategoryQ(ctx)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def ytorus():
    cache = {}

    def get(name: str) -> YTorus:
        if name not in cache:
            cache[name] = YTorus(quantum_cartan(cartan_datum(name)))
        return cache[name]

    return get


def all_orientations(name: str):
    """Every orientation of the diagram, as QuiverDatum values."""
    import itertools

    cd = cartan_datum(name)
    edges = cd.edges
    for flips in itertools.product((False, True), repeat=len(edges)):
        arrows = [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)]
        yield QuiverDatum.from_arrows(cd, arrows)
