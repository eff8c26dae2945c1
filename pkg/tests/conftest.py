import pytest

import graphcurves as gc
from graphcurves import fixtures


@pytest.fixture(scope="session")
def k4_graph():
    return fixtures.load_graph("k4")


@pytest.fixture(scope="session")
def cube_graph():
    return fixtures.load_graph("cube")


@pytest.fixture(scope="session")
def prism_graph():
    return fixtures.load_graph("prism")


@pytest.fixture(scope="session")
def poly8_graph():
    return fixtures.load_graph("poly8")


@pytest.fixture(scope="session")
def petersen_graph():
    return fixtures.load_graph("petersen")


@pytest.fixture(scope="session")
def k33_graph():
    return fixtures.load_graph("k33")


@pytest.fixture(scope="session")
def k4_cycle_model(k4_graph):
    return gc.build_model(k4_graph)


@pytest.fixture(scope="session")
def cube_cycle_model(cube_graph):
    return gc.build_model(cube_graph)


@pytest.fixture(scope="session")
def k4_ingested():
    """(model, graph) ingested from the four explicit plane lines."""
    names, lines = fixtures.load_lines("k4")
    return gc.ingest_model(lines, names)


@pytest.fixture(scope="session")
def cube_ingested():
    names, lines = fixtures.load_lines("cube")
    return gc.ingest_model(lines, names)


@pytest.fixture(scope="session")
def prism_ingested():
    names, lines = fixtures.load_lines("prism")
    return gc.ingest_model(lines, names)


@pytest.fixture(scope="session")
def poly8_ingested():
    names, lines = fixtures.load_lines("poly8")
    return gc.ingest_model(lines, names)


@pytest.fixture(scope="session")
def k4_basis(k4_ingested):
    model, _ = k4_ingested
    return gc.adapted_basis(model)


@pytest.fixture(scope="session")
def cube_basis(cube_ingested):
    model, _ = cube_ingested
    return gc.adapted_basis(model)


@pytest.fixture(scope="session")
def prism_basis(prism_ingested):
    model, _ = prism_ingested
    return gc.adapted_basis(model)


@pytest.fixture(scope="session")
def poly8_basis(poly8_ingested):
    model, _ = poly8_ingested
    return gc.adapted_basis(model)


def poly8_edge_id(graph, label):
    """Edge id from a two-digit 1-based vertex label like '47'."""
    return graph.edge_id(int(label[0]) - 1, int(label[1]) - 1)
