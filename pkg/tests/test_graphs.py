import pytest

import graphcurves as gc
from graphcurves import fixtures, linalg
from graphcurves.graphs import (Disconnected, FacesNotDoubleCover,
                                InvalidPairing, NotSimple, NotTrivalent,
                                Not3Connected, TrivalentGraph,
                                cycle_incidence_vector, pairing_from_bits,
                                pairing_options)


def test_validate_k4(k4_graph):
    assert gc.validate(k4_graph) == 3


def test_validate_cube(cube_graph):
    assert gc.validate(cube_graph) == 5


def test_validate_petersen(petersen_graph):
    # E - V + 1 = 15 - 10 + 1
    assert gc.validate(petersen_graph) == 6


def test_validate_rejects_loop():
    g = TrivalentGraph.from_edges(4, [(0, 0), (0, 1), (1, 2), (2, 3), (1, 3), (2, 3)])
    with pytest.raises(NotSimple):
        gc.validate(g)


def test_validate_rejects_parallel():
    g = TrivalentGraph.from_edges(4, [(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)])
    with pytest.raises(NotSimple):
        gc.validate(g)


def test_validate_rejects_wrong_degree():
    g = TrivalentGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(NotTrivalent):
        gc.validate(g)


def test_validate_rejects_disconnected():
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    g = TrivalentGraph.from_edges(8, k4 + [(u + 4, v + 4) for u, v in k4])
    with pytest.raises(Disconnected):
        gc.validate(g)


def test_validate_rejects_2cuts():
    # two K4's joined by splitting an edge of each: has a 2-edge cut
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
             (4, 5), (4, 6), (4, 7), (5, 6), (5, 7),
             (2, 6), (3, 7)]
    g = TrivalentGraph.from_edges(8, edges)
    with pytest.raises(Not3Connected):
        gc.validate(g)


def test_cycle_basis_counts(k4_graph, cube_graph, prism_graph):
    assert len(gc.cycle_basis(k4_graph)) == 3
    assert len(gc.cycle_basis(cube_graph)) == 5
    assert len(gc.cycle_basis(prism_graph)) == 4


def test_cycle_basis_closed_and_independent(prism_graph):
    cycles = gc.cycle_basis(prism_graph)
    # closed: signed vertex flow balances
    for cycle in cycles:
        flow = {v: 0 for v in range(prism_graph.vertex_count)}
        for eid, direction in cycle:
            u, v = prism_graph.edges[eid]
            if direction < 0:
                u, v = v, u
            flow[u] -= 1
            flow[v] += 1
        assert all(x == 0 for x in flow.values())
    vecs = [cycle_incidence_vector(prism_graph, c) for c in cycles]
    assert linalg.rank(vecs) == 4


def test_pairing_count(k4_graph, cube_graph, poly8_graph):
    assert gc.pairing_count(k4_graph) == 64
    assert gc.pairing_count(cube_graph) == 4096
    assert gc.pairing_count(poly8_graph) == 4096


def test_cover_graph_double_covers(k4_graph):
    pairing = pairing_from_bits(k4_graph, 0b101010)
    cover = gc.cover_graph(k4_graph, pairing)
    counts = {}
    for eid in cover.covering_map:
        counts[eid] = counts.get(eid, 0) + 1
    assert counts == {e: 2 for e in range(6)}
    assert sum(len(c) for c in cover.cycles) == len(cover.corners)


def test_k4_exhaustive_r_bound(k4_graph):
    g = k4_graph.genus
    best = {}
    for bits in range(64):
        pairing = pairing_from_bits(k4_graph, bits)
        r = len(gc.cover_graph(k4_graph, pairing).cycles)
        assert r <= g + 1
        best.setdefault(r, 0)
        best[r] += 1
    assert best[g + 1] == 1  # unique face cover


def test_face_double_cover_k4(k4_graph):
    pairing = gc.face_double_cover(k4_graph)
    assert pairing is not None
    assert len(gc.cover_graph(k4_graph, pairing).cycles) == 4


def test_face_double_cover_cube(cube_graph):
    pairing = gc.face_double_cover(cube_graph)
    assert len(gc.cover_graph(cube_graph, pairing).cycles) == 6


def test_petersen_not_planar(petersen_graph):
    assert gc.search_max_covers(petersen_graph) == []
    assert gc.face_double_cover(petersen_graph) is None


def test_k33_not_planar(k33_graph):
    assert gc.face_double_cover(k33_graph) is None


def test_search_budget(petersen_graph):
    with pytest.raises(gc.SearchBudgetExceeded):
        gc.search_max_covers(petersen_graph, budget=2 ** 10)


def test_poly8_planar_pairing_of_edge_47(poly8_graph):
    pairing = gc.face_double_cover(poly8_graph)
    assert pairing is not None
    # node-table labels are 1-based: edge 47 is (3, 6); its planar pairing
    # couples 34 with 78 and 45 with 67.
    eid = poly8_graph.edge_id(3, 6)
    e34 = poly8_graph.edge_id(2, 3)
    e78 = poly8_graph.edge_id(6, 7)
    e45 = poly8_graph.edge_id(3, 4)
    e67 = poly8_graph.edge_id(5, 6)
    assert pairing.pairs(eid) == frozenset({frozenset({e34, e78}), frozenset({e45, e67})})
    opts = pairing_options(poly8_graph, eid)
    assert pairing.pairs(eid) in opts


def test_face_cover_from_faces_cube(cube_graph):
    # the six quadrilateral faces of the cube (bit patterns)
    faces = []
    for bit in range(3):
        lo = [v for v in range(8) if not v & (1 << bit)]
        hi = [v for v in range(8) if v & (1 << bit)]
        for group in (lo, hi):
            a, b, c, d = group
            # order as a 4-cycle in the remaining two bits
            cycle = [a, b, d, c]
            faces.append(cycle)
    pairing = gc.face_cover_from_faces(cube_graph, faces)
    assert len(gc.cover_graph(cube_graph, pairing).cycles) == 6
    assert pairing == gc.face_double_cover(cube_graph)


def test_face_cover_from_faces_prism(prism_graph):
    faces = [[0, 1, 2], [3, 4, 5], [0, 1, 4, 3], [1, 2, 5, 4], [0, 2, 5, 3]]
    pairing = gc.face_cover_from_faces(prism_graph, faces)
    assert len(gc.cover_graph(prism_graph, pairing).cycles) == 5


def test_face_cover_from_faces_associahedron():
    graph = fixtures.load_graph("associahedron")
    assert gc.validate(graph) == 8
    faces = fixtures.load_faces("associahedron_faces")
    pairing = gc.face_cover_from_faces(graph, faces)
    assert len(gc.cover_graph(graph, pairing).cycles) == 9


def test_face_cover_rejects_bad_faces(prism_graph):
    with pytest.raises(FacesNotDoubleCover):
        gc.face_cover_from_faces(prism_graph, [[0, 1, 2], [3, 4, 5]])


def test_orientability_face_pairings(k4_graph, cube_graph, prism_graph):
    for graph in (k4_graph, cube_graph, prism_graph):
        pairing = gc.face_double_cover(graph)
        a, chi = gc.orientability(graph, pairing)
        assert (a, chi) == (0, 2)


def test_orientability_k4_exhaustive(k4_graph):
    g = k4_graph.genus
    seen_nonorientable = False
    for bits in range(64):
        pairing = pairing_from_bits(k4_graph, bits)
        r = len(gc.cover_graph(k4_graph, pairing).cycles)
        a, chi = gc.orientability(k4_graph, pairing)
        assert chi == r + 1 - g
        if a == 0:
            assert chi % 2 == 0
            assert (r - (g + 1)) % 2 == 0
        else:
            seen_nonorientable = True
    assert seen_nonorientable


def test_invalid_pairing_rejected(k4_graph, cube_graph):
    pairing = gc.face_double_cover(k4_graph)
    with pytest.raises(InvalidPairing):
        gc.cover_graph(cube_graph, pairing)


def test_cover_r_bound_exhaustive_genus4(prism_graph):
    g = prism_graph.genus
    hits = 0
    for bits in range(2 ** 9):
        pairing = pairing_from_bits(prism_graph, bits)
        r = len(gc.cover_graph(prism_graph, pairing).cycles)
        assert r <= g + 1
        hits += r == g + 1
    assert hits == 1


def test_budget_env_override(petersen_graph, monkeypatch):
    monkeypatch.setenv("MM_SEARCH_BUDGET", "1024")
    with pytest.raises(gc.SearchBudgetExceeded):
        gc.search_max_covers(petersen_graph)
    monkeypatch.setenv("MM_SEARCH_BUDGET", "40000")
    assert gc.search_max_covers(petersen_graph) == []
