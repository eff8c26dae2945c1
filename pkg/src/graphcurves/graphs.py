"""Trivalent graphs, edge pairings, double covers and planarity.

A graph is given by a vertex count and an edge list; edge ids are list
positions.  Planarity is decided by exhaustive search over edge pairings
for the unique double cover by g+1 cycles (MacLane style), with a budget
guard for larger graphs where an explicit face list must be supplied.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Optional

DEFAULT_SEARCH_BUDGET = 2 ** 24
SEARCH_BUDGET_ENV = "MM_SEARCH_BUDGET"


class GraphError(ValueError):
    pass


class NotSimple(GraphError):
    pass


class NotTrivalent(GraphError):
    pass


class Disconnected(GraphError):
    pass


class Not3Connected(GraphError):
    pass


class InvalidPairing(GraphError):
    pass


class FacesNotDoubleCover(GraphError):
    pass


class SearchBudgetExceeded(GraphError):
    pass


@dataclass(frozen=True)
class TrivalentGraph:
    vertex_count: int
    edges: tuple  # tuple of (u, v) pairs; edge ids are positions

    @classmethod
    def from_edges(cls, vertex_count, edges):
        return cls(vertex_count, tuple((int(u), int(v)) for u, v in edges))

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def genus(self):
        return len(self.edges) - self.vertex_count + 1

    def edges_at(self, v):
        """Ids of the edges incident to v, ascending."""
        return [i for i, (a, b) in enumerate(self.edges) if a == v or b == v]

    def other_end(self, edge_id, v):
        a, b = self.edges[edge_id]
        return b if a == v else a

    def adjacency(self):
        adj = {v: [] for v in range(self.vertex_count)}
        for i, (a, b) in enumerate(self.edges):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return adj

    def edge_id(self, u, v):
        key = (min(u, v), max(u, v))
        for i, (a, b) in enumerate(self.edges):
            if (min(a, b), max(a, b)) == key:
                return i
        raise KeyError(f"no edge {u}-{v}")


def _connected_vertices(graph, removed=()):
    removed = set(removed)
    alive = [v for v in range(graph.vertex_count) if v not in removed]
    if not alive:
        return True
    adj = graph.adjacency()
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for w, _ in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


def validate(graph: TrivalentGraph) -> int:
    """Check all structural invariants; returns the genus g = E - V + 1.

    Raises NotSimple, NotTrivalent, Disconnected or Not3Connected.  Graphs
    of genus below 3 are rejected: no simple 3-connected trivalent graph
    exists there.
    """
    n = graph.vertex_count
    seen = set()
    degree = [0] * n
    for u, v in graph.edges:
        if u == v:
            raise NotSimple(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise NotSimple(f"parallel edge {key}")
        seen.add(key)
        degree[u] += 1
        degree[v] += 1
    for v, d in enumerate(degree):
        if d != 3:
            raise NotTrivalent(f"vertex {v} has degree {d}")
    if not _connected_vertices(graph):
        raise Disconnected("graph is not connected")
    if n < 4:
        raise Not3Connected("fewer than 4 vertices")
    # Brute-force vertex cuts; fine at desk scale (n <= a few dozen).
    for v in range(n):
        if not _connected_vertices(graph, (v,)):
            raise Not3Connected(f"cut vertex {v}")
    for u, v in itertools.combinations(range(n), 2):
        if not _connected_vertices(graph, (u, v)):
            raise Not3Connected(f"cut pair {{{u},{v}}}")
    g = graph.genus
    if g < 3:
        raise GraphError(f"genus {g} below 3")
    return g


def cycle_basis(graph: TrivalentGraph):
    """Fundamental cycles for the BFS spanning tree rooted at vertex 0.

    Returns a list of g cycles, one per non-tree edge in id order; each
    cycle is a tuple of (edge_id, direction) with direction +1 when the
    edge is traversed from its stored first endpoint to its second.
    """
    adj = graph.adjacency()
    parent = {0: None}  # vertex -> (parent vertex, edge id)
    order = [0]
    queue = [0]
    tree_edges = set()
    while queue:
        v = queue.pop(0)
        for w, eid in sorted(adj[v], key=lambda t: t[1]):
            if w not in parent:
                parent[w] = (v, eid)
                tree_edges.add(eid)
                order.append(w)
                queue.append(w)

    def path_to_root(v):
        out = []
        while parent[v] is not None:
            p, eid = parent[v]
            out.append((v, p, eid))
            v = p
        return out

    cycles = []
    for eid, (u, v) in enumerate(graph.edges):
        if eid in tree_edges:
            continue
        up, vp = path_to_root(u), path_to_root(v)
        uset = {e for _, _, e in up}
        common = next((i for i, (_, _, e) in enumerate(vp) if e in uset), None)
        # Strip the shared tail of both root paths.
        upath = []
        vpath_edges = {e for _, _, e in vp}
        for step in up:
            if step[2] in vpath_edges:
                break
            upath.append(step)
        vpath = []
        upath_edges = {e for _, _, e in up}
        for step in vp:
            if step[2] in upath_edges:
                break
            vpath.append(step)
        cycle = [(eid, +1)]  # traverse u -> v along the chord
        for frm, to, e in vpath:  # v down to meet point: traverse to->frm reversed
            a, b = graph.edges[e]
            cycle.append((e, +1 if (a, b) == (frm, to) else -1))
        for frm, to, e in reversed(upath):  # meet point up to u
            a, b = graph.edges[e]
            cycle.append((e, +1 if (a, b) == (to, frm) else -1))
        cycles.append(tuple(cycle))
    return cycles


def cycle_incidence_vector(graph, cycle):
    """Signed edge incidence vector of an oriented cycle."""
    from fractions import Fraction

    v = [Fraction(0)] * graph.edge_count
    for eid, direction in cycle:
        v[eid] += direction
    return v


@dataclass(frozen=True)
class EdgePairing:
    """Per edge: the partition of the four neighbouring edges into cross pairs.

    assignment maps edge id -> frozenset of two frozensets {e_i, e_j} where
    e_i meets one endpoint and e_j the other.
    """

    assignment: tuple  # indexed by edge id, each a frozenset of 2 frozensets

    def pairs(self, edge_id):
        return self.assignment[edge_id]


def _side_edges(graph, edge_id):
    """The two edges at each endpoint other than edge_id itself."""
    u, v = graph.edges[edge_id]
    at_u = [e for e in graph.edges_at(u) if e != edge_id]
    at_v = [e for e in graph.edges_at(v) if e != edge_id]
    return at_u, at_v


def pairing_options(graph, edge_id):
    """The two possible values of rho(edge); option 0 pairs the lowest ids."""
    (a1, a2), (b1, b2) = _side_edges(graph, edge_id)
    opt0 = frozenset({frozenset({a1, b1}), frozenset({a2, b2})})
    opt1 = frozenset({frozenset({a1, b2}), frozenset({a2, b1})})
    return opt0, opt1


def pairing_from_bits(graph, bits: int) -> EdgePairing:
    assignment = []
    for eid in range(graph.edge_count):
        opts = pairing_options(graph, eid)
        assignment.append(opts[(bits >> eid) & 1])
    return EdgePairing(tuple(assignment))


def pairing_count(graph) -> int:
    return 2 ** graph.edge_count


def check_pairing(graph, pairing: EdgePairing):
    if len(pairing.assignment) != graph.edge_count:
        raise InvalidPairing("wrong number of edges")
    for eid in range(graph.edge_count):
        if pairing.assignment[eid] not in pairing_options(graph, eid):
            raise InvalidPairing(f"invalid partition at edge {eid}")


@dataclass(frozen=True)
class CoverGraph:
    """The 2-regular double cover induced by an edge pairing.

    corners are unordered pairs of adjacent edges of the base graph; each
    cover edge lies over exactly one base edge (covering_map).
    """

    corners: tuple              # tuple of frozenset({e_i, e_j})
    cover_edges: tuple          # tuple of (corner_index, corner_index)
    covering_map: tuple         # base edge id per cover edge
    cycles: tuple               # tuple of tuples of corner indices, each a closed walk


def corners_of(graph):
    corners = []
    for v in range(graph.vertex_count):
        e = graph.edges_at(v)
        corners.extend([frozenset({e[0], e[1]}), frozenset({e[0], e[2]}), frozenset({e[1], e[2]})])
    return tuple(sorted(corners, key=sorted))


def cover_graph(graph, pairing: EdgePairing) -> CoverGraph:
    check_pairing(graph, pairing)
    corners = corners_of(graph)
    index = {c: i for i, c in enumerate(corners)}
    cover_edges = []
    covering = []
    for eid in range(graph.edge_count):
        for pair in sorted(pairing.assignment[eid], key=sorted):
            ei, ej = sorted(pair)
            c1 = index[frozenset({eid, ei})]
            c2 = index[frozenset({eid, ej})]
            cover_edges.append((c1, c2))
            covering.append(eid)
    # Each corner must have degree exactly 2; walk out the cycles.
    adj = {i: [] for i in range(len(corners))}
    for k, (c1, c2) in enumerate(cover_edges):
        adj[c1].append((c2, k))
        adj[c2].append((c1, k))
    for i, nbrs in adj.items():
        if len(nbrs) != 2:
            raise InvalidPairing(f"corner {sorted(corners[i])} has cover degree {len(nbrs)}")
    seen = set()
    cycles = []
    for start in range(len(corners)):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        prev_edge = None
        current = start
        while True:
            nxt = next(((c, k) for c, k in adj[current] if k != prev_edge), None)
            c, k = nxt
            if c == start and (len(walk) > 1 or prev_edge is not None):
                break
            walk.append(c)
            seen.add(c)
            prev_edge = k
            current = c
        cycles.append(tuple(walk))
    return CoverGraph(corners, tuple(cover_edges), tuple(covering), tuple(cycles))


def _cover_options_fast(graph):
    """Per edge, the two corner-index pairs of cover edges for each bit value."""
    corners = corners_of(graph)
    index = {c: i for i, c in enumerate(corners)}
    options = []
    for eid in range(graph.edge_count):
        per_bit = []
        for opt in pairing_options(graph, eid):
            pairs = []
            for pair in sorted(opt, key=sorted):
                ei, ej = sorted(pair)
                pairs.append((index[frozenset({eid, ei})], index[frozenset({eid, ej})]))
            per_bit.append(tuple(pairs))
        options.append(tuple(per_bit))
    return len(corners), options


def cycle_count(graph, pairing: EdgePairing) -> int:
    return len(cover_graph(graph, pairing).cycles)


def _count_cycles_bits(ncorners, options, bits):
    parent = list(range(ncorners))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merges = 0
    for eid, opts in enumerate(options):
        for c1, c2 in opts[(bits >> eid) & 1]:
            r1, r2 = find(c1), find(c2)
            if r1 != r2:
                parent[r1] = r2
                merges += 1
    return ncorners - merges


def search_max_covers(graph, budget=None):
    """All pairings (as bit masks) whose cover has g+1 cycles.

    Exhaustive over 2^(3g-3) pairings; raises SearchBudgetExceeded when the
    search space is larger than the budget (default 2^24, overridable via
    the MM_SEARCH_BUDGET environment variable).
    """
    if budget is None:
        budget = int(os.environ.get(SEARCH_BUDGET_ENV, DEFAULT_SEARCH_BUDGET))
    total = pairing_count(graph)
    if total > budget:
        raise SearchBudgetExceeded(f"{total} pairings exceed budget {budget}")
    target = graph.genus + 1
    ncorners, options = _cover_options_fast(graph)
    hits = []
    for bits in range(total):
        if _count_cycles_bits(ncorners, options, bits) == target:
            hits.append(bits)
    return hits


def face_double_cover(graph, budget=None) -> Optional[EdgePairing]:
    """The unique edge pairing whose cover has g+1 cycles, or None.

    None means the graph is not planar.  More than one hit would contradict
    uniqueness of the face structure and signals a bug.
    """
    hits = search_max_covers(graph, budget)
    if not hits:
        return None
    if len(hits) > 1:
        raise GraphError("multiple maximal covers found; invariant violated")
    return pairing_from_bits(graph, hits[0])


def face_cover_from_faces(graph, faces) -> EdgePairing:
    """Edge pairing induced by an explicit list of facial vertex cycles.

    Each face is a cyclic vertex sequence; together they must use every
    edge exactly twice and number g+1.
    """
    g = graph.genus
    contributions = {eid: [] for eid in range(graph.edge_count)}
    for face in faces:
        k = len(face)
        if k < 3:
            raise FacesNotDoubleCover("face with fewer than 3 vertices")
        for i in range(k):
            a, u, v = face[i - 1], face[i], face[(i + 1) % k]
            w = face[(i + 2) % k]
            try:
                e_prev = graph.edge_id(a, u)
                e = graph.edge_id(u, v)
                e_next = graph.edge_id(v, w)
            except KeyError as exc:
                raise FacesNotDoubleCover(str(exc)) from None
            contributions[e].append(frozenset({e_prev, e_next}))
    assignment = []
    for eid in range(graph.edge_count):
        pairs = contributions[eid]
        if len(pairs) != 2:
            raise FacesNotDoubleCover(f"edge {eid} covered {len(pairs)} times")
        rho = frozenset(pairs)
        if rho not in pairing_options(graph, eid):
            raise FacesNotDoubleCover(f"faces do not induce a cross pairing at edge {eid}")
        assignment.append(rho)
    pairing = EdgePairing(tuple(assignment))
    if cycle_count(graph, pairing) != len(faces):
        raise FacesNotDoubleCover("induced cover cycle count differs from face count")
    if len(faces) != g + 1:
        raise FacesNotDoubleCover(f"{len(faces)} faces, expected g+1 = {g + 1}")
    return pairing


def orientability(graph, pairing: EdgePairing):
    """(a, euler_characteristic) of the surface glued from the cover cycles.

    a = 0 iff the cover cycles can be oriented so that the two cover edges
    over each base edge traverse it in opposite directions.
    """
    cover = cover_graph(graph, pairing)
    r = len(cover.cycles)
    chi = r + 1 - graph.genus

    corner_vertex = {}
    for v in range(graph.vertex_count):
        e = graph.edges_at(v)
        for pair in itertools.combinations(e, 2):
            corner_vertex[frozenset(pair)] = v

    # Direction of each cover edge when its cycle is walked as listed:
    # +1 means from the corner at the first endpoint toward the second.
    cycle_of = {}
    for ci, walk in enumerate(cover.cycles):
        for corner_idx in walk:
            cycle_of[corner_idx] = ci
    directions = {}  # cover edge index -> (cycle index, +-1)
    edge_lookup = {}
    for k, (c1, c2) in enumerate(cover.cover_edges):
        edge_lookup.setdefault(frozenset({c1, c2}), []).append(k)
    for ci, walk in enumerate(cover.cycles):
        n = len(walk)
        used = set()
        for i in range(n):
            c1, c2 = walk[i], walk[(i + 1) % n]
            candidates = [k for k in edge_lookup.get(frozenset({c1, c2}), []) if k not in used]
            if not candidates:
                continue
            k = candidates[0]
            used.add(k)
            base = cover.covering_map[k]
            u, v = graph.edges[base]
            from_vertex = corner_vertex[cover.corners[c1]]
            directions[k] = (ci, +1 if from_vertex == u else -1)

    # Parity union-find over cycles: orientations o_c with
    # d1*o(c1) = -d2*o(c2) for the two cover edges over each base edge.
    parent = list(range(r))
    parity = [0] * r  # parity to parent

    def find(x):
        if parent[x] == x:
            return x, 0
        root, p = find(parent[x])
        parent[x] = root
        parity[x] ^= p
        return root, parity[x]

    a = 0
    by_base = {}
    for k, (ci, d) in directions.items():
        by_base.setdefault(cover.covering_map[k], []).append((ci, d))
    for base, lst in by_base.items():
        (c1, d1), (c2, d2) = lst
        want = 0 if d1 != d2 else 1  # o1 xor o2
        r1, p1 = find(c1)
        r2, p2 = find(c2)
        if r1 == r2:
            if p1 ^ p2 != want:
                a = 1
                break
        else:
            parent[r1] = r2
            parity[r1] = p1 ^ p2 ^ want
    return a, chi
