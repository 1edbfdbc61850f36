import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher, categorical_edge_match, categorical_node_match

from paulibks.automorphism import (
    LayeredGraph,
    automorphism_group,
    automorphism_order,
    canonical_labeling,
    graph_certificate,
    is_automorphism,
)
from paulibks.errors import CapabilityError
from paulibks.geometry import rook_graph, triangular_graph
from paulibks.graph import OrthoGraph, build_graph
from paulibks.rays import all_rays, real_rays


def from_nx(h: nx.Graph) -> OrthoGraph:
    h = nx.convert_node_labels_to_integers(h)
    return OrthoGraph.from_edges(h.number_of_nodes(), h.edges())


def to_nx(g: OrthoGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def vf2_count(h: nx.Graph, **kw) -> int:
    return sum(1 for _ in GraphMatcher(h, h, **kw).isomorphisms_iter())


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return OrthoGraph.from_edges(n, chosen)


NAMED = [
    ("petersen", nx.petersen_graph(), 120),
    ("cube", nx.hypercube_graph(3), 48),
    ("cycle5", nx.cycle_graph(5), 10),
    ("k4", nx.complete_graph(4), 24),
    ("empty5", nx.empty_graph(5), 120),
    ("star", nx.star_graph(4), 24),
    ("path4", nx.path_graph(4), 2),
]


class TestOrder:
    @pytest.mark.parametrize("name,h,order", NAMED, ids=[n for n, _, _ in NAMED])
    def test_named_graphs(self, name, h, order):
        assert vf2_count(h) == order
        assert automorphism_order(from_nx(h)) == order

    def test_rook_and_triangular(self):
        assert automorphism_order(rook_graph(3)) == 72
        assert automorphism_order(triangular_graph(5)) == 120

    def test_empty_graph_of_one_vertex(self):
        assert automorphism_order(OrthoGraph(1, (0,))) == 1

    @pytest.mark.parametrize("m,order", [(1, 8), (2, 1152)])
    def test_ray_graphs_against_vf2(self, m, order):
        g = build_graph(real_rays(all_rays(m)))
        assert vf2_count(to_nx(g)) == order
        assert automorphism_order(g) == order

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_matches_vf2(self, g):
        assert automorphism_order(g) == vf2_count(to_nx(g))

    @given(small_graphs(6), st.data())
    @settings(max_examples=40, deadline=None)
    def test_vertex_colours(self, g, data):
        colors = data.draw(st.lists(st.integers(0, 1), min_size=g.vertex_count, max_size=g.vertex_count))
        h = to_nx(g)
        nx.set_node_attributes(h, dict(enumerate(colors)), "c")
        assert automorphism_order(g, colors) == vf2_count(h, node_match=categorical_node_match("c", None))

    def test_layered_graph(self):
        # 4-cycle where the two diagonals carry a second edge colour
        w = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]
        assert automorphism_order(LayeredGraph.from_weights(w)) == 8
        w[0][1] = w[1][0] = 3
        g = LayeredGraph.from_weights(w)
        h = nx.Graph()
        for a in range(4):
            for b in range(a + 1, 4):
                h.add_edge(a, b, w=w[a][b])
        assert automorphism_order(g) == vf2_count(h, edge_match=categorical_edge_match("w", None)) == 2

    @pytest.mark.parametrize("m", [2, 3])
    def test_invariant_under_relabeling(self, m):
        g = build_graph(real_rays(all_rays(m)))
        base = automorphism_order(g)
        rng = random.Random(m)
        for _ in range(10):
            perm = list(range(g.vertex_count))
            rng.shuffle(perm)
            assert automorphism_order(g.relabel(perm)) == base

    def test_generators_are_automorphisms(self):
        g = build_graph(real_rays(all_rays(3)))
        group = automorphism_group(g)
        assert group.order == 2580480
        assert all(is_automorphism(g, p) for p in group.generators)
        assert group.order == math.prod(group.orbit_sizes)

    def test_bound(self):
        with pytest.raises(CapabilityError):
            automorphism_order(OrthoGraph(10, (0,) * 10), max_vertices=5)

    def test_is_automorphism(self):
        p3 = OrthoGraph.from_edges(3, [(0, 1), (1, 2)])
        assert is_automorphism(p3, [2, 1, 0])
        assert not is_automorphism(p3, [1, 0, 2])


class TestCertificate:
    def test_path_vs_triangle(self):
        p3 = OrthoGraph.from_edges(3, [(0, 1), (1, 2)])
        k3 = OrthoGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert graph_certificate(p3) != graph_certificate(k3)

    @given(small_graphs(), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_relabel_invariant(self, g, rng):
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        assert graph_certificate(g.relabel(perm)) == graph_certificate(g)

    @given(small_graphs(6), small_graphs(6))
    @settings(max_examples=80, deadline=None)
    def test_equal_iff_isomorphic(self, a, b):
        same = graph_certificate(a) == graph_certificate(b)
        assert same == nx.is_isomorphic(to_nx(a), to_nx(b))

    def test_labeling_is_permutation(self):
        cert, order = canonical_labeling(nx_petersen := from_nx(nx.petersen_graph()))
        assert sorted(order) == list(range(10))
        assert graph_certificate(nx_petersen) == cert

    def test_rook_against_regular_lookalike(self):
        # circulant C9(1, 2) is 4-regular on 9 vertices like the rook graph, but not isomorphic
        lookalike = nx.circulant_graph(9, [1, 2])
        assert not nx.is_isomorphic(lookalike, to_nx(rook_graph(3)))
        assert graph_certificate(rook_graph(3)) != graph_certificate(from_nx(lookalike))
        assert graph_certificate(rook_graph(3)) == graph_certificate(
            from_nx(nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(3))))

    def test_bound(self):
        with pytest.raises(CapabilityError):
            graph_certificate(OrthoGraph(300, (0,) * 300))
