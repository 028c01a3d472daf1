import pytest

from indom import (
    Graph,
    build_graph,
    mask_to_list,
    verify_certificate,
)
from indom.cograph import (
    ClassMismatchError,
    Cotree,
    P4Witness,
    LEAF,
    UNION,
    JOIN,
    build_cotree,
    is_cograph,
    cotree_to_graph,
    cotree_component_count,
    gamma_cograph,
    gamma_i_cograph,
    parse_cotree,
    serialize_cotree,
    validate_cotree,
)
from indom.oracle import gamma
from indom.generators import cycle, gnp, path, random_cograph, random_cotree
from indom.graph import connected_components


def k4():
    return Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


class TestBuildCotree:
    def test_c4_shape(self):
        t = build_cotree(cycle(4))
        assert t.root.label == JOIN
        assert len(t.root.children) == 2
        parts = []
        for child in t.root.children:
            assert child.label == UNION
            assert len(child.children) == 2
            parts.append(sorted(leaf.vertex for leaf in child.children))
        assert sorted(parts) == [[0, 2], [1, 3]]

    def test_p4_witness(self):
        result = build_cotree(path(4))
        assert isinstance(result, P4Witness)
        assert result.vertices == (0, 1, 2, 3)

    def test_random_cographs_reconstruct(self):
        for seed in range(30):
            n = 5 + seed * 6
            made = random_cograph(min(n, 200), seed)
            t = build_cotree(made.graph)
            assert isinstance(t, Cotree)
            validate_cotree(t)
            assert cotree_to_graph(t) == made.graph

    def test_witness_always_induces_p4(self):
        found = 0
        for seed in range(60):
            g = gnp(9, 0.45, seed)
            result = build_cotree(g)
            if isinstance(result, Cotree):
                continue
            found += 1
            a, b, c, d = result.vertices
            assert g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d)
            assert not g.has_edge(a, c) and not g.has_edge(a, d) and not g.has_edge(b, d)
        assert found > 10


class TestGammaCograph:
    def test_k4(self):
        assert gamma_cograph(build_cotree(k4())) == 1

    def test_c4(self):
        assert gamma_cograph(build_cotree(cycle(4))) == 2

    def test_union_adds(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        assert gamma_cograph(build_cotree(g)) == 2

    def test_matches_oracle(self):
        for seed in range(60):
            t = random_cotree(4 + seed % 11, seed)
            g = cotree_to_graph(t)
            assert gamma_cograph(build_cotree(g)) == gamma(g)[0]


class TestGammaICograph:
    def test_connected_is_one(self):
        assert gamma_i_cograph(k4())[0] == 1
        assert gamma_i_cograph(cycle(4))[0] == 1

    def test_component_count(self):
        g = build_graph(5, [(0, 1), (2, 3)])
        value, cert = gamma_i_cograph(g)
        assert value == 3
        assert verify_certificate(g, cert)

    def test_single_vertex(self):
        assert gamma_i_cograph(Graph(1))[0] == 1

    def test_rejects_non_cograph(self):
        with pytest.raises(ClassMismatchError) as err:
            gamma_i_cograph(path(4))
        assert isinstance(err.value.witness, P4Witness)

    def test_equals_component_count_always(self):
        for seed in range(40):
            made = random_cograph(4 + seed % 11, seed)
            value, cert = gamma_i_cograph(made.graph)
            assert value == len(connected_components(made.graph))
            assert verify_certificate(made.graph, cert)

    def test_certificates_deterministic(self):
        made = random_cograph(12, 5)
        first = gamma_i_cograph(made.graph)
        second = gamma_i_cograph(made.graph)
        assert first == second

    def test_certificate_takes_lex_least_maximal_set(self):
        from indom.graph import bits

        for seed in range(20):
            made = random_cograph(10, seed)
            g = made.graph
            _, cert = gamma_i_cograph(g)
            for comp in connected_components(g):
                greedy = 0
                for v in bits(comp):
                    if g.row[v] & greedy == 0:
                        greedy |= 1 << v
                assert cert.independent_set & comp == greedy


class TestCotreeFormat:
    def test_round_trip(self):
        for seed in range(10):
            t = random_cotree(9, seed)
            text = serialize_cotree(t)
            back = parse_cotree(text)
            assert cotree_to_graph(back) == cotree_to_graph(t)

    def test_component_count_from_tree(self):
        for seed in range(20):
            t = random_cotree(10, seed)
            g = cotree_to_graph(t)
            assert cotree_component_count(t) == len(connected_components(g))
