import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from design_analyzer.analysis import analyze_sources
from design_analyzer.errors import GraphConsistencyError, UnknownClassError, ValidationError
from design_analyzer.graph import (
    CcigView,
    Edge,
    InteractionGraph,
    add_virtual_module,
    build_graph,
    class_coupling,
    client_coupling,
    server_coupling,
)
from design_analyzer.interactions import CLASS_CLASS_KINDS, InteractionKind

from helpers import random_corpus, star_sources

K = InteractionKind


def graph_of(*sources: str) -> InteractionGraph:
    return analyze_sources([(f"F{i}.java", s) for i, s in enumerate(sources)]).graph


def star(leaves: int) -> InteractionGraph:
    return analyze_sources(star_sources(leaves, "H")).graph


def test_single_class_graph():
    g = graph_of("class A {}")
    assert g.nodes == ("A",) and g.edges == ()


def test_parallel_evidence_collapses():
    g = graph_of("class B { void f(A a, A c) {} }", "class A {}")
    assert g.edges == (Edge("B", "A", K.PARAMETER, 2),)


def test_distinct_kinds_stay_distinct():
    g = graph_of("class B extends A { A a; }", "class A {}")
    assert {(e.kind, e.evidence_count) for e in g.edges} == {(K.OBJECT_DECLARATION, 1), (K.INHERITANCE, 1)}


def test_star_corpus_shape():
    g = star(5)
    assert len(g.nodes) == 6
    assert all(e.target == "H" and e.kind is K.OBJECT_DECLARATION for e in g.edges) and len(g.edges) == 5
    assert client_coupling(g, "H") == 0
    assert server_coupling(g, "H") == 5
    assert class_coupling(g, "H") == 5


def test_isolated_class_couplings_are_zero():
    g = graph_of("class A {}", "class B {}")
    assert (client_coupling(g, "A"), server_coupling(g, "A"), class_coupling(g, "A")) == (0, 0, 0)


def test_client_and_server_counts():
    g = graph_of("class B extends A { C c = new C(); }", "class A {}", "class C {}")
    assert client_coupling(g, "B") == 2
    assert server_coupling(g, "A") == 1


def test_mutual_pair_counts_both_directions():
    g = graph_of("class B extends A {}", "class A { B b; }")
    assert class_coupling(g, "B") == 2


def test_partner_counted_once_per_direction():
    g = graph_of("class B extends A { A a; A other; }", "class A {}")
    assert client_coupling(g, "B") == 1


def test_dependency_edges_do_not_count_for_class_coupling():
    g = graph_of("class B { A f(A a) { A x = null; return x; } }", "class A {}")
    assert len(g.edges) == 3 and class_coupling(g, "B") == 0
    assert isinstance(g.ccig(), CcigView) and g.ccig().edges == ()


def test_unknown_class_queries():
    g = graph_of("class A {}")
    for f in (client_coupling, server_coupling, class_coupling):
        with pytest.raises(UnknownClassError):
            f(g, "Nope")


def test_inconsistent_edges_rejected():
    with pytest.raises(GraphConsistencyError):
        InteractionGraph(("A",), (Edge("A", "B", K.PARAMETER, 1),))
    with pytest.raises(GraphConsistencyError):
        InteractionGraph(("A",), (Edge("A", "A", K.PARAMETER, 1),))


def test_virtual_module_single_target():
    g = graph_of("class Hub { Info i; }", "class Info {}")
    g2 = add_virtual_module(g, "StatusArea", ["Info"])
    assert len(g2.nodes) == len(g.nodes) + 1 and len(g2.edges) == len(g.edges) + 1
    assert class_coupling(g2, "Info") == class_coupling(g, "Info") + 1
    assert Edge("StatusArea", "Info", K.OBJECT_DECLARATION, 1) in g2.edges


def test_virtual_module_without_targets_changes_nothing():
    g = star(3)
    g2 = add_virtual_module(g, "New", [])
    assert all(class_coupling(g2, n) == class_coupling(g, n) for n in g.nodes)
    assert class_coupling(g2, "New") == 0


def test_virtual_module_three_targets():
    g = star(4)
    targets = ["Leaf1", "Leaf2", "H"]
    g2 = add_virtual_module(g, "New", targets)
    for t in targets:
        assert server_coupling(g2, t) == server_coupling(g, t) + 1
    assert client_coupling(g2, "New") == 3


def test_virtual_module_validation_and_immutability():
    g = star(2)
    snapshot = (g.nodes, g.edges)
    with pytest.raises(ValidationError):
        add_virtual_module(g, "H", [])
    with pytest.raises(ValidationError):
        add_virtual_module(g, "New", ["Missing"])
    add_virtual_module(g, "New", ["H"], K.INHERITANCE)
    g.ccig()
    assert (g.nodes, g.edges) == snapshot


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_degree_conservation_and_subgraph_soundness(seed):
    g = analyze_sources(random_corpus(seed, 6 + seed % 15).files).graph
    view = g.ccig()
    pairs = {(e.source, e.target) for e in view.edges}
    assert sum(client_coupling(g, n) for n in g.nodes) == len(pairs)
    assert sum(server_coupling(g, n) for n in g.nodes) == len(pairs)
    assert set(view.edges) == {e for e in g.edges if e.kind in CLASS_CLASS_KINDS}
    assert all(e.evidence_count >= 1 for e in g.edges)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_virtual_module_locality(seed, data):
    g = analyze_sources(random_corpus(seed, 10).files).graph
    targets = data.draw(st.lists(st.sampled_from(g.nodes), unique=True, max_size=4))
    g2 = add_virtual_module(g, "Virtual", targets)
    for n in g.nodes:
        delta = class_coupling(g2, n) - class_coupling(g, n)
        # a target already pointing at nothing new still gains the new client
        assert delta == (1 if n in targets else 0)
