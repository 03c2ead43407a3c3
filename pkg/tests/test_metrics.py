import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from design_analyzer.analysis import analyze_sources
from design_analyzer.errors import UnknownClassError
from design_analyzer.metrics import MEASURE_NAMES, nucc, nucd, tnucc, tnucd, visible_members

from helpers import brute_metrics, evidence_rows, random_corpus, star_sources


def analysis_of(*sources: str):
    return analyze_sources([(f"F{i}.java", s) for i, s in enumerate(sources)])


def test_distinct_versus_total_dependencies():
    a = analysis_of("class B { void f(A a, A c) {} }", "class A {}")
    assert nucd(a.evidences, "B") == 1 and tnucd(a.evidences, "B") == 2
    assert nucc(a.evidences, "A") == 1 and tnucc(a.evidences, "A") == 2


def test_isolated_class_measures_zero():
    a = analysis_of("class Z {}", "class B { void f(Z z) {} }", "class Lone {}")
    assert [f(a.evidences, "Lone") for f in (nucd, tnucd, nucc, tnucc)] == [0, 0, 0, 0]


def test_parameter_and_return_of_different_classes():
    a = analysis_of("class B { C f(A a) { return null; } }", "class A {}", "class C {}")
    assert nucd(a.evidences, "B") == 2


def test_three_dependency_kinds_on_one_class():
    a = analysis_of("class B { A f(A a) { A x = null; return x; } }", "class A {}")
    assert tnucd(a.evidences, "B") == 3 and nucd(a.evidences, "B") == 1


def test_used_by_two_clients():
    a = analysis_of("class A {}", "class B { void f(A a) {} }", "class C { void g(A a) {} }")
    assert nucc(a.evidences, "A") == 2 and tnucc(a.evidences, "A") == 2


def test_class_declarations_do_not_feed_dependency_measures():
    a = analysis_of("class B extends A { A a; }", "class A {}")
    assert (nucd(a.evidences, "B"), tnucc(a.evidences, "A")) == (0, 0)
    assert a.table.row("B").class_coupling == 1


def test_unknown_class():
    a = analysis_of("class A {}")
    for f in (nucd, tnucd, nucc, tnucc):
        with pytest.raises(UnknownClassError):
            f(a.evidences, "Missing")
    with pytest.raises(UnknownClassError):
        visible_members(a.model, "Missing")


@pytest.mark.parametrize(
    "src, expected",
    [
        ("class C { public int x; private int y; void m(){} }", 2),
        ("class C {}", 0),
        ("interface C { void a(); int b(); String c(int x); }", 3),
        ("class C { C() {} private C(int x) {} protected static int k; }", 2),
    ],
)
def test_visible_members(src, expected):
    a = analysis_of(src)
    assert visible_members(a.model, "C") == expected


def test_inherited_members_not_counted():
    a = analysis_of("class P { public void a() {} public void b() {} }", "class C extends P { public void c() {} }")
    assert visible_members(a.model, "C") == 1


def test_table_without_evidence():
    a = analysis_of("class A { public int x; }", "class B {}", "class C { void m() {} void n() {} }")
    assert [r.values() for r in a.table.rows] == [(0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 2)]
    assert a.table.measure_names == MEASURE_NAMES


def test_star_table():
    a = analyze_sources(star_sources(5, "H"))
    hub = a.table.row("H")
    assert hub.class_coupling == 5 and (hub.nucc, hub.tnucc) == (0, 0)
    assert a.table.row("Leaf3").class_coupling == 1


def test_single_class_table_shape():
    assert analysis_of("class A {}").table.to_matrix().shape == (1, 6)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_table_matches_brute_force_recount(seed):
    corpus = random_corpus(seed, 5 + seed % 20)
    a = analyze_sources(corpus.files)
    expected = brute_metrics(evidence_rows(a.evidences), a.model.class_names, corpus.visible)
    assert {r.class_name: r.values() for r in a.table.rows} == expected
    # the same recount from the generator's own ground truth
    rows = [k for k, n in corpus.expected.items() for _ in range(n)]
    assert brute_metrics(rows, a.model.class_names, corpus.visible) == expected
    for r in a.table.rows:
        assert r.nucd <= r.tnucd and r.nucc <= r.tnucc


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 100_000))
def test_renaming_files_changes_nothing(seed):
    corpus = random_corpus(seed, 10)
    renamed = [(f"elsewhere/{i:03d}_{p.replace('/', '_')}", s) for i, (p, s) in enumerate(reversed(corpus.files))]
    assert analyze_sources(corpus.files).table == analyze_sources(renamed).table
