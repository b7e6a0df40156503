import numpy as np
import pytest

from qfsurface.presentation import (
    MalformedGraph,
    PantsDecompositionGraph,
    build_presentation,
)
from qfsurface.words import exponent_sums, reduce_word



def standard_genus2_graph():
    return PantsDecompositionGraph(2, [
        ("alpha1", (0, 0), (1, 0)),
        ("alpha2", (0, 1), (1, 1)),
        ("alpha3", (0, 2), (1, 2)),
    ])


def separating_genus2_graph():
    return PantsDecompositionGraph(2, [
        ("alpha1", (0, 0), (0, 1)),
        ("alpha2", (0, 2), (1, 0)),
        ("alpha3", (1, 1), (1, 2)),
    ])


def genus3_graph():
    return PantsDecompositionGraph(4, [
        ("c1", (0, 0), (0, 1)),
        ("c2", (0, 2), (1, 0)),
        ("c3", (1, 1), (2, 0)),
        ("c4", (1, 2), (2, 1)),
        ("c5", (2, 2), (3, 0)),
        ("c6", (3, 1), (3, 2)),
    ])


def random_trivalent_graph(rng, genus):
    """Random perfect matching on the cuff set, retried until valid."""
    num_pants = 2 * genus - 2
    while True:
        cuffs = [(v, c) for v in range(num_pants) for c in (0, 1, 2)]
        rng.shuffle(cuffs)
        gluings = []
        ok = True
        for k in range(0, len(cuffs), 2):
            a, b = cuffs[k], cuffs[k + 1]
            if a == b:
                ok = False
                break
            gluings.append((f"e{k // 2:02d}", a, b))
        if not ok:
            continue
        try:
            return PantsDecompositionGraph(num_pants, gluings)
        except MalformedGraph:
            continue


def assert_standard_relator(pres):
    expected = []
    for k in range(pres.genus):
        a, b = 2 * k + 1, 2 * k + 2
        expected.extend((a, b, -a, -b))
    assert pres.relator == tuple(expected)


def test_genus2_counts():
    pres = build_presentation(standard_genus2_graph())
    assert pres.genus == 2
    assert pres.num_generators == 4
    assert len(pres.relator) == 8
    assert_standard_relator(pres)
    assert len(pres.marking) == 3
    for word in pres.marking.values():
        assert word == reduce_word(word) and len(word) > 0


def test_genus3_counts():
    pres = build_presentation(genus3_graph())
    assert pres.genus == 3
    assert pres.num_generators == 6
    assert len(pres.relator) == 12
    assert_standard_relator(pres)
    assert len(pres.marking) == 6


def test_separating_curve_abelianization():
    pres = build_presentation(separating_genus2_graph())
    assert_standard_relator(pres)
    sums = {
        label: exponent_sums(word, pres.num_generators)
        for label, word in pres.marking.items()
    }
    # alpha2 separates the two handles: trivial in homology
    assert sums["alpha2"] == (0, 0, 0, 0)
    assert sums["alpha1"] != (0, 0, 0, 0)
    assert sums["alpha3"] != (0, 0, 0, 0)


def test_nonseparating_curves_standard_graph():
    pres = build_presentation(standard_genus2_graph())
    nontrivial = [
        label for label, word in pres.marking.items()
        if exponent_sums(word, 4) != (0, 0, 0, 0)
    ]
    # in the standard genus-2 decomposition no curve separates
    assert len(nontrivial) == 3


def test_determinism():
    p1 = build_presentation(standard_genus2_graph())
    p2 = build_presentation(standard_genus2_graph())
    assert p1.relator == p2.relator
    assert p1.marking == p2.marking
    assert p1.generator_assembly_words == p2.generator_assembly_words


def test_random_graphs_all_reach_standard_form():
    rng = np.random.RandomState(1700 + 1)
    for genus in (2, 3, 4):
        for _ in range(8):
            graph = random_trivalent_graph(rng, genus)
            pres = build_presentation(graph)
            assert_standard_relator(pres)
            assert len(pres.marking) == 3 * genus - 3
            for word in pres.marking.values():
                assert word == reduce_word(word) and len(word) > 0


def test_word_string_round_trip():
    pres = build_presentation(standard_genus2_graph())
    word = (1, -2, 3, 4, -1)
    assert pres.word_from_string(pres.word_to_string(word)) == word
    assert pres.word_from_string("a1*B1*a2") == (1, -2, 3)


def test_malformed_graphs_rejected():
    with pytest.raises(MalformedGraph):
        PantsDecompositionGraph(2, [
            ("a", (0, 0), (1, 0)),
            ("b", (0, 1), (1, 1)),
        ])  # missing an edge
    with pytest.raises(MalformedGraph):
        PantsDecompositionGraph(2, [
            ("a", (0, 0), (1, 0)),
            ("b", (0, 1), (1, 1)),
            ("c", (0, 1), (1, 2)),  # cuff (0,1) used twice
        ])
    with pytest.raises(MalformedGraph):
        PantsDecompositionGraph(4, [
            ("a", (0, 0), (0, 1)),
            ("b", (0, 2), (1, 0)),
            ("c", (1, 1), (1, 2)),
            ("d", (2, 0), (2, 1)),
            ("e", (2, 2), (3, 0)),
            ("f", (3, 1), (3, 2)),
        ])  # two genus-2 components, disconnected
