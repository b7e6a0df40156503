import numpy as np

from qfsurface.limitset import (
    cloud_to_csv,
    cross_ratio_imag_spread,
    limit_set,
)
from qfsurface.moebius import apply
from qfsurface.presentation import PantsDecompositionGraph
from qfsurface.surface import FNCoordinates, holonomy, twist_flow
from qfsurface.words import reduce_word, reduced_words_up_to


def standard_graph():
    return PantsDecompositionGraph(2, [
        ("alpha1", (0, 0), (1, 0)),
        ("alpha2", (0, 1), (1, 1)),
        ("alpha3", (0, 2), (1, 2)),
    ])


FN = FNCoordinates([2.0, 2.5, 3.0], [0.3, -0.4, 0.1])


def test_reduced_word_count():
    # 2k (2k-1)^(L-1) reduced words of length exactly L over k generators
    k = 4
    for depth in (1, 2, 3):
        words = [w for w in reduced_words_up_to(k, depth) if len(w) == depth]
        assert len(words) == 2 * k * (2 * k - 1) ** (depth - 1)


def test_depth_one_point_count():
    rep = holonomy(standard_graph(), FN)
    cloud = limit_set(rep, 1)
    assert len(cloud) <= 2 * 4  # at most one point per generator letter


def test_fuchsian_cloud_is_round():
    rep = holonomy(standard_graph(), FN)
    cloud = limit_set(rep, 6)
    assert len(cloud) > 500
    rng = np.random.RandomState(8801)
    assert cross_ratio_imag_spread(cloud, 200, rng) <= 1e-8


def test_bent_cloud_is_not_round_but_traces_fixed():
    graph = standard_graph()
    bent_fn = twist_flow(FN, 0, 0.2j)
    rep = holonomy(graph, bent_fn)
    cloud = limit_set(rep, 6)
    rng = np.random.RandomState(8802)
    assert cross_ratio_imag_spread(cloud, 200, rng) >= 1e-3

    base = holonomy(graph, FN)
    for label in graph.curve_labels:
        tr_base = base.evaluate(base.curve_word(label)).trace()
        tr_bent = rep.evaluate(rep.curve_word(label)).trace()
        assert abs(tr_base - tr_bent) <= 1e-10


def test_cloud_group_invariance():
    rep = holonomy(standard_graph(), FN)
    depth = 5
    cloud = limit_set(rep, depth)
    from qfsurface.limitset import _attracting_fixed_point

    for letter in (1, -1, 2, 3):
        matrix = rep.images[abs(letter)].astype(complex)
        if letter < 0:
            matrix = np.linalg.inv(matrix)
        mapping_words = [w for w in reduced_words_up_to(4, depth - 1)]
        checked = 0
        for word in mapping_words[:200]:
            conj = reduce_word((letter,) + word + (-letter,))
            if len(conj) > depth:
                continue
            m = rep.matrix_of_word(word).astype(complex)
            point = _attracting_fixed_point(m)
            if point is None:
                continue
            vec = matrix @ np.array([point.z, point.w])
            from qfsurface.moebius import ProjectivePoint

            moved = ProjectivePoint(vec[0], vec[1])
            assert cloud.contains(moved, 1e-8)
            checked += 1
        assert checked > 20


def test_cloud_deduplication_and_csv():
    rep = holonomy(standard_graph(), FN)
    cloud = limit_set(rep, 4)
    for i, (p, _) in enumerate(cloud.points):
        for q, _ in cloud.points[i + 1:]:
            assert p.chordal_distance(q) > 1e-10
    text = cloud_to_csv(cloud)
    lines = text.strip().split("\n")
    assert lines[0] == "re,im,word_length"
    assert len(lines) >= len(cloud.finite_points())
