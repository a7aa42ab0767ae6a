"""Tree construction, queries, rays, validation."""

import pytest

from qcayley.cayley import (
    GeodesicRay,
    build_tree,
    canonical_ray_pattern,
    geodesic,
    sphere,
    validate,
)
from qcayley.errors import TreeSizeError
from qcayley.fusion import Direction, TRIVIAL, ao_irrep, au_word, parse_spec, quantum_dim
from qcayley._core import backends


def test_half_line_shape():
    tree = build_tree(parse_spec("Ao(3)"), 5)
    assert tree.n_vertices == 6
    assert sum(1 for _ in tree.edges()) == 10  # both orientations
    assert [tree.length(v) for v in range(6)] == list(range(6))
    assert [int(tree.dim(v)) for v in range(6)] == [1, 3, 8, 21, 55, 144]


def test_unitary_binary_tree_shape():
    tree = build_tree(parse_spec("Au(3)"), 2)
    words = {tree.word(v) for v in range(tree.n_vertices)}
    assert words == {TRIVIAL, au_word("u"), au_word("U"), au_word("uu"),
                     au_word("uU"), au_word("Uu"), au_word("UU")}
    # every non-root vertex has exactly two ascending children stored
    deep = build_tree(parse_spec("Au(3)"), 3)
    for v in deep.sphere_ids(1):
        kids = [c for c in range(deep.n_vertices) if c and deep.parent(c)[0] == v]
        assert len(kids) == 2


def test_radius_zero():
    tree = build_tree(parse_spec("Ao(3)*Au(3)"), 0)
    assert tree.n_vertices == 1
    assert list(tree.edges()) == []


def test_sphere_counts_and_errors():
    tree = build_tree(parse_spec("Au(3)"), 4)
    assert len(sphere(tree, 2)) == 4
    assert sphere(tree, 0) == [TRIVIAL]
    half = build_tree(parse_spec("Ao(3)"), 7)
    assert all(len(sphere(half, n)) == 1 for n in range(8))
    with pytest.raises(ValueError):
        sphere(tree, 5)


def test_geodesic_half_line():
    tree = build_tree(parse_spec("Ao(3)"), 5)
    path = geodesic(tree, ao_irrep(3))
    assert [(e.source, e.target) for e in path] == \
        [(ao_irrep(0), ao_irrep(1)), (ao_irrep(1), ao_irrep(2)), (ao_irrep(2), ao_irrep(3))]
    assert all(e.ascending for e in path)


def test_geodesic_directions_match_letters():
    tree = build_tree(parse_spec("Au(3)"), 4)
    path = geodesic(tree, au_word("uU"))
    assert [e.direction for e in path] == [Direction(0, 1), Direction(0, -1)]
    assert geodesic(tree, TRIVIAL) == []


def test_geodesic_alternates_factors_exactly_when_letters_do():
    spec = parse_spec("Ao(3)*Au(3)")
    tree = build_tree(spec, 6)
    for v in range(tree.n_vertices):
        dirs = [e.direction for e in geodesic(tree, v)]
        word = tree.word(v)
        expanded = []
        for fidx, payload in word.word:
            expanded.extend([fidx] * (payload if isinstance(payload, int) else len(payload)))
        assert [d.factor for d in dirs] == expanded


def test_vertex_lookup_round_trip():
    tree = build_tree(parse_spec("Ao(3)*Au(3)"), 5)
    for v in range(tree.n_vertices):
        assert tree.vertex_id(tree.word(v)) == v
    assert au_word("uuuuuuuu") not in tree


def test_vertex_cap_raises_instead_of_truncating():
    with pytest.raises(TreeSizeError, match="vertex cap"):
        build_tree(parse_spec("Au(3)"), 20, max_vertices=1000)


def test_validate_clean_trees():
    for text in ("Ao(3)", "Au(3)", "Ao(3)*Au(3)", "Ao(7/2)"):
        report = validate(build_tree(parse_spec(text), 4))
        assert report.ok, report.issues


def test_rational_dimension_tree():
    tree = build_tree(parse_spec("Ao(7/2)"), 4)
    from qcayley.scalars import QQ

    assert tree.dim(2) == QQ(45, 4)
    assert validate(tree).ok


def test_infinite_geodesic_lazy_ray():
    spec = parse_spec("Au(3)")
    ray = GeodesicRay(spec, canonical_ray_pattern(spec), 4)
    assert ray.words() == [TRIVIAL, au_word("u"), au_word("uU"), au_word("uUu"), au_word("uUuU")]
    assert [int(ray.dim(i)) for i in range(5)] == [1, 3, 8, 21, 55]
    # dims along the ray agree with the letterwise product
    for i in range(5):
        assert ray.dim(i) == quantum_dim(spec, ray.word(i))


def test_ray_patterns_for_mixed_products():
    spec = parse_spec("Ao(3)*Ao(3)")
    ray = GeodesicRay(spec, canonical_ray_pattern(spec), 4)
    assert [int(ray.dim(i)) for i in range(5)] == [1, 3, 9, 27, 81]


def test_iter_ray_is_unbounded_and_lazy():
    from itertools import islice

    from qcayley.cayley import iter_ray

    spec = parse_spec("Au(3)")
    steps = list(islice(iter_ray(spec), 6))
    assert [w for w, _ in steps] == [TRIVIAL, au_word("u"), au_word("uU"),
                                     au_word("uUu"), au_word("uUuU"), au_word("uUuUu")]
    assert [int(d) for _, d in steps] == [1, 3, 8, 21, 55, 144]


def test_kernel_twins_agree_on_bfs():
    impls = backends()
    if "compiled" not in impls:
        pytest.skip("compiled kernels unavailable")
    args = ([0, 0, 1], [1, -1, 0], [False, True], [3, 4], 6, 10**6)
    outs = {name: impl.bfs_tree(*args) for name, impl in impls.items()}
    a, b = outs["compiled"], outs["python"]
    assert all(list(x) == list(y) for x, y in zip(a, b))
