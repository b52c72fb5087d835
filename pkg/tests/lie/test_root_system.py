import pytest

from quantum_seifert.errors import LevelTooSmall, UnsupportedType, WeylGroupTooLarge, ZeroModulus
from quantum_seifert.lie.root_system import (
    alcove_weights,
    build_root_system,
    closed_alcove_weights,
    coset_reps_root_lattice,
    describe,
    dual_weight,
    in_root_lattice,
    inner,
    is_interior,
    rho_norm_sq,
    weyl_elements,
    weyl_group_order,
    weyl_orbit_images,
)


@pytest.mark.parametrize("family, rank, h, n_pos, order", [
    ("A", 1, 2, 1, 2),
    ("A", 2, 3, 3, 6),
    ("A", 3, 4, 6, 24),
    ("D", 4, 6, 12, 192),
    ("E", 6, 12, 36, 51840),
])
def test_basic_invariants(family, rank, h, n_pos, order):
    rs = build_root_system(family, rank)
    assert rs.dual_coxeter == h
    assert rs.num_pos_roots == n_pos
    assert rs.dim_g == rank + 2 * n_pos
    assert weyl_group_order(rs) == order
    assert rs.rho == (1,) * rank


def test_a2_inner_products():
    rs = build_root_system("A", 2)
    assert rs.det_cartan == 3
    assert inner(rs, (1, 0), (1, 0)) == pytest.approx(2 / 3)
    assert inner(rs, (1, 0), (0, 1)) == pytest.approx(1 / 3)
    # |rho|^2 = dim(g) * h / 12
    assert rho_norm_sq(rs) == 2


def test_rho_norm_matches_freudenthal_de_vries():
    for family, rank in [("A", 1), ("A", 4), ("D", 5), ("E", 6)]:
        rs = build_root_system(family, rank)
        assert rho_norm_sq(rs) * 12 == rs.dim_g * rs.dual_coxeter


def test_simple_roots_have_norm_two():
    rs = build_root_system("D", 4)
    for alpha in rs.simple_roots:
        assert inner(rs, alpha, alpha) == 2
    assert inner(rs, rs.highest_root, rs.highest_root) == 2


def test_lowercase_family_is_accepted():
    assert build_root_system("a", 2).name == "A2"


@pytest.mark.parametrize("family, rank", [("B", 2), ("G", 2), ("D", 3), ("E", 9), ("A", 0)])
def test_unsupported_types(family, rank):
    with pytest.raises(UnsupportedType):
        build_root_system(family, rank)


def test_weyl_elements_of_a2():
    rs = build_root_system("A", 2)
    elements = weyl_elements(rs)
    assert len(elements) == 6
    assert elements[0].length == 0
    assert sum(w.det_sign for w in elements) == 0
    assert max(w.length for w in elements) == rs.num_pos_roots


def test_weyl_orbit_of_rho_is_regular():
    rs = build_root_system("A", 2)
    images = {tuple(x) for x in weyl_orbit_images(rs, rs.rho)}
    assert len(images) == 6
    assert (-1, -1) in images


def test_weyl_group_cap():
    rs = build_root_system("E", 8)
    with pytest.raises(WeylGroupTooLarge) as exc:
        weyl_elements(rs, cap=1000)
    assert exc.value.order == 696729600


def test_alcove_of_a1():
    rs = build_root_system("A", 1)
    assert alcove_weights(rs, 5) == [(1,), (2,), (3,), (4,)]


def test_alcove_of_a2():
    rs = build_root_system("A", 2)
    assert alcove_weights(rs, 4) == [(1, 1), (1, 2), (2, 1)]
    assert alcove_weights(rs, 3) == [(1, 1)]
    assert len(closed_alcove_weights(rs, 1)) == 3


def test_alcove_below_dual_coxeter():
    rs = build_root_system("A", 2)
    with pytest.raises(LevelTooSmall):
        alcove_weights(rs, 2)


def test_interior_points():
    rs = build_root_system("A", 2)
    assert is_interior(rs, (1, 2), 4)
    assert not is_interior(rs, (2, 2), 4)
    assert not is_interior(rs, (0, 1), 4)


def test_root_lattice_membership():
    rs = build_root_system("A", 2)
    assert in_root_lattice(rs, (2, -1))
    assert in_root_lattice(rs, (1, 1))
    assert not in_root_lattice(rs, (1, 0))


def test_coset_representatives():
    rs = build_root_system("A", 2)
    reps = coset_reps_root_lattice(rs, 3)
    assert len(reps) == 9
    assert all(in_root_lattice(rs, v) for v in reps)
    assert len(coset_reps_root_lattice(rs, -2)) == 4
    with pytest.raises(ZeroModulus):
        coset_reps_root_lattice(rs, 0)


def test_dual_weight():
    assert dual_weight(build_root_system("A", 2), (1, 2)) == (2, 1)
    assert dual_weight(build_root_system("A", 1), (3,)) == (3,)
    assert dual_weight(build_root_system("D", 4), (1, 2, 3, 4)) == (1, 2, 3, 4)


def test_describe_is_json_ready():
    summary = describe(build_root_system("A", 2))
    assert summary["cartan"] == [[2, -1], [-1, 2]]
    assert summary["gram_weights"] == [["2/3", "1/3"], ["1/3", "2/3"]]
    assert summary["weyl_group_order"] == 6
    assert summary["vol_root_lattice"] == pytest.approx(3 ** 0.5)
