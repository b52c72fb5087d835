import math
import warnings
from fractions import Fraction

import pytest

from quantum_seifert.errors import IndexOutOfAlcove, LevelTooSmall
from quantum_seifert.lie.modular_data import (
    anomaly,
    build_modular_data,
    charge_conjugation,
    modular_data_summary,
    omega_forms_agree,
    qdim,
    s_matrix,
    structural_checks,
    t_matrix,
    theta_exponent,
    twist_exponent,
)
from quantum_seifert.lie.root_system import build_root_system


@pytest.fixture
def a1():
    return build_modular_data(build_root_system("A", 1), 5)


def test_a1_rank_and_dimensions(a1):
    r = 5
    assert a1.size == 4
    assert complex(a1.rank_D).real == pytest.approx(math.sqrt(r / 2) / math.sin(math.pi / r))
    assert complex(qdim(a1, (2,))).real == pytest.approx(math.sin(2 * math.pi / r) / math.sin(math.pi / r))
    assert complex(qdim(a1, (1,))).real == pytest.approx(1.0)


def test_a1_central_charge(a1):
    assert a1.central_charge == Fraction(9, 5)


def test_twist_exponents(a1):
    # (lam^2 - 1) / (2r) for su(2)
    assert twist_exponent(a1, (3,)) == Fraction(8, 10)
    assert theta_exponent(a1, (1,)) == Fraction(1, 10) - Fraction(1, 4)


def test_position_outside_alcove(a1):
    with pytest.raises(IndexOutOfAlcove):
        a1.position((5,))


def test_level_below_dual_coxeter():
    with pytest.raises(LevelTooSmall):
        build_modular_data(build_root_system("A", 2), 2)


@pytest.mark.parametrize("family, rank, r, precision", [
    ("A", 1, 7, "double"),
    ("A", 2, 6, "double"),
    ("A", 2, 5, "high"),
    ("D", 4, 7, "double"),
])
def test_structural_identities(family, rank, r, precision):
    md = build_modular_data(build_root_system(family, rank), r, precision)
    for name, residual in structural_checks(md).items():
        assert residual < 1e-9, name
    assert omega_forms_agree(md) < 1e-9


def test_anomaly_is_rank_times_omega_inverse_cubed():
    md = build_modular_data(build_root_system("A", 2), 5)
    expected = complex(md.rank_D) * complex(md.omega) ** -3
    assert abs(complex(anomaly(md)) - expected) < 1e-9


def test_s_matrix_rho_column_holds_dimensions(a1):
    S = s_matrix(a1)
    for lam in a1.index_set:
        assert complex(S[lam, a1.rho]) == pytest.approx(complex(qdim(a1, lam)))


def test_t_matrix_is_diagonal(a1):
    T = t_matrix(a1)
    assert complex(T[(1,), (1,)]) == pytest.approx(1.0)
    assert complex(T[(1,), (2,)]) == 0


def test_charge_conjugation_of_a2():
    md = build_modular_data(build_root_system("A", 2), 5)
    C = charge_conjugation(md)
    assert complex(C[(1, 2), (2, 1)]) == 1
    assert complex(C[(1, 2), (1, 2)]) == 0
    assert md.dual((1, 3)) == (3, 1)


def test_high_precision_matches_double():
    rs = build_root_system("A", 2)
    low = build_modular_data(rs, 6, "double")
    high = build_modular_data(rs, 6, "high")
    assert complex(high.rank_D) == pytest.approx(complex(low.rank_D), rel=1e-12)
    assert s_matrix(high).max_abs_diff(s_matrix(low)) < 1e-12


def test_summary_is_json_ready(a1):
    summary = modular_data_summary(a1, include_matrices=True)
    assert summary["index_set"] == [[1], [2], [3], [4]]
    assert summary["central_charge"] == "9/5"
    assert len(summary["S"]) == 4
    assert summary["S"][0][0] == pytest.approx([complex(s_matrix(a1)[(1,), (1,)]).real,
                                                complex(s_matrix(a1)[(1,), (1,)]).imag])
    assert "S" not in modular_data_summary(a1)


@pytest.mark.parametrize("precision", ["double", "high"])
def test_summary_dims_are_real_parts(precision):
    md = build_modular_data(build_root_system("A", 2), 5, precision)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        summary = modular_data_summary(md)
    assert all(isinstance(x, float) for x in summary["dims"])
    assert summary["dims"][summary["index_set"].index([1, 1])] == pytest.approx(1.0)
    assert summary["rank_D"] == pytest.approx(float(complex(md.rank_D).real))
