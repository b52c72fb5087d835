import cmath
import math
import pickle
from fractions import Fraction

import numpy as np
import pytest

from quantum_seifert.errors import ConfigError
from quantum_seifert.utils.numeric import close_enough, get_backend, to_pair


@pytest.fixture(params=["double", "high"])
def backend(request):
    return get_backend(request.param)


def test_exp_pi_i_reduces_exactly(backend):
    assert complex(backend.exp_pi_i(Fraction(1, 2))) == pytest.approx(1j)
    # a huge even shift must not cost precision
    assert complex(backend.exp_pi_i(Fraction(6 * 10 ** 17 + 1, 3))) == pytest.approx(cmath.exp(1j * math.pi / 3))


def test_exp_pi_i_array(backend):
    values = backend.exp_pi_i_array(np.array([1, 2, -3]), 4)
    expected = [cmath.exp(1j * math.pi * n / 4) for n in (1, 2, -3)]
    assert [complex(v) for v in values] == pytest.approx(expected)
    flipped = backend.exp_pi_i_array(np.array([1]), -4)
    assert complex(flipped[0]) == pytest.approx(cmath.exp(-1j * math.pi / 4))


def test_pi_i_power(backend):
    assert complex(backend.pi_i_power(Fraction(1, 2), 2)) == pytest.approx(-(math.pi / 2) ** 2 / 2)
    assert complex(backend.pi_i_power(3, 0)) == pytest.approx(1)


def test_sums_and_sines(backend):
    assert complex(backend.fsum([1e16, 1.0, -1e16])) == pytest.approx(1.0)
    assert float(backend.sin_pi(Fraction(1, 6))) == pytest.approx(0.5)
    assert float(backend.sqrt(2)) == pytest.approx(math.sqrt(2))


def test_scalar_text_round_trip(backend):
    z = backend.exp_pi_i(Fraction(2, 7)) * backend.sqrt(3)
    assert abs(complex(backend.parse_scalar(backend.format_scalar(z)) - z)) < 1e-15


def test_high_precision_is_private():
    import mpmath
    before = mpmath.mp.dps
    get_backend("high").exp_pi_i(Fraction(1, 3))
    assert mpmath.mp.dps == before
    assert get_backend("high").ctx.dps == 50


def test_backends_survive_pickling():
    assert pickle.loads(pickle.dumps(get_backend("high"))) is get_backend("high")


def test_unknown_precision():
    with pytest.raises(ConfigError):
        get_backend("quad")


def test_close_enough_and_pairs():
    assert close_enough(1.0, 1.0 + 1e-12)
    assert not close_enough(1.0, 1.1)
    assert close_enough(1e-12, -1e-12)
    assert to_pair(1 + 2j) == [1.0, 2.0]
