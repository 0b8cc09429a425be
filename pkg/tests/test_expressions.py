from fractions import Fraction

import pytest

from supcomp.errors import BackendError, UsageError
from supcomp.kernel.scalars import Backend
from supcomp.services.expressions import evaluate
from supcomp.services.model_loader import load_model, materialize


@pytest.fixture
def model(coin_flips_path):
    return materialize(load_model(coin_flips_path))


def strings(model, expression):
    return evaluate(model, expression).to_strings()


class TestVectorExpressions:
    @pytest.mark.parametrize(
        "expression, expected",
        [
            ("x & y", ["1", "3", "0", "0"]),
            ("x | y", ["2", "inf", "1/4", "1/2"]),
            ("x + y", ["3", "inf", "1/4", "1/2"]),
            ("x - u", ["0", "inf", "-2", "1/2"]),
            ("2 * u", ["2", "-2", "4", "0"]),
            ("u / 2", ["1/2", "-1/2", "1", "0"]),
            ("-u", ["-1", "1", "-2", "0"]),
            ("x * y", ["2", "inf", "0", "0"]),
            ("pos(u)", ["1", "0", "2", "0"]),
            ("neg(u)", ["0", "1", "0", "0"]),
            ("abs(u)", ["1", "1", "2", "0"]),
            ("trunc(x, 2)", ["1", "2", "0", "1/2"]),
            ("infpart(x)", ["0", "inf", "0", "0"]),
            ("finpart(x)", ["1", "0", "0", "1/2"]),
            ("proj(u, x)", ["1", "inf", "0", "0"]),
            ("e + top", ["inf", "inf", "inf", "inf"]),
        ],
    )
    def test_operations(self, model, expression, expected):
        assert strings(model, expression) == expected

    def test_expectations(self, model):
        assert strings(model, "E(flips, 1, x)") == ["inf", "inf", "1/4", "1/4"]
        assert strings(model, "E(flips, y)") == ["21/16"] * 4
        assert strings(model, "E(flips, 2, y)") == ["2", "3", "1/4", "0"]

    def test_sequences(self, model):
        assert strings(model, "series(halving)") == ["2", "1", "1/2", "0"]
        assert strings(model, "limsup(alternating)") == ["1", "1", "1", "1"]
        assert strings(model, "liminf(alternating)") == ["0", "0", "0", "0"]
        assert strings(model, "limit(walk)") == ["2", "0", "0", "-2"]

    def test_numbers(self, model):
        assert evaluate(model, "1/2 + 1/4") == Fraction(3, 4)

    def test_float_backend(self, coin_flips_path):
        model = materialize(load_model(coin_flips_path), Backend.FLOAT)
        value = evaluate(model, "exp_neg(x)")
        assert value[1] == 0.0
        assert value[2] == 1.0
        assert value[0] == pytest.approx(0.36787944)


class TestRejectedExpressions:
    @pytest.mark.parametrize(
        "expression",
        [
            "x +",
            "w + x",
            "__import__('os')",
            "x.coords",
            "u - x",
            "x / 0",
            "x / y",
            "limit(alternating)",
            "series(x)",
            "E(nowhere, x)",
            "E(flips, 1/2, x)",
            "trunc(x)",
            "pos(1)",
        ],
    )
    def test_usage_errors(self, model, expression):
        with pytest.raises(UsageError):
            evaluate(model, expression)

    def test_exp_needs_float(self, model):
        with pytest.raises(BackendError):
            evaluate(model, "exp_neg(x)")
