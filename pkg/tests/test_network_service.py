"""
Tests for the 8 -> 4 -> 1 network: forward pass, flat encoding, the
published model and model files.
Run with: pytest tests/test_network_service.py -v
"""
import json
import math

import numpy as np
import pytest

from ucs_hybrid.config.reference_tables import FROZEN_B1, FROZEN_B2, FROZEN_IW, FROZEN_LW
from ucs_hybrid.exceptions import DimensionError, ResourceNotFoundError, ValidationError
from ucs_hybrid.schemas import Algorithm, MinMaxScaler, SearchConfig, TargetScaler
from ucs_hybrid.services.network_service import (
    NetworkParams,
    flat_forward,
    flatten,
    forward,
    forward_batch,
    from_model_file,
    frozen_reference_model,
    gradient,
    load_model,
    param_count,
    save_model,
    tansig,
    to_model_file,
    unflatten,
)


def closed_form(x):
    """Straight-line evaluation of the closed form with the published weights"""
    out = FROZEN_B2
    for k in range(4):
        z = FROZEN_B1[k]
        for i in range(8):
            z += FROZEN_IW[k][i] * x[i]
        out += FROZEN_LW[k] * (2.0 / (1.0 + math.exp(-2.0 * z)) - 1.0)
    return out


@pytest.fixture
def random_params():
    rng = np.random.default_rng(42)
    return unflatten((8, 4, 1), rng.uniform(-2, 2, size=41))


class TestParamCount:
    """Test parameter counting"""

    def test_ucs_network(self):
        assert param_count((8, 4, 1)) == 41

    def test_minimal_network(self):
        assert param_count((1, 1)) == 2

    @pytest.mark.parametrize("shape", [(8,), (8, 0, 1), ()])
    def test_invalid_shape(self, shape):
        with pytest.raises(ValidationError):
            param_count(shape)


class TestForward:
    """Test the forward pass"""

    def test_zero_network_outputs_bias(self):
        """All weights and b1 zero, b2 = c -> c for any input"""
        vector = np.zeros(41)
        vector[-1] = 3.5
        params = unflatten((8, 4, 1), vector)
        assert forward(params, np.arange(8.0)) == 3.5

    def test_frozen_model_at_zero_input(self):
        """LW . tanh(b1) + b2 at x = 0"""
        expected = sum(lw * math.tanh(b) for lw, b in zip(FROZEN_LW, FROZEN_B1)) + FROZEN_B2
        output = forward(frozen_reference_model(), np.zeros(8))
        assert output == pytest.approx(expected, abs=1e-9)
        assert output == pytest.approx(-1.8374, abs=5e-4)

    def test_frozen_model_matches_closed_form(self):
        """Three random inputs agree with the scalar closed form to 1e-12"""
        rng = np.random.default_rng(7)
        for x in rng.uniform(-1, 2, size=(3, 8)):
            assert forward(frozen_reference_model(), x) == pytest.approx(closed_form(x.tolist()), abs=1e-12)

    def test_negated_input_and_weights(self, random_params):
        """(-x, -IW) with b1 = 0 gives the same output"""
        vector = flatten(random_params)
        vector[32:36] = 0.0
        params = unflatten((8, 4, 1), vector)
        negated = vector.copy()
        negated[:32] = -negated[:32]
        x = np.linspace(-1, 1, 8)
        assert forward(unflatten((8, 4, 1), negated), -x) == pytest.approx(forward(params, x), abs=1e-15)

    def test_output_bound(self):
        """|output| <= |LW|_1 + |b2| for the published model (tanh saturates to +-1 in floats)"""
        rng = np.random.default_rng(0)
        bound = sum(abs(v) for v in FROZEN_LW) + abs(FROZEN_B2)
        outputs = forward_batch(frozen_reference_model(), rng.normal(0, 50, size=(200, 8)))
        assert np.all(np.abs(outputs) <= bound + 1e-12)

    def test_tansig_is_stable_for_large_inputs(self):
        z = np.array([-1e4, -20.0, 0.0, 20.0, 1e4])
        assert np.all(np.isfinite(tansig(z)))
        assert tansig(z)[0] == -1.0 and tansig(z)[-1] == 1.0

    def test_wrong_input_length(self, random_params):
        with pytest.raises(DimensionError):
            forward(random_params, np.zeros(7))

    def test_non_finite_input(self, random_params):
        x = np.zeros(8)
        x[2] = np.nan
        with pytest.raises(ValidationError):
            forward(random_params, x)

    def test_batch_matches_single(self, random_params):
        inputs = np.random.default_rng(1).uniform(size=(5, 8))
        batch = forward_batch(random_params, inputs)
        np.testing.assert_allclose(batch, [forward(random_params, x) for x in inputs], rtol=1e-13, atol=1e-15)

    def test_flat_forward_matches(self, random_params):
        inputs = np.random.default_rng(2).uniform(size=(4, 8))
        np.testing.assert_allclose(
            flat_forward((8, 4, 1), flatten(random_params), inputs),
            forward_batch(random_params, inputs),
            rtol=1e-13,
            atol=1e-15,
        )

    def test_gradient_matches_central_differences(self, random_params):
        """Analytic gradient agrees with eps = 1e-6 central differences"""
        x = np.random.default_rng(3).uniform(size=8)
        vector = flatten(random_params)
        analytic = gradient(random_params, x)
        eps = 1e-6
        for k in range(41):
            up, down = vector.copy(), vector.copy()
            up[k] += eps
            down[k] -= eps
            numeric = (forward(unflatten((8, 4, 1), up), x) - forward(unflatten((8, 4, 1), down), x)) / (2 * eps)
            assert numeric == pytest.approx(analytic[k], rel=1e-5, abs=1e-8)


class TestFlatEncoding:
    """Test the canonical flat parameter vector"""

    def test_round_trip_is_exact(self, random_params):
        assert unflatten((8, 4, 1), flatten(random_params)) == random_params
        assert np.array_equal(flatten(unflatten((8, 4, 1), flatten(random_params))), flatten(random_params))

    def test_canonical_order(self):
        """IW row-major, then b1, LW, b2"""
        vector = np.arange(41.0)
        params = unflatten((8, 4, 1), vector)
        assert params.iw[0].tolist() == list(range(8))
        assert params.iw[1][0] == 8.0
        assert params.b1.tolist() == [32.0, 33.0, 34.0, 35.0]
        assert params.lw.tolist() == [36.0, 37.0, 38.0, 39.0]
        assert params.b2 == 40.0

    def test_wrong_length_states_expected(self):
        with pytest.raises(DimensionError) as exc_info:
            unflatten((8, 4, 1), np.zeros(40))
        assert exc_info.value.expected == 41
        assert "expected 41" in str(exc_info.value)

    def test_params_are_read_only(self, random_params):
        with pytest.raises(ValueError):
            random_params.iw[0, 0] = 1.0

    def test_non_finite_parameters_rejected(self):
        vector = np.zeros(41)
        vector[5] = np.inf
        with pytest.raises(ValidationError):
            unflatten((8, 4, 1), vector)


class TestFrozenModel:
    """Test the published constants"""

    def test_constants(self):
        model = frozen_reference_model()
        assert model.lw[1] == 0.7574
        assert model.iw[0][0] == 0.6833
        assert model.iw[3][1] == 1.0160
        assert model.b2 == -0.5543

    def test_bias_antisymmetry(self):
        b1 = frozen_reference_model().b1
        assert b1[0] == -b1[3]
        assert b1[1] == -b1[2]


class TestModelFile:
    """Test JSON model files"""

    def test_round_trip(self, tmp_path, random_params):
        """save/load reproduces every weight exactly, with the scalers"""
        scaler = MinMaxScaler(minimums=(0.0,) * 8, maximums=(2.0,) * 8)
        target = TargetScaler(minimum=4.23, maximum=96.3)
        model = to_model_file(random_params, scaler, target, Algorithm.SBO, SearchConfig(), 5.5)
        path = save_model(model, tmp_path / "model.json")

        loaded = load_model(path)
        assert from_model_file(loaded) == random_params
        assert loaded.input_scaler == scaler
        assert loaded.target_scaler == target
        assert loaded.algorithm is Algorithm.SBO
        assert set(json.loads(path.read_text())) >= {"shape", "iw", "b1", "lw", "b2"}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ResourceNotFoundError):
            load_model(tmp_path / "missing.json")

    def test_invalid_content(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"shape": [8, 4, 1], "iw": [], "b1": [], "lw": [], "b2": 0}')
        with pytest.raises(ValidationError):
            load_model(path)

    def test_equality_and_hash(self, random_params):
        copy = NetworkParams(
            shape=random_params.shape,
            weights=tuple(w.copy() for w in random_params.weights),
            biases=tuple(b.copy() for b in random_params.biases),
        )
        assert copy == random_params
        assert hash(copy) == hash(random_params)
