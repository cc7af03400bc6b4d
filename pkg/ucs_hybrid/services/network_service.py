"""
Feed-forward regression network

Tansig hidden layers and a linear output layer:

    UCS = LW · (2 / (1 + exp(-2 (IW · x + b1))) - 1) + b2

Parameters flatten to one vector in a fixed order (every layer's weight
matrix row-major, then its bias), which is the search space the
optimizers work in.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ucs_hybrid.config.reference_tables import FROZEN_B1, FROZEN_B2, FROZEN_IW, FROZEN_LW
from ucs_hybrid.config.settings import DEFAULT_NETWORK_SHAPE
from ucs_hybrid.exceptions import DimensionError, ResourceNotFoundError, ValidationError
from ucs_hybrid.schemas import (
    Algorithm,
    MinMaxScaler,
    ModelFile,
    SearchConfig,
    TargetScaler,
)

logger = logging.getLogger(__name__)

NetworkShape = Tuple[int, ...]


def validate_shape(shape: Sequence[int]) -> NetworkShape:
    """
    Check a layer-size list.

    Raises:
        ValidationError: If fewer than two layers or any size < 1.
    """
    shape = tuple(int(s) for s in shape)
    if len(shape) < 2:
        raise ValidationError("needs an input and an output layer", field="shape")
    if any(s < 1 for s in shape):
        raise ValidationError("every layer size must be >= 1", field="shape")
    return shape


def param_count(shape: Sequence[int] = DEFAULT_NETWORK_SHAPE) -> int:
    """
    Number of weights and biases of a fully-connected network.

    Examples:
        >>> param_count((8, 4, 1))
        41
        >>> param_count((1, 1))
        2
    """
    shape = validate_shape(shape)
    return sum(n_in * n_out + n_out for n_in, n_out in zip(shape[:-1], shape[1:]))


@dataclass(frozen=True)
class NetworkParams:
    """
    Weights and biases of every layer, immutable after construction.

    For the 8 -> 4 -> 1 network, `iw` is 4x8, `b1` has 4 entries, `lw` is
    1x4 and `b2` is a scalar.
    """
    shape: NetworkShape
    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        for w, b in zip(self.weights, self.biases):
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValidationError("network parameters must be finite")
            w.setflags(write=False)
            b.setflags(write=False)

    @property
    def iw(self) -> np.ndarray:
        return self.weights[0]

    @property
    def b1(self) -> np.ndarray:
        return self.biases[0]

    @property
    def lw(self) -> np.ndarray:
        return self.weights[-1][0]

    @property
    def b2(self) -> float:
        return float(self.biases[-1][0])

    def predict(self, features: np.ndarray) -> np.ndarray:
        """Batch forward pass; see forward_batch"""
        return forward_batch(self, features)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NetworkParams):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(flatten(self), flatten(other))

    def __hash__(self) -> int:
        return hash((self.shape, flatten(self).tobytes()))


def tansig(z: np.ndarray) -> np.ndarray:
    """
    2 / (1 + exp(-2z)) - 1, evaluated through its closed form tanh(z)
    so large |z| cannot overflow.
    """
    return np.tanh(z)


def _layers_from_flat(shape: NetworkShape, vector: np.ndarray):
    offset = 0
    for n_in, n_out in zip(shape[:-1], shape[1:]):
        w = vector[offset:offset + n_in * n_out].reshape(n_out, n_in)
        offset += n_in * n_out
        b = vector[offset:offset + n_out]
        offset += n_out
        yield w, b


def _forward_layers(layers, inputs: np.ndarray) -> np.ndarray:
    activation = inputs
    last = len(layers) - 1
    for i, (w, b) in enumerate(layers):
        z = activation @ w.T + b
        activation = z if i == last else tansig(z)
    return activation


def forward_batch(params: NetworkParams, inputs: np.ndarray) -> np.ndarray:
    """
    Predict every row of an (n, n_inputs) matrix.

    Returns:
        1-D array of n predictions.

    Raises:
        DimensionError: If the column count does not match the input layer.
        ValidationError: If any input is not finite.
    """
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim == 1:
        inputs = inputs.reshape(1, -1)
    if inputs.ndim != 2 or inputs.shape[1] != params.shape[0]:
        raise DimensionError("wrong input length", expected=params.shape[0], actual=inputs.shape[-1])
    if not np.all(np.isfinite(inputs)):
        raise ValidationError("network input must be finite", field="input")
    return _forward_layers(list(zip(params.weights, params.biases)), inputs)[:, 0]


def forward(params: NetworkParams, input_vector: Sequence[float]) -> float:
    """
    Prediction for one input vector.

    Raises:
        DimensionError: Wrong input length.
        ValidationError: Non-finite input.
    """
    vector = np.asarray(input_vector, dtype=float)
    if vector.ndim != 1:
        raise DimensionError("input must be a vector", expected=params.shape[0], actual=vector.size)
    return float(forward_batch(params, vector)[0])


def flat_forward(shape: NetworkShape, vector: np.ndarray, inputs: np.ndarray) -> np.ndarray:
    """
    Forward pass straight from a flat parameter vector.

    Skips validation and object construction; used inside cost functions
    that are called tens of thousands of times per run.
    """
    return _forward_layers(list(_layers_from_flat(shape, vector)), inputs)[:, 0]


def flatten(params: NetworkParams) -> np.ndarray:
    """Concatenate each layer's weights (row-major) then biases"""
    parts = []
    for w, b in zip(params.weights, params.biases):
        parts.append(w.ravel())
        parts.append(b.ravel())
    return np.concatenate(parts)


def unflatten(shape: Sequence[int], vector: Sequence[float]) -> NetworkParams:
    """
    Inverse of flatten.

    Raises:
        DimensionError: If the vector length differs from param_count(shape).
    """
    shape = validate_shape(shape)
    vector = np.array(vector, dtype=float)
    expected = param_count(shape)
    if vector.ndim != 1 or vector.size != expected:
        raise DimensionError("parameter vector has the wrong length", expected=expected, actual=vector.size)
    weights, biases = [], []
    for w, b in _layers_from_flat(shape, vector):
        weights.append(w.copy())
        biases.append(b.copy())
    return NetworkParams(shape=shape, weights=tuple(weights), biases=tuple(biases))


def frozen_reference_model() -> NetworkParams:
    """The published 8 -> 4 -> 1 ANN-SBO network"""
    return NetworkParams(
        shape=DEFAULT_NETWORK_SHAPE,
        weights=(np.array(FROZEN_IW, dtype=float), np.array([FROZEN_LW], dtype=float)),
        biases=(np.array(FROZEN_B1, dtype=float), np.array([FROZEN_B2], dtype=float)),
    )


def gradient(params: NetworkParams, input_vector: Sequence[float]) -> np.ndarray:
    """
    Analytic gradient of the single-hidden-layer output with respect to
    the flat parameter vector (same ordering as flatten).
    """
    if len(params.shape) != 3:
        raise ValidationError("gradient is defined for one hidden layer", field="shape")
    x = np.asarray(input_vector, dtype=float)
    h = tansig(params.iw @ x + params.b1)
    dh = params.lw * (1.0 - h ** 2)
    return np.concatenate([np.outer(dh, x).ravel(), dh, h, [1.0]])


# ============================================================================
# MODEL FILES
# ============================================================================

def to_model_file(
    params: NetworkParams,
    input_scaler: Optional[MinMaxScaler] = None,
    target_scaler: Optional[TargetScaler] = None,
    algorithm: Optional[Algorithm] = None,
    config: Optional[SearchConfig] = None,
    training_rmse: Optional[float] = None,
) -> ModelFile:
    if len(params.shape) != 3 or params.shape[-1] != 1:
        raise ValidationError("model files hold one-hidden-layer, single-output networks", field="shape")
    return ModelFile(
        shape=list(params.shape),
        iw=params.iw.tolist(),
        b1=params.b1.tolist(),
        lw=params.lw.tolist(),
        b2=params.b2,
        input_scaler=input_scaler,
        target_scaler=target_scaler,
        algorithm=algorithm,
        config=config,
        training_rmse=training_rmse,
    )


def from_model_file(model: ModelFile) -> NetworkParams:
    shape = validate_shape(model.shape)
    vector = np.concatenate([
        np.asarray(model.iw, dtype=float).ravel(),
        np.asarray(model.b1, dtype=float),
        np.asarray(model.lw, dtype=float),
        [model.b2],
    ])
    return unflatten(shape, vector)


def save_model(model: ModelFile, path: Union[str, Path]) -> Path:
    """Write a model file; floats are written with their shortest exact repr"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Saved model to {path}")
    return path


def load_model(path: Union[str, Path]) -> ModelFile:
    """
    Read a model file.

    Raises:
        ResourceNotFoundError: If the file does not exist.
        ValidationError: If the JSON does not describe a valid model.
    """
    path = Path(path)
    if not path.is_file():
        raise ResourceNotFoundError("Model file", str(path))
    try:
        model = ModelFile.model_validate_json(path.read_text(encoding="utf-8"))
        from_model_file(model)
    except ValueError as e:
        raise ValidationError(f"invalid model file {path}: {e}") from e
    return model
