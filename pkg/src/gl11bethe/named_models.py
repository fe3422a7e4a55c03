"""Reference models used throughout tests, docs and the CLI examples."""

from .field import I
from .model import ModelSpec


def model_MA() -> ModelSpec:
    return ModelSpec.make([(1, 0), (1, 0)], [0, 1])


def model_MB() -> ModelSpec:
    return ModelSpec.make([(1, 0)] * 4, [1, -1, I, -I])


def model_MC() -> ModelSpec:
    return ModelSpec.make([(1, 0), (2, 0), (1, 0)], [0, 1, 3])


def model_MD() -> ModelSpec:
    return ModelSpec.make([(3, 0), (2, 0), (3, 0)], [0, 1, 2])


def model_single(alpha=1, beta=0, point=0) -> ModelSpec:
    return ModelSpec.make([(alpha, beta)], [point])


NAMED = {
    "MA": model_MA,
    "MB": model_MB,
    "MC": model_MC,
    "MD": model_MD,
}
