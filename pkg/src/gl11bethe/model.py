"""Model specifications: weights, evaluation points, optional sector."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DegenerateWeight, ParseError
from .field import Field, Scalar, format_scalar, parse_scalar


@dataclass(frozen=True)
class Weight:
    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        object.__setattr__(self, "alpha", Scalar.coerce(self.alpha))
        object.__setattr__(self, "beta", Scalar.coerce(self.beta))

    @property
    def size(self) -> Scalar:
        """``|lambda| = alpha + beta``."""
        return self.alpha + self.beta

    def is_degenerate(self) -> bool:
        return not self.size

    def is_polynomial(self) -> bool:
        a, b = self.alpha, self.beta
        if not (a.is_rational() and b.is_rational()):
            return False
        a, b = a.real, b.real
        return a.denominator == 1 and b.denominator == 1 and a > 0 and b >= 0

    def lowered(self) -> "Weight":
        return Weight(self.alpha - 1, self.beta + 1)

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"


@dataclass(frozen=True)
class ModelSpec:
    weights: tuple
    points: tuple
    field: Field = Field.Q
    sector: int | None = None

    def __post_init__(self):
        ws = tuple(w if isinstance(w, Weight) else Weight(*w) for w in self.weights)
        ps = tuple(Scalar.coerce(b) for b in self.points)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "points", ps)
        if not ws:
            raise ValueError("a model needs at least one tensor factor")
        if len(ws) != len(ps):
            raise ValueError(f"{len(ws)} weights but {len(ps)} points")
        if len(set(ps)) != len(ps):
            raise ValueError("evaluation points must be pairwise distinct")
        for v in ps + tuple(c for w in ws for c in (w.alpha, w.beta)):
            if not self.field.contains(v):
                raise ValueError(f"value {v} does not lie in field {self.field.value}")
        if self.sector is not None and not (0 <= self.sector <= len(ws) - 1):
            raise ValueError(f"sector {self.sector} outside 0..{len(ws) - 1}")

    @classmethod
    def make(cls, weights, points, field=None, sector=None) -> "ModelSpec":
        """Build a model, choosing Q(i) automatically when some value is not rational."""
        ws = tuple(w if isinstance(w, Weight) else Weight(*w) for w in weights)
        ps = tuple(Scalar.coerce(b) for b in points)
        if field is None:
            vals = ps + tuple(c for w in ws for c in (w.alpha, w.beta))
            field = Field.Q if all(v.is_rational() for v in vals) else Field.QI
        elif isinstance(field, str):
            field = Field.parse(field)
        return cls(ws, ps, field, sector)

    @property
    def k(self) -> int:
        return len(self.weights)

    @property
    def n(self) -> Scalar:
        """``n = sum_s (alpha_s + beta_s)``."""
        total = Scalar(0)
        for w in self.weights:
            total = total + w.size
        return total

    def check_nondegenerate(self) -> None:
        for s, w in enumerate(self.weights):
            if w.is_degenerate():
                raise DegenerateWeight(f"weight {w} in slot {s + 1} has alpha + beta = 0")

    def with_sector(self, sector) -> "ModelSpec":
        return ModelSpec(self.weights, self.points, self.field, sector)

    def to_dict(self) -> dict:
        d = {
            "field": self.field.value,
            "weights": [[format_scalar(w.alpha), format_scalar(w.beta)] for w in self.weights],
            "points": [format_scalar(b) for b in self.points],
        }
        if self.sector is not None:
            d["sector"] = self.sector
        return d


_KEYS = {"field", "weights", "points", "sector"}


def _scalar_token(tok, where: str) -> Scalar:
    if isinstance(tok, bool) or not isinstance(tok, (str, int)):
        raise ParseError(f"{where}: expected a scalar string, got {json.dumps(tok)}")
    try:
        return parse_scalar(tok)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_model(data) -> ModelSpec:
    """Build a :class:`ModelSpec` from decoded JSON data or a JSON string."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("model must be a JSON object")
    extra = sorted(set(data) - _KEYS)
    if extra:
        raise ParseError(f"unknown key {extra[0]!r}")
    for key in ("field", "weights", "points"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    if not isinstance(data["field"], str):
        raise ParseError(f"field: expected 'Q' or 'Qi', got {json.dumps(data['field'])}")
    field = Field.parse(data["field"])
    raw_w = data["weights"]
    if not isinstance(raw_w, list) or not raw_w:
        raise ParseError("weights: expected a nonempty list of [alpha, beta] pairs")
    weights = []
    for s, pair in enumerate(raw_w):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"weights[{s}]: expected [alpha, beta], got {json.dumps(pair)}")
        a = _scalar_token(pair[0], f"weights[{s}][0]")
        b = _scalar_token(pair[1], f"weights[{s}][1]")
        weights.append(Weight(a, b))
    raw_p = data["points"]
    if not isinstance(raw_p, list):
        raise ParseError("points: expected a list of scalars")
    points = [_scalar_token(t, f"points[{s}]") for s, t in enumerate(raw_p)]
    sector = data.get("sector")
    if sector is not None and (isinstance(sector, bool) or not isinstance(sector, int)):
        raise ParseError(f"sector: expected an integer, got {json.dumps(sector)}")
    for where, v in [(f"points[{s}]", p) for s, p in enumerate(points)] + [
        (f"weights[{s}]", c) for s, w in enumerate(weights) for c in (w.alpha, w.beta)
    ]:
        if not field.contains(v):
            raise ParseError(f"{where}: value {format_scalar(v)} is not in field {field.value}")
    try:
        return ModelSpec(tuple(weights), tuple(points), field, sector)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_model(path) -> ModelSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read model file {path}: {exc.strerror}") from None
    return parse_model(text)


def integer_value(s: Scalar) -> int:
    """The integer represented by ``s``; raises ``ValueError`` otherwise."""
    if not s.is_rational() or s.real.denominator != 1:
        raise ValueError(f"{s} is not an integer")
    return int(s.real)
