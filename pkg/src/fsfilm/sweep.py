"""Frequency sweeps over curve families and the sodium figure presets."""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import quadrature
from .physics import (
    SODIUM,
    FilmConfig,
    MaterialParams,
    ModelVariant,
    WaveConfig,
    evaluate,
    sigma_film_many,
)

FAMILY_PARAMS = ("d", "theta", "p")
QUANTITIES = ("T", "R", "A")
PRESET_POINTS = 400


class SweepError(Exception):
    """A grid point failed; ``coordinates`` names the point."""

    def __init__(self, message, coordinates, cause):
        super().__init__(f"{message} at {coordinates}: {cause}")
        self.coordinates = coordinates
        self.cause = cause


class Row(NamedTuple):
    omega: float
    d: float
    theta: float
    p: float
    T: float
    R: float
    A: float
    sigma_d_re: float
    sigma_d_im: float


@dataclass(frozen=True)
class OmegaAxis:
    min: float
    max: float
    count: int

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"omega_count must be an integer >= 2, got {self.count!r}")
        if not (0.0 <= self.min < self.max) or not math.isfinite(self.max):
            raise ValueError(f"omega axis needs 0 <= omega_min < omega_max, got [{self.min!r}, {self.max!r}]")

    def values(self):
        return np.linspace(self.min, self.max, int(self.count))


def _as_values(value):
    if isinstance(value, (list, tuple, np.ndarray)):
        return tuple(float(v) for v in value)
    return (float(value),)


@dataclass(frozen=True)
class SweepSpec:
    """A frequency axis and at most one multi-valued family parameter.

    ``d``, ``theta`` and ``p`` each take a scalar or a sequence; a sequence
    of more than one value defines the curve family.
    """

    omega_axis: OmegaAxis
    d: object
    theta: object
    p: object
    material: MaterialParams = SODIUM
    variant: ModelVariant = ModelVariant.LOW_FREQ_SIMPLIFIED
    G: complex = 1.0
    rel_tol: float = quadrature.DEFAULT_REL_TOL
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "variant", ModelVariant.parse(self.variant))
        for name in FAMILY_PARAMS:
            values = _as_values(getattr(self, name))
            if not values:
                raise ValueError(f"{name} needs at least one value")
            object.__setattr__(self, name, values)
        multi = [name for name in FAMILY_PARAMS if len(getattr(self, name)) > 1]
        if len(multi) > 1:
            raise ValueError(f"at most one family parameter may be multi-valued, got {', '.join(multi)}")
        # the configs validate ranges
        for d in self.d:
            for p in self.p:
                FilmConfig(d, p, self.G)
        for theta in self.theta:
            WaveConfig(self.omega_axis.min, theta)
            WaveConfig(self.omega_axis.max, theta)
        if not (quadrature.MIN_REL_TOL <= self.rel_tol <= quadrature.MAX_REL_TOL):
            raise ValueError(f"rel_tol must lie in [{quadrature.MIN_REL_TOL}, {quadrature.MAX_REL_TOL}]")

    @property
    def family(self):
        """Name of the multi-valued parameter, or None for a single curve."""
        for name in FAMILY_PARAMS:
            if len(getattr(self, name)) > 1:
                return name
        return None

    def curves(self):
        """(d, theta, p) for each curve, in family order."""
        return [(d, theta, p) for d in self.d for theta in self.theta for p in self.p]


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list = field(default_factory=list)

    @property
    def family(self):
        return self.spec.family

    def family_value(self, row):
        name = self.family or "d"
        return getattr(row, name)

    def curve(self, family_value):
        rows = [r for r in self.rows if self.family_value(r) == family_value]
        if not rows:
            known = sorted({self.family_value(r) for r in self.rows})
            raise KeyError(f"unknown family value {family_value!r}; have {known}")
        return rows

    def family_values(self):
        seen = []
        for r in self.rows:
            v = self.family_value(r)
            if v not in seen:
                seen.append(v)
        return seen


def _evaluate_chunk(spec, curve, omegas):
    d, theta, p = curve
    film = FilmConfig(d, p, spec.G)
    try:
        sigmas = sigma_film_many(spec.material, film, omegas, spec.rel_tol)
    except (ArithmeticError, ValueError):
        sigmas = None
    rows = []
    for i, omega in enumerate(omegas):
        coords = dict(omega=float(omega), d=d, theta=theta, p=p)
        try:
            wave = WaveConfig(float(omega), theta)
            sigma_d = sigmas[i] if sigmas is not None else None
            c = evaluate(spec.material, film, wave, spec.variant, spec.rel_tol, sigma_d=sigma_d)
        except (ArithmeticError, ValueError) as exc:
            raise SweepError("evaluation failed", coords, exc) from exc
        rows.append(Row(float(omega), d, theta, p, c.T, c.R, c.A, c.sigma_d.real, c.sigma_d.imag))
    return rows


def run_sweep(spec, workers=1):
    """Evaluate every (curve, omega) point of ``spec``.

    Rows come out ordered by family value, then ascending omega. The result
    does not depend on ``workers``: each point is computed independently and
    the chunks are reassembled in grid order.
    """
    omegas = spec.omega_axis.values()
    n_chunks = max(1, int(workers))
    jobs = [
        (curve, chunk)
        for curve in spec.curves()
        for chunk in np.array_split(omegas, min(n_chunks, len(omegas)))
    ]
    if workers <= 1:
        parts = [_evaluate_chunk(spec, curve, chunk) for curve, chunk in jobs]
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            parts = list(pool.map(lambda job: _evaluate_chunk(spec, *job), jobs))
    result = SweepResult(spec)
    for part in parts:
        result.rows.extend(part)
    return result


class Extremum(NamedTuple):
    omega: float
    value: float
    interior: bool


def find_extremum(result, quantity, family_value):
    """Grid maximum of T, R or A along omega for one curve.

    Ties go to the lowest omega. ``interior`` is True only when both
    neighbours are strictly lower.
    """
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    rows = result.curve(family_value)
    values = [getattr(r, quantity) for r in rows]
    i = int(np.argmax(values))  # first occurrence on ties
    interior = 0 < i < len(values) - 1 and values[i - 1] < values[i] > values[i + 1]
    return Extremum(rows[i].omega, values[i], interior)


@dataclass(frozen=True)
class FigurePreset:
    id: str
    quantity: str
    spec: SweepSpec


def _preset_axis(material=SODIUM, count=PRESET_POINTS):
    top = 0.2 * material.omega_p
    return OmegaAxis(top / count, top, count)


def figure_preset(preset_id, material=SODIUM, count=PRESET_POINTS, variant=None, G=1.0,
                  rel_tol=quadrature.DEFAULT_REL_TOL):
    """SweepSpec for one of the nine sodium figures, ``fig1`` ... ``fig9``."""
    key = str(preset_id).lower()
    if key not in PRESET_IDS:
        raise ValueError(f"unknown preset {preset_id!r}; expected one of {', '.join(PRESET_IDS)}")
    number = int(key[3:])
    quantity = QUANTITIES[(number - 1) % 3]
    axis = _preset_axis(material, count)
    common = dict(
        omega_axis=axis,
        material=material,
        variant=ModelVariant.LOW_FREQ_SIMPLIFIED if variant is None else variant,
        G=G,
        rel_tol=rel_tol,
    )
    if number <= 3:
        spec = SweepSpec(d=(1e-6, 0.9e-6, 0.8e-6), theta=0.0, p=0.3, **common)
    elif number <= 6:
        spec = SweepSpec(
            d=1e-6, theta=(0.0, math.pi / 4, 5 * math.pi / 12), p=0.3,
            notes=("thickness d = 1e-6 cm assumed; the angle figures do not state it",),
            **common,
        )
    else:
        spec = SweepSpec(d=1e-6, theta=0.0, p=(0.0, 0.5, 0.8), **common)
    return FigurePreset(key, quantity, spec)


PRESET_IDS = tuple(f"fig{i}" for i in range(1, 10))
