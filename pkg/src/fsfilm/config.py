"""Flat ``key = value`` run configuration.

One assignment per line; ``#`` starts a comment. Unknown keys are errors.
``d``, ``theta`` and ``p`` accept a comma-separated list to define a curve
family. Example::

    material = sodium
    omega_min = 3.25e12
    omega_max = 1.3e15
    omega_count = 400
    d = 1e-6, 0.9e-6, 0.8e-6
    theta = 0
    p = 0.3
"""
from dataclasses import dataclass

from . import quadrature
from .physics import SODIUM, MaterialParams, ModelVariant
from .sweep import OmegaAxis, SweepSpec, figure_preset

MATERIAL_KEYS = ("omega_p", "v_fermi", "tau")
SWEEP_KEYS = ("omega_min", "omega_max", "omega_count", "d", "theta", "p")
KNOWN_KEYS = frozenset(
    ("material", "variant", "preset", "G", "rel_tol", "out", "format")
    + MATERIAL_KEYS
    + SWEEP_KEYS
)
OUTPUT_FORMATS = ("csv", "gnuplot")
BOUNDS = {"p": (0.0, 1.0), "theta": (0.0, 1.5707963267948966)}


class ConfigError(ValueError):
    """One or more problems in a run configuration, each with its line number."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


@dataclass(frozen=True)
class RunConfig:
    sweep: SweepSpec
    material_name: str = "sodium"
    preset: str = None
    out: str = None
    format: str = "csv"


def _number(text):
    return float(text.replace("_", ""))


def parse_config(text):
    """Parse and validate a configuration document.

    Raises
    ------
    ConfigError
        Listing every syntax, unknown-key and range problem found.
    """
    errors = []
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: syntax error, expected 'key = value': {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in values:
            errors.append(f"line {lineno}: duplicate key {key!r} (first set on line {lines[key]})")
            continue
        if not value:
            errors.append(f"line {lineno}: empty value for {key!r}")
            continue
        values[key] = value
        lines[key] = lineno

    def fail(key, message):
        errors.append(f"line {lines[key]}: {key}: {message}")

    def number(key, default=None):
        if key not in values:
            return default
        try:
            return _number(values[key])
        except ValueError:
            fail(key, f"not a number: {values[key]!r}")
            return None

    def numbers(key):
        if key not in values:
            return None
        try:
            items = [_number(v) for v in values[key].split(",")]
        except ValueError:
            fail(key, f"not a number list: {values[key]!r}")
            return None
        low, high = BOUNDS.get(key, (None, None))
        for item in items:
            if low is not None and not low <= item <= high:
                fail(key, f"value {item!r} is outside the bounds [{low:g}, {high:.17g}]")
                return None
            if key == "d" and not item > 0:
                fail(key, f"value {item!r} must be > 0")
                return None
        return items if len(items) > 1 else items[0]

    # material
    material_name = values.get("material", "sodium").lower()
    material = SODIUM
    given = [k for k in MATERIAL_KEYS if k in values]
    if material_name == "sodium":
        for key in given:
            fail(key, "only allowed with 'material = custom'")
    elif material_name == "custom":
        triple = {k: number(k) for k in MATERIAL_KEYS}
        missing = [k for k in MATERIAL_KEYS if k not in values]
        if missing:
            errors.append(f"line {lines['material']}: material = custom needs {', '.join(missing)}")
        elif None not in triple.values():
            try:
                material = MaterialParams(**triple)
            except ValueError as exc:
                errors.append(f"line {lines['material']}: {exc}")
    else:
        fail("material", f"unknown material {values['material']!r}; expected sodium or custom")

    variant = None
    if "variant" in values:
        try:
            variant = ModelVariant.parse(values["variant"])
        except ValueError as exc:
            fail("variant", str(exc))

    G = 1.0
    if "G" in values:
        try:
            G = complex(values["G"].replace(" ", ""))
        except ValueError:
            fail("G", f"not a complex number: {values['G']!r}")

    rel_tol = number("rel_tol", quadrature.DEFAULT_REL_TOL)
    if rel_tol is not None and not quadrature.MIN_REL_TOL <= rel_tol <= quadrature.MAX_REL_TOL:
        fail("rel_tol", f"{rel_tol!r} is outside [{quadrature.MIN_REL_TOL:g}, {quadrature.MAX_REL_TOL:g}]")
        rel_tol = None

    fmt = values.get("format", "csv")
    if fmt not in OUTPUT_FORMATS:
        fail("format", f"unknown format {fmt!r}; expected csv or gnuplot")

    preset = values.get("preset")
    sweep = None
    if preset is not None:
        for key in SWEEP_KEYS:
            if key in values:
                fail(key, "cannot be combined with 'preset'")
        if not errors:
            try:
                sweep = figure_preset(preset, material=material, variant=variant, G=G,
                                      rel_tol=rel_tol).spec
            except ValueError as exc:
                fail("preset", str(exc))
    else:
        missing = [k for k in SWEEP_KEYS if k not in values]
        if missing:
            errors.append(f"missing required keys: {', '.join(missing)} (or give 'preset')")
        axis_values = [number(k) for k in ("omega_min", "omega_max", "omega_count")]
        family = {k: numbers(k) for k in ("d", "theta", "p")}
        if not errors:
            try:
                lo, hi, count = axis_values
                if count != int(count):
                    raise ValueError(f"omega_count must be an integer, got {count!r}")
                sweep = SweepSpec(
                    omega_axis=OmegaAxis(lo, hi, int(count)),
                    material=material,
                    variant=variant or ModelVariant.LOW_FREQ_SIMPLIFIED,
                    G=G,
                    rel_tol=rel_tol,
                    **family,
                )
            except ValueError as exc:
                errors.append(f"sweep: {exc}")

    if errors:
        raise ConfigError(errors)
    return RunConfig(sweep=sweep, material_name=material_name, preset=preset,
                     out=values.get("out"), format=fmt)


def load_config(path):
    """Read and parse a configuration file; OSError carries the path."""
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
