"""Transmission, reflection and absorption of a p-wave by a thin metal film.

Gaussian-CGS units throughout: conductivities in 1/s, lengths in cm,
frequencies in rad/s. Impedances and P-factors are dimensionless.
"""
import cmath
import enum
import math
from dataclasses import dataclass

from . import quadrature

C_LIGHT = 2.99792458e10  # cm/s
DENOMINATOR_FLOOR = 1e-30
HALF_PI = math.pi / 2


class DegenerateDenominatorError(ArithmeticError):
    """A closed-form expression hit a (near) zero denominator."""


class ModelVariant(enum.Enum):
    """Which closed form maps the film state to (T, R, A).

    FULL_KD keeps every kd term of the impedances, THIN_KD drops them
    (kd << 1) but keeps the field-penetration factor G, and
    LOW_FREQ_SIMPLIFIED additionally drops kdG and never reads G.
    """

    FULL_KD = "full-kd"
    THIN_KD = "thin-kd"
    LOW_FREQ_SIMPLIFIED = "low-freq"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {
            "fullkd": cls.FULL_KD,
            "thinkd": cls.THIN_KD,
            "lowfreqsimplified": cls.LOW_FREQ_SIMPLIFIED,
            "low-freq-simplified": cls.LOW_FREQ_SIMPLIFIED,
        }
        for member in cls:
            if key == member.value:
                return member
        if key.replace("-", "") in aliases:
            return aliases[key.replace("-", "")]
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown model variant {name!r}; expected one of {choices}")


@dataclass(frozen=True)
class MaterialParams:
    """Electron-gas constants of the bulk metal."""

    omega_p: float
    v_fermi: float
    tau: float

    def __post_init__(self):
        for name in ("omega_p", "v_fermi", "tau"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def sigma0(self):
        """Static bulk conductivity [1/s]."""
        return self.omega_p ** 2 * self.tau / (4 * math.pi)

    @property
    def delta0(self):
        """Infrared skin depth c/omega_p [cm], the smallest skin depth."""
        return C_LIGHT / self.omega_p

    @property
    def mean_free_path(self):
        return self.v_fermi * self.tau


SODIUM = MaterialParams(omega_p=6.5e15, v_fermi=8.52e7, tau=1.5e-13)


@dataclass(frozen=True)
class FilmConfig:
    d: float
    p: float
    G: complex = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"film thickness d must be > 0, got {self.d!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"specularity p = {self.p!r} is outside [0, 1]")
        if not cmath.isfinite(self.G):
            raise ValueError(f"G must be finite, got {self.G!r}")

    def thin_film(self, material):
        """True when the film is thinner than the infrared skin depth."""
        return self.d < material.delta0


@dataclass(frozen=True)
class WaveConfig:
    omega: float
    theta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega >= 0):
            raise ValueError(f"omega must be >= 0, got {self.omega!r}")
        if not (0.0 <= self.theta <= HALF_PI):
            raise ValueError(f"theta = {self.theta!r} is outside [0, pi/2]")

    @property
    def k(self):
        """Vacuum wave number [1/cm]."""
        return self.omega / C_LIGHT

    @property
    def cos_theta(self):
        return _cos(self.theta)


@dataclass(frozen=True)
class OpticalCoefficients:
    """(T, R, A) plus the intermediate quantities that produced them.

    ``Z1`` and ``P1`` are None under the low-frequency simplified model,
    which has no symmetric-configuration impedance.
    """

    T: float
    R: float
    A: float
    sigma_d: complex = None
    Z1: complex = None
    Z2: complex = None
    P1: complex = None
    P2: complex = None


def _cos(theta):
    # cos(pi/2) rounds to 6e-17; grazing incidence must be exactly zero
    return 0.0 if theta == HALF_PI else math.cos(theta)


def _sin(theta):
    return 1.0 if theta == HALF_PI else math.sin(theta)


def _checked_div(num, den, what):
    if abs(den) < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"{what}: denominator {den!r} below {DENOMINATOR_FLOOR}")
    return num / den


def drude_sigma(material, omega):
    """Frequency-dependent bulk conductivity sigma0 / (1 - i omega tau)."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega!r}")
    return material.sigma0 / complex(1.0, -omega * material.tau)


def complex_mfp(material, omega):
    """Mean free path under harmonic driving, v_F tau / (1 - i omega tau)."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega!r}")
    return material.mean_free_path / complex(1.0, -omega * material.tau)


def sigma_film(material, film, omega, rel_tol=quadrature.DEFAULT_REL_TOL):
    """Thickness-averaged Fuchs-Sondheimer conductivity of the film [1/s].

    Returns ``sigma(omega) * w / Phi(w)`` with ``w = d / l(omega)``. For
    ``p == 1`` this is ``drude_sigma`` itself, without quadrature.
    """
    if not (film.d > 0):
        raise ValueError(f"film thickness d must be > 0, got {film.d!r}")
    if not (0.0 <= film.p <= 1.0):
        raise ValueError(f"specularity p = {film.p!r} is outside [0, 1]")
    sigma = drude_sigma(material, omega)
    if film.p == 1.0:
        return sigma
    w = size_parameter(material, film, omega)
    return sigma * w * quadrature.phi_inverse(w, film.p, rel_tol)


def size_parameter(material, film, omega):
    """w = d / l(omega) = d (1 - i omega tau) / (v_F tau)."""
    return film.d / material.mean_free_path * complex(1.0, -omega * material.tau)


def sigma_film_many(material, film, omegas, rel_tol=quadrature.DEFAULT_REL_TOL):
    """:func:`sigma_film` over a frequency array with one batched quadrature.

    Entries are bit-identical to the scalar function.
    """
    omegas = [float(o) for o in omegas]
    if film.p == 1.0:
        return [drude_sigma(material, o) for o in omegas]
    ws = [size_parameter(material, film, o) for o in omegas]
    integrals = quadrature.fuchs_integral_many(ws, film.p, rel_tol)
    return [
        drude_sigma(material, o) * w * quadrature.combine(w, film.p, complex(i))
        for o, w, i in zip(omegas, ws, integrals)
    ]


def impedance_symmetric(film, wave, variant):
    variant = ModelVariant.parse(variant)
    kd = wave.k * film.d
    sin2 = _sin(wave.theta) ** 2
    if variant is ModelVariant.FULL_KD:
        return 0.5j * kd * (1.0 - film.G * sin2)
    if variant is ModelVariant.THIN_KD:
        return -0.5j * kd * film.G * sin2
    raise ValueError("the low-frequency simplified model has no symmetric impedance")


def impedance_antisymmetric(sigma_d, film, wave, variant):
    variant = ModelVariant.parse(variant)
    d = film.d
    if variant is ModelVariant.FULL_KD:
        # 2c / (i c k d - 4 pi sigma_d d), with the denominator divided through by c
        den = 1j * wave.k * d - 4 * math.pi * sigma_d * d / C_LIGHT
        return _checked_div(2.0, den, "antisymmetric impedance")
    if variant is ModelVariant.THIN_KD:
        return _checked_div(-C_LIGHT, 2 * math.pi * sigma_d * d, "antisymmetric impedance")
    raise ValueError("the low-frequency simplified model has no antisymmetric impedance")


def p_factor(Z, theta):
    """(cos theta + Z) / (cos theta - Z)."""
    c = _cos(theta)
    if c == 0.0:
        # Z / (-Z); complex division can miss -1 by an ulp
        _checked_div(Z, -Z, "P-factor")
        return complex(-1.0)
    return _checked_div(c + Z, c - Z, "P-factor")


def tra_from_p(P1, P2):
    T = abs(P1 - P2) ** 2 / 4
    R = abs(P1 + P2) ** 2 / 4
    return OpticalCoefficients(T=T, R=R, A=1.0 - T - R, P1=P1, P2=P2)


def tra_low_frequency(sigma_d, film, wave):
    """T and R for kd G << 1, which depend only on 2 pi d sigma_d cos(theta) / c."""
    x = 2 * math.pi * film.d * sigma_d / C_LIGHT * wave.cos_theta
    den = abs(1.0 + x) ** 2
    T = 1.0 / den
    R = abs(x) ** 2 / den
    return T, R


def evaluate(material, film, wave, variant=ModelVariant.THIN_KD,
             rel_tol=quadrature.DEFAULT_REL_TOL, sigma_d=None):
    """Run the full chain from material constants to (T, R, A).

    ``sigma_d`` overrides the computed film conductivity, e.g. to probe the
    non-conducting limit.
    """
    variant = ModelVariant.parse(variant)
    if sigma_d is None:
        sigma_d = sigma_film(material, film, wave.omega, rel_tol)
    sigma_d = complex(sigma_d)

    if variant is ModelVariant.LOW_FREQ_SIMPLIFIED:
        T, R = tra_low_frequency(sigma_d, film, wave)
        if sigma_d == 0:
            Z2 = P2 = None
        else:
            Z2 = impedance_antisymmetric(sigma_d, film, wave, ModelVariant.THIN_KD)
            P2 = p_factor(Z2, wave.theta)
        return OpticalCoefficients(T=T, R=R, A=1.0 - T - R, sigma_d=sigma_d, Z2=Z2, P2=P2)

    Z1 = impedance_symmetric(film, wave, variant)
    Z2 = impedance_antisymmetric(sigma_d, film, wave, variant)
    P1 = p_factor(Z1, wave.theta)
    P2 = p_factor(Z2, wave.theta)
    coeffs = tra_from_p(P1, P2)
    return OpticalCoefficients(
        T=coeffs.T, R=coeffs.R, A=coeffs.A, sigma_d=sigma_d, Z1=Z1, Z2=Z2, P1=P1, P2=P2
    )
