"""Optical response of thin metal films to p-polarised waves, with
Fuchs-Sondheimer size-dependent conductivity."""
__version__ = "0.1.0"

from .physics import (  # noqa: E402
    C_LIGHT,
    SODIUM,
    DegenerateDenominatorError,
    FilmConfig,
    MaterialParams,
    ModelVariant,
    OpticalCoefficients,
    WaveConfig,
    complex_mfp,
    drude_sigma,
    evaluate,
    impedance_antisymmetric,
    impedance_symmetric,
    p_factor,
    sigma_film,
    tra_from_p,
)
from .quadrature import QuadratureError, fuchs_integral, phi_inverse  # noqa: E402
