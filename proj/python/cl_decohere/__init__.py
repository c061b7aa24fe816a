"""Open-system Gaussian wave-packet dynamics under the Caldeira-Leggett equation."""

from ._core import (  # noqa: F401
    CatState,
    Environment,
    EvolvedGaussian,
    GaussianPacket,
    ModelConstants,
    arrival_moments,
    cat_density,
    decoherence_time,
    erf,
    fresnel,
    gamma_min,
    gamma_stretched,
    list_presets,
    run_config,
    run_preset,
    selftest,
    shutter_density,
    single_particle_density,
)

__all__ = [name for name in dir() if not name.startswith("_")]
