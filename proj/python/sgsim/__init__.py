"""Sine-Gordon lattice laboratory.

Thin python layer over the C++ core: exact field-theory analytics, the
lattice <-> continuum coupling maps, least-squares extractors and the
config-driven experiment runner shared with the `sg` CLI.
"""

from _sgsim import (  # noqa: F401
    ConfigError,
    DomainError,
    FitError,
    __version__,
    beta2_from_xi,
    breather_mass,
    ctm_level_spacing,
    ctm_spacing_asymptotic,
    fit_cardy,
    fit_central_charge,
    fit_linear,
    mass_parameter_from_soliton,
    perturbative_luttinger,
    run_experiment,
    sg_to_xyz,
    soliton_mass,
    soliton_mass_from_sigma,
    two_point_ff,
    vacuum_energy_density,
    vertex_vev,
    xi_sg,
    xyz_to_sg,
)
