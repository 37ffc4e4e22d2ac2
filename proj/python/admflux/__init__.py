"""ADM mass and center of mass of asymptotically flat metrics."""

from ._core import (
    AdmfluxError,
    MetricField,
    Surface,
    adm_mass,
    cs_center,
    conformal,
    ellipsoid,
    field_from_config,
    flat,
    ibp_residual_x,
    ibp_residual_y,
    intrinsic_center,
    intrinsic_mass,
    rt_violator,
    run,
    schwarzschild,
    sphere,
    sweep,
)

__all__ = [
    "AdmfluxError",
    "MetricField",
    "Surface",
    "adm_mass",
    "conformal",
    "cs_center",
    "ellipsoid",
    "field_from_config",
    "flat",
    "ibp_residual_x",
    "ibp_residual_y",
    "intrinsic_center",
    "intrinsic_mass",
    "rt_violator",
    "run",
    "schwarzschild",
    "sphere",
    "sweep",
]
