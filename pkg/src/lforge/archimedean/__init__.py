"""Archimedean gamma factors and Mellin-Barnes identities."""
from .gamma import (
    ArchField,
    GammaFactor,
    GammaProduct,
    complex_gamma,
    gamma_C,
    gamma_F,
    gamma_R,
    log_complex_gamma,
)
from .identities import (
    GENERIC_PARAMS,
    STAGES,
    TRIVIAL_PARAMS,
    ArchParams,
    CheckResult,
    arch_lfactor,
    arch_zeta_verify,
    check_arch_zeta,
    check_barnes1,
    check_barnes2,
    check_stade,
    random_barnes1,
    random_barnes2,
    random_stade,
    stade_fixed_point,
    verify_barnes1,
    verify_barnes2,
    verify_stade,
    whittaker_gl2_arch,
    whittaker_gl4_kernel,
    zeta_closed_form,
    zeta_closed_form_reduced,
)
from .quadrature import MBIntegrand, QuadratureResult, QuadratureSpec, choose_contour, mb_integrate

__all__ = [name for name in dir() if not name.startswith("_")]
