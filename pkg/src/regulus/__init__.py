"""Truncated q-series arithmetic, eta-quotient modular form metadata, Hecke
operators, and Sturm-certified congruences for 5-regular partitions.

The central objects: the k-regular partition series prod (1-q^{kn})/(1-q^n),
the series F_m with coefficients b_5((mn-1)/6) mod m, and certificates that
F_m | T(l) vanishes mod m up to the Sturm bound of S_{2m-2}(Gamma_0(180),
chi_5), each of which proves l-1 explicit progressions b_5(An+B) = 0 (mod m).
"""

__version__ = "0.1.0"

from .qseries import (
    QSeries,
    SeriesConfig,
    DEFAULT_CONFIG,
    ModulusMismatchError,
    OffsetAlignmentError,
    NonInvertibleError,
    mul,
    inverse,
    power,
    reduce_mod,
    pentagonal_exponents,
    euler_product,
    eta_quotient_series,
)
from .etaforms import (
    EtaQuotient,
    FormMeta,
    Cusp,
    Classification,
    EtaConditionError,
    gordon_hughes_meta,
    character_eval,
    cusp_order,
    classify,
    complete_meta,
    sturm_bound,
)
from .heckeops import U, V, hecke_T, verify_frobenius_reduction
from .regpart import (
    ProgressionReport,
    PrecisionCapError,
    EtaFactorization,
    bk_series,
    b5_value_oracle,
    check_progression,
    build_Fm,
    build_f_mz,
    fm_via_eta_chain,
)
from .certify import (
    Progression,
    CongruenceCertificate,
    CriterionResult,
    certify_pair,
    derive_progressions,
    criterion_scan,
    scan_l,
    verify_eta_factorization,
)
from .cache import DiskCache, default_cache_dir

__all__ = [
    "__version__",
    "QSeries",
    "SeriesConfig",
    "DEFAULT_CONFIG",
    "ModulusMismatchError",
    "OffsetAlignmentError",
    "NonInvertibleError",
    "mul",
    "inverse",
    "power",
    "reduce_mod",
    "pentagonal_exponents",
    "euler_product",
    "eta_quotient_series",
    "EtaQuotient",
    "FormMeta",
    "Cusp",
    "Classification",
    "EtaConditionError",
    "gordon_hughes_meta",
    "character_eval",
    "cusp_order",
    "classify",
    "complete_meta",
    "sturm_bound",
    "U",
    "V",
    "hecke_T",
    "verify_frobenius_reduction",
    "ProgressionReport",
    "PrecisionCapError",
    "EtaFactorization",
    "bk_series",
    "b5_value_oracle",
    "check_progression",
    "build_Fm",
    "build_f_mz",
    "fm_via_eta_chain",
    "Progression",
    "CongruenceCertificate",
    "CriterionResult",
    "certify_pair",
    "derive_progressions",
    "criterion_scan",
    "scan_l",
    "verify_eta_factorization",
    "DiskCache",
    "default_cache_dir",
]
