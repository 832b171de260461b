"""Exact arithmetic for orbits of rational maps on P^1 over Q and Q(t):
primitive prime divisors, canonical heights, abc-triple experiments, the
Mason inequality, and square-free certificates for iterated quadratic towers.
"""

from .abclab import AbcTriple, RothScanReport, abc_quality, roth_scan_ff, roth_scan_q
from .errors import (
    BadPrimeError,
    CacheError,
    ExprSyntaxError,
    InvariantError,
    MapConstructionError,
    ResourceCapError,
)
from .ffplaces import (
    FFElement,
    FFPlace,
    MasonReport,
    ff_height,
    ff_valuation,
    mason_check,
    squarefree_part,
)
from .galois import (
    DiscRecursionCheck,
    GaloisTowerRecord,
    disc_recursion_check,
    discriminant,
    quadratic_iterate,
    stoll_certificate,
    tower_report,
)
from .heights import (
    CanonicalHeightEstimate,
    HeightValue,
    PointClassification,
    canonical_height,
    classify_point,
    multi_height,
    phi_height_bound,
    weil_height,
)
from .intplaces import (
    CoprimeBasis,
    FactoredValue,
    LogMass,
    coprime_basis,
    factor,
    is_probable_prime,
    radical_logmass,
    valuation,
)
from .maps import (
    INFINITY,
    BadReduction,
    IterateRep,
    RamificationProfile,
    RamificationVerdict,
    RationalMap,
    RationalMapFF,
    ResidueCycle,
)
from .zsigmondy import (
    OrbitRecord,
    PropOldReport,
    Termination,
    ZsigmondyReport,
    orbit,
    primitive_part,
    primitive_prime_factors,
    prop_old_diagnostic,
    squarefree_primitive_prime,
    zsigmondy_report,
)

__version__ = "0.1.0"

__all__ = [
    "AbcTriple",
    "BadPrimeError",
    "BadReduction",
    "CacheError",
    "CanonicalHeightEstimate",
    "CoprimeBasis",
    "DiscRecursionCheck",
    "ExprSyntaxError",
    "FFElement",
    "FFPlace",
    "FactoredValue",
    "GaloisTowerRecord",
    "HeightValue",
    "INFINITY",
    "InvariantError",
    "IterateRep",
    "LogMass",
    "MapConstructionError",
    "MasonReport",
    "OrbitRecord",
    "PointClassification",
    "PropOldReport",
    "RamificationProfile",
    "RamificationVerdict",
    "RationalMap",
    "RationalMapFF",
    "ResidueCycle",
    "ResourceCapError",
    "RothScanReport",
    "Termination",
    "ZsigmondyReport",
    "abc_quality",
    "canonical_height",
    "classify_point",
    "coprime_basis",
    "disc_recursion_check",
    "discriminant",
    "factor",
    "ff_height",
    "ff_valuation",
    "is_probable_prime",
    "mason_check",
    "multi_height",
    "orbit",
    "phi_height_bound",
    "primitive_part",
    "primitive_prime_factors",
    "prop_old_diagnostic",
    "quadratic_iterate",
    "radical_logmass",
    "roth_scan_ff",
    "roth_scan_q",
    "squarefree_part",
    "squarefree_primitive_prime",
    "stoll_certificate",
    "tower_report",
    "valuation",
    "weil_height",
    "zsigmondy_report",
]
