"""Exact arithmetic for the Minkowski question mark function.

The package evaluates ?(x) exactly on rationals (dyadic values) and by
certified enclosure on quadratic irrationals, enumerates Stern-Brocot
levels, brackets difference quotients by the continued-fraction sandwich,
certifies the growth constants lambda_j / L_j / kappa_1..3, maximizes
digit-profile continuants and their lambda-product bounds, re-runs the
exhaustive {1,4} base-case scans, and classifies the derivative ?'(x)
from continued-fraction statistics.
"""

from .cf import (
    CFSpec,
    ConvergentPair,
    cf_expand,
    constant_continuant,
    continuant,
    convergents,
    format_cf,
    parse_cf,
    rational_to_spec,
    replacement_floor,
    split_continuant,
)
from .classifier import (
    Classification,
    PeriodicExponent,
    Rule,
    TrendRow,
    Verdict,
    classify,
    gen_x_pq,
    gen_x_r,
    limit_average,
    periodic_exponent,
    trend_statistic,
    xpq_window,
)
from .constants import (
    Kappa,
    OrderingReport,
    SpectralConstants,
    check_orderings,
    default_bits,
    kappas,
    spectral,
)
from .errors import (
    ConstructionError,
    DegenerateIntervalError,
    DepthError,
    DomainError,
    GuardError,
    LimitError,
    NoDecompositionError,
    NotDyadicError,
    OutOfWindowError,
    PrecisionError,
    PreconditionError,
    QmarkError,
    RationalInputError,
    SizeError,
    UsageError,
)
from .extremal import (
    KanReport,
    MapleReport,
    OmegaGridReport,
    OmegaVertexReport,
    PolytopeVertex,
    Profile,
    PrtReport,
    ReduceResult,
    SqrtReport,
    k_bracket,
    kan_check,
    mu_brute,
    multiset_permutations,
    omega_max_grid,
    omega_max_vertex,
    prt_bound,
    reduce_2233,
    sylvester_decompose,
    verify_maple,
    verify_sqrt,
)
from .interval import Interval, e_enclosure, ln2_enclosure, ln_enclosure, sqrt_enclosure
from .question_mark import (
    DistributionReport,
    FareySearch,
    SandwichReport,
    SternBrocotLevel,
    distribution_check,
    farey_interval_search,
    qm_irrational,
    qm_mediant_oracle,
    qm_rational,
    sandwich,
    stern_brocot_level,
)
from .rational import (
    Dyadic,
    are_farey_neighbors,
    format_rational,
    mediant,
    parse_dyadic,
    parse_rational,
)

__version__ = "0.1.0"
