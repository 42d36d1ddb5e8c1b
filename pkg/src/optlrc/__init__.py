"""Optimal locally repairable codes over finite-field extensions.

Coded symbols live in an extension ``base[x]/(f)`` of a prime or binary
field; ``omega`` is the class of x. Positions, groups and shard indices are
0-based throughout.
"""

from .analysis import DecodabilityReport, pdec_brute, pdec_exact, pdec_lower_bound, pdec_monte_carlo
from .codec import (
    AccessLog,
    StripeBundle,
    decodable,
    decode,
    encode,
    encode_from_stripes,
    group_stripes,
    message_from_stripes,
    repair,
    repair_local,
    rs_stripes,
)
from .construction import (
    CodeParams,
    GeneratorMatrix,
    LocalCode,
    build_generator,
    build_local_code,
    build_local_code_general,
    make_params,
    to_systematic,
    verify_monic_permanents,
)
from .errors import (
    CapExceeded,
    ChecksumMismatch,
    LRCError,
    ManifestError,
    ParamError,
    RankDeficient,
    ShapeError,
    SingularMatrixError,
    TooLarge,
    TooManyLocalErasures,
    ZeroInverseError,
)
from .matroid import (
    Circuit,
    MatroidReport,
    analyze_matroid,
    compute_mu,
    distance_oracle,
    distance_via_mu,
    enumerate_circuits,
    verify_optimal_lrc,
)

__version__ = "0.1.0"
