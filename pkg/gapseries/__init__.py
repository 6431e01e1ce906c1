"""
gapseries: exact generating functions, counting functions and reciprocal
matrices for partitions and compositions with bounded gaps between
consecutive parts.
"""

from gapseries.checks import IdentityCheck
from gapseries.enumerate import (
    Composition,
    GapClass,
    Partition,
    gap_compositions,
    gap_partitions,
    is_gap_composition,
    is_gap_partition,
    is_m_step,
)
from gapseries.genfun import (
    K,
    M,
    SeriesRequest,
    series_C,
    series_C_ge_m,
    series_P,
    series_P_le_m,
    verify_K_identity,
)
from gapseries.involution import PairState, phi, verify_involution
from gapseries.qseries import (
    TruncatedSeries,
    XQSeries,
    qbinomial,
    qpochhammer,
    series_invert,
    series_mul,
    xq_eval_x,
    xq_invert,
    xq_mul,
)
from gapseries.reciprocity import (
    Triangle,
    build_gamma,
    build_mu,
    check_inverse,
    gamma_product,
    triangle_mul,
    tuple_count,
)

__version__ = "1.0.0"
