"""Polar codes as a linear secret-sharing scheme.

Build a polar code for a BEC, BSC or BI-AWGN channel, deal shares of a
secret bit from it, reconstruct from qualified coalitions, and compute the
access structure exactly from the dual code.
"""

from .access import (
    AccessStructure,
    all_minimal_check,
    combination,
    dictator_analysis,
    enumerate_p_codewords,
    is_qualified,
    is_qualified_dual,
    minimal_access_sets,
    row_coalitions,
    theorem1_count_check,
)
from .channel import BEC, BSC, BiAWGN, ChannelModel, bhattacharyya, capacity, transmit
from .construction import (
    CodeSpec,
    awgn_reliabilities,
    bec_reliabilities,
    build_code,
    code_from_information_set,
    column_weight,
    dual_submatrix,
    encode,
    generator_submatrix,
    load_code,
    save_code,
    select_equal_weight_rows,
    select_information_set,
    systematic_encode,
)
from .gf2 import covers, dual_generator, kron, polar_generator, solve, support, weight
from .sharing import Dealing, Share, deal, deal_string, reconstruct, reconstruct_string, security_audit
from .transmission import SimReport, simulate

__version__ = "0.1.0"
