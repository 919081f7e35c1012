"""Exact computations in Lipschitz-free spaces over finite pointed metric spaces."""

__version__ = "0.1.0"

from .errors import InputError, InvariantBreach, LipfreeError, ParseError  # noqa: E402
from .metric import FiniteMetricSpace, build_metric_space, standard_space  # noqa: E402
from .freespace import Molecule, MoleculeDecomposition, aenorm, aenorm_oracle, optimal_decomposition  # noqa: E402
from .lipschitz import LipschitzFunction, dual_witness, lip_norm, mcshane_extend, pairing  # noqa: E402
from .trapezoid import TrapezoidInstance, check_ltp, check_sltp, sltp_modulus  # noqa: E402
from .doh import (  # noqa: E402
    DohInstance,
    DohTerm,
    doh_candidate_check,
    doh_objective,
    min_violation_lp,
    sltp_failure_to_doh,
    ssd2p_chain_verify,
)
from .gallery import c01_gallery, l1_lift_check, prop31b_witness  # noqa: E402

__all__ = [
    "__version__", "LipfreeError", "InputError", "InvariantBreach", "ParseError",
    "FiniteMetricSpace", "build_metric_space", "standard_space",
    "Molecule", "MoleculeDecomposition", "aenorm", "aenorm_oracle", "optimal_decomposition",
    "LipschitzFunction", "dual_witness", "lip_norm", "mcshane_extend", "pairing",
    "TrapezoidInstance", "check_ltp", "check_sltp", "sltp_modulus",
    "DohInstance", "DohTerm", "doh_candidate_check", "doh_objective", "min_violation_lp",
    "sltp_failure_to_doh", "ssd2p_chain_verify",
    "c01_gallery", "l1_lift_check", "prop31b_witness",
]
