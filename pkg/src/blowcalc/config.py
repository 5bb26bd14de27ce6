"""Resource caps for desk-scale computation.

Every cap trips a clean ResourceLimitError instead of running away.  The
module-level CAPS object is consulted by the kernel; the CLI overrides
fields from environment variables (BLOWCALC_MAX_BASIS etc.) at startup.
"""

import os
from dataclasses import dataclass


@dataclass
class Caps:
    # Groebner machinery
    max_basis_size: int = 1000
    max_total_degree: int = 64
    # factorization (desk scale only)
    max_kron_image_degree: int = 64
    max_divisor_combinations: int = 200_000
    max_factor_subsets: int = 8192
    max_integer_to_factor: int = 10**15
    # predicate enumeration
    max_boundary_components: int = 8
    # procedure guards
    max_principalization_rounds: int = 64
    max_whitney_rounds: int = 12


CAPS = Caps()

_ENV_FIELDS = {
    "BLOWCALC_MAX_BASIS": "max_basis_size",
    "BLOWCALC_MAX_DEGREE": "max_total_degree",
    "BLOWCALC_MAX_KRON_DEGREE": "max_kron_image_degree",
    "BLOWCALC_MAX_DIVISOR_COMBOS": "max_divisor_combinations",
    "BLOWCALC_MAX_FACTOR_SUBSETS": "max_factor_subsets",
    "BLOWCALC_MAX_BOUNDARY": "max_boundary_components",
}


def apply_env_overrides(environ=None) -> None:
    env = os.environ if environ is None else environ
    for key, field in _ENV_FIELDS.items():
        if key in env:
            setattr(CAPS, field, int(env[key]))
