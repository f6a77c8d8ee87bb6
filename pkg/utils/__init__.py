"""
유틸리티 모듈
"""

from .settings import Settings, load_settings, configure_logging
from .grid_utils import parse_range, make_grid, log_grid, parallel_map
from .bessel_utils import (
    gamma,
    bessel_j,
    bessel_j_prime,
    bessel_j_over_power,
    bessel_zeros,
    bessel_zero,
    verify_recurrence
)
from .quad_utils import (
    adaptive_integrate,
    gauss_legendre,
    truncation_point,
    decompose_lobes,
    lobe_integral,
    alternating_sum,
    weighted_lobe_sum
)

__all__ = [
    'Settings',
    'load_settings',
    'configure_logging',
    'parse_range',
    'make_grid',
    'log_grid',
    'parallel_map',
    'gamma',
    'bessel_j',
    'bessel_j_prime',
    'bessel_j_over_power',
    'bessel_zeros',
    'bessel_zero',
    'verify_recurrence',
    'adaptive_integrate',
    'gauss_legendre',
    'truncation_point',
    'decompose_lobes',
    'lobe_integral',
    'alternating_sum',
    'weighted_lobe_sum'
]
