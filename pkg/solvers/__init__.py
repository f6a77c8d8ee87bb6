"""
솔버 모듈
"""

from .kernel_solver import KernelSolver, sphere_area
from .linear_solver import LinearSolver, certify_radial_positivity, positivity_threshold
from .semilinear_solver import SemilinearSolver, HBoundSolver, regime_summary

__all__ = [
    'KernelSolver',
    'sphere_area',
    'LinearSolver',
    'certify_radial_positivity',
    'positivity_threshold',
    'SemilinearSolver',
    'HBoundSolver',
    'regime_summary'
]
