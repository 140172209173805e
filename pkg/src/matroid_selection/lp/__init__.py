"""
LP Module
Relaxation over small-bin state polytopes with ex-ante constraints for big bins
"""
from .extraction import ExtractedPolicy, enumerate_block, extract_policy, lambda_star
from .model import LPModel, assemble_lp
from .solver import LPSolution, solve_lp

__all__ = ['ExtractedPolicy', 'enumerate_block', 'extract_policy', 'lambda_star',
           'LPModel', 'assemble_lp', 'LPSolution', 'solve_lp']
