"""
Matroid Bayesian Online Selection Toolkit
Exact optimal policies, the LP-based PTAS for left-to-right laminar matroids and hardness constructions
"""
__version__ = "1.0.0"
