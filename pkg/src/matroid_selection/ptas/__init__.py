"""
PTAS Module
Policy construction pipeline and the online runner
"""
from .orchestrator import PtasOrchestrator, PtasPolicy, build_ptas_policy
from .runner import exact_run, failure_probability_check, monte_carlo, run_online

__all__ = ['PtasOrchestrator', 'PtasPolicy', 'build_ptas_policy',
           'exact_run', 'failure_probability_check', 'monte_carlo', 'run_online']
