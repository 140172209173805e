"""
Policy Module
Exact optimal online policies and their selection statistics
"""
from .exact_policy import (ExactPolicy, Realization, SelectionTrace, enumerate_realizations,
                           expected_gain_by_enumeration, mu_shift, optimal_value, replay, threshold)
from .statistics import SelectionStatistics, exact_statistics, mgf_bound
from .stochastic_sat import s2sat_value, stochastic_sat_value

__all__ = [
    'ExactPolicy',
    'Realization',
    'SelectionTrace',
    'enumerate_realizations',
    'expected_gain_by_enumeration',
    'mu_shift',
    'optimal_value',
    'replay',
    'threshold',
    'SelectionStatistics',
    'exact_statistics',
    'mgf_bound',
    's2sat_value',
    'stochastic_sat_value',
]
