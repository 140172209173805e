"""
Generators Module
Instance constructions: anti-concentration, hardness reduction, embedding and random corpora
"""
from .anticoncentration import produce_anticoncentration
from .correlation_search import search_positive_correlation
from .embedding import embed_in_complete_graph
from .formulas import s3sat_to_s2sat
from .gain import apx_fact_holds, apx_fact_ratio, gain_formula
from .random_instances import random_graphic, random_left_to_right
from .reduction import check_reduction_rules, random_assignment_lower_bound, s2sat_to_gmbs

__all__ = [
    'produce_anticoncentration',
    'search_positive_correlation',
    'embed_in_complete_graph',
    's3sat_to_s2sat',
    'apx_fact_holds',
    'apx_fact_ratio',
    'gain_formula',
    'random_graphic',
    'random_left_to_right',
    'check_reduction_rules',
    'random_assignment_lower_bound',
    's2sat_to_gmbs',
]
