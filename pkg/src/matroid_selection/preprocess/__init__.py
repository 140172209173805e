"""
Preprocess Module
Capacity separation, big/small bin classification and capacity shrinking
"""
from .classification import DEPTH_SCALED, UNIFORM, classify_bins, shrink_big
from .separation import SeparatedInstance, qptas_solve, separate_capacities

__all__ = ['DEPTH_SCALED', 'UNIFORM', 'classify_bins', 'shrink_big',
           'SeparatedInstance', 'qptas_solve', 'separate_capacities']
