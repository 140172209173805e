"""
Core Module
Configuration, domain models and matroid oracles
"""
from .config import Config, config
from .errors import SelectionError
from .model import Atom, Bin, GraphicGround, Instance, LaminarFamily, ValueDistribution

__all__ = ['Config', 'config', 'SelectionError', 'Atom', 'Bin', 'GraphicGround',
           'Instance', 'LaminarFamily', 'ValueDistribution']
