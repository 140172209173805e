"""
Extractors Module
Readers and writers for instance JSON and DIMACS formula files
"""
from .base_extractor import BaseExtractor, ExtractionResult
from .cnf_extractor import CNFExtractor, load_formula, parse_dimacs, save_formula
from .instance_extractor import InstanceExtractor, instance_from_dict, load_instance, save_instance

__all__ = [
    'BaseExtractor',
    'ExtractionResult',
    'CNFExtractor',
    'load_formula',
    'parse_dimacs',
    'save_formula',
    'InstanceExtractor',
    'instance_from_dict',
    'load_instance',
    'save_instance',
]
