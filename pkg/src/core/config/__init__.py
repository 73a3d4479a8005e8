"""
Configuration module for cat0-collapse.
"""

from .config import Config, Tolerances, get_config, get_tolerances, reset_config

__all__ = ['get_config', 'get_tolerances', 'reset_config', 'Config', 'Tolerances']
