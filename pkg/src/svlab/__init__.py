"""Siegel-Veech constants of strata of abelian differentials.

Exact rational-times-pi arithmetic, configuration enumeration, an exact
constant engine, large-genus closed forms, numerical checks of the
combinatorial inequalities behind them and a Monte-Carlo check of the
Siegel mean-value formula.
"""
from .core_numbers import PiLaurent, default_precision
from .errorclass import ErrorClass
from .strata import (Component, ExactFormulaUnavailable, StratumSignature, classify_components,
                     parse_stratum, volume_exact_special)
from .sv_engine import SvValue, VolumeUnavailable, sv_configuration, sv_hyperelliptic_exact, sv_sum
from .asymptotics import AsymptoticValue, generate_table

__version__ = "0.1.0"

__all__ = ["PiLaurent", "default_precision", "ErrorClass", "Component", "ExactFormulaUnavailable",
           "StratumSignature", "classify_components", "parse_stratum", "volume_exact_special",
           "SvValue", "VolumeUnavailable", "sv_configuration", "sv_hyperelliptic_exact", "sv_sum",
           "AsymptoticValue", "generate_table"]
