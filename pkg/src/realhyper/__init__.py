"""Finite real hyperfields whose positive cone is a cyclic group."""
from .classify import (
    ClassificationReport,
    ClassRecord,
    canonical_form,
    enumerate_hyperfields,
    iso_orbit,
    summarize,
)
from .cone import decode, encode, shift
from .full_model import FullModel, SignedSubset, axiom_oracle, build_table, emit_table
from .hyperstructure import Hyperstructure, construct, even_cond, is_hyperfield
from .invariants import CCharResult, c_characteristic, characteristic_is_zero, non_quotient_flag

__version__ = "0.1.0"
