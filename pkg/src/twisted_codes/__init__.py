"""Twisted and twisted-skew group rings over finite fields, and the codes their ideals define."""
from .codes import CodeParams, LinearCode, bound_report, code_from_ideal, extremal_construct, extremal_decompose, min_distance, s_rank, search_codes
from .crossed import Cocycle, CrossedSystem, SigmaAction, coboundary_from_lambda, enumerate_cocycles, is_coboundary, validate_crossed_system
from .gf import FieldElem, FiniteField, field_create
from .groups import FiniteGroup, Subgroup, group_build
from .ring import IdealHandle, RingElem, TwistedRing

__all__ = [
    "CodeParams",
    "Cocycle",
    "CrossedSystem",
    "FieldElem",
    "FiniteField",
    "FiniteGroup",
    "IdealHandle",
    "LinearCode",
    "RingElem",
    "SigmaAction",
    "Subgroup",
    "TwistedRing",
    "bound_report",
    "coboundary_from_lambda",
    "code_from_ideal",
    "enumerate_cocycles",
    "extremal_construct",
    "extremal_decompose",
    "field_create",
    "group_build",
    "is_coboundary",
    "min_distance",
    "s_rank",
    "search_codes",
    "validate_crossed_system",
]
