"""Equivariant birational rigidity of del Pezzo surfaces under finite groups."""

from .groups import FiniteGroup, IsoClass, OrderBoundExceeded, recognize, subgroups
from .quadric import GoursatDatum, QuadGroup, build_group, enumerate_data
from .rigidity import (
    LinkWitness,
    NotMinimal,
    RigidityStatus,
    WitnessMismatch,
    decide_deg5,
    decide_deg6,
    decide_deg8,
    decide_deg9,
    decide_goursat,
)
from .verify import VerificationReport, verify_main_theorem, verify_superrigidity_monotonicity

__version__ = "0.1.0"
