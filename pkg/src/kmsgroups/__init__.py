"""Exact computations with Kac-Moody-Steinberg groups over Q and small finite fields."""

from .lie import free_lie, peterson_multiplicity_oracle, quotient_by_relators, serre_quotient
from .rank2 import Rank2Element
from .rootsystem import GCM, cartan, is_r_spherical, is_spherical, load_gcm, validate_gcm
from .scalars import GF, QQ, parse_field
from .truncated import TruncatedGroup, embed_word, truncated_group
from .words import GroupWord, build_a2tilde_witness, residual_nilpotence_verdict

__all__ = [
    "GCM",
    "GF",
    "QQ",
    "GroupWord",
    "Rank2Element",
    "TruncatedGroup",
    "build_a2tilde_witness",
    "cartan",
    "embed_word",
    "free_lie",
    "is_r_spherical",
    "is_spherical",
    "load_gcm",
    "parse_field",
    "peterson_multiplicity_oracle",
    "quotient_by_relators",
    "residual_nilpotence_verdict",
    "serre_quotient",
    "truncated_group",
    "validate_gcm",
]
