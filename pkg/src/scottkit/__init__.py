"""Executable Scott-sentence and invariant machinery for desk-scale model theory."""

from .core import (
    FiniteStructure,
    ScottSentence,
    Signature,
    brute_force_iso,
    css_equal,
    ef_equiv,
    joint_refine,
    scott_sentence,
)
from .extnat import OMEGA

__all__ = [
    "FiniteStructure",
    "OMEGA",
    "ScottSentence",
    "Signature",
    "brute_force_iso",
    "css_equal",
    "ef_equiv",
    "joint_refine",
    "scott_sentence",
]
