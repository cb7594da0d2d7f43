"""Optimal shuffle code synthesis for copy, permi5 and permi23 instructions."""
from .copyset import optimal_copy_set
from .greedy import greedy_cost, greedy_schedule
from .ops import Copy, Permi5, Permi23, ShuffleCode
from .pipeline import SynthesisResult, check_normalized, encoding_bits, synthesize
from .rtg import Rtg, Signature, build_rtg, copy_count, decompose, signature
from .sim import execute, oracle_min_length, satisfies

__version__ = "0.1.0"

__all__ = [
    "Rtg",
    "Signature",
    "build_rtg",
    "copy_count",
    "decompose",
    "signature",
    "Copy",
    "Permi5",
    "Permi23",
    "ShuffleCode",
    "greedy_cost",
    "greedy_schedule",
    "optimal_copy_set",
    "SynthesisResult",
    "synthesize",
    "check_normalized",
    "encoding_bits",
    "execute",
    "satisfies",
    "oracle_min_length",
]
