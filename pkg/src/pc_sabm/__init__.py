"""Product codes over extended BCH codes with iBDD, genie iBDD, SABM and SABM-SR decoding."""

from .bch import BchCode, BddOutcome, BddStatus, build_code
from .channel import hard_decision, sigma_from_ebno, transmit
from .decode import (
    DecoderConfig,
    DecoderKind,
    decode,
    ibdd_decode,
    ideal_ibdd_decode,
    mark,
    sabm_decode,
    sabm_sr_decode,
    scaled_reliabilities,
)
from .gf2m import Field, make_field
from .product import ProductCode, bit_errors
from .sim import SimPoint, SweepConfig, run_point, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BchCode", "BddOutcome", "BddStatus", "build_code",
    "hard_decision", "sigma_from_ebno", "transmit",
    "DecoderConfig", "DecoderKind", "decode", "ibdd_decode", "ideal_ibdd_decode", "mark",
    "sabm_decode", "sabm_sr_decode", "scaled_reliabilities",
    "Field", "make_field", "ProductCode", "bit_errors",
    "SimPoint", "SweepConfig", "run_point", "run_sweep",
]
