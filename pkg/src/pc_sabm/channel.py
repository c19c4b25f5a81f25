"""2-PAM over AWGN: Eb/N0 bookkeeping, noisy LLRs and hard decisions.

Bit 1 is sent as +1 and bit 0 as -1, so a positive LLR favours bit 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InvalidRate(ValueError):
    pass


def sigma_from_ebno(ebno_db: float, rate: float) -> float:
    """Noise std per real dimension for unit-energy symbols: sigma^2 = 1 / (2 R Eb/N0)."""
    if not 0 < rate <= 1:
        raise InvalidRate(f"code rate must lie in (0, 1], got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10 ** (ebno_db / 10)))


def ebno_from_sigma(sigma: float, rate: float) -> float:
    if not 0 < rate <= 1:
        raise InvalidRate(f"code rate must lie in (0, 1], got {rate}")
    return 10 * math.log10(1.0 / (2.0 * rate * sigma**2))


@dataclass(frozen=True)
class ChannelParams:
    ebno_db: float
    rate: float

    @property
    def sigma(self) -> float:
        return sigma_from_ebno(self.ebno_db, self.rate)


def block_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based (Philox) stream keyed by a master seed and integer indices."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def transmit(block, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Modulate, add Gaussian noise and return the channel LLRs 2y/sigma^2."""
    x = 2.0 * np.asarray(block, dtype=np.float64) - 1.0
    y = x + sigma * rng.standard_normal(x.shape)
    return 2.0 * y / sigma**2


def hard_decision(rel) -> np.ndarray:
    """Bit 1 iff the value is strictly positive."""
    return (np.asarray(rel) > 0).astype(np.uint8)


def pre_fec_ber_theory(sigma: float) -> float:
    """Q(1/sigma) for antipodal +-1 signalling."""
    return 0.5 * math.erfc(1.0 / (sigma * math.sqrt(2.0)))
