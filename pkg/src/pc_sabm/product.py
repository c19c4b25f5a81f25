"""Square product codes over a BCH component code."""

from __future__ import annotations

import numpy as np

from .bch import BchCode


class DimensionMismatch(ValueError):
    pass


class ProductCode:
    """n x n arrays whose every row and column is a component codeword."""

    def __init__(self, component: BchCode):
        self.component = component
        self.n = component.n
        self.k = component.k
        self.rate = (component.k / component.n) ** 2

    def __repr__(self):
        return f"ProductCode({self.component!r}, rate={self.rate:.4f})"

    def encode_block(self, info) -> np.ndarray:
        """Encode a k x k information matrix, rows first then columns."""
        info = np.asarray(info, dtype=np.uint8)
        if info.shape != (self.k, self.k):
            raise DimensionMismatch(f"info must be {self.k}x{self.k}, got {info.shape}")
        rows = self.component.encode_many(info)  # k x n
        return self.component.encode_many(rows.T).T  # n x n

    def random_block(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        info = rng.integers(0, 2, size=(self.k, self.k), dtype=np.uint8)
        return info, self.encode_block(info)


def bit_errors(a, b, info_only: bool = True, k: int | None = None) -> int:
    """Hamming distance between two blocks, optionally over the top-left k x k region."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"block shapes differ: {a.shape} vs {b.shape}")
    if info_only:
        if k is None:
            raise ValueError("k is required when info_only is set")
        a = a[:k, :k]
        b = b[:k, :k]
    return int(np.count_nonzero(a != b))
