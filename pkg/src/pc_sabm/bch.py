"""Extended binary BCH codes (nu, t, e) with bounded-distance decoding.

Bit ordering of a codeword vector of length ``n = 2**nu - 1 + e``:
message bits first, then the cyclic parity bits, then (when ``e == 1``) the
overall even-parity bit.  Vector index ``j < n0`` holds the coefficient of
``x**(n0 - 1 - j)`` of the cyclic codeword polynomial, ``n0 = 2**nu - 1``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .gf2m import Field, poly_degree, poly_mod, poly_mul


class UnsupportedParameters(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class BddStatus(enum.Enum):
    CORRECTED = "corrected"
    FAILURE = "failure"


@dataclass(frozen=True)
class BddOutcome:
    status: BddStatus
    flipped_positions: tuple[int, ...] = ()
    codeword: np.ndarray | None = None

    @property
    def corrected(self) -> bool:
        return self.status is BddStatus.CORRECTED


FAILURE = BddOutcome(BddStatus.FAILURE)


class BchCode:
    """Binary primitive BCH code of order ``nu`` and correction power ``t``,
    optionally extended by one overall parity bit."""

    def __init__(self, nu: int, t: int, e: int, primitive_poly: int | None = None):
        if not 4 <= nu <= 8 or t not in (1, 2) or e not in (0, 1):
            raise UnsupportedParameters(f"BCH({nu},{t},{e}) is not supported")
        self.field = Field(nu, primitive_poly)
        self.nu, self.t, self.e = nu, t, e
        self.n0 = self.field.order
        self.n = self.n0 + e

        g = 1
        for i in range(1, t + 1):
            mp = self.field.min_poly(2 * i - 1)
            # minimal polynomials of distinct conjugacy classes are coprime
            if poly_mod(g, mp) != 0:
                g = poly_mul(g, mp)
        self.generator = g
        self.k = self.n0 - poly_degree(g)
        self.d_min = 2 * t + 1 + e

        gm = np.array([self._encode_int(1 << (self.k - 1 - i)) for i in range(self.k)],
                      dtype=np.uint8)
        gm.flags.writeable = False
        self.generator_matrix = gm

        # per-position syndrome contributions, S1 in the low bits, S3 above
        col = np.zeros(self.n0, dtype=np.int64)
        for j in range(self.n0):
            i = self.n0 - 1 - j
            col[j] = self.field.alpha(i)
            if t == 2:
                col[j] |= self.field.alpha(3 * i) << nu
        col.flags.writeable = False
        self._column_syndromes = col

    def __repr__(self):
        return f"BchCode(nu={self.nu}, t={self.t}, e={self.e}, n={self.n}, k={self.k})"

    @property
    def label(self) -> str:
        return f"{self.nu},{self.t},{self.e}"

    @property
    def rate(self) -> float:
        return self.k / self.n

    # --- encoding -------------------------------------------------------

    def _encode_int(self, msg: int) -> list[int]:
        shifted = msg << (self.n0 - self.k)
        cw = shifted ^ poly_mod(shifted, self.generator)
        bits = [(cw >> (self.n0 - 1 - j)) & 1 for j in range(self.n0)]
        if self.e:
            bits.append(sum(bits) & 1)
        return bits

    def encode(self, message) -> np.ndarray:
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.k,):
            raise LengthMismatch(f"message must have length {self.k}, got {message.shape}")
        msg = 0
        for b in message:
            msg = (msg << 1) | int(b)
        return np.array(self._encode_int(msg), dtype=np.uint8)

    def encode_many(self, messages: np.ndarray) -> np.ndarray:
        """Encode each row of a (L, k) bit matrix."""
        messages = np.asarray(messages)
        if messages.ndim != 2 or messages.shape[1] != self.k:
            raise LengthMismatch(f"expected (L, {self.k}) messages, got {messages.shape}")
        prod = messages.astype(np.float32) @ self.generator_matrix.astype(np.float32)
        return (prod.astype(np.int64) & 1).astype(np.uint8)

    # --- syndromes ------------------------------------------------------

    def _check_length(self, word) -> np.ndarray:
        word = np.asarray(word, dtype=np.uint8)
        if word.shape != (self.n,):
            raise LengthMismatch(f"word must have length {self.n}, got {word.shape}")
        return word

    def syndromes(self, word) -> list[int]:
        """S_1 .. S_2t of the cyclic part, evaluated at alpha**l."""
        word = self._check_length(word)
        f = self.field
        out = []
        for l in range(1, 2 * self.t + 1):
            s = 0
            for j in np.flatnonzero(word[: self.n0]):
                s ^= f.alpha(l * (self.n0 - 1 - int(j)))
            out.append(s)
        return out

    def is_codeword(self, word) -> bool:
        word = self._check_length(word)
        if any(self.syndromes(word)):
            return False
        return not (self.e and int(word.sum()) & 1)

    # --- bounded-distance decoding --------------------------------------

    def _chien(self, sigma: list[int]) -> list[int]:
        """Exponents i with locator(alpha**-i) == 0, sigma lowest degree first."""
        f = self.field
        i = np.arange(self.n0)
        acc = np.zeros(self.n0, dtype=np.int64)
        for d, c in enumerate(sigma):
            if c:
                acc ^= f.exp[(f.log[c] - d * i) % f.order]
        return [int(x) for x in np.flatnonzero(acc == 0)]

    def _error_exponents(self, synd: list[int]) -> list[int] | None:
        """Peterson direct solution for t <= 2; None on decoding failure."""
        f = self.field
        s1 = synd[0]
        if self.t == 1:
            return [] if s1 == 0 else [int(f.log[s1])]
        s3 = synd[2]
        if s1 == 0:
            return [] if s3 == 0 else None
        s1_cubed = f.pow(s1, 3)
        if s3 == s1_cubed:
            return [int(f.log[s1])]
        sigma2 = f.div(s3 ^ s1_cubed, s1)
        roots = self._chien([1, s1, sigma2])
        if len(roots) != 2:
            return None
        return roots

    def bdd_decode(self, received) -> BddOutcome:
        """Return the unique codeword within Hamming distance t, or FAILURE."""
        received = self._check_length(received)
        exps = self._error_exponents(self.syndromes(received))
        if exps is None:
            return FAILURE
        flips = sorted(self.n0 - 1 - i for i in exps)
        if self.e:
            # the extension bit costs one more flip when overall parity stays odd
            if (int(received.sum()) + len(flips)) & 1:
                flips.append(self.n0)
            if len(flips) > self.t:
                return FAILURE
        cw = received.copy()
        cw[flips] ^= 1
        return BddOutcome(BddStatus.CORRECTED, tuple(flips), cw)

    @functools.cached_property
    def _coset_table(self) -> tuple[np.ndarray, np.ndarray]:
        """Syndrome -> (error count or -1, positions) over all patterns of weight <= t."""
        size = 1 << (self.t * self.nu)
        nerr = np.full(size, -1, dtype=np.int8)
        pos = np.full((size, 2), -1, dtype=np.int16)
        col = self._column_syndromes
        nerr[0] = 0
        nerr[col] = 1
        pos[col, 0] = np.arange(self.n0)
        if self.t == 2:
            a, b = np.triu_indices(self.n0, k=1)
            s = col[a] ^ col[b]
            nerr[s] = 2
            pos[s, 0] = a
            pos[s, 1] = b
        return nerr, pos

    def decode_lines(self, words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Batch bounded-distance decoding of the rows of ``words``.

        Returns ``(ok, flips)``: a boolean success vector and an ``(L, t+1)``
        array of flipped positions padded with -1.  Equivalent to calling
        :meth:`bdd_decode` on every row.
        """
        words = np.asarray(words)
        nerr_t, pos_t = self._coset_table
        synd = np.bitwise_xor.reduce(
            np.where(words[:, : self.n0] != 0, self._column_syndromes, 0), axis=1
        )
        nerr = nerr_t[synd].astype(np.int64)
        flips = np.full((len(words), self.t + 1), -1, dtype=np.int64)
        flips[:, : self.t] = pos_t[synd][:, : self.t]
        ok = nerr >= 0
        if self.e:
            odd = ((words.sum(axis=1, dtype=np.int64) + nerr) & 1).astype(bool) & ok
            flips[odd, nerr[odd]] = self.n0
            ok &= nerr + odd <= self.t
        flips[~ok] = -1
        return ok, flips


@functools.lru_cache(maxsize=None)
def build_code(nu: int, t: int, e: int) -> BchCode:
    return BchCode(nu, t, e)


def bdd_decode(code: BchCode, received) -> BddOutcome:
    return code.bdd_decode(received)


def encode(code: BchCode, message) -> np.ndarray:
    return code.encode(message)


def is_codeword(code: BchCode, word) -> bool:
    return code.is_codeword(word)


def apply_flips(words: np.ndarray, flips: np.ndarray) -> np.ndarray:
    """Return a copy of ``words`` with every non-negative entry of ``flips`` toggled."""
    out = words.copy()
    rows, cols = np.nonzero(flips >= 0)
    out[rows, flips[rows, cols]] ^= 1
    return out
