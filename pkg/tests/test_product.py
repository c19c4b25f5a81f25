import numpy as np
import pytest

from pc_sabm.bch import build_code
from pc_sabm.product import DimensionMismatch, ProductCode, bit_errors


@pytest.fixture(params=[(4, 1, 0), (4, 2, 1), (7, 2, 1)])
def pc(request):
    return ProductCode(build_code(*request.param))


def test_zero_info_gives_zero_block(pc):
    assert not pc.encode_block(np.zeros((pc.k, pc.k), dtype=np.uint8)).any()


def test_systematic_and_all_lines_are_codewords(pc, rng):
    info = rng.integers(0, 2, (pc.k, pc.k), dtype=np.uint8)
    block = pc.encode_block(info)
    assert block.shape == (pc.n, pc.n)
    np.testing.assert_array_equal(block[: pc.k, : pc.k], info)
    code = pc.component
    assert all(code.is_codeword(block[i]) for i in range(pc.n))
    assert all(code.is_codeword(block[:, j]) for j in range(pc.n))


def test_row_then_column_equals_column_then_row(pc, rng):
    code = pc.component
    for _ in range(5):
        info = rng.integers(0, 2, (pc.k, pc.k), dtype=np.uint8)
        cols_first = np.array([code.encode(r) for r in
                               np.array([code.encode(c) for c in info.T]).T])
        np.testing.assert_array_equal(pc.encode_block(info), cols_first)


def test_rate():
    assert ProductCode(build_code(7, 2, 1)).rate == (113 / 128) ** 2


def test_dimension_mismatch():
    pc = ProductCode(build_code(4, 2, 0))
    with pytest.raises(DimensionMismatch):
        pc.encode_block(np.zeros((7, 6)))
    with pytest.raises(DimensionMismatch):
        bit_errors(np.zeros((15, 15)), np.zeros((16, 16)), info_only=False)


def test_bit_errors_examples(rng):
    code = build_code(4, 2, 1)
    a = rng.integers(0, 2, (16, 16), dtype=np.uint8)
    assert bit_errors(a, a, True, code.k) == 0
    b = a.copy()
    b[:, -1] ^= 1
    assert bit_errors(a, b, info_only=True, k=code.k) == 0
    assert bit_errors(a, b, info_only=False) == 16
    c = rng.integers(0, 2, (16, 16), dtype=np.uint8)
    popcount = sum(bin(int(x) ^ int(y)).count("1") for x, y in zip(a.ravel(), c.ravel()))
    assert bit_errors(a, c, info_only=False) == popcount
