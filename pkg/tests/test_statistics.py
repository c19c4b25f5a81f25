"""Statistical decoder ordering inside the SABM waterfall (slow)."""

import pytest

from pc_sabm.bch import build_code
from pc_sabm.decode import DecoderKind
from pc_sabm.sim import SweepConfig, run_point, wilson_interval

from mc_helpers import pilot_crossing


@pytest.mark.slow
def test_sabm_sr_beats_sabm_where_sabm_is_measurable():
    x_sabm, _ = pilot_crossing(DecoderKind.SABM, 1e-4, seed=601)
    assert x_sabm is not None
    cfg = SweepConfig(code=(7, 2, 1), ebno_grid=(x_sabm,), max_blocks=3000,
                      min_bit_errors=10**12, seed=602, batch_size=64)
    k2 = build_code(7, 2, 1).k ** 2
    ci = {}
    for kind in (DecoderKind.IBDD, DecoderKind.SABM, DecoderKind.SABM_SR):
        p = run_point(cfg, x_sabm, kind)
        ci[kind] = wilson_interval(p.bit_errors, p.blocks * k2)
        print(f"{kind.cli_name} at {x_sabm:.3f} dB: {p.bit_errors} errors, CI {ci[kind]}")
    assert ci[DecoderKind.SABM_SR][1] < ci[DecoderKind.SABM][0]
    assert ci[DecoderKind.SABM][1] < ci[DecoderKind.IBDD][0]
