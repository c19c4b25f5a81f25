"""BER-vs-Eb/N0 figures for sweep results."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLES = {
    "ibdd": dict(color="tab:blue", marker="o", linestyle="-", label="iBDD"),
    "ideal": dict(color="black", marker="", linestyle="-.", label="ideal iBDD"),
    "sabm": dict(color="tab:red", marker="s", linestyle="-", label="SABM"),
    "sabm-sr": dict(color="tab:green", marker="^", linestyle="-", label="SABM-SR"),
}

RC = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "figure.figsize": (5.0, 3.6),
}


def ber_figure(points, path=None, title=None):
    """Semilog BER curves, one per decoder.  Zero-error points are omitted."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for dec in dict.fromkeys(p.decoder for p in points):
            pts = sorted((p for p in points if p.decoder == dec and p.ber > 0),
                         key=lambda p: p.ebno_db)
            if not pts:
                continue
            style = STYLES.get(dec, dict(label=dec, marker="x"))
            ax.semilogy([p.ebno_db for p in pts], [p.ber for p in pts], **style)
        ax.set_xlabel("$E_b/N_0$ [dB]")
        ax.set_ylabel("post-FEC BER")
        if title is None and points:
            title = f"product code over BCH({points[0].code})"
        if title:
            ax.set_title(title)
        ax.legend(loc="lower left")
        fig.tight_layout()
        if path is not None:
            fig.savefig(Path(path))
            plt.close(fig)
        return fig
