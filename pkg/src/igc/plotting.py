"""Security-versus-key-size figure for a reproduced table."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_MARKERS = {"A": "o", "B": "s", "C": "^", "L": "D"}
_NAMES = {"A": "A interleaved", "B": "B independent", "C": "C long code", "L": "list decoding"}


def security_vs_key_size(results, path, title: str | None = None) -> None:
    """Printed and recomputed (key size, security) pairs, one marker shape per method."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    seen = set()
    for res in results:
        row = res.row
        mk = _MARKERS.get(row.method, "x")
        label = None if row.method in seen else _NAMES.get(row.method, row.method)
        seen.add(row.method)
        ax.scatter(row.key_bits, row.security, marker=mk, facecolors="none",
                   edgecolors="tab:gray", s=60)
        ax.scatter(res.report.key_size_bits, res.report.security_bits, marker=mk,
                   color="tab:blue" if res.ok else "tab:red", s=22, label=label)
        ax.plot([row.key_bits, res.report.key_size_bits],
                [row.security, res.report.security_bits], color="tab:gray", lw=0.6)
    ax.scatter([], [], marker="o", facecolors="none", edgecolors="tab:gray", label="printed")
    ax.set_xscale("log")
    ax.set_xlabel("public key size [bits]")
    ax.set_ylabel("security level [bits]")
    ax.set_title(title or "security level against key size (filled: recomputed, red: mismatch)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
