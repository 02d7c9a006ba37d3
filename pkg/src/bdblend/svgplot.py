"""Minimal standalone SVG 1.1 line charts (no plotting dependency)."""

PLOT_W, PLOT_H = 800, 600
_MARGIN = {"left": 70, "right": 20, "top": 40, "bottom": 50}


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(path, title, curves, x_label="x", y_label="y"):
    """Write an 800x600 SVG with one polyline per (label, color, xs, ys)."""
    xs_all = [v for _, _, xs, _ in curves for v in xs]
    ys_all = [v for _, _, _, ys in curves for v in ys]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    iw = PLOT_W - _MARGIN["left"] - _MARGIN["right"]
    ih = PLOT_H - _MARGIN["top"] - _MARGIN["bottom"]

    def px(x):
        return _MARGIN["left"] + iw * (x - x0) / (x1 - x0)

    def py(y):
        return _MARGIN["top"] + ih * (1.0 - (y - y0) / (y1 - y0))

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{PLOT_W}" height="{PLOT_H}" viewBox="0 0 {PLOT_W} {PLOT_H}">',
        f'<rect width="{PLOT_W}" height="{PLOT_H}" fill="white"/>',
        f'<text x="{PLOT_W // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        # axes
        f'<line x1="{px(x0)}" y1="{py(y0)}" x2="{px(x1)}" y2="{py(y0)}" stroke="black"/>',
        f'<line x1="{px(x0)}" y1="{py(y0)}" x2="{px(x0)}" y2="{py(y1)}" stroke="black"/>',
        f'<text x="{px(x0)}" y="{py(y0) + 20}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_fmt(x0)}</text>',
        f'<text x="{px(x1)}" y="{py(y0) + 20}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_fmt(x1)}</text>',
        f'<text x="{px(x0) - 8}" y="{py(y0)}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">{_fmt(y0)}</text>',
        f'<text x="{px(x0) - 8}" y="{py(y1) + 4}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">{_fmt(y1)}</text>',
        f'<text x="{PLOT_W // 2}" y="{PLOT_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{x_label}</text>',
    ]
    for i, (label, color, xs, ys) in enumerate(curves):
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = _MARGIN["top"] + 16 * (i + 1)
        lx = PLOT_W - _MARGIN["right"] - 150
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" '
                     f'font-size="12">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
