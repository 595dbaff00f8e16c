"""Deterministic SVG rendering of diagram dumps.

A fixed 1000-unit viewbox is scaled to the domain bounding box (aspect
preserved, y flipped to screen coordinates).  Output is byte-identical for
identical input: fixed element order, fixed float formatting, no metadata.
Rendering consumes the wire-format dump, so local and remote diagrams
produce identical files.
"""

from __future__ import annotations

VIEW = 1000.0

_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)


class _Frame:
    def __init__(self, polygon):
        xs = [p[0] for p in polygon]
        ys = [p[1] for p in polygon]
        self.minx, self.maxx = min(xs), max(xs)
        self.miny, self.maxy = min(ys), max(ys)
        span = max(self.maxx - self.minx, self.maxy - self.miny)
        self.scale = VIEW / span if span > 0 else 1.0

    def to_screen(self, p) -> tuple[float, float]:
        return (
            (p[0] - self.minx) * self.scale,
            VIEW - (p[1] - self.miny) * self.scale,
        )


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _path(points, frame: _Frame, close: bool) -> str:
    cmds = []
    for i, p in enumerate(points):
        x, y = frame.to_screen(p)
        cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(x)} {_fmt(y)}")
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def render_dump_svg(dump: dict) -> str:
    """SVG text for a DiagramDump dict (domain, cells, degeneracies, sites)."""
    polygon = dump["scene"]["polygon"]
    frame = _Frame(polygon)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW:g} {VIEW:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i, cell in enumerate(dump["cells"]):
        color = _PALETTE[i % len(_PALETTE)]
        lines.append(
            f'<path d="{_path(cell["polyline"], frame, close=True)}" '
            f'fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="2"/>'
        )
    for rep in dump.get("degeneracies", []):
        lines.append(
            f'<path d="{_path(rep["region"], frame, close=True)}" '
            'fill="none" stroke="#333333" stroke-width="1.5" stroke-dasharray="6 4"/>'
        )
    lines.append(
        f'<path d="{_path(polygon, frame, close=True)}" '
        'fill="none" stroke="black" stroke-width="3"/>'
    )
    for site in dump["scene"]["sites"]:
        x, y = frame.to_screen(site["pos"])
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="6" fill="black"/>')
        lines.append(
            f'<text x="{_fmt(x + 10)}" y="{_fmt(y - 10)}" font-size="24" '
            f'font-family="monospace">{site["id"]}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
