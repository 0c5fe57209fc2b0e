"""SVG pictures of a coloured patch of Z[xi_n].

Floating point is used only to place points in the plane; colours come from the
exact coset labels of the oracle's Smith normal form.
"""

from __future__ import annotations

import itertools
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import CycloElem
from .oracle import build_coset_table

__all__ = ["DEFAULT_PALETTE", "RenderSpec", "render_svg", "patch_points"]

DEFAULT_PALETTE = (
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff",
    "#9a6324", "#800000", "#aaffc3", "#808000", "#000075", "#808080",
)

MAX_POINTS = 2_000_000


@dataclass(frozen=True)
class RenderSpec:
    generator: CycloElem
    radius: float = 10.0
    coeff_bound: int = 2
    palette: tuple[str, ...] = DEFAULT_PALETTE
    output: Path | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")
        if not self.palette:
            raise ValueError("palette must not be empty")
        if self.generator.is_zero():
            raise ValueError("zero generates no colouring")

    @property
    def n(self) -> int:
        return self.generator.field.n


def patch_points(spec: RenderSpec) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient vectors with all |c_i| <= coeff_bound inside the disc, and their positions."""
    fld = spec.generator.field
    phi = fld.euler_phi
    B = spec.coeff_bound
    total = (2 * B + 1) ** phi
    if total > MAX_POINTS:
        raise ValueError(
            f"{total} candidate points for phi(n)={phi} and coeff_bound={B}; lower the bound"
        )
    angles = [2 * math.pi * i / fld.n for i in range(phi)]
    basis = np.array([[math.cos(a), math.sin(a)] for a in angles])
    coeffs = np.array(list(itertools.product(range(-B, B + 1), repeat=phi)), dtype=np.int64)
    xy = coeffs @ basis
    inside = np.hypot(xy[:, 0], xy[:, 1]) <= spec.radius
    return coeffs[inside], xy[inside]


def render_svg(spec: RenderSpec) -> str:
    table = build_coset_table(spec.generator.field, spec.generator)
    coeffs, xy = patch_points(spec)
    labels = table.labels(coeffs)
    r = spec.radius
    size = 2 * r + 2
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        viewBox=f"{-r - 1:.4f} {-r - 1:.4f} {size:.4f} {size:.4f}",
        width="600",
        height="600",
    )
    title = ET.SubElement(svg, "title")
    title.text = f"n={spec.n} q={spec.generator} ell={table.index}"
    dot = max(0.04, r / 120)
    order = np.lexsort((xy[:, 0].round(9), -xy[:, 1].round(9)))
    for k in order:
        x, y = xy[k]
        ET.SubElement(
            svg,
            "circle",
            cx=f"{x:.4f}",
            cy=f"{-y:.4f}",
            r=f"{dot:.4f}",
            fill=spec.palette[int(labels[k]) % len(spec.palette)],
        )
    text = ET.tostring(svg, encoding="unicode")
    if spec.output is not None:
        Path(spec.output).write_text(text + "\n")
    return text
