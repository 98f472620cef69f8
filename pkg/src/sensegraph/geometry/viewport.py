"""Simulated-screen geometry, visual-angle math, and the minimap rect."""

import math
from dataclasses import dataclass, field

from .transforms import Pose

INCH_M = 0.0254


@dataclass
class ScreenGeometry:
    diagonal_inches: float
    resolution_w: int
    resolution_h: int
    pose: Pose = field(default_factory=Pose)

    @property
    def width_m(self):
        diag_m = self.diagonal_inches * INCH_M
        diag_px = math.hypot(self.resolution_w, self.resolution_h)
        return diag_m * self.resolution_w / diag_px

    @property
    def height_m(self):
        diag_m = self.diagonal_inches * INCH_M
        diag_px = math.hypot(self.resolution_w, self.resolution_h)
        return diag_m * self.resolution_h / diag_px


def visual_angle_per_pixel(screen, eye_distance_m):
    """Degrees of visual angle subtended per horizontal pixel at the given
    eye distance: the full horizontal field of view divided evenly over
    the horizontal resolution."""
    fov_deg = math.degrees(2.0 * math.atan(screen.width_m / (2.0 * eye_distance_m)))
    return fov_deg / screen.resolution_w


@dataclass
class ViewportRect:
    center2: tuple
    half_extent2: tuple

    def __post_init__(self):
        if self.half_extent2[0] <= 0 or self.half_extent2[1] <= 0:
            raise ValueError("halfExtent must be strictly positive")


def _fit_to_aspect(hx, hy, aspect):
    if hx <= 0 and hy <= 0:
        hx, hy = 1.0, 1.0
    elif hx <= 0:
        hx = hy * aspect
    elif hy <= 0:
        hy = hx / aspect
    if hx / hy < aspect:
        hx = hy * aspect
    else:
        hy = hx / aspect
    return hx, hy


def minimap_viewport(graph_bounds, pan2=(0.0, 0.0), zoom_factor=1.0,
                     canvas_aspect=1.0):
    """Rectangle of graph coordinates visible at (pan, zoom).

    graph_bounds is ((min_x, min_y), (max_x, max_y)) or None; an empty
    graph gets the documented unit default rect. At zoom 1 / pan 0 the
    rect is the bounds expanded to the canvas aspect ratio.
    """
    if graph_bounds is None:
        center = [0.0, 0.0]
        hx, hy = _fit_to_aspect(1.0, 1.0, canvas_aspect)
    else:
        (min_x, min_y), (max_x, max_y) = graph_bounds
        center = [(min_x + max_x) / 2.0, (min_y + max_y) / 2.0]
        hx, hy = _fit_to_aspect((max_x - min_x) / 2.0, (max_y - min_y) / 2.0,
                                canvas_aspect)
    return ViewportRect(
        center2=(center[0] + pan2[0], center[1] + pan2[1]),
        half_extent2=(hx / zoom_factor, hy / zoom_factor))
