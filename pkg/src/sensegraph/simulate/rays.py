"""Ray-pointer picking over spherical (node) and rectangular (panel)
targets: nearest hit along the ray within range wins."""

from dataclasses import dataclass

from ..geometry.rays import ray_rect_t, ray_sphere_t
from ..geometry.transforms import Pose

DEFAULT_MAX_RAY_RANGE = 10.0  # m


@dataclass
class SphereTarget:
    id: str
    center: tuple
    radius: float = 0.05


@dataclass
class RectTarget:
    id: str
    pose: Pose
    width_m: float
    height_m: float


def ray_select(origin, direction, targets, max_range=DEFAULT_MAX_RAY_RANGE):
    """Nearest intersected target id along the ray, or None."""
    best_id = None
    best_t = max_range
    for target in targets:
        if isinstance(target, SphereTarget):
            t = ray_sphere_t(origin, direction, target.center, target.radius)
        else:
            t = ray_rect_t(origin, direction, target.pose,
                           target.width_m, target.height_m)
        if t is not None and t <= best_t:
            best_id, best_t = target.id, t
    return best_id
