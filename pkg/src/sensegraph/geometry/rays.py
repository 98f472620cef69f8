"""Ray intersection primitives shared by picking and gaze attribution."""

import numpy as np

from .transforms import quat_rotate


def ray_sphere_t(origin, direction, center, radius):
    """Smallest non-negative ray parameter hitting the sphere, or None."""
    origin = np.asarray(origin, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    oc = origin - np.asarray(center, dtype=float)
    b = 2.0 * float(np.dot(oc, d))
    c = float(np.dot(oc, oc)) - radius * radius
    disc = b * b - 4.0 * c
    if disc < 0:
        return None
    sqrt_disc = disc ** 0.5
    for t in ((-b - sqrt_disc) / 2.0, (-b + sqrt_disc) / 2.0):
        if t >= 0:
            return t
    return None


def ray_rect_t(origin, direction, rect_pose, width_m, height_m):
    """Ray parameter at which the ray pierces a centered rectangle lying in
    the pose's local x-y plane (normal = local +z), or None."""
    origin = np.asarray(origin, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    normal = quat_rotate(rect_pose.orientation, np.array([0.0, 0.0, 1.0]))
    denom = float(np.dot(normal, d))
    if abs(denom) < 1e-12:
        return None
    t = float(np.dot(normal, rect_pose.position - origin)) / denom
    if t < 0:
        return None
    hit = origin + t * d
    local = quat_rotate(np.array([-rect_pose.orientation[0],
                                  -rect_pose.orientation[1],
                                  -rect_pose.orientation[2],
                                  rect_pose.orientation[3]]),
                        hit - rect_pose.position)
    if abs(local[0]) <= width_m / 2.0 and abs(local[1]) <= height_m / 2.0:
        return t
    return None
