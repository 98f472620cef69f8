"""Rigid-transform algebra: quaternions, poses, billboards, calibration.

Quaternions are (x, y, z, w) numpy arrays; all public outputs are
normalized to unit norm.
"""

import math
from dataclasses import dataclass, field

import numpy as np

IDENTITY_QUAT = (0.0, 0.0, 0.0, 1.0)
UP = np.array([0.0, 1.0, 0.0])


def quat_normalize(q):
    q = np.asarray(q, dtype=float)
    return q / np.linalg.norm(q)


def quat_conjugate(q):
    x, y, z, w = q
    return np.array([-x, -y, -z, w])


def quat_multiply(a, b):
    ax, ay, az, aw = a
    bx, by, bz, bw = b
    return np.array([
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
        aw * bw - ax * bx - ay * by - az * bz,
    ])


def quat_rotate(q, v):
    qv = np.array([v[0], v[1], v[2], 0.0])
    r = quat_multiply(quat_multiply(q, qv), quat_conjugate(q))
    return r[:3]


def quat_from_matrix(m):
    """Rotation matrix (3x3, columns = rotated basis) to unit quaternion."""
    t = m[0, 0] + m[1, 1] + m[2, 2]
    if t > 0:
        s = math.sqrt(t + 1.0) * 2
        w = 0.25 * s
        x = (m[2, 1] - m[1, 2]) / s
        y = (m[0, 2] - m[2, 0]) / s
        z = (m[1, 0] - m[0, 1]) / s
    elif m[0, 0] > m[1, 1] and m[0, 0] > m[2, 2]:
        s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2
        w = (m[2, 1] - m[1, 2]) / s
        x = 0.25 * s
        y = (m[0, 1] + m[1, 0]) / s
        z = (m[0, 2] + m[2, 0]) / s
    elif m[1, 1] > m[2, 2]:
        s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2
        w = (m[0, 2] - m[2, 0]) / s
        x = (m[0, 1] + m[1, 0]) / s
        y = 0.25 * s
        z = (m[1, 2] + m[2, 1]) / s
    else:
        s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2
        w = (m[1, 0] - m[0, 1]) / s
        x = (m[0, 2] + m[2, 0]) / s
        y = (m[1, 2] + m[2, 1]) / s
        z = 0.25 * s
    return quat_normalize(np.array([x, y, z, w]))


@dataclass
class Pose:
    """Rigid transform: rotate by `orientation`, then translate."""

    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    orientation: np.ndarray = field(
        default_factory=lambda: np.array(IDENTITY_QUAT))

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.orientation = quat_normalize(self.orientation)

    def compose(self, other):
        """self ∘ other: apply `other` in self's frame."""
        return Pose(
            position=self.position + quat_rotate(self.orientation, other.position),
            orientation=quat_multiply(self.orientation, other.orientation))

    def inverse(self):
        inv_q = quat_conjugate(self.orientation)
        return Pose(position=-quat_rotate(inv_q, self.position), orientation=inv_q)

    def forward(self):
        """Viewing direction: the pose's local +z in world space."""
        return quat_rotate(self.orientation, np.array([0.0, 0.0, 1.0]))


def billboard_orientation(object_pos, viewer_pos, previous=None,
                          colinear_eps=1e-9):
    """Roll-free rotation turning local +z toward the viewer (up = +y).

    Viewer directly above or below the object leaves the yaw undefined;
    the previous orientation (or identity) is kept then.
    """
    to_viewer = np.asarray(viewer_pos, dtype=float) - np.asarray(object_pos, dtype=float)
    norm = np.linalg.norm(to_viewer)
    fallback = np.array(IDENTITY_QUAT) if previous is None else np.asarray(previous, dtype=float)
    if norm < colinear_eps:
        return quat_normalize(fallback)
    fwd = to_viewer / norm
    right = np.cross(UP, fwd)
    right_norm = np.linalg.norm(right)
    if right_norm < colinear_eps:
        return quat_normalize(fallback)
    right /= right_norm
    up = np.cross(fwd, right)
    matrix = np.column_stack([right, up, fwd])
    return quat_from_matrix(matrix)


def align_simulated_screen(tracker_pose, calibration_offset):
    """Screen pose rigidly attached to the tracked table."""
    return tracker_pose.compose(calibration_offset)


def calibrate_offset(tracker_pose, desired_screen_pose):
    """Offset such that align(tracker, offset) == desired."""
    return tracker_pose.inverse().compose(desired_screen_pose)
