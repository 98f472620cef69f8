"""Document wall placement: evenly spaced semicircular arc at eye height,
every panel facing the arc center."""

import math

import numpy as np

from .transforms import Pose, billboard_orientation, quat_rotate

DEFAULT_RADIUS_M = 2.0
DEFAULT_ARC_SPAN_DEG = 180.0
DEFAULT_EYE_HEIGHT_M = 1.5


def semicircle_placement(document_ids, radius_m=DEFAULT_RADIUS_M,
                         arc_span_deg=DEFAULT_ARC_SPAN_DEG, center_pose=None,
                         eye_height_m=DEFAULT_EYE_HEIGHT_M):
    """Returns [(document_id, Pose)] ordered left-to-right by document id.

    Angle 0 is the center pose's forward (+z) direction; a single document
    sits at the arc midpoint.
    """
    ids = sorted(document_ids)
    if not ids:
        raise ValueError("documentCount must be >= 1")
    center_pose = center_pose or Pose()
    n = len(ids)
    span = math.radians(arc_span_deg)
    angles = [0.0] if n == 1 else [-span / 2 + span * i / (n - 1) for i in range(n)]

    eye_center = center_pose.position + np.array([0.0, eye_height_m, 0.0])
    placements = []
    for doc_id, angle in zip(ids, angles):
        local_dir = np.array([math.sin(angle), 0.0, math.cos(angle)])
        direction = quat_rotate(center_pose.orientation, local_dir)
        position = eye_center + radius_m * direction
        orientation = billboard_orientation(position, eye_center)
        placements.append((doc_id, Pose(position=position, orientation=orientation)))
    return placements
