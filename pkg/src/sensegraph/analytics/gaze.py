"""Head-gaze attribution and device-usage segmentation.

A head pose counts as "pc" when its forward ray hits the simulated screen
rectangle within range, "vr" otherwise. Per-sample attributions are then
smoothed with a dwell hysteresis so glance-level flapping does not
dominate switch counts.
"""

from dataclasses import dataclass

from ..geometry.rays import ray_rect_t
from ..geometry.transforms import Pose

DEVICE_PC = "pc"
DEVICE_VR = "vr"
DEFAULT_MAX_GAZE_RANGE_M = 10.0
DEFAULT_MIN_DWELL_MS = 2000


@dataclass
class UsageSegment:
    device: str  # pc | vr
    t_start: int
    t_end: int

    @property
    def duration_ms(self):
        return self.t_end - self.t_start


def attribute_gaze(head_pose, screen, max_gaze_range=DEFAULT_MAX_GAZE_RANGE_M):
    """pc iff the head's forward ray pierces the screen rectangle."""
    t = ray_rect_t(head_pose.position, head_pose.forward(), screen.pose,
                   screen.width_m, screen.height_m)
    return DEVICE_PC if t is not None and t <= max_gaze_range else DEVICE_VR


def _screen_pose_at(t, table_samples, calibration_offset):
    current = None
    for sample in table_samples:
        if sample.t > t:
            break
        current = sample
    if current is None:
        return None
    table_pose = Pose(position=current.position3, orientation=current.orientation)
    if calibration_offset is not None:
        return table_pose.compose(calibration_offset)
    return table_pose


def attribute_samples(head_samples, screen, table_samples=None,
                      calibration_offset=None,
                      max_gaze_range=DEFAULT_MAX_GAZE_RANGE_M):
    """[(t, device)] per head sample; a moving table drags the screen."""
    table_samples = sorted(table_samples or [], key=lambda s: s.t)
    out = []
    for sample in sorted(head_samples, key=lambda s: s.t):
        geometry = screen
        if table_samples:
            pose = _screen_pose_at(sample.t, table_samples, calibration_offset)
            if pose is not None:
                geometry = type(screen)(
                    diagonal_inches=screen.diagonal_inches,
                    resolution_w=screen.resolution_w,
                    resolution_h=screen.resolution_h, pose=pose)
        head_pose = Pose(position=sample.position3, orientation=sample.orientation)
        out.append((sample.t, attribute_gaze(head_pose, geometry, max_gaze_range)))
    return out


def segments_from_attributions(attributions, min_dwell_ms=DEFAULT_MIN_DWELL_MS):
    """Hysteresis smoothing: a device switch is recognized only after
    min_dwell_ms of consistent attribution. Segments cover the session."""
    if not attributions:
        return []
    current = attributions[0][1]
    start = attributions[0][0]
    candidate = None  # (device, since)
    segments = []
    for t, device in attributions[1:]:
        if device == current:
            candidate = None
            continue
        if candidate is None or candidate[0] != device:
            candidate = (device, t)
        if t - candidate[1] >= min_dwell_ms:
            segments.append(UsageSegment(current, start, candidate[1]))
            current, start = device, candidate[1]
            candidate = None
    last_t = attributions[-1][0]
    if last_t > start:
        segments.append(UsageSegment(current, start, last_t))
    return segments


def usage_timeline(head_samples, screen, table_samples=None,
                   calibration_offset=None,
                   min_dwell_ms=DEFAULT_MIN_DWELL_MS,
                   max_gaze_range=DEFAULT_MAX_GAZE_RANGE_M):
    return segments_from_attributions(
        attribute_samples(head_samples, screen, table_samples,
                          calibration_offset, max_gaze_range),
        min_dwell_ms=min_dwell_ms)
