"""Temporal and spatial usage-strategy classifiers.

Temporal: device-time dominance at the 75%/25% boundaries, then the
VR-then-PC vs frequent-switch split by switch count and the order of the
two devices' aggregate-time midpoints.

Spatial: a 2x2 rule on user path (290 m) and table path (5.5 m), both
boundaries inclusive.
"""

TEMPORAL_PC_DOMINANT = "PCDominant"
TEMPORAL_VR_DOMINANT = "VRDominant"
TEMPORAL_VR_THEN_PC = "VRThenPC"
TEMPORAL_FREQUENT_SWITCH = "FrequentSwitch"

SPATIAL_STATIONARY_USER_AND_PC = "StationaryUserAndPC"
SPATIAL_STATIONARY_PC = "StationaryPC"
SPATIAL_SELF_ROTATION = "SelfRotation"
SPATIAL_CARRYING = "Carrying"

PC_DOMINANT_FRACTION = 0.75
VR_DOMINANT_FRACTION = 0.25
DEFAULT_SWITCH_THRESHOLD = 10
USER_PATH_THRESHOLD_M = 290.0
TABLE_PATH_THRESHOLD_M = 5.5


def pc_fraction(segments):
    total = sum(s.duration_ms for s in segments)
    if total <= 0:
        return 0.0
    return sum(s.duration_ms for s in segments if s.device == "pc") / total


def switch_count(segments):
    return max(0, len(segments) - 1)


def _aggregate_midpoint(segments, device):
    """Time at which half of the device's aggregate usage has elapsed."""
    total = sum(s.duration_ms for s in segments if s.device == device)
    if total <= 0:
        return None
    half = total / 2.0
    elapsed = 0.0
    for segment in segments:
        if segment.device != device:
            continue
        if elapsed + segment.duration_ms >= half:
            return segment.t_start + (half - elapsed)
        elapsed += segment.duration_ms
    return segments[-1].t_end


def temporal_strategy(segments, switch_threshold=DEFAULT_SWITCH_THRESHOLD):
    fraction = pc_fraction(segments)
    if fraction > PC_DOMINANT_FRACTION:
        return TEMPORAL_PC_DOMINANT
    if fraction < VR_DOMINANT_FRACTION:
        return TEMPORAL_VR_DOMINANT
    vr_mid = _aggregate_midpoint(segments, "vr")
    pc_mid = _aggregate_midpoint(segments, "pc")
    if switch_count(segments) < switch_threshold and vr_mid is not None \
            and pc_mid is not None and vr_mid < pc_mid:
        return TEMPORAL_VR_THEN_PC
    return TEMPORAL_FREQUENT_SWITCH


def spatial_strategy(user_path_m, table_path_m,
                     user_threshold=USER_PATH_THRESHOLD_M,
                     table_threshold=TABLE_PATH_THRESHOLD_M):
    user_moved = user_path_m >= user_threshold
    table_moved = table_path_m >= table_threshold
    if user_moved and table_moved:
        return SPATIAL_CARRYING
    if user_moved:
        return SPATIAL_STATIONARY_PC
    if table_moved:
        return SPATIAL_SELF_ROTATION
    return SPATIAL_STATIONARY_USER_AND_PC
