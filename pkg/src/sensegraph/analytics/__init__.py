from .gaze import (
    DEVICE_PC, DEVICE_VR, UsageSegment, attribute_gaze, attribute_samples,
    segments_from_attributions, usage_timeline,
)
from .motion import DEFAULT_JITTER_FLOOR_M, path_length
from .report import (
    INTERACTION_BUCKETS, AnalyticsConfig, StrategyReport, build_report,
    descriptive_stats, interaction_counts,
)
from .strategies import (
    DEFAULT_SWITCH_THRESHOLD, PC_DOMINANT_FRACTION, SPATIAL_CARRYING,
    SPATIAL_SELF_ROTATION, SPATIAL_STATIONARY_PC,
    SPATIAL_STATIONARY_USER_AND_PC, TABLE_PATH_THRESHOLD_M,
    TEMPORAL_FREQUENT_SWITCH, TEMPORAL_PC_DOMINANT, TEMPORAL_VR_DOMINANT,
    TEMPORAL_VR_THEN_PC, USER_PATH_THRESHOLD_M, VR_DOMINANT_FRACTION,
    pc_fraction, spatial_strategy, switch_count, temporal_strategy,
)
