"""Session measurement pipeline: interaction counts, descriptive stats,
and the combined strategy report."""

import json
import math
from dataclasses import dataclass, field

from scipy import stats as scipy_stats

from ..sync.events import (
    OP_ADD_ANCHOR, OP_ADD_LINK, OP_ADD_NODE, OP_MERGE_NODES, OP_MOVE_NODE,
    OP_REMOVE_LINK, OP_REMOVE_NODE, OP_SET_SELECTION, OP_UPDATE_LINK,
    OP_UPDATE_NODE,
)
from .gaze import DEFAULT_MAX_GAZE_RANGE_M, DEFAULT_MIN_DWELL_MS, usage_timeline
from .motion import DEFAULT_JITTER_FLOOR_M, path_length
from .strategies import (
    DEFAULT_SWITCH_THRESHOLD, TABLE_PATH_THRESHOLD_M, USER_PATH_THRESHOLD_M,
    pc_fraction, spatial_strategy, switch_count, temporal_strategy,
)

INTERACTION_BUCKETS = ("addNode", "addLink", "removeNode", "removeLink",
                       "updateNode", "updateLink", "mergeNodes")

# moves are label-free node updates; anchors and selections are tracked in
# auxiliary buckets so every applied event lands in exactly one bucket
_BUCKET_OF = {
    OP_ADD_NODE: "addNode",
    OP_ADD_LINK: "addLink",
    OP_REMOVE_NODE: "removeNode",
    OP_REMOVE_LINK: "removeLink",
    OP_UPDATE_NODE: "updateNode",
    OP_MOVE_NODE: "updateNode",
    OP_UPDATE_LINK: "updateLink",
    OP_MERGE_NODES: "mergeNodes",
    OP_ADD_ANCHOR: "anchor",
    OP_SET_SELECTION: "selection",
}


def interaction_counts(events):
    """Counts of applied (seq-bearing) events per op type; rejected ops
    never reach the log, so they are excluded by construction."""
    counts = {bucket: 0 for bucket in INTERACTION_BUCKETS}
    for event in events:
        bucket = _BUCKET_OF.get(event.body.get("op"))
        if bucket is None:
            raise ValueError(f"unbucketed op {event.body.get('op')!r}")
        counts[bucket] = counts.get(bucket, 0) + 1
    return counts


def descriptive_stats(values):
    """(mean, 95% CI half-width) with a t-distribution on n-1 df.

    n = 1 yields (mean, None): the CI is undefined and flagged as such.
    """
    n = len(values)
    if n == 0:
        raise ValueError("descriptive_stats of an empty sample")
    mean = sum(values) / n
    if n == 1:
        return mean, None
    variance = sum((v - mean) ** 2 for v in values) / (n - 1)
    t_crit = scipy_stats.t.ppf(0.975, n - 1)
    return mean, t_crit * math.sqrt(variance / n)


@dataclass
class AnalyticsConfig:
    switch_threshold: int = DEFAULT_SWITCH_THRESHOLD
    min_dwell_ms: int = DEFAULT_MIN_DWELL_MS
    jitter_floor_m: float = DEFAULT_JITTER_FLOOR_M
    user_path_threshold_m: float = USER_PATH_THRESHOLD_M
    table_path_threshold_m: float = TABLE_PATH_THRESHOLD_M
    max_gaze_range_m: float = DEFAULT_MAX_GAZE_RANGE_M


@dataclass
class StrategyReport:
    temporal: str
    spatial: str
    pc_fraction: float
    switch_count: int
    user_path_m: float
    table_path_m: float
    interaction_counts: dict
    segments: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "temporal": self.temporal,
            "spatial": self.spatial,
            "pcFraction": self.pc_fraction,
            "switchCount": self.switch_count,
            "userPathMeters": self.user_path_m,
            "tablePathMeters": self.table_path_m,
            "interactionCounts": dict(sorted(self.interaction_counts.items())),
            "segments": [{"device": s.device, "tStart": s.t_start,
                          "tEnd": s.t_end} for s in self.segments],
            "stats": {k: {"mean": v[0], "ci95": v[1]}
                      for k, v in sorted(self.stats.items())},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def segments_csv(self):
        rows = ["device,tStart,tEnd"]
        rows += [f"{s.device},{s.t_start},{s.t_end}" for s in self.segments]
        return "\n".join(rows) + "\n"


def build_report(events, pose_samples, screen, config=None,
                 calibration_offset=None, stat_values=None):
    """Compose the whole pipeline; deterministic and serializable.

    pose_samples: iterable of PoseSample (head and table kinds mixed).
    stat_values: optional {metric: [values]} aggregated with a t CI.
    """
    config = config or AnalyticsConfig()
    head = [s for s in pose_samples if s.kind == "head"]
    table = [s for s in pose_samples if s.kind == "table"]

    segments = usage_timeline(
        head, screen, table_samples=table,
        calibration_offset=calibration_offset,
        min_dwell_ms=config.min_dwell_ms,
        max_gaze_range=config.max_gaze_range_m)
    user_path = path_length(head, jitter_floor=config.jitter_floor_m)
    table_path = path_length(table, jitter_floor=config.jitter_floor_m)

    return StrategyReport(
        temporal=temporal_strategy(segments, config.switch_threshold),
        spatial=spatial_strategy(user_path, table_path,
                                 config.user_path_threshold_m,
                                 config.table_path_threshold_m),
        pc_fraction=pc_fraction(segments),
        switch_count=switch_count(segments),
        user_path_m=user_path,
        table_path_m=table_path,
        interaction_counts=interaction_counts(events),
        segments=segments,
        stats={name: descriptive_stats(values)
               for name, values in (stat_values or {}).items()},
    )
