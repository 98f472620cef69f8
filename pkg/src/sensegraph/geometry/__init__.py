from .forcelayout import (
    MIN_SEPARATION, NODE_RENDER_RADIUS, LayoutParams, clutter_metric,
    force_refine,
)
from .placement import (
    DEFAULT_ARC_SPAN_DEG, DEFAULT_EYE_HEIGHT_M, DEFAULT_RADIUS_M,
    semicircle_placement,
)
from .projection import project_node_positions, project_to_plane
from .rays import ray_rect_t, ray_sphere_t
from .transforms import (
    IDENTITY_QUAT, Pose, align_simulated_screen, billboard_orientation,
    calibrate_offset, quat_conjugate, quat_from_matrix, quat_multiply,
    quat_normalize, quat_rotate,
)
from .viewport import (
    ScreenGeometry, ViewportRect, minimap_viewport, visual_angle_per_pixel,
)
