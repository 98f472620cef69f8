"""3D -> 2D projection used to keep the PC canvas consistent with the VR
arrangement: orthogonal projection onto the least-squares best-fit plane,
anchored at the centroid, axes by descending variance."""

import numpy as np

_DEGENERATE_TOL = 1e-12


def _fix_sign(axis):
    """Deterministic sign convention: non-negative dot with +x, ties
    broken by +y, then +z."""
    for component in axis:
        if component > _DEGENERATE_TOL:
            return axis
        if component < -_DEGENERATE_TOL:
            return -axis
    return axis


def project_to_plane(positions3):
    """Project a list/array of 3-vectors to 2D; returns an (n, 2) array.

    Coplanar inputs keep their pairwise distances exactly; all projected
    distances are <= the 3D originals. Degenerate clouds (coincident or
    colinear points) fall back to the global x-y plane.
    """
    pts = np.asarray(positions3, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) == 0:
        raise ValueError("expected a non-empty (n, 3) array")
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    if len(pts) == 1:
        return np.zeros((1, 2))

    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(singular[0], 1.0)
    if singular[0] <= _DEGENERATE_TOL or \
            (len(singular) > 1 and singular[1] <= _DEGENERATE_TOL * scale):
        axis_u = np.array([1.0, 0.0, 0.0])
        axis_v = np.array([0.0, 1.0, 0.0])
    else:
        axis_u = _fix_sign(vt[0])
        axis_v = _fix_sign(vt[1])
    return np.column_stack([centered @ axis_u, centered @ axis_v])


def project_node_positions(graph):
    """Convenience wrapper: {nodeId: [x, y]} for a whole graph."""
    ids = sorted(graph.nodes)
    if not ids:
        return {}
    projected = project_to_plane([graph.nodes[i].position3 for i in ids])
    return {node_id: [float(projected[i, 0]), float(projected[i, 1])]
            for i, node_id in enumerate(ids)}
