"""Two-handed close text selection: a document copy is pinned to the left
palm and the right index fingertip drags across its glyph grid."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import NoContact
from ..geometry.transforms import Pose, quat_rotate

HANDHELD_SCALE = 0.5
DEFAULT_CELL_W = 0.010  # m
DEFAULT_CELL_H = 0.020


@dataclass
class DocumentLayout:
    document_id: str
    lines: list
    cell_width: float
    cell_height: float
    pose: Pose = field(default_factory=Pose)

    @property
    def columns(self):
        return max((len(line) for line in self.lines), default=0)

    @property
    def width_m(self):
        return self.columns * self.cell_width

    @property
    def height_m(self):
        return len(self.lines) * self.cell_height

    def text(self):
        return "\n".join(self.lines)

    def offset_of(self, row, col):
        return sum(len(self.lines[r]) + 1 for r in range(row)) + col


def wrap_body(body, width=40):
    lines = []
    for paragraph in body.split("\n"):
        words = paragraph.split()
        line = ""
        for word in words:
            if line and len(line) + 1 + len(word) > width:
                lines.append(line)
                line = word
            else:
                line = f"{line} {word}" if line else word
        lines.append(line)
    return lines or [""]


def make_document_layout(document, pose=None, cell_width=DEFAULT_CELL_W,
                         cell_height=DEFAULT_CELL_H, wrap_width=40):
    return DocumentLayout(
        document_id=document.id, lines=wrap_body(document.body, wrap_width),
        cell_width=cell_width, cell_height=cell_height, pose=pose or Pose())


def pick_up_document(pinch_position, document_layouts, left_palm_pose,
                     pick_radius=0.3):
    """Pinch near a panel attaches a scaled copy to the left palm; a pinch
    in empty space returns None. A second pick replaces the first (single
    handheld slot, enforced by the caller holding the return value)."""
    pinch = np.asarray(pinch_position, dtype=float)
    best = None
    best_dist = pick_radius
    for layout in document_layouts:
        dist = float(np.linalg.norm(layout.pose.position - pinch))
        if dist <= best_dist:
            best, best_dist = layout, dist
    if best is None:
        return None
    return DocumentLayout(
        document_id=best.document_id, lines=list(best.lines),
        cell_width=best.cell_width * HANDHELD_SCALE,
        cell_height=best.cell_height * HANDHELD_SCALE,
        pose=Pose(position=left_palm_pose.position.copy(),
                  orientation=left_palm_pose.orientation.copy()))


def _touched_cell(layout, point, touch_depth):
    """(row, col) under a fingertip sample, or None. The grid hangs from
    the pose origin: local +x right, -y down, +z out of the panel."""
    inv = layout.pose.inverse()
    local = inv.position + quat_rotate(inv.orientation, np.asarray(point, dtype=float))
    if abs(local[2]) > touch_depth:
        return None
    x, y = float(local[0]), float(-local[1])
    if not (0 <= x < layout.width_m and 0 <= y < layout.height_m):
        return None
    row = int(y / layout.cell_height)
    col = int(x / layout.cell_width)
    row = min(row, len(layout.lines) - 1)
    if not layout.lines[row]:
        return None
    return row, min(col, len(layout.lines[row]) - 1)


def text_select(fingertip_path, layout, touch_depth=0.015):
    """Contiguous reading-order selection spanned by the touched cells.

    Returns (substring, start_offset, end_offset) with offsets into
    layout.text(); raises NoContact if the path never touches the panel.
    """
    offsets = []
    for point in fingertip_path:
        cell = _touched_cell(layout, point, touch_depth)
        if cell is not None:
            offsets.append(layout.offset_of(*cell))
    if not offsets:
        raise NoContact("path never touched the panel")
    start, end = min(offsets), max(offsets) + 1
    return layout.text()[start:end], start, end
