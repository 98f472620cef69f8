from .model import (
    LINK_DOCUMENT_DEFAULT, LINK_USER, NODE_ANCHOR, NODE_COLORS, NODE_ENTITY,
    NODE_TIME, DocumentRecord, GraphState, LinkRecord, NodeRecord,
    SelectionState, anchor_id_for,
)
from .ops import (
    add_document_anchor, create_link, create_node, delete_link, delete_node,
    merge_nodes, move_node, update_link_label, update_node_label,
)
from .snapshot import dumps_snapshot, graph_from_snapshot, snapshot_dict, snapshot_hash
from .timeline import (
    DateGroup, TimelineEntry, TimelineModel, derive_timeline,
    select_timeline_entry,
)
from .timeparse import parse_time_label
