from .client import InProcessClient, NetClient, ReplicaState
from .events import (
    GRAPH_OPS, OP_ADD_ANCHOR, OP_ADD_LINK, OP_ADD_NODE, OP_MERGE_NODES,
    OP_MOVE_NODE, OP_REMOVE_LINK, OP_REMOVE_NODE, OP_SET_SELECTION,
    OP_UPDATE_LINK, OP_UPDATE_NODE, SessionEvent, apply_event, apply_op_body,
    read_event_log, replay_events, replay_log, write_event_line,
)
from .messages import decode_line, encode_message, iter_frames, make_message
from .poses import PoseRegistry, PoseSample, read_pose_log, validate_quaternion
from .server import SessionServer, serve_forever
from .session import DevicePresence, Session
