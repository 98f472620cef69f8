"""Error types shared across the graph model, protocol, and simulators."""


class SenseGraphError(Exception):
    """Base class; `code` is the machine-readable name sent on the wire."""

    code = "Error"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class EmptyLabel(SenseGraphError):
    code = "EmptyLabel"


class UnknownNode(SenseGraphError):
    code = "UnknownNode"


class UnknownLink(SenseGraphError):
    code = "UnknownLink"


class UnknownDocument(SenseGraphError):
    code = "UnknownDocument"


class AnchorImmutable(SenseGraphError):
    code = "AnchorImmutable"


class SelfMerge(SenseGraphError):
    code = "SelfMerge"


class SelfLink(SenseGraphError):
    code = "SelfLink"


class DuplicateLink(SenseGraphError):
    code = "DuplicateLink"


class DuplicateDevice(SenseGraphError):
    code = "DuplicateDevice"


class MalformedPose(SenseGraphError):
    code = "MalformedPose"


class ProtocolError(SenseGraphError):
    code = "ProtocolError"


class ReplayError(SenseGraphError):
    """Raised on a corrupt event log; carries the last good sequence number."""

    code = "ReplayError"

    def __init__(self, message="", last_good_seq=0):
        super().__init__(message)
        self.last_good_seq = last_good_seq


class NoContact(SenseGraphError):
    code = "NoContact"


ERRORS_BY_CODE = {
    cls.code: cls
    for cls in [
        EmptyLabel, UnknownNode, UnknownLink, UnknownDocument, AnchorImmutable,
        SelfMerge, SelfLink, DuplicateLink, DuplicateDevice, MalformedPose,
        ProtocolError, ReplayError, NoContact,
    ]
}
