"""Asyncio TCP front end for Session: newline-delimited JSON transport.

One event loop serializes all session mutations; per-connection writes
preserve apply order. The pose path shares the loop but never touches the
sequence counter, so a pose flood cannot reorder op applies.
"""

import asyncio
import contextlib
import logging

from ..errors import ProtocolError, SenseGraphError
from .messages import decode_line, encode_message, make_message
from .session import Session

log = logging.getLogger(__name__)


class SessionServer:
    def __init__(self, session: Session, host="127.0.0.1", port=0):
        self.session = session
        self.host = host
        self.port = port
        self._server = None
        self._writers = {}

    async def start(self):
        self._server = await asyncio.start_server(self._handle, self.host, self.port)
        self.port = self._server.sockets[0].getsockname()[1]
        return self

    async def stop(self):
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
        for writer in list(self._writers.values()):
            writer.close()
        self.session.flush()

    @property
    def endpoint(self):
        return f"{self.host}:{self.port}"

    def _send(self, writer, message):
        if not writer.is_closing():
            writer.write(encode_message(message))

    def _send_error(self, writer, device, exc, regarding=None):
        payload = {"code": getattr(exc, "code", "Error"), "message": str(exc)}
        if regarding is not None:
            payload["regarding"] = regarding
        self._send(writer, make_message("Error", self.session.session_id,
                                        device, payload))

    async def _handle(self, reader, writer):
        device_id = None
        unsubscribe = None
        try:
            hello_line = await reader.readline()
            if not hello_line:
                return
            hello = decode_line(hello_line)
            if hello["type"] != "Hello":
                raise ProtocolError("first message must be Hello")
            device_id = hello["device"]
            device_kind = hello["payload"].get("deviceKind", "pc")
            try:
                welcome = self.session.join(device_id, device_kind)
            except SenseGraphError as exc:
                self._send_error(writer, device_id, exc)
                await writer.drain()
                return
            self._writers[device_id] = writer
            unsubscribe = self.session.subscribe(
                lambda message: self._send(writer, message))
            self._send(writer, welcome)
            await writer.drain()

            while True:
                line = await reader.readline()
                if not line:
                    break
                try:
                    message = decode_line(line)
                    self._dispatch(writer, device_id, message)
                except SenseGraphError as exc:
                    self._send_error(writer, device_id, exc)
                await writer.drain()
        except (ConnectionResetError, asyncio.IncompleteReadError):
            pass
        finally:
            if unsubscribe is not None:
                unsubscribe()
            if device_id is not None:
                self._writers.pop(device_id, None)
                self.session.leave(device_id)
            with contextlib.suppress(Exception):
                writer.close()

    def _dispatch(self, writer, device_id, message):
        kind = message["type"]
        payload = message.get("payload") or {}
        if kind == "Op":
            try:
                self.session.submit_op(device_id, payload["body"])
            except SenseGraphError as exc:
                self._send_error(writer, device_id, exc,
                                 regarding=payload.get("body"))
        elif kind == "Selection":
            self.session.set_selection(device_id, payload)
        elif kind == "Pose":
            self.session.ingest_pose(device_id, payload)
        elif kind == "ResyncRequest":
            try:
                replies = self.session.resync(device_id, int(payload["fromSeq"]))
            except SenseGraphError as exc:
                self._send_error(writer, device_id, exc)
                return
            for reply in replies:
                self._send(writer, reply)
        elif kind == "Ping":
            self._send(writer, make_message("Pong", self.session.session_id,
                                            device_id, payload))
        else:
            raise ProtocolError(f"unexpected client message {kind!r}")


async def serve_forever(session, host, port, ready_callback=None):
    server = await SessionServer(session, host, port).start()
    if ready_callback is not None:
        ready_callback(server)
    try:
        await asyncio.Event().wait()
    finally:
        await server.stop()
