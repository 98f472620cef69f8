/** Wire envelope and newline-delimited JSON framing.
 *
 * Every message is one UTF-8 JSON object per line with exactly the fields
 * {type, session, device, seq, payload}; seq is null except on
 * server-to-client apply messages.
 */

export const MESSAGE_TYPES = new Set([
  "Hello", "Welcome", "Op", "OpApplied", "Selection", "SelectionApplied",
  "Pose", "ResyncRequest", "Snapshot", "Ping", "Pong", "Error",
] as const);

export type MessageType =
  | "Hello" | "Welcome" | "Op" | "OpApplied" | "Selection"
  | "SelectionApplied" | "Pose" | "ResyncRequest" | "Snapshot"
  | "Ping" | "Pong" | "Error";

export interface Message {
  type: MessageType;
  session: string;
  device: string;
  seq: number | null;
  payload: any;
}

export class ProtocolError extends Error {}

export function makeMessage(
  type: MessageType, session: string, device: string, payload: any,
  seq: number | null = null,
): Message {
  if (!MESSAGE_TYPES.has(type)) {
    throw new ProtocolError(`unknown message type ${JSON.stringify(type)}`);
  }
  return { type, session, device, seq, payload };
}

export function encodeMessage(message: Message): string {
  return JSON.stringify(message) + "\n";
}

export function decodeLine(line: string): Message {
  let message: any;
  try {
    message = JSON.parse(line);
  } catch (exc) {
    throw new ProtocolError(`bad JSON frame: ${exc}`);
  }
  if (typeof message !== "object" || message === null || Array.isArray(message)) {
    throw new ProtocolError("frame is not an object");
  }
  for (const field of ["type", "session", "device", "seq", "payload"]) {
    if (!(field in message)) {
      throw new ProtocolError(`frame missing field ${field}`);
    }
  }
  if (!MESSAGE_TYPES.has(message.type)) {
    throw new ProtocolError(`unknown message type ${JSON.stringify(message.type)}`);
  }
  return message as Message;
}

/** Incremental newline splitter for a byte/string stream. */
export class FrameSplitter {
  private buffer = "";

  push(chunk: string): string[] {
    this.buffer += chunk;
    const frames: string[] = [];
    let index: number;
    while ((index = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, index);
      this.buffer = this.buffer.slice(index + 1);
      if (line.trim().length > 0) frames.push(line);
    }
    return frames;
  }
}
