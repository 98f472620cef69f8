/** Canonical snapshot serialization and content hashing.
 *
 * Reproduces the server digest bit-for-bit: canonical JSON (keys sorted,
 * compact separators, non-ASCII escaped as \uXXXX) with every float
 * replaced by "f" + its big-endian IEEE-754 bit pattern in hex, hashed
 * with sha256.
 */

import { createHash } from "node:crypto";
import { GraphState, LinkRecord, NodeRecord } from "./graph.js";

const SHORT_ESCAPES: Record<string, string> = {
  '"': '\\"', "\\": "\\\\", "\b": "\\b", "\t": "\\t",
  "\n": "\\n", "\f": "\\f", "\r": "\\r",
};

/** Escape a string the way the canonical encoder does: everything outside
 * printable ASCII becomes a \uXXXX escape (UTF-16 code units). */
export function encodeString(text: string): string {
  let out = '"';
  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    const code = text.charCodeAt(i);
    if (ch in SHORT_ESCAPES) {
      out += SHORT_ESCAPES[ch];
    } else if (code < 0x20 || code > 0x7e) {
      out += "\\u" + code.toString(16).padStart(4, "0");
    } else {
      out += ch;
    }
  }
  return out + '"';
}

/** Serialize a JSON-like value canonically: sorted keys, no whitespace. */
export function canonicalJson(value: unknown): string {
  if (value === null) return "null";
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new Error("non-integer numbers must be pre-encoded as floatKey");
    }
    return String(value);
  }
  if (typeof value === "string") return encodeString(value);
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (typeof value === "object") {
    const obj = value as Record<string, unknown>;
    const keys = Object.keys(obj).sort();
    return "{" + keys
      .map((k) => encodeString(k) + ":" + canonicalJson(obj[k]))
      .join(",") + "}";
  }
  throw new Error(`unserializable value: ${typeof value}`);
}

/** "f" + 16 hex digits of the big-endian IEEE-754 bit pattern. */
export function floatKey(x: number): string {
  const buf = new DataView(new ArrayBuffer(8));
  buf.setFloat64(0, x, false);
  let hex = "";
  for (let i = 0; i < 8; i++) {
    hex += buf.getUint8(i).toString(16).padStart(2, "0");
  }
  return "f" + hex;
}

function nodeDict(node: NodeRecord, position: (x: number) => unknown) {
  return {
    createdByDevice: node.createdByDevice,
    id: node.id,
    kind: node.kind,
    label: node.label,
    parsedTime: node.parsedTime,
    position3: node.position3.map(position),
    revision: node.revision,
    sourceDocumentIds: [...node.sourceDocumentIds].sort(),
  };
}

function linkDict(link: LinkRecord) {
  return {
    id: link.id,
    kind: link.kind,
    label: link.label,
    revision: link.revision,
    sourceId: link.sourceId,
    targetId: link.targetId,
  };
}

function stateDict(graph: GraphState, position: (x: number) => unknown) {
  return {
    links: [...graph.links.keys()].sort()
      .map((k) => linkDict(graph.links.get(k)!)),
    nodes: [...graph.nodes.keys()].sort()
      .map((k) => nodeDict(graph.nodes.get(k)!, position)),
    selections: {
      lastOriginDevice: graph.selections.lastOriginDevice,
      selectedDocumentId: graph.selections.selectedDocumentId,
      selectedNodeIds: [...graph.selections.selectedNodeIds].sort(),
      seq: graph.selections.seq,
    },
    seq: graph.seq,
  };
}

export function snapshotDict(graph: GraphState) {
  return stateDict(graph, (x) => x);
}

/** Stable sha256 digest of (nodes, links, selections, seq). */
export function snapshotHash(graph: GraphState): string {
  const blob = canonicalJson(stateDict(graph, floatKey));
  return createHash("sha256").update(blob, "utf8").digest("hex");
}
