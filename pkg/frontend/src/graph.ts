/** Replicated graph state and operation application.
 *
 * Mirrors the server's semantics exactly: the same op body applied at the
 * same seq yields a state with the same canonical hash. Ops arrive in
 * canonical form (ids already assigned by the server), so application here
 * never allocates ids.
 */

import { parseTimeLabel } from "./timeparse.js";

export const NODE_ENTITY = "entity";
export const NODE_TIME = "time";
export const NODE_ANCHOR = "documentAnchor";

export const LINK_USER = "user";
export const LINK_DOCUMENT_DEFAULT = "documentDefault";

export interface NodeRecord {
  id: string;
  label: string;
  kind: string;
  position3: [number, number, number];
  parsedTime: string | null; // canonical "YYYY-MM-DDTHH:MM:SSZ"
  sourceDocumentIds: Set<string>;
  createdByDevice: string;
  revision: number;
}

export interface LinkRecord {
  id: string;
  sourceId: string;
  targetId: string;
  label: string;
  kind: string;
  revision: number;
}

export interface SelectionState {
  selectedDocumentId: string | null;
  selectedNodeIds: Set<string>;
  lastOriginDevice: string;
  seq: number;
}

export class GraphError extends Error {
  constructor(public code: string, message: string) {
    super(message);
  }
}

export function anchorIdFor(documentId: string): string {
  return `anchor:${documentId}`;
}

function classify(label: string): { kind: string; parsedTime: string | null } {
  const parsed = parseTimeLabel(label);
  return parsed !== null
    ? { kind: NODE_TIME, parsedTime: parsed }
    : { kind: NODE_ENTITY, parsedTime: null };
}

export class GraphState {
  nodes = new Map<string, NodeRecord>();
  links = new Map<string, LinkRecord>();
  selections: SelectionState = {
    selectedDocumentId: null,
    selectedNodeIds: new Set(),
    lastOriginDevice: "",
    seq: 0,
  };
  seq = 0;

  findLink(a: string, b: string, label: string): LinkRecord | null {
    for (const link of this.links.values()) {
      const same = (link.sourceId === a && link.targetId === b)
        || (link.sourceId === b && link.targetId === a);
      if (same && link.label === label) return link;
    }
    return null;
  }

  private requireNode(nodeId: string): NodeRecord {
    const node = this.nodes.get(nodeId);
    if (!node) throw new GraphError("UnknownNode", nodeId);
    return node;
  }

  private requireMutableNode(nodeId: string): NodeRecord {
    const node = this.requireNode(nodeId);
    if (node.kind === NODE_ANCHOR) {
      throw new GraphError("AnchorImmutable", nodeId);
    }
    return node;
  }

  addDocumentAnchor(documentId: string, title = "",
                    position3: [number, number, number] = [0, 0, 0],
                    device = ""): string {
    const nodeId = anchorIdFor(documentId);
    if (!this.nodes.has(nodeId)) {
      this.nodes.set(nodeId, {
        id: nodeId, label: title || documentId, kind: NODE_ANCHOR,
        position3: [...position3], parsedTime: null,
        sourceDocumentIds: new Set([documentId]),
        createdByDevice: device, revision: 0,
      });
    }
    return nodeId;
  }

  createNode(label: string, position3: number[], device: string,
             nodeId: string, linkId: string | null): void {
    if (!label.trim()) throw new GraphError("EmptyLabel", label);
    const { kind, parsedTime } = classify(label);
    const docId = this.selections.selectedDocumentId;
    this.nodes.set(nodeId, {
      id: nodeId, label, kind,
      position3: [position3[0], position3[1], position3[2]],
      parsedTime,
      sourceDocumentIds: docId ? new Set([docId]) : new Set(),
      createdByDevice: device, revision: 0,
    });
    if (docId && linkId) {
      const anchor = this.addDocumentAnchor(docId);
      this.links.set(linkId, {
        id: linkId, sourceId: nodeId, targetId: anchor,
        label: "", kind: LINK_DOCUMENT_DEFAULT, revision: 0,
      });
    }
  }

  updateNodeLabel(nodeId: string, label: string): void {
    const node = this.requireMutableNode(nodeId);
    const { kind, parsedTime } = classify(label);
    node.label = label;
    node.kind = kind;
    node.parsedTime = parsedTime;
    node.revision += 1;
  }

  moveNode(nodeId: string, position3: number[]): void {
    const node = this.requireNode(nodeId);
    node.position3 = [position3[0], position3[1], position3[2]];
    node.revision += 1;
  }

  deleteNode(nodeId: string): void {
    this.requireMutableNode(nodeId);
    this.nodes.delete(nodeId);
    for (const link of [...this.links.values()]) {
      if (link.sourceId === nodeId || link.targetId === nodeId) {
        this.links.delete(link.id);
      }
    }
    this.selections.selectedNodeIds.delete(nodeId);
  }

  mergeNodes(survivorId: string, absorbedId: string): void {
    if (survivorId === absorbedId) throw new GraphError("SelfMerge", survivorId);
    const survivor = this.requireNode(survivorId);
    const absorbed = this.requireNode(absorbedId);
    for (const node of [survivor, absorbed]) {
      if (node.kind === NODE_ANCHOR) {
        throw new GraphError("AnchorImmutable", node.id);
      }
    }
    for (const link of [...this.links.values()]) {
      if (link.sourceId !== absorbedId && link.targetId !== absorbedId) continue;
      const other = link.sourceId === absorbedId ? link.targetId : link.sourceId;
      if (other === survivorId) {
        this.links.delete(link.id); // would become a self-loop
        continue;
      }
      const newSource = link.sourceId === absorbedId ? survivorId : link.sourceId;
      const newTarget = link.targetId === absorbedId ? survivorId : link.targetId;
      const existing = this.findLink(newSource, newTarget, link.label);
      if (existing !== null && existing.id !== link.id) {
        this.links.delete(link.id); // duplicate of a survivor link
        continue;
      }
      link.sourceId = newSource;
      link.targetId = newTarget;
      link.revision += 1;
    }
    for (const docId of absorbed.sourceDocumentIds) {
      survivor.sourceDocumentIds.add(docId);
    }
    survivor.revision += 1;
    this.nodes.delete(absorbedId);
    this.selections.selectedNodeIds.delete(absorbedId);
  }

  createLink(sourceId: string, targetId: string, label: string,
             linkId: string): void {
    this.requireNode(sourceId);
    this.requireNode(targetId);
    if (sourceId === targetId) throw new GraphError("SelfLink", sourceId);
    if (this.findLink(sourceId, targetId, label) !== null) {
      throw new GraphError("DuplicateLink", `${sourceId}-${targetId} ${label}`);
    }
    this.links.set(linkId, {
      id: linkId, sourceId, targetId, label, kind: LINK_USER, revision: 0,
    });
  }

  updateLinkLabel(linkId: string, label: string): void {
    const link = this.links.get(linkId);
    if (!link) throw new GraphError("UnknownLink", linkId);
    const existing = this.findLink(link.sourceId, link.targetId, label);
    if (existing !== null && existing.id !== linkId) {
      throw new GraphError("DuplicateLink", `${link.sourceId}-${link.targetId} ${label}`);
    }
    link.label = label;
    link.revision += 1;
  }

  deleteLink(linkId: string): void {
    if (!this.links.delete(linkId)) {
      throw new GraphError("UnknownLink", linkId);
    }
  }

  setSelection(body: any, device: string): void {
    const wanted: string[] = body.selectedNodeIds ?? [];
    this.selections = {
      selectedDocumentId: body.selectedDocumentId ?? null,
      selectedNodeIds: new Set(wanted.filter((n) => this.nodes.has(n))),
      lastOriginDevice: device,
      seq: this.selections.seq,
    };
  }
}

/** Apply one canonical op body (ids already assigned). */
export function applyOpBody(graph: GraphState, body: any, device: string): void {
  switch (body.op) {
    case "addNode":
      graph.createNode(body.label, body.position, device,
                       body.nodeId, body.linkId ?? null);
      break;
    case "updateNode":
      graph.updateNodeLabel(body.nodeId, body.label);
      break;
    case "moveNode":
      graph.moveNode(body.nodeId, body.position);
      break;
    case "removeNode":
      graph.deleteNode(body.nodeId);
      break;
    case "mergeNodes":
      graph.mergeNodes(body.survivorId, body.absorbedId);
      break;
    case "addLink":
      graph.createLink(body.sourceId, body.targetId, body.label ?? "",
                       body.linkId);
      break;
    case "updateLink":
      graph.updateLinkLabel(body.linkId, body.label);
      break;
    case "removeLink":
      graph.deleteLink(body.linkId);
      break;
    case "addDocumentAnchor":
      graph.addDocumentAnchor(body.documentId, body.title ?? "",
                              body.position ?? [0, 0, 0], device);
      break;
    case "setSelection":
      graph.setSelection(body, device);
      break;
    default:
      throw new GraphError("ProtocolError", `unknown op ${body.op}`);
  }
}

/** Load a snapshot object (as sent in Welcome / Snapshot payloads). */
export function graphFromSnapshot(data: any): GraphState {
  const graph = new GraphState();
  graph.seq = data.seq ?? 0;
  for (const nd of data.nodes ?? []) {
    graph.nodes.set(nd.id, {
      id: nd.id, label: nd.label, kind: nd.kind,
      position3: [nd.position3[0], nd.position3[1], nd.position3[2]],
      parsedTime: nd.parsedTime ?? null,
      sourceDocumentIds: new Set(nd.sourceDocumentIds ?? []),
      createdByDevice: nd.createdByDevice ?? "",
      revision: nd.revision ?? 0,
    });
  }
  for (const ld of data.links ?? []) {
    graph.links.set(ld.id, {
      id: ld.id, sourceId: ld.sourceId, targetId: ld.targetId,
      label: ld.label ?? "", kind: ld.kind ?? LINK_USER,
      revision: ld.revision ?? 0,
    });
  }
  const sel = data.selections ?? {};
  graph.selections = {
    selectedDocumentId: sel.selectedDocumentId ?? null,
    selectedNodeIds: new Set(sel.selectedNodeIds ?? []),
    lastOriginDevice: sel.lastOriginDevice ?? "",
    seq: sel.seq ?? 0,
  };
  return graph;
}
