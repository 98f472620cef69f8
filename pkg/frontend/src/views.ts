/** Coordinated view models: document list, 2D graph canvas, timeline, and
 * minimap. Pure functions from replica state + local view state, so the
 * renderer (canvas/DOM) stays a thin painting layer. */

import { GraphState, NODE_ANCHOR, NODE_ENTITY, NODE_TIME, NodeRecord }
  from "./graph.js";

export const NODE_COLORS: Record<string, string> = {
  [NODE_ENTITY]: "blue",
  [NODE_TIME]: "orange",
  [NODE_ANCHOR]: "black",
};

export interface ClientViewState {
  pan2: [number, number];        // local, not replicated
  zoomFactor: number;            // local, not replicated
  canvasAspect: number;
  status: "connecting" | "connected" | "reconnecting" | "closed";
  pendingOps: any[];             // FIFO queue of submitted, unacked ops
}

export function initialViewState(): ClientViewState {
  return { pan2: [0, 0], zoomFactor: 1.0, canvasAspect: 1.0,
           status: "connecting", pendingOps: [] };
}

export interface DocumentEntry {
  id: string;
  title: string;
  selected: boolean;
}

export interface GraphViewNode {
  id: string;
  label: string;
  kind: string;
  color: string;
  position2: [number, number];
  selected: boolean;
}

export interface GraphViewLink {
  id: string;
  sourceId: string;
  targetId: string;
  label: string;
  kind: string;
}

export interface TimelineEntry {
  id: string;
  label: string;
  parsedTime: string;
  position: number; // 0..1 along the axis
  selected: boolean;
}

export interface MinimapRect {
  center2: [number, number];
  halfExtent2: [number, number];
}

/** Graph-plane coordinates for rendering: the shared model's x/y. */
export function position2Of(node: NodeRecord): [number, number] {
  return [node.position3[0], node.position3[1]];
}

export function documentList(corpus: any, graph: GraphState): DocumentEntry[] {
  const docs: any[] = corpus?.documents ?? [];
  return docs.map((d) => ({
    id: d.id, title: d.title,
    selected: d.id === graph.selections.selectedDocumentId,
  }));
}

export function selectedDocumentBody(corpus: any, graph: GraphState): string | null {
  const docId = graph.selections.selectedDocumentId;
  if (!docId) return null;
  const doc = (corpus?.documents ?? []).find((d: any) => d.id === docId);
  return doc ? doc.body : null;
}

export function graphView(graph: GraphState):
    { nodes: GraphViewNode[]; links: GraphViewLink[] } {
  const nodes = [...graph.nodes.keys()].sort().map((id) => {
    const node = graph.nodes.get(id)!;
    return {
      id, label: node.label, kind: node.kind,
      color: NODE_COLORS[node.kind] ?? "blue",
      position2: position2Of(node),
      selected: graph.selections.selectedNodeIds.has(id),
    };
  });
  const links = [...graph.links.keys()].sort().map((id) => {
    const link = graph.links.get(id)!;
    return { id, sourceId: link.sourceId, targetId: link.targetId,
             label: link.label, kind: link.kind };
  });
  return { nodes, links };
}

/** 1D timeline of time nodes, ordered by parsed time then id. A node
 * selected in the graph is selected here too. */
export function timelineView(graph: GraphState): TimelineEntry[] {
  const timeNodes = [...graph.nodes.values()]
    .filter((n) => n.kind === NODE_TIME && n.parsedTime !== null)
    .sort((a, b) => (a.parsedTime! < b.parsedTime! ? -1
      : a.parsedTime! > b.parsedTime! ? 1
      : a.id < b.id ? -1 : a.id > b.id ? 1 : 0));
  const n = timeNodes.length;
  return timeNodes.map((node, i) => ({
    id: node.id, label: node.label, parsedTime: node.parsedTime!,
    position: n === 1 ? 0.5 : i / (n - 1),
    selected: graph.selections.selectedNodeIds.has(node.id),
  }));
}

function fitToAspect(hx: number, hy: number, aspect: number): [number, number] {
  if (hx <= 0 && hy <= 0) { hx = 1.0; hy = 1.0; }
  else if (hx <= 0) hx = hy * aspect;
  else if (hy <= 0) hy = hx / aspect;
  if (hx / hy < aspect) hx = hy * aspect;
  else hy = hx / aspect;
  return [hx, hy];
}

/** Rectangle of graph coordinates visible at (pan, zoom); matches the
 * server-side minimap math so both ends draw the same rect. */
export function minimapViewport(graph: GraphState,
                                view: ClientViewState): MinimapRect {
  const points = [...graph.nodes.values()].map(position2Of);
  let center: [number, number];
  let half: [number, number];
  if (points.length === 0) {
    center = [0, 0];
    half = fitToAspect(1.0, 1.0, view.canvasAspect);
  } else {
    const xs = points.map((p) => p[0]);
    const ys = points.map((p) => p[1]);
    const minX = Math.min(...xs), maxX = Math.max(...xs);
    const minY = Math.min(...ys), maxY = Math.max(...ys);
    center = [(minX + maxX) / 2, (minY + maxY) / 2];
    half = fitToAspect((maxX - minX) / 2, (maxY - minY) / 2,
                       view.canvasAspect);
  }
  return {
    center2: [center[0] + view.pan2[0], center[1] + view.pan2[1]],
    halfExtent2: [half[0] / view.zoomFactor, half[1] / view.zoomFactor],
  };
}

/** The four coordinated views in one shot. */
export function renderViews(graph: GraphState, view: ClientViewState,
                            corpus: any) {
  return {
    documents: documentList(corpus, graph),
    selectedDocumentBody: selectedDocumentBody(corpus, graph),
    graph: graphView(graph),
    timeline: timelineView(graph),
    minimap: minimapViewport(graph, view),
  };
}

/** Interaction authoring: UI events become protocol op bodies. Nothing is
 * applied locally; changes render only when the server echoes OpApplied. */
export function opFromTextSelection(text: string,
                                    position3: [number, number, number]) {
  return { op: "addNode", label: text, position: position3 };
}

export function opFromNodeDrop(draggedId: string, targetId: string,
                               label = "") {
  return { op: "addLink", sourceId: draggedId, targetId, label };
}

export function opFromInlineEdit(nodeId: string, label: string) {
  return { op: "updateNode", nodeId, label };
}

export function opFromDeleteKey(graph: GraphState): any[] {
  return [...graph.selections.selectedNodeIds].sort()
    .map((nodeId) => ({ op: "removeNode", nodeId }));
}
