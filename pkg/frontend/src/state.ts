/**
 * Viewer state: a snapshot of the scene and diagram plus UI concerns.
 * Renders are applied only for the latest snapshot; stale responses from
 * superseded mutations are dropped (monotonic sequence numbers).
 */

import type { DiagramDump, Pt, Scene } from './protocol.js';

export type Overlay = 'spokes' | 'sectors' | 'balls' | 'zregion' | 'degeneracy';

export interface DiscontinuityEvent {
  siteId: string;
  other: string;
  u: number;
  at: number; // ms timestamp of the log entry
}

export interface HoverReadout {
  point: Pt;
  sites: { id: string; distance: number; chord_edges: number[] | null }[];
  nearest: string | null;
}

export interface SectorOverlay {
  pair: [string, string];
  polygons: Pt[][]; // world coordinates from query_sectors
}

export interface OverlayData {
  sectors: SectorOverlay | null;
  balls: { site: string; vertices: Pt[] }[];
  zregion: Pt[] | null;
}

export interface ViewerState {
  snapshotId: string | null;
  scene: Scene | null;
  diagram: DiagramDump | null;
  selection: string | null;
  overlays: Set<Overlay>;
  ballRadius: number;
  hover: HoverReadout | null;
  inspector: string[];
  eventLog: DiscontinuityEvent[];
  flashUntil: number;
  lastError: string | null;
  overlayData: OverlayData;
  appliedSeq: number;
}

export function initialState(): ViewerState {
  return {
    snapshotId: null,
    scene: null,
    diagram: null,
    selection: null,
    overlays: new Set<Overlay>(['degeneracy']),
    ballRadius: 0.5,
    hover: null,
    inspector: [],
    eventLog: [],
    flashUntil: 0,
    lastError: null,
    overlayData: { sectors: null, balls: [], zregion: null },
  appliedSeq: 0,
  };
}

/** Apply a diagram snapshot if it is not stale; returns whether applied. */
export function applySnapshot(
  state: ViewerState,
  seq: number,
  snapshotId: string,
  diagram: DiagramDump,
): boolean {
  if (seq <= state.appliedSeq) {
    return false; // stale response: a newer snapshot already rendered
  }
  state.appliedSeq = seq;
  state.snapshotId = snapshotId;
  state.diagram = diagram;
  state.scene = diagram.scene;
  // overlays always refer to the snapshot they were fetched for
  state.overlayData = { sectors: null, balls: [], zregion: null };
  return true;
}
