/**
 * User interactions: site insertion by click, dragging with throttled
 * rebuilds and discontinuity flashes, hover readouts, and overlay fetches.
 *
 * Mutations are serialized (at most one in flight); while a move is in
 * flight the latest pointer position is parked and sent afterwards.
 */

import type { DiagramDump, MoveEvent, ProtocolClient, ProtocolResponse, Pt } from './protocol.js';
import { bisectorEquations } from './render.js';
import { applySnapshot, type Overlay, type ViewerState } from './state.js';

const DRAG_MIN_INTERVAL_MS = 34; // <= 30 recomputes per second
const FLASH_MS = 600;

export class ViewerController {
  private seq = 0;
  private inFlight = false;
  private parked: Pt | null = null;
  private dragging: string | null = null;
  private lastMoveAt = -Infinity;

  constructor(
    private client: ProtocolClient,
    readonly state: ViewerState,
    private notify: () => void = () => {},
    private now: () => number = () => Date.now(),
  ) {}

  /** Client-side gate for cursor cues only; rendering never uses it. */
  insideDomain(p: Pt): boolean {
    const poly = this.state.scene?.polygon;
    if (!poly) {
      return false;
    }
    for (let i = 0; i < poly.length; i++) {
      const a = poly[i];
      const b = poly[(i + 1) % poly.length];
      if ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < 0) {
        return false;
      }
    }
    return true;
  }

  async loadScene(scene: object): Promise<void> {
    const resp = await this.client.call('load_scene', { scene });
    this.applyMutation(resp);
  }

  freshSiteId(): string {
    const used = new Set((this.state.scene?.sites ?? []).map((s) => s.id));
    let n = used.size;
    while (used.has(`s${n}`)) {
      n++;
    }
    return `s${n}`;
  }

  /** Insert a site at a clicked point; clicks outside are rejected locally. */
  async insertAt(p: Pt, id?: string): Promise<boolean> {
    if (!this.state.snapshotId || !this.insideDomain(p)) {
      this.state.lastError = 'click inside the polygon to insert a site';
      this.notify();
      return false;
    }
    const siteId = id ?? this.freshSiteId();
    const resp = await this.client.call('insert_site', {
      snapshot_id: this.state.snapshotId,
      site: { id: siteId, pos: p },
    });
    if (!this.applyMutation(resp)) {
      return false;
    }
    this.state.selection = siteId;
    this.state.inspector = bisectorEquations(this.state.diagram as DiagramDump, siteId);
    this.notify();
    return true;
  }

  beginDrag(siteId: string): void {
    this.dragging = siteId;
    this.state.selection = siteId;
    this.notify();
  }

  /** Throttled move during a drag; parks the newest position if busy. */
  async dragTo(p: Pt): Promise<void> {
    if (!this.dragging) {
      return;
    }
    if (!this.insideDomain(p)) {
      return; // clamp: ignore positions outside the interior
    }
    if (this.inFlight || this.now() - this.lastMoveAt < DRAG_MIN_INTERVAL_MS) {
      this.parked = p;
      return;
    }
    await this.sendMove(p);
  }

  async endDrag(p: Pt | null): Promise<void> {
    if (!this.dragging) {
      return;
    }
    const target = p && this.insideDomain(p) ? p : this.parked;
    this.parked = null;
    if (target) {
      await this.sendMove(target);
    }
    this.dragging = null;
    this.notify();
  }

  private async sendMove(p: Pt): Promise<void> {
    const siteId = this.dragging;
    if (!siteId || !this.state.snapshotId) {
      return;
    }
    this.inFlight = true;
    this.lastMoveAt = this.now();
    try {
      const resp = await this.client.call('move_site', {
        snapshot_id: this.state.snapshotId,
        id: siteId,
        pos: p,
      });
      if (this.applyMutation(resp)) {
        const events = (resp.result?.events ?? []) as MoveEvent[];
        for (const ev of events) {
          this.state.eventLog.push({ siteId, other: ev.other, u: ev.u, at: this.now() });
        }
        if (events.length > 0) {
          this.state.flashUntil = this.now() + FLASH_MS;
        }
        this.notify();
      }
    } finally {
      this.inFlight = false;
    }
    const parked = this.parked;
    this.parked = null;
    if (parked && this.dragging) {
      await this.sendMove(parked);
    }
  }

  async removeSite(siteId: string): Promise<void> {
    if (!this.state.snapshotId) {
      return;
    }
    const resp = await this.client.call('remove_site', {
      snapshot_id: this.state.snapshotId,
      id: siteId,
    });
    if (this.applyMutation(resp) && this.state.selection === siteId) {
      this.state.selection = null;
      this.notify();
    }
  }

  /** Per-site distances and chord edge labels; hidden outside the domain. */
  async hoverAt(p: Pt): Promise<void> {
    if (!this.state.snapshotId || !this.insideDomain(p)) {
      if (this.state.hover !== null) {
        this.state.hover = null;
        this.notify();
      }
      return;
    }
    const snapshot = this.state.snapshotId;
    const resp = await this.client.call('query_distance', { snapshot_id: snapshot, point: p });
    if (resp.error || this.state.snapshotId !== snapshot) {
      return; // stale or invalid: keep the previous readout
    }
    this.state.hover = {
      point: p,
      sites: resp.result?.sites ?? [],
      nearest: resp.result?.nearest ?? null,
    };
    this.notify();
  }

  async toggleOverlay(name: Overlay): Promise<void> {
    if (this.state.overlays.has(name)) {
      this.state.overlays.delete(name);
    } else {
      this.state.overlays.add(name);
    }
    await this.refreshOverlays();
  }

  async setBallRadius(r: number): Promise<void> {
    this.state.ballRadius = r;
    if (this.state.overlays.has('balls')) {
      await this.refreshOverlays();
    }
    this.notify();
  }

  /** Overlay geometry always comes from the current snapshot's responses. */
  async refreshOverlays(): Promise<void> {
    const snapshot = this.state.snapshotId;
    const sites = this.state.scene?.sites ?? [];
    if (!snapshot) {
      return;
    }
    const want = this.state.overlays;
    const data = this.state.overlayData;
    const pair = this.overlayPair();
    if ((want.has('sectors') || want.has('spokes')) && pair) {
      const resp = await this.client.call('query_sectors', {
        snapshot_id: snapshot,
        a: pair[0],
        b: pair[1],
      });
      if (!resp.error && this.state.snapshotId === snapshot) {
        data.sectors = { pair, polygons: resp.result?.sectors.map((s: any) => s.polygon) ?? [] };
      }
    } else {
      data.sectors = null;
    }
    if (want.has('balls')) {
      const balls = [];
      for (const s of sites) {
        const resp = await this.client.call('query_ball', {
          snapshot_id: snapshot,
          site: s.id,
          radius: this.state.ballRadius,
        });
        if (!resp.error) {
          balls.push({ site: s.id, vertices: resp.result?.vertices ?? [] });
        }
      }
      if (this.state.snapshotId === snapshot) {
        data.balls = balls;
      }
    } else {
      data.balls = [];
    }
    if (want.has('zregion') && pair) {
      const resp = await this.client.call('query_zregion', {
        snapshot_id: snapshot,
        a: pair[0],
        b: pair[1],
      });
      if (this.state.snapshotId === snapshot) {
        data.zregion = resp.error ? null : resp.result?.quad ?? null;
        if (resp.error) {
          this.state.lastError = resp.error.message;
        }
      }
    } else {
      data.zregion = null;
    }
    this.notify();
  }

  private overlayPair(): [string, string] | null {
    const sites = (this.state.scene?.sites ?? []).map((s) => s.id).sort();
    if (sites.length < 2) {
      return null;
    }
    let pair: [string, string] = [sites[0], sites[1]];
    if (this.state.selection && sites.includes(this.state.selection)) {
      const other = sites.find((s) => s !== this.state.selection);
      if (other) {
        pair = [this.state.selection, other];
      }
    }
    pair.sort();
    return pair;
  }

  private applyMutation(resp: ProtocolResponse): boolean {
    if (resp.error || !resp.snapshot_id || !resp.result?.diagram) {
      this.state.lastError = resp.error?.message ?? 'malformed response';
      this.notify();
      return false;
    }
    const seq = ++this.seq;
    const applied = applySnapshot(
      this.state,
      seq,
      resp.snapshot_id,
      resp.result.diagram as DiagramDump,
    );
    if (applied) {
      this.state.lastError = null;
      this.notify();
    }
    return applied;
  }
}
