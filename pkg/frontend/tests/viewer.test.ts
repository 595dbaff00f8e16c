/**
 * Scripted UI tests against recorded protocol responses.  The fixtures are
 * real service output (frontend/scripts/gen_fixtures.py), so the rendered
 * coordinates checked here all originate from the primary's wire format.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { beforeEach, describe, expect, it } from 'vitest';

import { FixtureTransport, ProtocolClient, type ProtocolResponse } from '../src/protocol.js';
import { bisectorEdges, buildRenderModel, toScreen } from '../src/render.js';
import { applySnapshot, initialState } from '../src/state.js';
import { ViewerController } from '../src/interactions.js';

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES: Record<string, ProtocolResponse> = JSON.parse(
  readFileSync(join(here, 'fixtures', 'protocol_fixtures.json'), 'utf-8'),
);

const SQUARE = [
  [0, 0],
  [1, 0],
  [1, 1],
  [0, 1],
];

function makeController(clock: { t: number }) {
  const transport = new FixtureTransport(FIXTURES);
  const state = initialState();
  const controller = new ViewerController(
    new ProtocolClient(transport),
    state,
    () => {},
    () => clock.t,
  );
  return { transport, state, controller };
}

describe('symmetric pair insertion', () => {
  let clock: { t: number };

  beforeEach(() => {
    clock = { t: 0 };
  });

  it('renders the split within 2 px of x=500 on the 1000 px viewbox', async () => {
    const { state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    expect(state.diagram?.cells).toHaveLength(0);

    await controller.insertAt([0.25, 0.5], 'a');
    expect(state.diagram?.cells).toHaveLength(1);

    await controller.insertAt([0.75, 0.5], 'b');
    expect(state.diagram?.cells).toHaveLength(2);

    const model = buildRenderModel(state.diagram!);
    const split = bisectorEdges(model, 'a');
    expect(split.length).toBeGreaterThan(0);
    let worst = 0;
    for (const edge of split) {
      worst = Math.max(worst, Math.abs(edge.a[0] - 500), Math.abs(edge.b[0] - 500));
    }
    expect(worst).toBeLessThanOrEqual(2);
  });

  it('shows per-pair bisector equations in the inspector after insertion', async () => {
    const { state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    await controller.insertAt([0.25, 0.5], 'a');
    await controller.insertAt([0.75, 0.5], 'b');
    expect(state.inspector.length).toBeGreaterThan(0);
    expect(state.inspector[0]).toContain('(a,b)');
    expect(state.inspector[0]).toContain('k=');
  });

  it('rejects clicks outside the polygon without any request', async () => {
    const { transport, state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    const requests = transport.log.length;
    const ok = await controller.insertAt([1.5, 0.5]);
    expect(ok).toBe(false);
    expect(transport.log.length).toBe(requests);
    expect(state.lastError).toContain('inside');
  });

  it('surfaces duplicate-position errors inline and keeps the snapshot', async () => {
    const { state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    await controller.insertAt([0.25, 0.5], 'a');
    await controller.insertAt([0.75, 0.5], 'b');
    const snapshot = state.snapshotId;
    const ok = await controller.insertAt([0.25, 0.5], 'c'); // coincides with a
    expect(ok).toBe(false);
    expect(state.snapshotId).toBe(snapshot);
    expect(state.lastError).toContain('coincides');
  });
});

describe('dragging across a degeneracy ray', () => {
  it('logs exactly one discontinuity event and flashes', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'm', pos: [0.3, 0.3] },
        { id: 'o', pos: [0.5, 0.7] },
      ],
    });
    controller.beginDrag('m');
    for (const x of [0.35, 0.45, 0.55]) {
      clock.t += 50; // beyond the 34 ms throttle: each move goes through
      await controller.dragTo([x, 0.3]);
    }
    clock.t += 50;
    await controller.endDrag([0.7, 0.3]);

    expect(state.eventLog).toHaveLength(1);
    expect(state.eventLog[0].other).toBe('o');
    expect(state.eventLog[0].u).toBeCloseTo(0.5, 6);
    expect(state.flashUntil).toBeGreaterThan(0);
    const m = state.scene?.sites.find((s) => s.id === 'm');
    expect(m?.pos[0]).toBeCloseTo(0.7, 12);
  });

  it('throttles to at most one move per 34 ms window', async () => {
    const clock = { t: 0 };
    const { transport, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'm', pos: [0.3, 0.3] },
        { id: 'o', pos: [0.5, 0.7] },
      ],
    });
    controller.beginDrag('m');
    clock.t += 50;
    await controller.dragTo([0.35, 0.3]);
    const afterFirst = transport.log.filter((k) => k.startsWith('move_site')).length;
    clock.t += 1; // inside the throttle window: parked, not sent
    await controller.dragTo([0.45, 0.3]);
    const afterSecond = transport.log.filter((k) => k.startsWith('move_site')).length;
    expect(afterFirst).toBe(1);
    expect(afterSecond).toBe(1);
  });
});

describe('hover readout', () => {
  it('shows equal distances for the degenerate pair at (0.9, 0.5)', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'a', pos: [0.5, 0.3] },
        { id: 'b', pos: [0.5, 0.7] },
      ],
    });
    await controller.hoverAt([0.9, 0.5]);
    expect(state.hover).not.toBeNull();
    const dists = state.hover!.sites.map((s) => s.distance);
    expect(dists).toHaveLength(2);
    expect(dists[0]).toBeCloseTo(Math.log(3), 9);
    expect(dists[1]).toBeCloseTo(Math.log(3), 9);
  });

  it('reports zero distance when hovering a site', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'a', pos: [0.5, 0.3] },
        { id: 'b', pos: [0.5, 0.7] },
      ],
    });
    await controller.hoverAt([0.5, 0.3]);
    const a = state.hover!.sites.find((s) => s.id === 'a')!;
    expect(a.distance).toBe(0);
  });

  it('hides the readout outside the polygon without any request', async () => {
    const clock = { t: 0 };
    const { transport, state, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'a', pos: [0.5, 0.3] },
        { id: 'b', pos: [0.5, 0.7] },
      ],
    });
    const before = transport.log.length;
    await controller.hoverAt([1.4, 0.5]);
    expect(state.hover).toBeNull();
    expect(transport.log.length).toBe(before);
  });
});

describe('overlays and snapshot discipline', () => {
  it('fetches sector polygons for the selected pair from the protocol', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    await controller.insertAt([0.25, 0.5], 'a');
    await controller.insertAt([0.75, 0.5], 'b');
    await controller.toggleOverlay('sectors');
    expect(state.overlayData.sectors).not.toBeNull();
    expect(state.overlayData.sectors!.polygons.length).toBeGreaterThan(4);
  });

  it('fetches metric balls through the protocol', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({ polygon: SQUARE, sites: [] });
    await controller.insertAt([0.25, 0.5], 'a');
    await controller.insertAt([0.75, 0.5], 'b');
    state.selection = 'a';
    state.ballRadius = 0.5;
    await controller.toggleOverlay('balls');
    expect(state.overlayData.balls.length).toBeGreaterThan(0);
    expect(state.overlayData.balls[0].vertices.length).toBeGreaterThanOrEqual(4);
  });

  it('drops stale snapshots (monotonic sequence)', () => {
    const state = initialState();
    const diagram = {
      scene: { polygon: SQUARE as [number, number][], sites: [] },
      cells: [],
      degeneracies: [],
    };
    expect(applySnapshot(state, 2, 'sB', diagram)).toBe(true);
    expect(applySnapshot(state, 1, 'sA', diagram)).toBe(false);
    expect(state.snapshotId).toBe('sB');
  });

  it('renders degenerate regions delivered in the dump', async () => {
    const clock = { t: 0 };
    const { state, controller } = makeController(clock);
    await controller.loadScene({
      polygon: SQUARE,
      sites: [
        { id: 'a', pos: [0.5, 0.3] },
        { id: 'b', pos: [0.5, 0.7] },
      ],
    });
    expect(state.diagram!.degeneracies.length).toBeGreaterThanOrEqual(1);
    const model = buildRenderModel(state.diagram!);
    expect(model.degeneracies.length).toBe(state.diagram!.degeneracies.length);
    // tie rule: regions belong to the lexicographically smaller id
    expect(state.diagram!.degeneracies[0].tie_assignment).toBe('a');
  });
});

describe('render frame', () => {
  it('maps the unit square onto the full 1000 px viewbox with y flipped', () => {
    const frame = { minx: 0, miny: 0, scale: 1000 };
    expect(toScreen(frame, [0, 0])).toEqual([0, 1000]);
    expect(toScreen(frame, [1, 1])).toEqual([1000, 0]);
    expect(toScreen(frame, [0.5, 0.5])).toEqual([500, 500]);
  });
});
