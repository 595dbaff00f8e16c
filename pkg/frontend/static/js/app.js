/**
 * Browser entry: canvas rendering and DOM wiring around the controller.
 * All drawn coordinates come from protocol responses via the render model.
 */
import { HttpTransport, ProtocolClient } from './protocol.js';
import { buildRenderModel, makeFrame, toScreen, toWorld, VIEW } from './render.js';
import { initialState } from './state.js';
import { ViewerController } from './interactions.js';
const DEFAULT_SCENE = {
    polygon: [
        [0, 0],
        [1, 0],
        [1, 1],
        [0, 1],
    ],
    sites: [],
};
function el(id) {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node;
}
function main() {
    const canvas = el('canvas');
    const ctx = canvas.getContext('2d');
    const state = initialState();
    const serverInput = el('server');
    const client = new ProtocolClient(new HttpTransport(serverInput.value));
    let controller = new ViewerController(client, state, scheduleDraw);
    let model = null;
    function scheduleDraw() {
        model = state.diagram ? buildRenderModel(state.diagram) : null;
        requestAnimationFrame(draw);
        renderPanel();
    }
    function draw() {
        ctx.clearRect(0, 0, VIEW, VIEW);
        if (!model) {
            return;
        }
        for (const cell of model.cells) {
            ctx.beginPath();
            cell.screen.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
            ctx.closePath();
            ctx.fillStyle = cell.color + '59';
            ctx.fill();
            ctx.strokeStyle = cell.color;
            ctx.lineWidth = 2;
            ctx.stroke();
        }
        drawOverlays();
        ctx.beginPath();
        model.domain.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
        ctx.closePath();
        ctx.strokeStyle = '#000';
        ctx.lineWidth = 3;
        ctx.stroke();
        if (state.overlays.has('degeneracy')) {
            ctx.setLineDash([6, 4]);
            for (const ring of model.degeneracies) {
                ctx.beginPath();
                ring.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
                ctx.closePath();
                ctx.strokeStyle = '#333';
                ctx.lineWidth = 1.5;
                ctx.stroke();
                ctx.fillStyle = 'rgba(60,60,60,0.15)';
                ctx.fill();
            }
            ctx.setLineDash([]);
        }
        for (const site of model.sites) {
            const [x, y] = site.screen;
            ctx.beginPath();
            ctx.arc(x, y, site.id === state.selection ? 8 : 6, 0, 2 * Math.PI);
            ctx.fillStyle = site.id === state.selection ? '#d62728' : '#000';
            ctx.fill();
            ctx.fillStyle = '#000';
            ctx.font = '20px monospace';
            ctx.fillText(site.id, x + 10, y - 10);
        }
        if (state.flashUntil > Date.now()) {
            ctx.fillStyle = 'rgba(214,39,40,0.25)';
            ctx.fillRect(0, 0, VIEW, VIEW);
            requestAnimationFrame(draw);
        }
    }
    function drawOverlays() {
        if (!model || !state.scene) {
            return;
        }
        const frame = model.frame;
        const data = state.overlayData;
        if (data.sectors && (state.overlays.has('sectors') || state.overlays.has('spokes'))) {
            ctx.strokeStyle = 'rgba(40,40,40,0.45)';
            ctx.lineWidth = state.overlays.has('sectors') ? 1.0 : 0.6;
            for (const poly of data.sectors.polygons) {
                ctx.beginPath();
                poly.map((p) => toScreen(frame, p)).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
                ctx.closePath();
                ctx.stroke();
            }
        }
        if (state.overlays.has('balls')) {
            ctx.strokeStyle = '#2ca02c';
            ctx.lineWidth = 2;
            for (const ball of data.balls) {
                ctx.beginPath();
                ball.vertices.map((p) => toScreen(frame, p)).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
                ctx.closePath();
                ctx.stroke();
            }
        }
        if (state.overlays.has('zregion') && data.zregion) {
            ctx.beginPath();
            data.zregion.map((p) => toScreen(frame, p)).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
            ctx.closePath();
            ctx.fillStyle = 'rgba(148,103,189,0.25)';
            ctx.fill();
            ctx.strokeStyle = '#9467bd';
            ctx.stroke();
        }
    }
    function renderPanel() {
        el('snapshot').textContent = state.snapshotId ?? '(none)';
        el('error').textContent = state.lastError ?? '';
        const hover = state.hover;
        el('readout').innerHTML = hover
            ? hover.sites
                .map((s) => `${s.id}: H=${s.distance.toFixed(6)}` +
                (s.chord_edges ? ` (edges ${s.chord_edges.join('↔')})` : ''))
                .join('<br>')
            : '';
        el('inspector').innerHTML = state.inspector.map((line) => `<div>${line}</div>`).join('');
        el('events').innerHTML = state.eventLog
            .map((e) => `<div>discontinuity: ${e.siteId} × ${e.other} at u=${e.u.toFixed(4)}</div>`)
            .join('');
    }
    function screenToWorld(ev) {
        const rect = canvas.getBoundingClientRect();
        const sx = ((ev.clientX - rect.left) / rect.width) * VIEW;
        const sy = ((ev.clientY - rect.top) / rect.height) * VIEW;
        const frame = model?.frame ?? makeFrame((state.scene?.polygon ?? DEFAULT_SCENE.polygon));
        return toWorld(frame, [sx, sy]);
    }
    function siteAt(p) {
        if (!model) {
            return null;
        }
        const frame = model.frame;
        for (const site of model.sites) {
            const d = Math.hypot(site.world[0] - p[0], site.world[1] - p[1]);
            if (d * frame.scale < 12) {
                return site.id;
            }
        }
        return null;
    }
    let dragged = false;
    canvas.addEventListener('pointerdown', (ev) => {
        const p = screenToWorld(ev);
        const site = siteAt(p);
        dragged = false;
        if (site) {
            controller.beginDrag(site);
            canvas.setPointerCapture(ev.pointerId);
        }
    });
    canvas.addEventListener('pointermove', (ev) => {
        const p = screenToWorld(ev);
        canvas.style.cursor = controller.insideDomain(p) ? 'crosshair' : 'not-allowed';
        if (ev.buttons & 1) {
            dragged = true;
            void controller.dragTo(p);
        }
        else {
            void controller.hoverAt(p);
        }
    });
    canvas.addEventListener('pointerup', (ev) => {
        const p = screenToWorld(ev);
        const wasDrag = dragged;
        dragged = false;
        void controller.endDrag(wasDrag ? p : null).then(() => {
            if (!wasDrag && !siteAt(p)) {
                void controller.insertAt(p);
            }
        });
    });
    for (const name of ['spokes', 'sectors', 'balls', 'zregion', 'degeneracy']) {
        el(`overlay-${name}`).addEventListener('change', () => {
            void controller.toggleOverlay(name);
        });
    }
    el('radius').addEventListener('input', (ev) => {
        void controller.setBallRadius(parseFloat(ev.target.value));
    });
    el('load').addEventListener('click', () => {
        try {
            const scene = JSON.parse(el('scene-json').value);
            void controller.loadScene(scene);
        }
        catch (exc) {
            state.lastError = String(exc);
            renderPanel();
        }
    });
    el('export').addEventListener('click', () => {
        if (state.scene) {
            el('scene-json').value = JSON.stringify(state.scene, null, 1);
        }
    });
    el('scene-json').value = JSON.stringify(DEFAULT_SCENE, null, 1);
    void controller.loadScene(DEFAULT_SCENE);
}
main();
