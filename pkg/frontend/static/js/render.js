/**
 * Pure render model: world coordinates from diagram dumps mapped onto a
 * fixed 1000-unit viewbox (aspect preserved, y flipped), mirroring the
 * server-side SVG export so both renderings agree pixel for pixel.
 */
export const VIEW = 1000;
export const PALETTE = [
    '#4e79a7',
    '#f28e2b',
    '#e15759',
    '#76b7b2',
    '#59a14f',
    '#edc948',
    '#b07aa1',
    '#ff9da7',
    '#9c755f',
    '#bab0ac',
];
export function makeFrame(polygon) {
    const xs = polygon.map((p) => p[0]);
    const ys = polygon.map((p) => p[1]);
    const minx = Math.min(...xs);
    const miny = Math.min(...ys);
    const span = Math.max(Math.max(...xs) - minx, Math.max(...ys) - miny);
    return { minx, miny, scale: span > 0 ? VIEW / span : 1 };
}
export function toScreen(frame, p) {
    return [(p[0] - frame.minx) * frame.scale, VIEW - (p[1] - frame.miny) * frame.scale];
}
export function toWorld(frame, p) {
    return [p[0] / frame.scale + frame.minx, (VIEW - p[1]) / frame.scale + frame.miny];
}
export function buildRenderModel(dump) {
    const frame = makeFrame(dump.scene.polygon);
    const cells = dump.cells.map((cell, i) => {
        const screen = cell.polyline.map((p) => toScreen(frame, p));
        const edges = screen.map((a, j) => ({
            a,
            b: screen[(j + 1) % screen.length],
            kind: cell.edges[j]?.kind ?? 'unknown',
            pair: cell.edges[j]?.pair ?? null,
        }));
        return { site: cell.site, screen, color: PALETTE[i % PALETTE.length], edges };
    });
    return {
        frame,
        domain: dump.scene.polygon.map((p) => toScreen(frame, p)),
        cells,
        sites: dump.scene.sites.map((s) => ({ id: s.id, screen: toScreen(frame, s.pos), world: s.pos })),
        degeneracies: dump.degeneracies.map((d) => d.region.map((p) => toScreen(frame, p))),
    };
}
/** Screen edges of a cell that lie on a site-pair bisector. */
export function bisectorEdges(model, site) {
    const cell = model.cells.find((c) => c.site === site);
    if (!cell) {
        return [];
    }
    return cell.edges.filter((e) => e.kind === 'bisector' || e.kind === 'degeneracy');
}
/** Bisector equations for the inspector panel, deduplicated per conic. */
export function bisectorEquations(dump, site) {
    const seen = new Set();
    const out = [];
    for (const cell of dump.cells) {
        if (cell.site !== site) {
            continue;
        }
        for (const e of cell.edges) {
            if (e.kind !== 'bisector' || !e.conic || !e.pair) {
                continue;
            }
            const key = e.pair.join(',') + '|' + e.conic.map((v) => v.toPrecision(6)).join(',');
            if (seen.has(key)) {
                continue;
            }
            seen.add(key);
            const [A, B, C, D, E, F] = e.conic.map((v) => Number(v.toPrecision(6)));
            out.push(`(${e.pair[0]},${e.pair[1]}) sector ${JSON.stringify(e.sector_edges)}: ` +
                `${A}x² + ${B}xy + ${C}y² + ${D}x + ${E}y + ${F} = 0  (k=${Number((e.k ?? 0).toPrecision(6))})`);
        }
    }
    return out;
}
