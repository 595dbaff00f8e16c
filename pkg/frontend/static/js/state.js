/**
 * Viewer state: a snapshot of the scene and diagram plus UI concerns.
 * Renders are applied only for the latest snapshot; stale responses from
 * superseded mutations are dropped (monotonic sequence numbers).
 */
export function initialState() {
    return {
        snapshotId: null,
        scene: null,
        diagram: null,
        selection: null,
        overlays: new Set(['degeneracy']),
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
export function applySnapshot(state, seq, snapshotId, diagram) {
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
