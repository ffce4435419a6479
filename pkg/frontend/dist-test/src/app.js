/** Viewer controller: the load -> render -> edit -> refresh loop.
 *
 * All topology shown to the user comes from the service; the controller only
 * routes documents. In-flight requests per session are serialized through a
 * promise chain, and stale responses are dropped by revision. */
import { ApiError } from "./api.js";
import { Store, edgeTwist, meshEdges, orbitPrediction } from "./state.js";
export class ViewerApp {
    client;
    store = new Store();
    chain = Promise.resolve();
    constructor(client) {
        this.client = client;
    }
    get state() {
        return this.store.get();
    }
    /** Count shown in the HUD; always the service's report for the shown revision. */
    get displayedCount() {
        return this.state.report?.count ?? null;
    }
    /** Selected-edge panel data: K, t, and the service-side orbit law gcd(K,t). */
    get selectedEdgeInfo() {
        const state = this.state;
        if (!state.selectedEdge || !state.mesh)
            return null;
        const key = `${state.selectedEdge[0]},${state.selectedEdge[1]}`;
        const entry = meshEdges(state.mesh).get(key);
        if (!entry)
            return null;
        const t = edgeTwist(state.mesh, state.selectedEdge);
        return {
            edge: state.selectedEdge,
            k: entry.k,
            t,
            orbits: orbitPrediction(entry.k, t),
        };
    }
    enqueue(task) {
        const next = this.chain.then(task, task);
        this.chain = next.catch(() => undefined);
        return next;
    }
    async guard(task) {
        try {
            const result = await task();
            if (this.state.connection !== "ok" || this.state.lastError) {
                this.store.update({ connection: "ok", lastError: null });
            }
            return result;
        }
        catch (error) {
            if (error instanceof ApiError) {
                this.store.update({ lastError: error.message });
            }
            else {
                this.store.update({ connection: "lost", lastError: String(error) });
            }
            return null;
        }
    }
    loadMesh(lkm) {
        return this.enqueue(async () => {
            const created = await this.guard(() => this.client.createSession(lkm));
            if (!created)
                return;
            this.store.update({
                session: created.session,
                revision: -1,
                selectedEdge: null,
                isolatedComponent: null,
            });
            await this.fetchAll(created.revision);
        });
    }
    /** Fetch every revision-tagged document and apply atomically. */
    async fetchAll(revision) {
        const session = this.state.session;
        if (!session)
            return;
        const docs = await this.guard(async () => {
            const [mesh, strands, geometry, report] = await Promise.all([
                this.client.getMesh(session),
                this.client.getStrands(session, revision),
                this.client.getGeometry(session, revision, { inset: this.state.inset }),
                this.client.getReport(session, revision),
            ]);
            return { mesh, strands, geometry, report };
        });
        if (docs)
            this.store.applyDocuments(revision, docs);
    }
    refresh() {
        return this.enqueue(async () => {
            await this.fetchAll(this.state.revision < 0 ? 0 : this.state.revision);
        });
    }
    patch(edits, nulls = []) {
        return this.enqueue(async () => {
            const session = this.state.session;
            if (!session)
                return;
            const result = await this.guard(() => this.client.patchLabels(session, edits, nulls));
            if (result)
                await this.fetchAll(result.revision);
        });
    }
    /** Macro: set every edge of the mesh to the same twist. */
    applyAllTwists(t) {
        const mesh = this.state.mesh;
        if (!mesh)
            return Promise.resolve();
        const edits = [...meshEdges(mesh).values()].map(({ edge }) => ({ edge, t }));
        return this.patch(edits);
    }
    selectEdge(edge) {
        this.store.update({ selectedEdge: edge });
    }
    setTwist(t) {
        const edge = this.state.selectedEdge;
        if (!edge)
            return Promise.resolve();
        return this.patch([{ edge, t }]);
    }
    /** Scroll / arrow keys: +-1 on the selected edge. */
    nudgeTwist(delta) {
        const info = this.selectedEdgeInfo;
        if (!info)
            return Promise.resolve();
        return this.setTwist(info.t + delta);
    }
    /** Keyboard K / shift-K: add or subtract the edge's degree. */
    addDegree(sign) {
        const info = this.selectedEdgeInfo;
        if (!info)
            return Promise.resolve();
        return this.setTwist(info.t + sign * info.k);
    }
    zeroTwist() {
        return this.setTwist(0);
    }
    toggleNullSide(face, edge, occurrence = 0) {
        const mesh = this.state.mesh;
        const active = mesh?.null_sides.some((n) => n.face === face && n.edge[0] === edge[0] &&
            n.edge[1] === edge[1] && n.occurrence === occurrence) ?? false;
        return this.patch([], [{ face, edge, occurrence, null: !active }]);
    }
    isolateComponent(id) {
        this.store.update({ isolatedComponent: id });
    }
    setColorMode(mode) {
        this.store.update({ colorMode: mode });
    }
    setInset(inset) {
        this.store.update({ inset });
        return this.refresh();
    }
    /** The geometry document for the displayed revision (export button). */
    exportGeometry() {
        return this.state.geometry;
    }
    /** Wait for every queued action to settle (used by tests). */
    idle() {
        return this.chain.then(() => undefined);
    }
}
