/** Viewer state: everything displayed is tagged with its revision, and
 * responses for older revisions are discarded. The UI never computes
 * topology itself; counts, gcd predictions and linking entries all come
 * from service documents. */
export function initialState() {
    return {
        session: null,
        revision: -1,
        mesh: null,
        strands: null,
        geometry: null,
        report: null,
        selectedEdge: null,
        isolatedComponent: null,
        colorMode: "component",
        inset: 0.25,
        connection: "ok",
        lastError: null,
    };
}
export class Store {
    state = initialState();
    listeners = [];
    get() {
        return this.state;
    }
    subscribe(listener) {
        this.listeners.push(listener);
    }
    update(patch) {
        this.state = { ...this.state, ...patch };
        for (const listener of this.listeners)
            listener(this.state);
    }
    /** Apply revision-tagged documents; stale responses are dropped. */
    applyDocuments(revision, docs) {
        if (revision < this.state.revision)
            return false;
        this.update({ revision, ...docs });
        return true;
    }
}
/** Twist label of an edge in the displayed mesh document (0 if unset). */
export function edgeTwist(mesh, edge) {
    if (!mesh)
        return 0;
    for (const item of mesh.twists) {
        if (item.edge[0] === edge[0] && item.edge[1] === edge[1])
            return item.t;
    }
    return 0;
}
/** Undirected edges of the displayed mesh with their face counts (K). */
export function meshEdges(mesh) {
    const out = new Map();
    for (const face of mesh.faces) {
        for (let i = 0; i < face.length; i++) {
            const a = face[i];
            const b = face[(i + 1) % face.length];
            const edge = a < b ? [a, b] : [b, a];
            const key = `${edge[0]},${edge[1]}`;
            const entry = out.get(key);
            if (entry)
                entry.k += 1;
            else
                out.set(key, { edge, k: 1 });
        }
    }
    return out;
}
export function gcd(a, b) {
    a = Math.abs(a);
    b = Math.abs(b);
    while (b)
        [a, b] = [b, a % b];
    return a;
}
/** Local orbit prediction for the selected edge: gcd(K, t) with gcd(K,0)=K. */
export function orbitPrediction(k, t) {
    const r = ((t % k) + k) % k;
    return r === 0 ? k : gcd(k, r);
}
