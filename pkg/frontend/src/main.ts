/** DOM bootstrap: canvas, HUD, edge picking, keyboard and macro wiring. */

import { Client } from "./api.js";
import { ViewerApp } from "./app.js";
import { componentCss } from "./palette.js";
import { meshSegments, pickEdge } from "./scene.js";
import { drawScene, makeCamera, type OrbitControl } from "./render.js";

const SAMPLE_TETRAHEDRON = {
  vertices: [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
  faces: [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]],
  twists: [],
  null_sides: [],
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function start(): void {
  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("2d canvas unavailable");

  const client = new Client(window.location.origin);
  const app = new ViewerApp(client);
  const control: OrbitControl = { yaw: 0.7, pitch: 0.5, zoom: 1 };
  let dragging = false;
  let lastX = 0;
  let lastY = 0;

  function resize(): void {
    canvas.width = canvas.clientWidth;
    canvas.height = canvas.clientHeight;
    render();
  }

  function render(): void {
    const state = app.store.get();
    const camera = makeCamera(state, control, canvas.width, canvas.height);
    drawScene(ctx!, state, camera);

    el("count").textContent =
      app.displayedCount === null ? "–" : String(app.displayedCount);
    el("revision").textContent =
      state.revision >= 0 ? `rev ${state.revision}` : "";
    el("banner").style.display = state.connection === "lost" ? "block" : "none";
    el("error").textContent = state.lastError ?? "";

    const info = app.selectedEdgeInfo;
    el("edge-info").innerHTML = info
      ? `edge (${info.edge[0]}, ${info.edge[1]})<br>K = ${info.k}, t = ${info.t}` +
        `<br>gcd(K, t) = ${info.orbits}`
      : "click an edge";

    const list = el("components");
    list.innerHTML = "";
    for (const component of state.report?.components ?? []) {
      const item = document.createElement("li");
      item.textContent = `#${component.id} ${component.kind} (${component.length})`;
      item.style.color = componentCss(component.id);
      if (state.isolatedComponent === component.id) {
        item.style.fontWeight = "bold";
      }
      item.onclick = () => {
        app.isolateComponent(
          state.isolatedComponent === component.id ? null : component.id);
      };
      list.appendChild(item);
    }

    const warn = el("warnings");
    warn.textContent = (state.report?.warnings ?? []).join("; ");
  }

  app.store.subscribe(render);
  window.addEventListener("resize", resize);

  canvas.addEventListener("mousedown", (event) => {
    dragging = true;
    lastX = event.offsetX;
    lastY = event.offsetY;
  });
  canvas.addEventListener("mousemove", (event) => {
    if (!dragging) return;
    control.yaw += (event.offsetX - lastX) * 0.01;
    control.pitch = Math.max(-1.5, Math.min(1.5,
      control.pitch + (event.offsetY - lastY) * 0.01));
    lastX = event.offsetX;
    lastY = event.offsetY;
    render();
  });
  window.addEventListener("mouseup", () => { dragging = false; });

  canvas.addEventListener("click", (event) => {
    const state = app.store.get();
    const camera = makeCamera(state, control, canvas.width, canvas.height);
    const edge = pickEdge(camera, meshSegments(state),
                          event.offsetX, event.offsetY);
    app.selectEdge(edge);
  });

  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    if (app.state.selectedEdge) {
      void app.nudgeTwist(event.deltaY < 0 ? 1 : -1);
    } else {
      control.zoom *= event.deltaY < 0 ? 1.1 : 0.9;
      render();
    }
  }, { passive: false });

  window.addEventListener("keydown", (event) => {
    if (event.key === "+" || event.key === "=") void app.nudgeTwist(1);
    else if (event.key === "-") void app.nudgeTwist(-1);
    else if (event.key === "0") void app.zeroTwist();
    else if (event.key === "k") void app.addDegree(1);
    else if (event.key === "K") void app.addDegree(-1);
  });

  el("all-plus-one").onclick = () => void app.applyAllTwists(1);
  el("all-plus-two").onclick = () => void app.applyAllTwists(2);
  el("all-zero").onclick = () => void app.applyAllTwists(0);
  el("load-sample").onclick = () => void app.loadMesh(SAMPLE_TETRAHEDRON);
  (el("color-mode") as HTMLSelectElement).onchange = (event) => {
    app.setColorMode((event.target as HTMLSelectElement).value as never);
  };
  el("export").onclick = () => {
    const doc = app.exportGeometry();
    if (!doc) return;
    const blob = new Blob([JSON.stringify(doc, null, 2)],
                          { type: "application/json" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = `strands-rev${app.state.revision}.json`;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  };
  el<HTMLInputElement>("mesh-file").onchange = async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    void app.loadMesh(JSON.parse(await file.text()));
  };

  resize();
  void app.loadMesh(SAMPLE_TETRAHEDRON);
}

start();
