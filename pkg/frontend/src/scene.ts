/** Scene assembly: turn service documents into line primitives, plus
 * screen-space edge picking. No re-tessellation beyond display needs. */

import type { EdgeRef, LkmDocument } from "./api.js";
import { componentCss, degreeCss, parityCss } from "./palette.js";
import { edgeTwist, meshEdges, type ViewState } from "./state.js";

export type Vec3 = [number, number, number];

export interface Segment {
  a: Vec3;
  b: Vec3;
  color: string;
  width: number;
  /** populated for mesh edges so the picker can resolve clicks */
  edge?: EdgeRef;
}

export interface Camera {
  yaw: number;
  pitch: number;
  distance: number;
  center: Vec3;
  scale: number;
  width: number;
  height: number;
}

export function boundsCenter(mesh: LkmDocument): { center: Vec3; radius: number } {
  if (!mesh.vertices.length) return { center: [0, 0, 0], radius: 1 };
  const lo = [Infinity, Infinity, Infinity];
  const hi = [-Infinity, -Infinity, -Infinity];
  for (const v of mesh.vertices) {
    for (let i = 0; i < 3; i++) {
      lo[i] = Math.min(lo[i], v[i] ?? 0);
      hi[i] = Math.max(hi[i], v[i] ?? 0);
    }
  }
  const center: Vec3 = [(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2, (lo[2] + hi[2]) / 2];
  const radius = Math.max(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2], 1e-6) / 2;
  return { center, radius };
}

export function project(camera: Camera, p: Vec3): [number, number, number] {
  const cy = Math.cos(camera.yaw);
  const sy = Math.sin(camera.yaw);
  const cp = Math.cos(camera.pitch);
  const sp = Math.sin(camera.pitch);
  const x = p[0] - camera.center[0];
  const y = p[1] - camera.center[1];
  const z = p[2] - camera.center[2];
  // yaw about +z, then pitch about the screen x axis
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const vx = rx;
  const vy = cp * ry + sp * z;
  const vz = -sp * ry + cp * z;
  const depth = camera.distance - vz;
  const f = camera.scale / Math.max(depth, 1e-3);
  return [
    camera.width / 2 + vx * f,
    camera.height / 2 - vy * f,
    depth,
  ];
}

export function meshSegments(state: ViewState): Segment[] {
  const mesh = state.mesh;
  if (!mesh) return [];
  const out: Segment[] = [];
  const selected = state.selectedEdge;
  for (const { edge, k } of meshEdges(mesh).values()) {
    const t = edgeTwist(mesh, edge);
    const isSelected = selected !== null &&
      selected[0] === edge[0] && selected[1] === edge[1];
    let color = "#c5c9ce";
    if (state.colorMode === "parity") color = parityCss(t);
    if (state.colorMode === "edge-class") color = degreeCss(k);
    out.push({
      a: mesh.vertices[edge[0]] as Vec3,
      b: mesh.vertices[edge[1]] as Vec3,
      color: isSelected ? "#ff6d00" : color,
      width: isSelected ? 4 : 1.5,
      edge,
    });
  }
  return out;
}

export function strandSegments(state: ViewState): Segment[] {
  const geometry = state.geometry;
  if (!geometry) return [];
  const out: Segment[] = [];
  for (const component of geometry.components) {
    if (state.isolatedComponent !== null &&
        component.id !== state.isolatedComponent) continue;
    const color = state.colorMode === "component"
      ? componentCss(component.id)
      : "#5f6368";
    const pts = component.points;
    const n = pts.length;
    const limit = component.closed ? n : n - 1;
    for (let i = 0; i < limit; i++) {
      out.push({
        a: pts[i] as Vec3,
        b: pts[(i + 1) % n] as Vec3,
        color,
        width: 2.5,
      });
    }
  }
  return out;
}

/** Nearest mesh edge to a screen point, within a pixel threshold. */
export function pickEdge(
  camera: Camera,
  segments: Segment[],
  x: number,
  y: number,
  threshold = 12,
): EdgeRef | null {
  let best: EdgeRef | null = null;
  let bestDist = threshold;
  for (const segment of segments) {
    if (!segment.edge) continue;
    const [ax, ay] = project(camera, segment.a);
    const [bx, by] = project(camera, segment.b);
    const dx = bx - ax;
    const dy = by - ay;
    const len2 = dx * dx + dy * dy;
    const u = len2 > 1e-9
      ? Math.max(0, Math.min(1, ((x - ax) * dx + (y - ay) * dy) / len2))
      : 0;
    const px = ax + u * dx;
    const py = ay + u * dy;
    const dist = Math.hypot(x - px, y - py);
    if (dist < bestDist) {
      bestDist = dist;
      best = segment.edge;
    }
  }
  return best;
}
