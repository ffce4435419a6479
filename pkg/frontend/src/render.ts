/** Canvas line renderer: depth-sorted segments, no client tessellation. */

import { boundsCenter, meshSegments, project, strandSegments,
         type Camera, type Segment } from "./scene.js";
import type { ViewState } from "./state.js";

export interface OrbitControl {
  yaw: number;
  pitch: number;
  zoom: number;
}

export function makeCamera(state: ViewState, control: OrbitControl,
                           width: number, height: number): Camera {
  const { center, radius } = state.mesh
    ? boundsCenter(state.mesh)
    : { center: [0, 0, 0] as [number, number, number], radius: 1 };
  const distance = radius * 4;
  return {
    yaw: control.yaw,
    pitch: control.pitch,
    distance,
    center,
    scale: (Math.min(width, height) * 1.2 * control.zoom * distance) /
      (2.5 * radius),
    width,
    height,
  };
}

export function drawScene(ctx: CanvasRenderingContext2D, state: ViewState,
                          camera: Camera): Segment[] {
  ctx.clearRect(0, 0, camera.width, camera.height);
  const mesh = meshSegments(state);
  const strands = strandSegments(state);
  const all = [...mesh, ...strands];
  const projected = all.map((segment) => {
    const a = project(camera, segment.a);
    const b = project(camera, segment.b);
    return { segment, a, b, depth: (a[2] + b[2]) / 2 };
  });
  projected.sort((u, v) => v.depth - u.depth);
  for (const { segment, a, b } of projected) {
    ctx.strokeStyle = segment.color;
    ctx.lineWidth = segment.width;
    ctx.lineCap = "round";
    ctx.beginPath();
    ctx.moveTo(a[0], a[1]);
    ctx.lineTo(b[0], b[1]);
    ctx.stroke();
  }
  return mesh;
}
