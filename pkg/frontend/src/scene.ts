/** Minimal 3D view: orthographic projection of the embedding frame with a
 * user-controlled rotation, springs as lines, vertices as colored dots. */

import type { Frame, Report } from "./api.js";
import { vertexColor } from "./colors.js";

export interface Camera {
  yaw: number; // radians
  pitch: number;
  zoom: number; // pixels per unit
}

export function project(
  p: [number, number, number],
  cam: Camera,
  cx: number,
  cy: number,
): [number, number, number] {
  const cy1 = Math.cos(cam.yaw);
  const sy1 = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch);
  const sp = Math.sin(cam.pitch);
  const x1 = cy1 * p[0] + sy1 * p[2];
  const z1 = -sy1 * p[0] + cy1 * p[2];
  const y2 = cp * p[1] - sp * z1;
  const z2 = sp * p[1] + cp * z1;
  return [cx + cam.zoom * x1, cy - cam.zoom * y2, z2];
}

/** Vertex-node index -> report vertex row index (nodes are emitted vertex
 * rows first, face centers after, in the same order as the report). */
export function vertexNodeCount(frame: Frame, report: Report): number {
  return Math.min(report.vertices.length, frame.positions.length);
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  frame: Frame,
  report: Report,
  cam: Camera,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const cx = width / 2;
  const cyy = height / 2;
  const pts = frame.positions.map((p) => project(p, cam, cx, cyy));
  ctx.strokeStyle = "#bbbbbb";
  ctx.lineWidth = 1;
  for (const [u, v] of frame.springs) {
    const a = pts[u];
    const b = pts[v];
    if (!a || !b) continue;
    ctx.beginPath();
    ctx.moveTo(a[0], a[1]);
    ctx.lineTo(b[0], b[1]);
    ctx.stroke();
  }
  const nv = vertexNodeCount(frame, report);
  for (let i = 0; i < nv; i++) {
    const p = pts[i];
    const row = report.vertices[i];
    if (!p || !row) continue;
    ctx.fillStyle = vertexColor(row);
    ctx.beginPath();
    ctx.arc(p[0], p[1], 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}
