/** DOM wiring: palette, open-slot list (accessible flat preview), report
 * panel, 3D canvas, undo and relax controls. */

import { ApiClient } from "./api.js";
import { App, openSlots } from "./app.js";
import { vertexColor, vertexLabel } from "./colors.js";
import { Camera, drawScene } from "./scene.js";

const SERVICE = (window as unknown as { CURVAGONS_SERVICE?: string })
  .CURVAGONS_SERVICE ?? "http://127.0.0.1:8077";

const app = new App(new ApiClient(SERVICE));
const cam: Camera = { yaw: 0.6, pitch: 0.4, zoom: 60 };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function renderPalette(): void {
  const palette = el<HTMLDivElement>("palette");
  palette.innerHTML = "";
  for (let sides = 3; sides <= 12; sides++) {
    const btn = document.createElement("button");
    btn.textContent = `${sides}-gon`;
    btn.onclick = () => {
      const slot = app.getState().selectedSlot;
      const empty = (app.getState().report?.counts.faces ?? 0) === 0;
      if (empty) void app.placeTile(sides);
      else if (slot) void app.attachTile(sides, slot);
    };
    palette.appendChild(btn);
  }
}

function render(): void {
  const state = app.getState();
  const report = state.report;

  const summary = el<HTMLDivElement>("summary");
  if (report) {
    summary.textContent =
      `V=${report.counts.vertices} E=${report.counts.edges} ` +
      `F=${report.counts.faces}  χ=${report.euler_characteristic}  ` +
      `total defect ${report.total_defect.display}  ` +
      `Descartes: ${report.descartes}`;
  } else {
    summary.textContent = "no session";
  }

  const slots = el<HTMLUListElement>("slots");
  slots.innerHTML = "";
  for (const slot of openSlots(report)) {
    const li = document.createElement("li");
    const btn = document.createElement("button");
    btn.textContent = `face ${slot.face}, edge ${slot.index}`;
    const sel = state.selectedSlot;
    if (sel && sel.face === slot.face && sel.index === slot.index) {
      btn.classList.add("selected");
    }
    btn.onclick = () => app.selectSlot(slot);
    li.appendChild(btn);
    slots.appendChild(li);
  }

  const verts = el<HTMLUListElement>("vertices");
  verts.innerHTML = "";
  for (const v of report?.vertices ?? []) {
    const li = document.createElement("li");
    li.style.color = vertexColor(v);
    li.textContent =
      `v${v.index} (${v.config.join(",")}) ${vertexLabel(v)}`;
    verts.appendChild(li);
  }

  const errorBox = el<HTMLDivElement>("error");
  errorBox.textContent = state.error ?? "";

  const stats = el<HTMLDivElement>("relax-stats");
  if (state.relaxStats) {
    stats.textContent =
      `residual ${(state.relaxStats.max_edge_residual * 100).toFixed(3)}%  ` +
      `energy ${state.relaxStats.final_energy.toExponential(3)}`;
  }
  el<HTMLButtonElement>("relax").disabled =
    state.relaxing || (report?.counts.faces ?? 0) === 0;

  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (ctx && state.frame && report) {
    drawScene(ctx, state.frame, report, cam, canvas.width, canvas.height);
  } else if (ctx) {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
  }
}

function wireControls(): void {
  el<HTMLButtonElement>("undo").onclick = () => void app.undo();
  el<HTMLButtonElement>("relax").onclick = () => void app.relaxOnce();
  el<HTMLButtonElement>("refresh").onclick = () => void app.refresh();
  const canvas = el<HTMLCanvasElement>("view");
  let dragging = false;
  let last: [number, number] = [0, 0];
  canvas.onmousedown = (e) => {
    dragging = true;
    last = [e.clientX, e.clientY];
  };
  window.onmouseup = () => (dragging = false);
  window.onmousemove = (e) => {
    if (!dragging) return;
    cam.yaw += (e.clientX - last[0]) * 0.01;
    cam.pitch += (e.clientY - last[1]) * 0.01;
    last = [e.clientX, e.clientY];
    render();
  };
  canvas.onwheel = (e) => {
    e.preventDefault();
    cam.zoom *= Math.exp(-e.deltaY * 0.001);
    render();
  };
}

app.subscribe(render);
renderPalette();
wireControls();
void app.start();
