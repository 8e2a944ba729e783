/** Thin painter: Scene (model space) onto a 2D canvas via a Viewport. */

import { Scene } from "./scene.js";
import { Viewport, toScreen } from "./viewport.js";

export interface PaintOptions {
  polygonColor?: string;
  curveColor?: string;
  dragPreview?: [number, number] | null;
  selectedVertex?: number | null;
}

const ARROW_SIZE = 9;

export function paintScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  view: Viewport,
  options: PaintOptions = {},
): void {
  ctx.clearRect(0, 0, view.width, view.height);

  // control polygon overlay
  ctx.strokeStyle = options.polygonColor ?? "#c5cdd8";
  ctx.lineWidth = 1;
  drawPolyline(ctx, view, scene.polygon.points, scene.polygon.closedRing ?? false);

  // original vertices as drag handles
  for (const [i, v] of scene.originalVertices.entries()) {
    const [x, y] = toScreen(view, v[0], v[1]);
    ctx.beginPath();
    ctx.arc(x, y, i === options.selectedVertex ? 7 : 5, 0, Math.PI * 2);
    ctx.fillStyle = i === options.selectedVertex ? "#2563eb" : "#64748b";
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.stroke();
  }
  if (options.dragPreview) {
    const [x, y] = toScreen(view, options.dragPreview[0], options.dragPreview[1]);
    ctx.beginPath();
    ctx.arc(x, y, 7, 0, Math.PI * 2);
    ctx.strokeStyle = "#2563eb";
    ctx.stroke();
  }

  // projected curve, under strands broken
  ctx.strokeStyle = options.curveColor ?? "#0f172a";
  ctx.lineWidth = 2;
  for (const run of scene.curveRuns) {
    drawPolyline(ctx, view, run.points, false);
  }

  // orientation arrows
  ctx.fillStyle = ctx.strokeStyle;
  for (const arrow of scene.arrows) {
    const [x, y] = toScreen(view, arrow.at[0], arrow.at[1]);
    const [dx, dy] = [arrow.direction[0], -arrow.direction[1]];
    ctx.beginPath();
    ctx.moveTo(x + dx * ARROW_SIZE, y + dy * ARROW_SIZE);
    ctx.lineTo(x - dy * ARROW_SIZE * 0.45, y + dx * ARROW_SIZE * 0.45);
    ctx.lineTo(x + dy * ARROW_SIZE * 0.45, y - dx * ARROW_SIZE * 0.45);
    ctx.closePath();
    ctx.fill();
  }

  // crossing labels
  ctx.font = "13px sans-serif";
  ctx.fillStyle = "#b91c1c";
  for (const label of scene.labels) {
    const [x, y] = toScreen(view, label.at[0], label.at[1]);
    ctx.fillText(label.text, x + 8, y - 8);
  }
}

function drawPolyline(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  points: [number, number][],
  close: boolean,
): void {
  if (points.length < 2) return;
  ctx.beginPath();
  const [x0, y0] = toScreen(view, points[0]![0], points[0]![1]);
  ctx.moveTo(x0, y0);
  for (let i = 1; i < points.length; i++) {
    const [x, y] = toScreen(view, points[i]![0], points[i]![1]);
    ctx.lineTo(x, y);
  }
  if (close) ctx.closePath();
  ctx.stroke();
}
