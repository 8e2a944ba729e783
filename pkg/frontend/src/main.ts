/** DOM wiring for the explorer.
 *
 * Pointer drags move original control vertices in the xy-plane (a slider
 * carries z); exact coordinate entry hits a target precisely.  Mid-drag
 * moves post throttled without a sweep; the drop posts with the sweep
 * enabled.  The verdict badge greys out whenever the shown polygon is ahead
 * of the last report.
 */

import { KnotApi, RenderPayload, fetchTransport } from "./api.js";
import { paintScene } from "./canvas.js";
import { buildScene } from "./scene.js";
import { ExplorerStore } from "./state.js";
import { Viewport, fitBounds, toModel, toScreen, unitsPerPixel, zoomAt } from "./viewport.js";

const INITIAL_POLYGON = {
  closed: true,
  control_points: [
    [1.9817, -1.7646, -4.5897],
    [-1.3841185, 4.6825505, 0.913541],
    [-3.2983075, -4.0566825, 2.686189],
    [-0.1232995, 2.768254, -2.463584],
    [3.9079915, -4.533357, 1.2263705],
    [-3.935983, -0.438272, -0.983365],
    [3.218174, 4.296123, 2.1124595],
  ],
};

const RENDER_SAMPLES = 1024;
const VERTEX_HIT_RADIUS_PX = 12;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const apiBase = params.get("api") ?? "";
  const api = new KnotApi(fetchTransport(apiBase));
  const store = new ExplorerStore(api);

  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("no 2d context");

  let view: Viewport = fitBounds([], canvas.width, canvas.height);
  let payload: RenderPayload | null = null;
  let zValue = 0;

  const badgeNode = el<HTMLSpanElement>("badge");
  const preDragNode = el<HTMLSpanElement>("pre-drag");
  const statusNode = el<HTMLSpanElement>("status");
  const warningNode = el<HTMLSpanElement>("warning");
  const sweepNode = el<HTMLSpanElement>("sweep");
  const zSlider = el<HTMLInputElement>("z-slider");
  const coordX = el<HTMLInputElement>("coord-x");
  const coordY = el<HTMLInputElement>("coord-y");
  const coordZ = el<HTMLInputElement>("coord-z");

  const repaint = () => {
    if (!payload) return;
    const scene = buildScene(payload, { unitsPerPixel: unitsPerPixel(view) });
    const dragPreview = store.state.dragPosition
      ? ([store.state.dragPosition[0], store.state.dragPosition[1]] as [number, number])
      : null;
    const simple = store.state.report?.polygon_simple ?? true;
    paintScene(ctx, scene, view, {
      dragPreview,
      selectedVertex: store.state.selectedVertex,
      polygonColor: simple ? "#c5cdd8" : "#dc2626",
    });
    statusNode.textContent = `tolerance ${scene.toleranceModelUnits.toExponential(2)} model units/px`;
  };

  const refreshRender = async () => {
    const id = store.state.sessionId;
    if (id === null) return;
    payload = await api.render(id, RENDER_SAMPLES);
    view = fitBounds(payload.curve2d, canvas.width, canvas.height);
    repaint();
  };

  store.subscribe(() => {
    const badge = store.badge();
    badgeNode.textContent = badge.text;
    badgeNode.className = `badge badge-${badge.kind}`;
    const pre = store.preDragBadge();
    preDragNode.textContent = pre ? `before drag: ${pre.text}` : "";
    warningNode.textContent = store.state.warning ?? "";
    const sweep = store.state.lastSummary?.sweep;
    sweepNode.textContent = sweep
      ? `sweep: ${sweep.certified ? "certified simple" : "NOT certified"} (min ${sweep.min_distance.toExponential(2)})`
      : "";
    repaint();
  });

  const hitVertex = (px: number, py: number): number | null => {
    if (!payload) return null;
    for (const [i, p] of payload.original_polygon.control_points.entries()) {
      const [sx, sy] = toScreen(view, p[0]!, p[1]!);
      if (Math.hypot(sx - px, sy - py) <= VERTEX_HIT_RADIUS_PX) return i;
    }
    return null;
  };

  let dragging = false;
  let dragMoved = false;

  canvas.addEventListener("pointerdown", (event) => {
    const vertex = hitVertex(event.offsetX, event.offsetY);
    if (vertex === null) return;
    dragging = true;
    dragMoved = false;
    const p = payload?.original_polygon.control_points[vertex];
    zValue = p?.[2] ?? 0;
    zSlider.value = String(zValue);
    store.beginDrag(vertex);
    canvas.setPointerCapture(event.pointerId);
  });

  canvas.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    dragMoved = true;
    const [x, y] = toModel(view, event.offsetX, event.offsetY);
    void store.dragTo([x, y, zValue]).then((posted) => {
      if (posted) void refreshRender();
    });
  });

  canvas.addEventListener("pointerup", (event) => {
    if (!dragging) return;
    dragging = false;
    if (!dragMoved) {
      void store.endDrag(null); // zero-length drag: no request
      return;
    }
    const [x, y] = toModel(view, event.offsetX, event.offsetY);
    void store.endDrag([x, y, zValue]).then(() => refreshRender());
  });

  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    view = zoomAt(view, event.offsetX, event.offsetY, event.deltaY < 0 ? 1.15 : 1 / 1.15);
    repaint();
  });

  zSlider.addEventListener("input", () => {
    zValue = Number(zSlider.value);
  });

  el<HTMLButtonElement>("apply-coords").addEventListener("click", () => {
    const vertex = Number(el<HTMLInputElement>("coord-vertex").value);
    const position: [number, number, number] = [
      Number(coordX.value),
      Number(coordY.value),
      Number(coordZ.value),
    ];
    if (position.some((c) => !Number.isFinite(c))) return;
    store.beginDrag(vertex);
    void store.endDrag(position).then(() => refreshRender());
  });

  el<HTMLButtonElement>("reset").addEventListener("click", () => {
    void store.load(INITIAL_POLYGON, 4).then(() => refreshRender());
  });

  await store.load(INITIAL_POLYGON, 4);
  await refreshRender();
}

void start();
