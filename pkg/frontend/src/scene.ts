/** Pure display-list construction from a render payload.
 *
 * The projected curve is drawn as polyline runs with a gap cut into the
 * under strand at every crossing (the strand whose z is lower there); the
 * gap size is proportional to the pixel scale so it reads the same at any
 * zoom.  Orientation arrows, crossing labels and the control polygon
 * overlay are emitted as data for a thin canvas adapter to paint.
 */

import { RenderPayload } from "./api.js";

export interface Polyline {
  points: [number, number][];
  closedRing?: boolean;
}

export interface Arrow {
  at: [number, number];
  direction: [number, number];
}

export interface Label {
  at: [number, number];
  text: string;
}

export interface Scene {
  curveRuns: Polyline[];
  gapCount: number;
  arrows: Arrow[];
  labels: Label[];
  polygon: Polyline;
  originalVertices: [number, number][];
  toleranceModelUnits: number;
}

export interface SceneOptions {
  unitsPerPixel: number;
  gapPixels?: number;
  arrowCount?: number;
}

const DEFAULT_GAP_PIXELS = 14;
const DEFAULT_ARROW_COUNT = 8;

/** Indices of curve samples to drop: a window around each under-pass. */
export function underStrandGaps(payload: RenderPayload, gapRadiusModel: number): Set<number> {
  const pts = payload.curve2d;
  const n = pts.length;
  const samples = payload.samples;
  const dropped = new Set<number>();
  for (const crossing of payload.crossings) {
    const tUnder = crossing.over_is_first ? crossing.t_second : crossing.t_first;
    const center = Math.round(tUnder * samples);
    const [cx, cy] = crossing.point;
    for (const direction of [-1, 1]) {
      for (let step = direction === -1 ? 0 : 1; ; step++) {
        const k = center + direction * step;
        if (k < 0 || k >= n) break;
        const p = pts[k]!;
        const dist = Math.hypot(p[0] - cx, p[1] - cy);
        if (dist > gapRadiusModel) break;
        dropped.add(k);
      }
    }
  }
  return dropped;
}

/** Split the sampled curve into kept runs, merging across the seam of a
 * closed curve so the seam itself never reads as a gap. */
export function splitRuns(points: [number, number][], dropped: Set<number>, closed: boolean): Polyline[] {
  const runs: [number, number][][] = [];
  let current: [number, number][] = [];
  for (let k = 0; k < points.length; k++) {
    if (dropped.has(k)) {
      if (current.length > 1) runs.push(current);
      current = [];
    } else {
      current.push(points[k]!);
    }
  }
  if (current.length > 1) runs.push(current);
  if (closed && runs.length > 1) {
    const first = runs[0]!;
    const last = runs[runs.length - 1]!;
    if (!dropped.has(0) && !dropped.has(points.length - 1)) {
      // seam sample appears at both ends; join the two runs into one
      runs[0] = last.concat(first.slice(1));
      runs.pop();
    }
  }
  return runs.map((points) => ({ points }));
}

export function buildScene(payload: RenderPayload, options: SceneOptions): Scene {
  const gapPixels = options.gapPixels ?? DEFAULT_GAP_PIXELS;
  const gapRadius = (gapPixels / 2) * options.unitsPerPixel;
  const dropped = underStrandGaps(payload, gapRadius);
  const closed = payload.polygon.closed;
  const curveRuns = splitRuns(payload.curve2d, dropped, closed);

  const arrows: Arrow[] = [];
  const arrowCount = options.arrowCount ?? DEFAULT_ARROW_COUNT;
  const pts = payload.curve2d;
  for (let i = 0; i < arrowCount; i++) {
    const k = Math.floor(((i + 0.5) / arrowCount) * (pts.length - 1));
    if (dropped.has(k) || dropped.has(k + 1) || k + 1 >= pts.length) continue;
    const a = pts[k]!;
    const b = pts[k + 1]!;
    const len = Math.hypot(b[0] - a[0], b[1] - a[1]);
    if (len === 0) continue;
    arrows.push({ at: a, direction: [(b[0] - a[0]) / len, (b[1] - a[1]) / len] });
  }

  const labels: Label[] = payload.crossings.map((c) => ({
    at: c.point,
    text: String(c.id),
  }));

  const polygonPoints = payload.polygon.control_points.map(
    (p): [number, number] => [p[0]!, p[1]!],
  );
  const originalVertices = payload.original_polygon.control_points.map(
    (p): [number, number] => [p[0]!, p[1]!],
  );

  return {
    curveRuns,
    gapCount: countGapRuns(payload.curve2d.length, dropped, closed),
    arrows,
    labels,
    polygon: { points: polygonPoints, closedRing: closed },
    originalVertices,
    toleranceModelUnits: options.unitsPerPixel,
  };
}

/** Number of maximal dropped windows, counted cyclically for closed curves. */
export function countGapRuns(sampleCount: number, dropped: Set<number>, closed: boolean): number {
  if (dropped.size === 0) return 0;
  let runs = 0;
  for (let k = 0; k < sampleCount; k++) {
    const previous = k === 0 ? (closed ? sampleCount - 1 : -1) : k - 1;
    const prevDropped = previous >= 0 && dropped.has(previous);
    if (dropped.has(k) && !prevDropped) runs++;
  }
  if (runs === 0 && dropped.size > 0) return 1; // everything dropped
  return runs;
}
