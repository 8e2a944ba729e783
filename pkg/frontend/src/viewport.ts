/** Pan/zoom between model space (curve xy) and canvas pixels. */

export interface Viewport {
  scale: number; // pixels per model unit
  offsetX: number;
  offsetY: number;
  width: number;
  height: number;
}

export const fitBounds = (
  points: [number, number][],
  width: number,
  height: number,
  margin = 24,
): Viewport => {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const [x, y] of points) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  if (!Number.isFinite(minX)) {
    return { scale: 1, offsetX: width / 2, offsetY: height / 2, width, height };
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - cx * scale,
    offsetY: height / 2 + cy * scale,
    width,
    height,
  };
};

/** Model y grows upward, canvas y downward. */
export const toScreen = (v: Viewport, x: number, y: number): [number, number] => [
  v.offsetX + x * v.scale,
  v.offsetY - y * v.scale,
];

export const toModel = (v: Viewport, px: number, py: number): [number, number] => [
  (px - v.offsetX) / v.scale,
  (v.offsetY - py) / v.scale,
];

/** The display tolerance: one pixel expressed in model units. */
export const unitsPerPixel = (v: Viewport): number => 1 / v.scale;

export const zoomAt = (v: Viewport, px: number, py: number, factor: number): Viewport => {
  const [mx, my] = toModel(v, px, py);
  const scale = v.scale * factor;
  return {
    ...v,
    scale,
    offsetX: px - mx * scale,
    offsetY: py + my * scale,
  };
};

export const pan = (v: Viewport, dx: number, dy: number): Viewport => ({
  ...v,
  offsetX: v.offsetX + dx,
  offsetY: v.offsetY + dy,
});
