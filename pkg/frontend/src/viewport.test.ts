import { describe, expect, it } from "vitest";

import { fitBounds, pan, toModel, toScreen, unitsPerPixel, zoomAt } from "./viewport.js";

describe("viewport", () => {
  it("fits bounds with margin and centers content", () => {
    const view = fitBounds(
      [
        [-2, -1],
        [2, 1],
      ],
      800,
      600,
    );
    const [cx, cy] = toScreen(view, 0, 0);
    expect(cx).toBeCloseTo(400);
    expect(cy).toBeCloseTo(300);
    const [left] = toScreen(view, -2, 0);
    const [right] = toScreen(view, 2, 0);
    expect(left).toBeGreaterThanOrEqual(24 - 1e-9);
    expect(right).toBeLessThanOrEqual(800 - 24 + 1e-9);
  });

  it("round-trips model and screen coordinates", () => {
    const view = fitBounds(
      [
        [-3, -3],
        [4, 5],
      ],
      640,
      480,
    );
    const [px, py] = toScreen(view, 1.25, -0.5);
    const [mx, my] = toModel(view, px, py);
    expect(mx).toBeCloseTo(1.25, 10);
    expect(my).toBeCloseTo(-0.5, 10);
  });

  it("model y grows upward on screen", () => {
    const view = fitBounds(
      [
        [0, 0],
        [1, 1],
      ],
      100,
      100,
    );
    const [, yLow] = toScreen(view, 0.5, 0);
    const [, yHigh] = toScreen(view, 0.5, 1);
    expect(yHigh).toBeLessThan(yLow);
  });

  it("reports the per-pixel tolerance as the inverse scale", () => {
    const view = fitBounds(
      [
        [0, 0],
        [10, 10],
      ],
      500,
      500,
    );
    expect(unitsPerPixel(view)).toBeCloseTo(1 / view.scale, 12);
  });

  it("zoomAt keeps the anchor point fixed", () => {
    let view = fitBounds(
      [
        [0, 0],
        [8, 6],
      ],
      800,
      600,
    );
    const anchorModel = toModel(view, 222, 333);
    view = zoomAt(view, 222, 333, 1.5);
    const [mx, my] = toModel(view, 222, 333);
    expect(mx).toBeCloseTo(anchorModel[0], 9);
    expect(my).toBeCloseTo(anchorModel[1], 9);
  });

  it("pan shifts in pixels", () => {
    const view = fitBounds(
      [
        [0, 0],
        [1, 1],
      ],
      200,
      200,
    );
    const moved = pan(view, 15, -10);
    const [x0, y0] = toScreen(view, 0.3, 0.3);
    const [x1, y1] = toScreen(moved, 0.3, 0.3);
    expect(x1 - x0).toBeCloseTo(15);
    expect(y1 - y0).toBeCloseTo(-10);
  });
});
