import { describe, expect, it } from "vitest";

import { cellPosition, gridDims } from "../src/map.js";

describe("gridDims", () => {
  it("is near-square and fits every agent", () => {
    for (const n of [1, 2, 5, 16, 17, 200, 1000]) {
      const { cols, rows } = gridDims(n);
      expect(cols * rows).toBeGreaterThanOrEqual(n);
      expect(cols * (rows - 1)).toBeLessThan(n);
    }
  });

  it("200 agents get a 15-column grid", () => {
    expect(gridDims(200)).toEqual({ cols: 15, rows: 14 });
  });

  it("handles zero without collapsing", () => {
    const { cols, rows } = gridDims(0);
    expect(cols).toBeGreaterThanOrEqual(1);
    expect(rows).toBeGreaterThanOrEqual(1);
  });
});

describe("cellPosition", () => {
  it("is row-major by id", () => {
    expect(cellPosition(0, 5)).toEqual({ col: 0, row: 0 });
    expect(cellPosition(4, 5)).toEqual({ col: 4, row: 0 });
    expect(cellPosition(5, 5)).toEqual({ col: 0, row: 1 });
    expect(cellPosition(12, 5)).toEqual({ col: 2, row: 2 });
  });

  it("is stable: same id always maps to the same cell", () => {
    const a = cellPosition(137, 15);
    const b = cellPosition(137, 15);
    expect(a).toEqual(b);
  });
});
