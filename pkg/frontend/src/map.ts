/** The left map panel: either the agent grid (one colored cell per agent,
 * row-major by id — purely presentational, there is no spatial model) or
 * the per-mode histograms of priorities / perceived values. */

import {
  AgentView,
  CRITERIA,
  HistogramView,
  MODES,
  MODE_COLORS,
} from "./protocol.js";

/** Grid dimensions for n cells: near-square, row-major. */
export function gridDims(n: number): { cols: number; rows: number } {
  const cols = Math.max(1, Math.ceil(Math.sqrt(n)));
  const rows = Math.max(1, Math.ceil(n / cols));
  return { cols, rows };
}

/** Stable cell position of agent `id` in a grid with `cols` columns. */
export function cellPosition(id: number, cols: number): { col: number; row: number } {
  return { col: id % cols, row: Math.floor(id / cols) };
}

export function drawAgentGrid(canvas: HTMLCanvasElement, agents: AgentView[]): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (agents.length === 0) return;
  const { cols, rows } = gridDims(agents.length);
  const cw = canvas.width / cols;
  const ch = canvas.height / rows;
  for (const agent of agents) {
    const { col, row } = cellPosition(agent.id, cols);
    ctx.fillStyle = MODE_COLORS[agent.mode];
    ctx.fillRect(col * cw + 1, row * ch + 1, Math.max(1, cw - 2), Math.max(1, ch - 2));
  }
}

export function drawHistograms(canvas: HTMLCanvasElement, hist: HistogramView): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const panelW = canvas.width / CRITERIA.length;
  const panelH = canvas.height / MODES.length;
  ctx.font = "9px sans-serif";
  MODES.forEach((mode, mi) => {
    CRITERIA.forEach((criterion, ci) => {
      const bins = hist[mode][criterion];
      const max = Math.max(1, ...bins);
      const x0 = ci * panelW;
      const y0 = mi * panelH;
      const barW = (panelW - 8) / bins.length;
      ctx.strokeStyle = "#ddd";
      ctx.strokeRect(x0 + 2, y0 + 2, panelW - 4, panelH - 4);
      ctx.fillStyle = MODE_COLORS[mode];
      bins.forEach((count, b) => {
        const h = ((panelH - 16) * count) / max;
        ctx.fillRect(x0 + 4 + b * barW, y0 + panelH - 6 - h, Math.max(1, barW - 1), h);
      });
      if (mi === 0) {
        ctx.fillStyle = "#333";
        ctx.fillText(criterion, x0 + 4, 10);
      }
    });
  });
}
