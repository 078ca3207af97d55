/** Hand-rolled canvas charts: stacked modal shares, satisfaction lines
 * with gaps, and the four decision counters. No chart library — the
 * series are small and the axes fixed. */
import { MODES, MODE_COLORS } from "./protocol.js";
const MARGIN = { top: 10, right: 10, bottom: 22, left: 36 };
/** Linear map from [d0, d1] to [r0, r1]; degenerate domains map to r0. */
export function linearScale(d0, d1, r0, r1) {
    const span = d1 - d0;
    if (span === 0)
        return () => r0;
    return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}
/** Cumulative stack of share series, bottom-up in mode order. Each output
 * row i is the running sum of series 0..i per tick. */
export function stackSeries(series) {
    const out = [];
    let acc = null;
    for (const s of series) {
        const next = s.map((v, i) => (acc ? acc[i] + v : v));
        out.push(next);
        acc = next;
    }
    return out;
}
function plotArea(canvas) {
    return {
        x0: MARGIN.left,
        y0: MARGIN.top,
        x1: canvas.width - MARGIN.right,
        y1: canvas.height - MARGIN.bottom,
    };
}
function clearAndFrame(ctx, canvas, title) {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const a = plotArea(canvas);
    ctx.strokeStyle = "#999";
    ctx.strokeRect(a.x0, a.y0, a.x1 - a.x0, a.y1 - a.y0);
    ctx.fillStyle = "#333";
    ctx.font = "11px sans-serif";
    ctx.fillText(title, a.x0, canvas.height - 8);
}
function tickScale(buffer, x0, x1) {
    const ticks = buffer.ticks();
    const first = ticks.length ? ticks[0] : 0;
    const last = ticks.length ? ticks[ticks.length - 1] : 1;
    return linearScale(first, Math.max(last, first + 1), x0, x1);
}
export function drawShares(canvas, buffer) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        return;
    clearAndFrame(ctx, canvas, "modal shares");
    if (buffer.length === 0)
        return;
    const a = plotArea(canvas);
    const xs = tickScale(buffer, a.x0, a.x1);
    const ys = linearScale(0, 1, a.y1, a.y0);
    const ticks = buffer.ticks();
    const stacked = stackSeries(MODES.map((m) => buffer.shareSeries(m)));
    let below = ticks.map(() => 0);
    MODES.forEach((mode, mi) => {
        const top = stacked[mi];
        ctx.beginPath();
        ticks.forEach((t, i) => {
            const x = xs(t);
            if (i === 0)
                ctx.moveTo(x, ys(top[i]));
            else
                ctx.lineTo(x, ys(top[i]));
        });
        for (let i = ticks.length - 1; i >= 0; i--) {
            ctx.lineTo(xs(ticks[i]), ys(below[i]));
        }
        ctx.closePath();
        ctx.fillStyle = MODE_COLORS[mode];
        ctx.globalAlpha = 0.8;
        ctx.fill();
        ctx.globalAlpha = 1;
        below = top;
    });
}
export function drawSatisfaction(canvas, buffer) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        return;
    clearAndFrame(ctx, canvas, "mean satisfaction");
    if (buffer.length === 0)
        return;
    const a = plotArea(canvas);
    const xs = tickScale(buffer, a.x0, a.x1);
    const ys = linearScale(0, 100, a.y1, a.y0);
    const ticks = buffer.ticks();
    for (const mode of MODES) {
        const series = buffer.satisfactionSeries(mode);
        ctx.strokeStyle = MODE_COLORS[mode];
        ctx.lineWidth = 1.5;
        ctx.beginPath();
        let drawing = false;
        series.forEach((v, i) => {
            if (v === null) {
                drawing = false; // gap where the mode has no users
                return;
            }
            const x = xs(ticks[i]);
            const y = ys(v);
            if (drawing)
                ctx.lineTo(x, y);
            else
                ctx.moveTo(x, y);
            drawing = true;
        });
        ctx.stroke();
    }
}
const COUNTER_STYLES = [
    ["byHabit", "#555"],
    ["habitContrary", "#9467bd"],
    ["biased", "#8c564b"],
    ["constrained", "#e377c2"],
];
const counterNames = {
    byHabit: "by habit",
    habitContrary: "habit contrary",
    biased: "biased",
    constrained: "constrained",
};
export function drawCounters(canvas, buffer) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        return;
    clearAndFrame(ctx, canvas, "decision types");
    if (buffer.length === 0)
        return;
    const a = plotArea(canvas);
    const xs = tickScale(buffer, a.x0, a.x1);
    const ys = linearScale(0, buffer.maxCounter(), a.y1, a.y0);
    const ticks = buffer.ticks();
    for (const [name, color] of COUNTER_STYLES) {
        const series = buffer.counterSeries(name);
        ctx.strokeStyle = color;
        ctx.lineWidth = 1.2;
        ctx.beginPath();
        series.forEach((v, i) => {
            const x = xs(ticks[i]);
            if (i === 0)
                ctx.moveTo(x, ys(v));
            else
                ctx.lineTo(x, ys(v));
        });
        ctx.stroke();
    }
}
