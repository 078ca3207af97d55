/** Control panel: every widget emits exactly one protocol command through
 * the provided `send` callback; no simulation logic runs client-side. */
import { CRITERIA, MODES, commands, } from "./protocol.js";
import { selectedValue } from "./state.js";
function button(label, onClick) {
    const b = document.createElement("button");
    b.textContent = label;
    b.addEventListener("click", onClick);
    return b;
}
function select(options, onChange) {
    const s = document.createElement("select");
    for (const opt of options) {
        const o = document.createElement("option");
        o.value = opt;
        o.textContent = opt;
        s.appendChild(o);
    }
    s.addEventListener("change", () => onChange(s.value));
    return s;
}
function row(label, ...children) {
    const div = document.createElement("div");
    div.className = "control-row";
    const span = document.createElement("span");
    span.className = "control-label";
    span.textContent = label;
    div.appendChild(span);
    for (const child of children)
        div.appendChild(child);
    return div;
}
export function buildControls(state, send) {
    const root = document.createElement("div");
    root.id = "controls";
    // run control
    const pauseBtn = button("pause", () => send(commands.pause()));
    const resumeBtn = button("resume", () => send(commands.resume()));
    const stepBtn = button("step", () => send(commands.step(1)));
    const speedInput = document.createElement("input");
    speedInput.type = "number";
    speedInput.min = "1";
    speedInput.max = "1000";
    speedInput.value = String(state.speed);
    speedInput.addEventListener("change", () => {
        const v = Number(speedInput.value);
        if (v > 0 && v <= 1000) {
            state.speed = v;
            send(commands.setSpeed(v));
        }
    });
    root.appendChild(row("run", pauseBtn, resumeBtn, stepBtn, speedInput));
    // layout editing: mode + criterion selectors, current value, +-5
    const valueLabel = document.createElement("span");
    valueLabel.className = "value-label";
    const modeSel = select(MODES, (m) => {
        state.selectedMode = m;
        refresh();
    });
    const critSel = select(CRITERIA, (c) => {
        state.selectedCriterion = c;
        refresh();
    });
    const requestLayout = () => send(commands.snapshot("layout"));
    const minus = button("-5", () => {
        send(commands.adjustValue(state.selectedMode, state.selectedCriterion, -5));
    });
    const plus = button("+5", () => {
        send(commands.adjustValue(state.selectedMode, state.selectedCriterion, 5));
    });
    root.appendChild(row("layout", modeSel, critSel, valueLabel, minus, plus));
    // population priorities
    const prioSel = select(CRITERIA, () => undefined);
    const prioMinus = button("-5", () => send(commands.shiftPriority(prioSel.value, -5)));
    const prioPlus = button("+5", () => send(commands.shiftPriority(prioSel.value, 5)));
    root.appendChild(row("priorities", prioSel, prioMinus, prioPlus));
    // toggles and habit reset
    const biasBox = document.createElement("input");
    biasBox.type = "checkbox";
    biasBox.checked = true;
    biasBox.addEventListener("change", () => send(commands.toggle("biases", biasBox.checked)));
    const habitBox = document.createElement("input");
    habitBox.type = "checkbox";
    habitBox.checked = true;
    habitBox.addEventListener("change", () => send(commands.toggle("habits", habitBox.checked)));
    const resetBtn = button("reset habits", () => send(commands.resetHabits()));
    root.appendChild(row("biases", biasBox));
    root.appendChild(row("habits", habitBox));
    root.appendChild(row("", resetBtn));
    // map view selector
    const viewSel = select(["agents", "priorities_histogram", "values_histogram"], (v) => {
        state.mapView = v;
        send(commands.snapshot(state.mapView));
    });
    root.appendChild(row("map view", viewSel));
    const status = document.createElement("div");
    status.id = "status-banner";
    root.appendChild(status);
    function refresh() {
        const connected = state.status === "open";
        for (const el of root.querySelectorAll("button, select, input")) {
            el.disabled = !connected;
        }
        status.textContent =
            state.status === "open"
                ? state.lastError
                    ? `error: ${state.lastError}`
                    : "connected"
                : `disconnected (${state.status})`;
        status.className = connected && !state.lastError ? "ok" : "bad";
        const v = selectedValue(state);
        valueLabel.textContent = v === null ? "–" : v.toFixed(1);
        if (connected && v === null)
            requestLayout();
    }
    refresh();
    return { root, refresh };
}
