/** Dashboard entry point: connect, wire the panels, re-render on events. */
import { drawCounters, drawSatisfaction, drawShares } from "./charts.js";
import { buildControls } from "./controls.js";
import { drawAgentGrid, drawHistograms } from "./map.js";
import { commands, parseServerEvent } from "./protocol.js";
import { applyServerEvent, initialState, trackCommand } from "./state.js";
const state = initialState();
const wsUrl = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
let socket = null;
function send(command) {
    if (!socket || socket.readyState !== WebSocket.OPEN)
        return;
    trackCommand(state, command.id);
    socket.send(JSON.stringify(command));
}
const controls = buildControls(state, send);
document.getElementById("controls-slot").appendChild(controls.root);
const sharesCanvas = document.getElementById("chart-shares");
const satCanvas = document.getElementById("chart-satisfaction");
const countersCanvas = document.getElementById("chart-counters");
const mapCanvas = document.getElementById("map");
let renderQueued = false;
function render() {
    renderQueued = false;
    drawShares(sharesCanvas, state.metrics);
    drawSatisfaction(satCanvas, state.metrics);
    drawCounters(countersCanvas, state.metrics);
    if (state.mapView === "agents" && state.agents) {
        drawAgentGrid(mapCanvas, state.agents);
    }
    else if (state.histogram) {
        drawHistograms(mapCanvas, state.histogram);
    }
    controls.refresh();
}
function scheduleRender() {
    if (!renderQueued) {
        renderQueued = true;
        requestAnimationFrame(render);
    }
}
function connect() {
    socket = new WebSocket(wsUrl);
    socket.addEventListener("open", () => {
        state.status = "open";
        send(commands.snapshot("layout"));
        send(commands.snapshot(state.mapView));
        scheduleRender();
    });
    socket.addEventListener("message", (msg) => {
        const event = parseServerEvent(String(msg.data));
        if (!event)
            return;
        if (applyServerEvent(state, event))
            scheduleRender();
    });
    socket.addEventListener("close", () => {
        state.status = "closed";
        scheduleRender();
        setTimeout(connect, 2000);
    });
}
// keep the map fresh while ticks stream in
setInterval(() => {
    if (state.status === "open" && state.metrics.length > 0) {
        send(commands.snapshot(state.mapView));
    }
}, 1000);
connect();
