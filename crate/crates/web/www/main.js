import init, {
  adjointMask, boundsGrid, cohenMap, divisors, frameSummary, spreadingMagnitude,
} from "./pkg/ggf_web.js";

const $ = (id) => document.getElementById(id);
const LENGTHS = [6, 8, 12, 16, 24, 32];

const state = { len: 12, gen: "gaussian", a: 2, b: 3 };

function fmt(x) {
  if (!Number.isFinite(x)) return String(x);
  return Math.abs(x) >= 1e4 || (x !== 0 && Math.abs(x) < 1e-3) ? x.toExponential(3) : x.toFixed(4);
}

// Viridis-like ramp from dark blue to yellow.
function color(t) {
  const stops = [[68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37]];
  const x = Math.min(Math.max(t, 0), 1) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  const f = x - i;
  return stops[i].map((c, j) => Math.round(c + f * (stops[i + 1][j] - c)));
}

function heatmap(canvas, values, len, log, outline) {
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / len;
  let vals = Array.from(values);
  if (log) {
    const max = Math.max(...vals);
    const floor = max * 1e-12;
    vals = vals.map((v) => Math.log10(Math.max(v, floor)));
  }
  const lo = Math.min(...vals);
  const hi = Math.max(...vals);
  const span = hi > lo ? hi - lo : 1;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let k = 0; k < len; k++) {
    for (let l = 0; l < len; l++) {
      const [r, g, b] = color((vals[k * len + l] - lo) / span);
      ctx.fillStyle = `rgb(${r},${g},${b})`;
      ctx.fillRect(l * cell, k * cell, cell, cell);
    }
  }
  if (outline) {
    ctx.strokeStyle = "#e33";
    ctx.lineWidth = Math.max(1, cell / 8);
    for (let k = 0; k < len; k++) {
      for (let l = 0; l < len; l++) {
        if (outline[k * len + l]) ctx.strokeRect(l * cell + 1, k * cell + 1, cell - 2, cell - 2);
      }
    }
  }
}

function drawGrid() {
  const divs = Array.from(divisors(state.len));
  const grid = boundsGrid(state.len, state.gen);
  const n = divs.length;
  const table = $("grid");
  table.replaceChildren();
  const head = table.insertRow();
  head.appendChild(document.createElement("th")).textContent = "a \\ b";
  for (const b of divs) head.appendChild(document.createElement("th")).textContent = b;
  divs.forEach((a, i) => {
    const row = table.insertRow();
    row.appendChild(document.createElement("th")).textContent = a;
    divs.forEach((b, j) => {
      const [lower, upper] = [grid[2 * (i * n + j)], grid[2 * (i * n + j) + 1]];
      const td = row.insertCell();
      const frame = upper > 0 && lower > 1e-10 * upper;
      td.textContent = frame ? fmt(upper / lower) : "no frame";
      td.className = frame ? "" : "none";
      td.title = `sep:${a},${b}  A=${fmt(lower)}  B=${fmt(upper)}`;
      if (a === state.a && b === state.b) td.classList.add("selected");
      td.addEventListener("click", () => {
        state.a = a;
        state.b = b;
        refresh(["grid", "spread"]);
      });
    });
  });
}

function drawSpreading() {
  const values = spreadingMagnitude(state.len, state.gen);
  heatmap($("spread"), values, state.len, true, adjointMask(state.len, state.a, state.b));
  const [lower, upper, card, cardAdj, residual, passes, guaranteed] =
    frameSummary(state.len, state.gen, state.a, state.b);
  const rows = [
    ["lattice", `sep:${state.a},${state.b}`],
    ["card / adjoint card", `${card} / ${cardAdj}`],
    ["A", fmt(lower)],
    ["B", fmt(upper)],
    ["Janssen residual", fmt(residual)],
    ["sufficient test", passes ? `passes, A ≥ ${fmt(guaranteed)}` : "inconclusive"],
  ];
  $("summary").replaceChildren(
    ...rows.flatMap(([k, v]) => {
      const dt = document.createElement("dt");
      const dd = document.createElement("dd");
      dt.textContent = k;
      dd.textContent = v;
      return [dt, dd];
    }),
  );
}

function drawCohen() {
  const q = cohenMap(state.len, state.gen, $("signal").value);
  heatmap($("cohen"), q, state.len, $("logscale").checked, null);
  const total = q.reduce((s, v) => s + v, 0);
  $("cohen-sum").textContent = `sum of Q = ${fmt(total)}`;
}

const panels = { grid: drawGrid, spread: drawSpreading, cohen: drawCohen };

function refresh(which = Object.keys(panels)) {
  $("status").textContent = "";
  for (const name of which) {
    try {
      panels[name]();
    } catch (err) {
      $("status").textContent = String(err);
    }
  }
}

async function main() {
  await init();
  for (const len of LENGTHS) {
    const opt = new Option(len, len, len === state.len, len === state.len);
    $("len").add(opt);
  }
  $("len").addEventListener("change", (e) => {
    state.len = Number(e.target.value);
    const divs = Array.from(divisors(state.len));
    state.a = divs[1];
    state.b = divs[Math.min(2, divs.length - 1)];
    refresh();
  });
  $("gen").addEventListener("change", (e) => {
    state.gen = e.target.value;
    refresh();
  });
  $("signal").addEventListener("change", () => refresh(["cohen"]));
  $("logscale").addEventListener("change", () => refresh(["cohen"]));
  refresh();
}

main();
