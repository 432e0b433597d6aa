import init, { concurrenceCurve, deathWindows, alphaSweep, oracleDeviation } from "./pkg/tavis_web.js";

const STEPS = 2001;
const ZERO_THRESHOLD = 1e-9;

const $ = (id) => document.getElementById(id);

function params() {
  return {
    family: Number(document.querySelector("input[name=family]:checked").value),
    a: Number($("a").value),
    b: Number($("b").value),
    c: Number($("c").value),
    alpha: Number($("alpha").value),
    gtMax: Number($("gtmax").value),
    minWindow: Number($("minwin").value),
  };
}

function axes(ctx, w, h, pad, xMax, yMax, xLabel) {
  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "11px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  for (let i = 0; i <= 5; i++) {
    const x = pad + ((w - 2 * pad) * i) / 5;
    ctx.fillText(((xMax * i) / 5).toFixed(1), x - 8, h - pad + 14);
    const y = h - pad - ((h - 2 * pad) * i) / 5;
    ctx.fillText(((yMax * i) / 5).toFixed(2), 2, y + 4);
  }
  ctx.fillText(xLabel, w - pad - 20, h - 4);
}

function polyline(ctx, xs, ys, toX, toY, dash, color) {
  ctx.setLineDash(dash);
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(toX(x), toY(ys[i])) : ctx.moveTo(toX(x), toY(ys[i]))));
  ctx.stroke();
  ctx.setLineDash([]);
}

function drawCurve(p) {
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 34;
  ctx.clearRect(0, 0, w, h);

  const ts = Array.from({ length: STEPS }, (_, i) => (p.gtMax * i) / (STEPS - 1));
  const toX = (t) => pad + ((w - 2 * pad) * t) / p.gtMax;
  const toY = (c) => h - pad - (h - 2 * pad) * c;

  const windows = deathWindows(p.family, p.a, p.b, p.c, p.alpha, p.gtMax, STEPS, ZERO_THRESHOLD, p.minWindow);
  ctx.fillStyle = "rgba(200, 60, 60, 0.15)";
  let dark = 0;
  for (let i = 0; i < windows.length; i += 2) {
    ctx.fillRect(toX(windows[i]), pad, toX(windows[i + 1]) - toX(windows[i]), h - 2 * pad);
    dark += windows[i + 1] - windows[i];
  }
  axes(ctx, w, h, pad, p.gtMax, 1, "gt");

  const base = concurrenceCurve(p.family, p.a, p.b, p.c, 0, p.gtMax, STEPS);
  const curve = concurrenceCurve(p.family, p.a, p.b, p.c, p.alpha, p.gtMax, STEPS);
  polyline(ctx, ts, base, toX, toY, [5, 4], "#888");
  polyline(ctx, ts, curve, toX, toY, [], "#1f5fbf");

  $("summary").textContent =
    `${windows.length / 2} death window(s), total dark time ${dark.toFixed(3)}`;
  const dev = oracleDeviation(p.family, p.alpha, p.gtMax, 200);
  $("oracle").textContent = `max |U_analytic - exp(-iHt)| = ${dev.toExponential(2)}`;
}

function drawSweep(p) {
  const rows = alphaSweep(p.family, p.a, p.b, p.c, 10, 0.5, p.gtMax, STEPS, ZERO_THRESHOLD, p.minWindow);
  const alphas = [], counts = [], darks = [], means = [];
  for (let i = 0; i < rows.length; i += 4) {
    alphas.push(rows[i]);
    counts.push(rows[i + 1]);
    darks.push(rows[i + 2]);
    means.push(rows[i + 3]);
  }

  const canvas = $("sweep");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 34;
  ctx.clearRect(0, 0, w, h);
  const darkMax = Math.max(1, ...darks);
  axes(ctx, w, h, pad, 10, darkMax, "alpha");
  const toX = (a) => pad + ((w - 2 * pad) * a) / 10;
  const toY = (d) => h - pad - ((h - 2 * pad) * d) / darkMax;
  polyline(ctx, alphas, darks, toX, toY, [], "#c23");
  polyline(ctx, alphas, means.map((m) => m * darkMax), toX, toY, [4, 3], "#1f5fbf");
  ctx.fillStyle = "#c23";
  ctx.fillText("dark time", w - pad - 60, pad);
  ctx.fillStyle = "#1f5fbf";
  ctx.fillText("mean C (scaled)", w - pad - 60, pad + 14);

  const body = $("sweep-table").querySelector("tbody");
  body.innerHTML = "";
  alphas.forEach((a, i) => {
    const tr = document.createElement("tr");
    [a.toFixed(1), counts[i], darks[i].toFixed(3), means[i].toFixed(4)].forEach((v) => {
      const td = document.createElement("td");
      td.textContent = v;
      tr.appendChild(td);
    });
    body.appendChild(tr);
  });
}

let sweepTimer = null;

function refresh() {
  for (const id of ["a", "b", "c", "alpha", "gtmax"]) $(`${id}-out`).textContent = $(id).value;
  const p = params();
  if (p.a === 0 && p.b === 0 && p.c === 0) return;
  drawCurve(p);
  clearTimeout(sweepTimer);
  sweepTimer = setTimeout(() => drawSweep(params()), 150);
}

await init();
document.querySelectorAll("input").forEach((el) => el.addEventListener("input", refresh));
refresh();
