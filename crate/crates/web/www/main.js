import init, { family_summary, hex_spectrum, hex_sweep } from "./pkg/metrized_tau_web.js";

const $ = (id) => document.getElementById(id);

function guard(target, f) {
  try {
    target.classList.remove("error");
    f();
  } catch (e) {
    target.classList.add("error");
    target.textContent = String(e);
  }
}

function drawGraph(canvas, v, edges) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (edges.length === 0) {
    ctx.fillText("too large to draw", 10, 20);
    return;
  }
  const cx = canvas.width / 2, cy = canvas.height / 2, rad = 0.45 * canvas.width;
  const pos = (i) => [cx + rad * Math.cos((2 * Math.PI * i) / v), cy + rad * Math.sin((2 * Math.PI * i) / v)];
  ctx.strokeStyle = "rgba(40, 80, 160, 0.35)";
  for (const [a, b] of edges) {
    const [x0, y0] = pos(a), [x1, y1] = pos(b);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  for (let i = 0; i < v; i++) {
    const [x, y] = pos(i);
    ctx.fillRect(x - 1.5, y - 1.5, 3, 3);
  }
}

function plotLines(canvas, xs, series) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 30;
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.values);
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.fillText(y1.toPrecision(5), 2, pad - 5);
  ctx.fillText(y0.toPrecision(5), 2, h - 5);
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    s.values.forEach((y, i) => (i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y))));
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.name, w - 160, 15 + 14 * k);
  });
}

function runSummary() {
  const out = $("summary");
  guard(out, () => {
    const s = JSON.parse(family_summary($("family").value, +$("p").value, +$("q").value, +$("r").value));
    const kf = s.kirchhoff_index === null ? "n/a" : s.kirchhoff_index.toFixed(8);
    out.textContent =
      `${s.label}: v=${s.v} e=${s.e} genus=${s.genus} (${s.method})\n` +
      `normalized tau = ${s.tau.toFixed(9)} = 1/${s.reciprocal.toFixed(5)}\n` +
      `terms: ${s.first_term.toFixed(9)} + ${s.second_term.toFixed(9)}\n` +
      `Kirchhoff index (total length 1): ${kf}`;
    drawGraph($("graph"), s.v, s.edges);
  });
}

function runSpectrum() {
  const out = $("spectrum-info");
  guard(out, () => {
    const s = JSON.parse(hex_spectrum(+$("sn").value, +$("sm").value));
    const gap = s.numeric_gap === null ? "not checked" : s.numeric_gap.toExponential(2);
    out.textContent = `${s.eigenvalues.length} eigenvalues in [0, 6]; gap to dense: ${gap}`;
    const xs = s.eigenvalues.map((_, i) => i);
    plotLines($("spectrum"), xs, [{ name: "sorted eigenvalues", color: "#2a5", values: s.eigenvalues }]);
  });
}

function runSweep() {
  const out = $("sweep-info");
  guard(out, () => {
    const pts = JSON.parse(hex_sweep(+$("nmax").value)).filter((p) => p.n >= 3);
    const xs = pts.map((p) => p.n);
    plotLines($("sweep"), xs, [
      { name: "closed form", color: "#000", values: pts.map((p) => p.tau) },
      { name: "lower bound", color: "#25c", values: pts.map((p) => p.lower) },
      { name: "upper bound", color: "#c52", values: pts.map((p) => p.upper) },
      { name: "approximation", color: "#999", values: pts.map((p) => p.approx) },
    ]);
    out.textContent = `n = 3..${xs[xs.length - 1]}; limit 1/108 = ${(1 / 108).toFixed(7)}`;
  });
}

await init();
$("run-summary").onclick = runSummary;
$("run-spectrum").onclick = runSpectrum;
$("run-sweep").onclick = runSweep;
runSummary();
runSpectrum();
runSweep();
