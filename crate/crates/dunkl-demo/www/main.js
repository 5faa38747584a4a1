// Glue for the Dunkl demo page. Expects the wasm-bindgen output of the
// dunkl-demo crate in ./pkg (see the README: wasm-pack build --target web).

import init, { kernel_scan, sharp_curve, support_map } from "./pkg/dunkl_demo.js";

const $ = (id) => document.getElementById(id);

function slider(id, fmt, onChange) {
  const input = $(id);
  const out = $(id + "-val");
  const update = () => {
    out.value = fmt(parseFloat(input.value));
    onChange();
  };
  input.addEventListener("input", update);
  return () => parseFloat(input.value);
}

function clearCanvas(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return ctx;
}

function axes(ctx, box, xr, yr) {
  ctx.strokeStyle = "#8886";
  ctx.lineWidth = 1;
  ctx.strokeRect(box.x, box.y, box.w, box.h);
  const x0 = box.x + ((0 - xr[0]) / (xr[1] - xr[0])) * box.w;
  const y0 = box.y + box.h - ((0 - yr[0]) / (yr[1] - yr[0])) * box.h;
  ctx.beginPath();
  if (xr[0] < 0 && xr[1] > 0) { ctx.moveTo(x0, box.y); ctx.lineTo(x0, box.y + box.h); }
  if (yr[0] < 0 && yr[1] > 0) { ctx.moveTo(box.x, y0); ctx.lineTo(box.x + box.w, y0); }
  ctx.stroke();
}

function polyline(ctx, box, xr, yr, xs, ys, color) {
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.8;
  ctx.beginPath();
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    if (!isFinite(ys[i])) { pen = false; continue; }
    const px = box.x + ((xs[i] - xr[0]) / (xr[1] - xr[0])) * box.w;
    const py = box.y + box.h - ((ys[i] - yr[0]) / (yr[1] - yr[0])) * box.h;
    if (pen) ctx.lineTo(px, py); else { ctx.moveTo(px, py); pen = true; }
  }
  ctx.stroke();
}

// --- Panel 1: signed kernel -------------------------------------------------

let kernelArgs;
function drawKernel() {
  const [k, x, y] = kernelArgs.map((g) => g());
  const doc = JSON.parse(kernel_scan(k, x, y, 513));
  const stats = $("kernel-stats");
  if (doc.error) { stats.innerHTML = `<span class="fail">${doc.error}</span>`; return; }
  const canvas = $("kernel-canvas");
  const ctx = clearCanvas(canvas);
  const box = { x: 45, y: 12, w: canvas.width - 60, h: canvas.height - 40 };
  const finite = doc.weighted_gamma.filter(isFinite).concat(doc.gamma.filter(isFinite));
  const lo = Math.min(...finite, 0), hi = Math.max(...finite, 0.1);
  const xr = [doc.z[0], doc.z[doc.z.length - 1]];
  const yr = [lo - 0.08 * (hi - lo), hi + 0.08 * (hi - lo)];
  // support interval shading
  ctx.fillStyle = "#4a90d922";
  for (const s of [-1, 1]) {
    const a = box.x + ((s * doc.support.hi - xr[0]) / (xr[1] - xr[0])) * box.w;
    const b = box.x + ((s * doc.support.lo - xr[0]) / (xr[1] - xr[0])) * box.w;
    ctx.fillRect(Math.min(a, b), box.y, Math.abs(b - a), box.h);
  }
  axes(ctx, box, xr, yr);
  polyline(ctx, box, xr, yr, doc.z, doc.gamma, "#b6654b");
  polyline(ctx, box, xr, yr, doc.z, doc.weighted_gamma, "#2c6fbb");
  const ok = doc.bound_ok ? "" : ' <span class="fail">(bound violated!)</span>';
  stats.innerHTML =
    `support |z| &isin; [${doc.support.lo.toFixed(3)}, ${doc.support.hi.toFixed(3)}] &middot; ` +
    `<b>&int;|d&gamma;| = ${doc.total_variation.toFixed(6)}</b> &le; ` +
    `A<sub>k</sub> = ${doc.sharp_constant.toFixed(6)}${ok} &middot; ` +
    `<span style="color:#b6654b">&gamma;</span> / ` +
    `<span style="color:#2c6fbb">&gamma;&middot;|z|<sup>2k</sup></span>`;
}

// --- Panel 2: sharp constant curve ------------------------------------------

let akArgs;
function drawAk() {
  const [kmax, kprobe] = akArgs.map((g) => g());
  const doc = JSON.parse(sharp_curve(kmax, 256, kprobe));
  const canvas = $("ak-canvas");
  const ctx = clearCanvas(canvas);
  const box = { x: 45, y: 12, w: canvas.width - 60, h: canvas.height - 40 };
  const xr = [0, kmax], yr = [0.98, 1.45];
  axes(ctx, box, xr, yr);
  // sqrt(2) asymptote
  const ys = box.y + box.h - ((doc.asymptote - yr[0]) / (yr[1] - yr[0])) * box.h;
  ctx.setLineDash([6, 5]);
  ctx.strokeStyle = "#888";
  ctx.beginPath(); ctx.moveTo(box.x, ys); ctx.lineTo(box.x + box.w, ys); ctx.stroke();
  ctx.setLineDash([]);
  polyline(ctx, box, xr, yr, doc.k, doc.a_k, "#2c6fbb");
  const p = doc.probe;
  const rel = Math.abs(p.closed_form - p.quadrature) / p.closed_form;
  $("ak-stats").innerHTML =
    `A<sub>0</sub> = 1, A<sub>k</sub> &nearr; &radic;2 = ${doc.asymptote.toFixed(6)} &middot; ` +
    `probe k = ${p.k.toFixed(1)}: closed form ${p.closed_form.toFixed(8)}, ` +
    `quadrature ${p.quadrature.toFixed(8)} (rel. diff ${rel.toExponential(1)})`;
}

// --- Panel 3: 2D support map --------------------------------------------------

let supportArgs;
function drawSupport() {
  const [x1, x2, y1, y2] = supportArgs.map((g) => g());
  const doc = JSON.parse(support_map(1.0, 1.0, x1, x2, y1, y2, 160));
  const stats = $("support-stats");
  if (doc.error) { stats.innerHTML = `<span class="fail">${doc.error}</span>`; return; }
  const canvas = $("support-canvas");
  const ctx = clearCanvas(canvas);
  const n = doc.axis.length;
  const size = Math.min(canvas.width, canvas.height) - 20;
  const box = { x: (canvas.width - size) / 2, y: 10, w: size, h: size };
  // heatmap of the signed tensor density
  let peak = 0;
  for (const v of doc.values) if (isFinite(v)) peak = Math.max(peak, Math.abs(v));
  const cell = size / n;
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const v = doc.values[i * n + j];
      if (!isFinite(v) || v === 0) continue;
      const t = Math.min(1, Math.abs(v) / peak) ** 0.45;
      ctx.fillStyle = v > 0 ? `rgba(44,111,187,${t})` : `rgba(182,101,75,${t})`;
      // axis i is z1 (horizontal), j is z2 (vertical, up)
      ctx.fillRect(box.x + i * cell, box.y + size - (j + 1) * cell, cell + 0.5, cell + 0.5);
    }
  }
  // region rectangles |z1| in [lo1,hi1], |z2| in [lo2,hi2]
  const toPx = (z) => box.x + ((z - doc.axis[0]) / (doc.axis[n - 1] - doc.axis[0])) * size;
  const toPy = (z) => box.y + size - ((z - doc.axis[0]) / (doc.axis[n - 1] - doc.axis[0])) * size;
  ctx.strokeStyle = "#2e8b57";
  ctx.lineWidth = 1.6;
  for (const s1 of [-1, 1]) for (const s2 of [-1, 1]) {
    const a = toPx(s1 * doc.region.lo[0]), b = toPx(s1 * doc.region.hi[0]);
    const c = toPy(s2 * doc.region.lo[1]), d = toPy(s2 * doc.region.hi[1]);
    ctx.strokeRect(Math.min(a, b), Math.min(c, d), Math.abs(b - a), Math.abs(d - c));
  }
  // shell circles
  ctx.strokeStyle = "#8884";
  for (const r of [doc.shell.r_min, doc.shell.r_max]) {
    ctx.beginPath();
    ctx.arc(toPx(0), toPy(0), (r / (doc.axis[n - 1] - doc.axis[0])) * size * 2 / 2, 0, 2 * Math.PI);
    ctx.stroke();
  }
  stats.innerHTML =
    `exact tensor density (blue &gt; 0, red &lt; 0) &middot; ` +
    `<span style="color:#2e8b57">refined support rectangles</span> ` +
    `|z&#8321;| &isin; [${doc.region.lo[0].toFixed(2)}, ${doc.region.hi[0].toFixed(2)}], ` +
    `|z&#8322;| &isin; [${doc.region.lo[1].toFixed(2)}, ${doc.region.hi[1].toFixed(2)}] &middot; ` +
    `shell radii ${doc.shell.r_min.toFixed(2)} .. ${doc.shell.r_max.toFixed(2)}`;
}

// --- init ---------------------------------------------------------------------

async function main() {
  await init();
  const fmt1 = (v) => v.toFixed(1);
  kernelArgs = [
    slider("kk", fmt1, drawKernel),
    slider("kx", fmt1, drawKernel),
    slider("ky", fmt1, drawKernel),
  ];
  akArgs = [
    slider("ak-max", (v) => v.toFixed(0), drawAk),
    slider("ak-probe", fmt1, drawAk),
  ];
  supportArgs = [
    slider("sx1", fmt1, drawSupport),
    slider("sx2", fmt1, drawSupport),
    slider("sy1", fmt1, drawSupport),
    slider("sy2", fmt1, drawSupport),
  ];
  drawKernel();
  drawAk();
  drawSupport();
}

main();
