// Glue between the sliders, the wasm module and three canvases.
// Build the module into ./pkg first (see the crate README section).
import init, { deployment_curve, upgrade, deployment_map } from "./pkg/govgap_wasm.js";

const COLORS = { private: "#1f77b4", first_best: "#2ca02c", second_best: "#d62728" };
const PAD = { l: 52, r: 16, t: 14, b: 36 };

function val(id) {
  const el = document.getElementById(id);
  el.nextElementSibling.textContent = Number(el.value).toFixed(2);
  return Number(el.value);
}

function frame(ctx, w, h, xmax, ymax, xlabel, ylabel) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#000";
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.beginPath();
  ctx.moveTo(PAD.l, PAD.t);
  ctx.lineTo(PAD.l, h - PAD.b);
  ctx.lineTo(w - PAD.r, h - PAD.b);
  ctx.stroke();
  const sx = (x) => PAD.l + (x / xmax) * (w - PAD.l - PAD.r);
  const sy = (y) => h - PAD.b - (y / ymax) * (h - PAD.t - PAD.b);
  ctx.textAlign = "center";
  for (let i = 0; i <= 5; i++) {
    const x = (xmax * i) / 5;
    ctx.fillText(x.toFixed(1), sx(x), h - PAD.b + 14);
  }
  ctx.textAlign = "right";
  for (let i = 0; i <= 4; i++) {
    const y = (ymax * i) / 4;
    ctx.fillText(y.toFixed(1), PAD.l - 6, sy(y) + 4);
  }
  ctx.textAlign = "center";
  ctx.fillText(xlabel, (PAD.l + w - PAD.r) / 2, h - 6);
  ctx.save();
  ctx.translate(14, (PAD.t + h - PAD.b) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(ylabel, 0, 0);
  ctx.restore();
  return { sx, sy };
}

function line(ctx, xs, ys, sx, sy, color) {
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
  ctx.lineWidth = 1;
}

function marker(ctx, x, sx, h, color, text) {
  if (!(x > 0)) return;
  ctx.strokeStyle = color;
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(sx(x), PAD.t);
  ctx.lineTo(sx(x), h - PAD.b);
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = color;
  ctx.textAlign = "left";
  ctx.fillText(text, sx(x) + 4, PAD.t + 12);
}

function showError(noteId, err) {
  const note = document.getElementById(noteId);
  note.className = "note err";
  note.textContent = String(err);
}

function drawCurve() {
  const mu = val("c-mu"), lambda = val("c-lambda"), e = val("c-e");
  const canvas = document.getElementById("curve");
  const ctx = canvas.getContext("2d");
  let c;
  try {
    c = JSON.parse(deployment_curve(mu, lambda, e, 5, 300));
  } catch (err) {
    return showError("curve-note", err);
  }
  const ymax = Math.max(...c.private, 0.5) * 1.1;
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, 5, ymax, "theta", "alpha");
  for (const key of ["private", "first_best", "second_best"]) line(ctx, c.theta, c[key], sx, sy, COLORS[key]);
  marker(ctx, c.private_threshold, sx, canvas.height, COLORS.private, "private turning point");
  marker(ctx, c.sb_threshold, sx, canvas.height, COLORS.second_best, "second-best");
  const note = document.getElementById("curve-note");
  note.className = "note";
  note.textContent =
    "Blue: firm optimum. Green: first best. Red: second best (planner picks alpha, firm picks defense). " +
    (c.private_threshold > 0
      ? `Private deployment falls with capability below theta = ${c.private_threshold.toFixed(2)}` +
        (c.sb_threshold > 0 ? `; the second-best region extends to ${c.sb_threshold.toFixed(2)}.` : ".")
      : "No capability level lowers private deployment at this loss magnitude.") +
    (c.clamped ? " Some points have zero deployment because lambda >= mu + 1." : "");
}

function drawUpgrade() {
  const tl = val("u-tl"), tf = val("u-tf"), mu = val("u-mu"), lambda = val("u-lambda");
  const canvas = document.getElementById("upgrade");
  const ctx = canvas.getContext("2d");
  let u;
  try {
    u = JSON.parse(upgrade(tl, tf, mu, lambda));
  } catch (err) {
    return showError("upgrade-note", err);
  }
  const xmax = u.theta[u.theta.length - 1];
  const ymax = Math.max(...u.value) * 1.1;
  const { sx, sy } = frame(ctx, canvas.width, canvas.height, xmax, ymax, "theta", "firm value");
  line(ctx, u.theta, u.value, sx, sy, "#444");
  const d = u.decision;
  for (const [t, v, color] of [[d.theta_l, d.value_l, "#1f77b4"], [d.theta_f, d.value_f, "#d62728"]]) {
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.arc(sx(t), sy(v), 5, 0, 2 * Math.PI);
    ctx.fill();
  }
  const note = document.getElementById("upgrade-note");
  note.className = "note";
  note.textContent =
    `Legacy value ${d.value_l.toFixed(3)}, frontier value ${d.value_f.toFixed(3)}: ` +
    (d.adopt ? "upgrade." : "keep the legacy system.") +
    (d.trap ? " The frontier is past the turning point yet still not worth adopting." : "") +
    (d.frontier_threshold != null ? ` Upgrading pays once frontier theta exceeds ${d.frontier_threshold.toFixed(3)}.` : "");
}

function drawMap() {
  const mu = val("m-mu");
  const canvas = document.getElementById("map");
  const ctx = canvas.getContext("2d");
  const m = JSON.parse(deployment_map(mu, 5, 3, 60));
  let amax = 0;
  for (const row of m.cells) for (const c of row) amax = Math.max(amax, c.alpha_star);
  const n = m.thetas.length;
  const cw = canvas.width / n, ch = canvas.height / m.lambdas.length;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  m.cells.forEach((row, i) => {
    row.forEach((c, j) => {
      const shade = Math.round(255 - 200 * (c.alpha_star / (amax || 1)));
      ctx.fillStyle = `rgb(${shade},${shade},255)`;
      const x = j * cw, y = canvas.height - (i + 1) * ch;
      ctx.fillRect(x, y, cw + 0.5, ch + 0.5);
      if (c.paradox) {
        ctx.strokeStyle = "rgba(200,0,0,0.7)";
        ctx.beginPath();
        ctx.moveTo(x, y + ch);
        ctx.lineTo(x + cw, y);
        ctx.stroke();
      }
    });
  });
}

await init();
const wire = (containerId, draw) => {
  document.querySelectorAll(`#${containerId} input`).forEach((el) => el.addEventListener("input", draw));
  draw();
};
wire("curve-controls", drawCurve);
wire("upgrade-controls", drawUpgrade);
wire("map-controls", drawMap);
