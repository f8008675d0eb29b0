import init, { tap, fibred, cones } from "./pkg/twistinv_web.js";

const EXAMPLES = {
  trefoil: "gens: x y\nrel: x y x Y X Y",
  figure8: "gens: a b\nrel: a b A B a B A b a B",
  five2: "pd: X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
  t24: "braid: s1^4",
};

const $ = (id) => document.getElementById(id);

function show(summary, value) {
  $("summary").classList.remove("error");
  $("summary").textContent = summary;
  $("raw").textContent = JSON.stringify(value, null, 2);
}

function fail(message) {
  $("summary").classList.add("error");
  $("summary").textContent = "error: " + message;
  $("raw").textContent = "";
  $("plane").hidden = true;
}

function call(f) {
  try {
    return JSON.parse(f());
  } catch (e) {
    fail(String(e));
    return null;
  }
}

function describeCones(v) {
  const lines = [`A = ${v.polynomial}`, `dim: ${v.dim}`, `tag: ${v.tag}`];
  if (v.walls) lines.push("walls: " + v.walls.map((w) => `(${w})`).join(" "));
  v.cones.forEach((c, i) => {
    lines.push(`cone ${i + 1}: <xi, d> > 0 for d in ` + c.gt.map((d) => `(${d})`).join(" "));
  });
  if (v.membership) {
    const m = v.membership;
    lines.push(`xi = ${m.xi}: ` + (m.inside ? `acyclic, cone ${m.cone + 1}` : "not acyclic"));
  }
  return lines.join("\n");
}

function ratio(s) {
  const [n, d] = s.split("/");
  return Number(n) / (d === undefined ? 1 : Number(d));
}

function drawSweep(rows) {
  const canvas = $("plane");
  const ctx = canvas.getContext("2d");
  const c = canvas.width / 2;
  const r = c - 20;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.moveTo(0, c); ctx.lineTo(2 * c, c);
  ctx.moveTo(c, 0); ctx.lineTo(c, 2 * c);
  ctx.stroke();
  for (const row of rows) {
    const x = c + r * ratio(row.xi[0]);
    const y = c - r * ratio(row.xi[1]);
    ctx.strokeStyle = row.inside ? "#2a7" : "#c33";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(c, c); ctx.lineTo(x, y);
    ctx.stroke();
  }
  canvas.hidden = false;
}

function runTap() {
  const v = call(() => tap($("group").value, $("rep").value));
  if (v) { $("plane").hidden = true; show(`Δ = ${v.value}`, v); }
}

function runFibred() {
  const v = call(() => fibred($("group").value, $("rep").value));
  if (!v) return;
  $("plane").hidden = true;
  const verdict = v.obstructed ? "not fibred: the witness is not monic" : "no obstruction found";
  show(`${verdict}\nwitness: ${v.witness}` + (v.delta ? `\nΔ = ${v.delta.value}` : ""), v);
}

function runCones() {
  const sweep = Math.max(0, Number($("sweep").value) || 0);
  const v = call(() => cones($("group").value, $("rep").value, $("xi").value, sweep));
  if (!v) return;
  show(describeCones(v), v);
  if (v.sweep) drawSweep(v.sweep); else $("plane").hidden = true;
}

await init();
for (const b of document.querySelectorAll("[data-example]")) {
  b.addEventListener("click", () => { $("group").value = EXAMPLES[b.dataset.example]; });
}
$("group").value = EXAMPLES.trefoil;
$("run-tap").addEventListener("click", runTap);
$("run-fibred").addEventListener("click", runFibred);
$("run-cones").addEventListener("click", runCones);
