import init, { construct_mws, construct_weights, reachable } from "./pkg/weightforge_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Math.max(0, Math.floor(Number($(id).value) || 0));

function bars(values, label) {
  const canvas = $("chart");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (values.length === 0) return;
  const pad = 20;
  const w = (canvas.width - 2 * pad) / values.length;
  const top = Math.max(...values.map((v) => v[1]));
  ctx.fillStyle = "#3a6ea5";
  for (const [i, [, h]] of values.entries()) {
    const bh = ((canvas.height - 2 * pad) * h) / top;
    ctx.fillRect(pad + i * w, canvas.height - pad - bh, Math.max(1, w - 1), bh);
  }
  ctx.fillStyle = "#000";
  ctx.fillText(label, pad, 12);
}

function show(json, summarize) {
  const r = JSON.parse(json);
  if (r.error) {
    $("summary").innerHTML = `<p class="error">${r.error}</p>`;
    $("detail").textContent = "";
    bars([], "");
    return;
  }
  summarize(r);
  $("detail").textContent = JSON.stringify(r, null, 2);
}

function codeSummary(r) {
  $("summary").textContent =
    `q=${r.q} k=${r.k} n=${r.n}: ${r.distinct_total} distinct weights ` +
    `(${r.distinct_nonzero} nonzero), bound ${r.bound}${r.is_mws ? ", maximal" : ""}`;
  bars(r.spectrum, "multiplicity by weight");
}

function reachSummary(r) {
  $("summary").textContent =
    `q=${r.q} k=${r.k}: ${r.reachable.length} of ${r.max_nonzero} counts reachable` +
    (r.gaps.length ? `, gaps ${r.gaps.join(" ")}` : "");
  const hits = new Set(r.reachable);
  const n = Math.min(r.max_nonzero, 2000);
  bars(Array.from({ length: n }, (_, i) => [i + 1, hits.has(i + 1) ? 1 : 0]), "reachable counts 1..");
}

await init();
$("mws-go").onclick = () =>
  show(construct_mws(num("mws-q"), num("mws-k"), num("mws-seed")), codeSummary);
$("bin-go").onclick = () =>
  show(construct_weights(num("bin-k"), num("bin-s"), num("bin-seed")), codeSummary);
$("re-go").onclick = () => show(reachable(num("re-q"), num("re-k")), reachSummary);
$("mws-go").click();
