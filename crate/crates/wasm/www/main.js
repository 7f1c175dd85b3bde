import init, { generateSlide, scanRow, routeMask } from "./pkg/macc_wasm.js";

const $ = (id) => document.getElementById(id);
let slide = null;

function showError(e) {
  $("status").textContent = String(e && e.message ? e.message : e);
}

function drawSlide() {
  const { width, height } = slide;
  const px = slide.pixels;
  const canvas = $("slide");
  canvas.width = width;
  canvas.height = height;
  const scale = Math.max(1, Math.floor(384 / Math.max(width, height)));
  canvas.style.width = `${width * scale}px`;
  canvas.style.height = `${height * scale}px`;
  const ctx = canvas.getContext("2d");
  const data = ctx.createImageData(width, height);
  for (let i = 0; i < px.length; i++) {
    const v = px[i];
    // background in dark blue so isolated zeros are visible
    data.data.set(v === 0 ? [10, 20, 60, 255] : [v, v, v, 255], i * 4);
  }
  ctx.putImageData(data, 0, 0);
}

function generate() {
  $("status").textContent = "";
  try {
    slide?.free();
    slide = generateSlide(
      Number($("seed").value),
      Number($("occ").value),
      Number($("diam").value),
      Number($("noise").value),
    );
  } catch (e) {
    showError(e);
    return;
  }
  drawSlide();
  $("report").textContent =
    `${slide.report}\n\n${slide.compressedBytes} bytes on disk, ` +
    `round trip ${slide.lossless ? "exact" : "FAILED"}`;
}

function scan() {
  const values = $("rowin").value.split(/[\s,]+/).filter(Boolean).map(Number);
  if (values.some((v) => !Number.isInteger(v) || v < 0 || v > 255)) {
    $("scan").textContent = "values must be integers 0..255";
    return;
  }
  const r = scanRow(Uint8Array.from(values));
  $("scan").textContent =
    `bitmap       ${r.bitmap}\n` +
    `transitions  ${r.transitions}\n` +
    `run starts   [${Array.from(r.starts).join(", ")}]`;
  r.free();
}

function route() {
  const mask = $("mask").value.trim();
  const out = $("routing");
  out.textContent = "";
  if (!mask) return;
  let r;
  try {
    r = routeMask(mask);
  } catch (e) {
    out.innerHTML = `<p class="err">${e.message ?? e}</p>`;
    return;
  }
  const n = r.width;
  const grid = r.grid;
  const buses = r.buses;
  const table = document.createElement("table");
  table.className = "routing";
  const addRow = (label, cells, classes = []) => {
    const tr = table.insertRow();
    tr.insertCell().textContent = label;
    cells.forEach((c, j) => {
      const td = tr.insertCell();
      td.textContent = c;
      if (classes[j]) td.className = classes[j];
    });
  };
  addRow("mask", mask.replace(/[\s_]/g, "").split(""));
  addRow("in", Array.from({ length: n }, (_, j) => j));
  grid.forEach((line, s) => {
    const bus = Array.from(buses.slice(s * n, (s + 1) * n));
    addRow(`stage ${s}`, bus, line.split(""));
  });
  out.appendChild(table);
  const last = Array.from(buses.slice(buses.length - n, buses.length - n + r.kept));
  const p = document.createElement("p");
  p.className = "mono";
  p.textContent = `output: [${last.join(", ")}]`;
  out.appendChild(p);
  r.free();
}

$("slide").addEventListener("click", (ev) => {
  if (!slide) return;
  const rect = ev.target.getBoundingClientRect();
  const y = Math.floor(((ev.clientY - rect.top) / rect.height) * slide.height);
  const row = slide.pixels.slice(y * slide.width, (y + 1) * slide.width);
  $("rowin").value = Array.from(row).join(" ");
  scan();
});

try {
  await init();
  $("gen").addEventListener("click", generate);
  $("rowin").addEventListener("input", scan);
  $("mask").addEventListener("input", route);
  generate();
  scan();
  route();
} catch (e) {
  showError(`failed to load the wasm module: ${e}`);
}
