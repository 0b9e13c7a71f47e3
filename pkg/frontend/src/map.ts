import type { PositionDoc, PositionPayload } from "./types.js";

/** The semantic-space map: committed positions as a polyline over the
 * compactness/consistency plane, with the current point emphasized. */

const SIZE = { width: 180, height: 180 };
const PAD = 24;

function extent(values: number[]): [number, number] {
  const lo = Math.min(0, ...values);
  const hi = Math.max(0, ...values);
  return lo === hi ? [lo - 1, hi + 1] : [lo, hi];
}

export function semanticMapSvg(payload: PositionPayload): string {
  const points = payload.trail;
  const [cLo, cHi] = extent(points.concat(payload.current)
    .map((p) => p.compactness));
  const [sLo, sHi] = extent(points.concat(payload.current)
    .map((p) => p.consistency));
  const px = (p: PositionDoc) =>
    PAD + ((p.compactness - cLo) / (cHi - cLo)) * (SIZE.width - 2 * PAD);
  const py = (p: PositionDoc) =>
    SIZE.height - PAD
    - ((p.consistency - sLo) / (sHi - sLo)) * (SIZE.height - 2 * PAD);

  const parts: string[] = [];
  parts.push(`<line x1="${PAD}" y1="${SIZE.height - PAD}" ` +
    `x2="${SIZE.width - PAD}" y2="${SIZE.height - PAD}" stroke="#888"/>`);
  parts.push(`<line x1="${PAD}" y1="${PAD}" x2="${PAD}" ` +
    `y2="${SIZE.height - PAD}" stroke="#888"/>`);
  parts.push(`<text class="axis-title" x="${SIZE.width / 2}" ` +
    `y="${SIZE.height - 6}" text-anchor="middle">compactness</text>`);
  parts.push(`<text class="axis-title" x="10" y="${SIZE.height / 2}" ` +
    `text-anchor="middle" ` +
    `transform="rotate(-90 10 ${SIZE.height / 2})">consistency</text>`);
  if (points.length > 1) {
    const line = points.map((p) => `${px(p).toFixed(1)},${py(p).toFixed(1)}`)
      .join(" ");
    parts.push(`<polyline class="trail" points="${line}" fill="none" ` +
      `stroke="#4e79a7" stroke-width="1.5"/>`);
  }
  points.forEach((p, i) => {
    parts.push(`<circle class="trail-point" data-step="${i}" ` +
      `cx="${px(p).toFixed(1)}" cy="${py(p).toFixed(1)}" r="3" ` +
      `fill="#4e79a7"/>`);
  });
  parts.push(`<circle class="current" cx="${px(payload.current).toFixed(1)}" ` +
    `cy="${py(payload.current).toFixed(1)}" r="5" fill="none" ` +
    `stroke="#e15759" stroke-width="2"/>`);
  return `<svg class="semantic-map" viewBox="0 0 ${SIZE.width} ` +
    `${SIZE.height}" width="${SIZE.width}" height="${SIZE.height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${parts.join("")}</svg>`;
}
