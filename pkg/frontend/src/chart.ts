import type { AxisDoc, RenderSpecDoc, SeriesMarkDoc } from "./types.js";

/** Client-side chart rendering: a RenderSpec in, an SVG string out.
 * The engine never produces pixels. */

export interface ChartSize {
  width: number;
  height: number;
}

const DEFAULT_SIZE: ChartSize = { width: 320, height: 220 };
const PAD = { top: 18, right: 12, bottom: 34, left: 44 };

interface Scale {
  (value: string | number): number;
  bandwidth: number;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;")
    .replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function linearScale(min: number, max: number,
                     rangeLo: number, rangeHi: number): Scale {
  const span = max - min || 1;
  const scale = ((value: string | number) =>
    rangeLo + ((Number(value) - min) / span) * (rangeHi - rangeLo)) as Scale;
  scale.bandwidth = 0;
  return scale;
}

function bandScale(values: (string | number)[],
                   rangeLo: number, rangeHi: number): Scale {
  const step = (rangeHi - rangeLo) / Math.max(values.length, 1);
  const index = new Map(values.map((v, i) => [String(v), i]));
  const scale = ((value: string | number) =>
    rangeLo + (index.get(String(value)) ?? 0) * step) as Scale;
  scale.bandwidth = step;
  return scale;
}

function xScale(axis: AxisDoc | null, lo: number, hi: number): Scale {
  if (axis && "min" in axis.domain) {
    return linearScale(axis.domain.min, axis.domain.max, lo, hi);
  }
  const values = axis && "values" in axis.domain ? axis.domain.values : [];
  return bandScale(values, lo, hi);
}

function axisLabels(axis: AxisDoc | null): (string | number)[] {
  if (!axis) return [];
  if ("values" in axis.domain) return axis.domain.values;
  return [axis.domain.min, axis.domain.max];
}

function seriesPath(marks: { x: number; y: number }[], close: string): string {
  const points = marks.map((p, i) =>
    `${i === 0 ? "M" : "L"}${p.x.toFixed(1)},${p.y.toFixed(1)}`).join(" ");
  return points + close;
}

function renderXY(spec: RenderSpecDoc, size: ChartSize): string[] {
  const innerLo = PAD.left;
  const innerHi = size.width - PAD.right;
  const top = PAD.top;
  const bottom = size.height - PAD.bottom;
  const x = xScale(spec.axes.x, innerLo, innerHi);
  const yAxis = spec.axes.y;
  const yMin = yAxis && "min" in yAxis.domain ? yAxis.domain.min : 0;
  const yMax = yAxis && "min" in yAxis.domain ? yAxis.domain.max : 1;
  const parts: string[] = [];

  // mirror: first series occupies the upper half, second the lower half
  const mid = (top + bottom) / 2;
  const bands = spec.mirror
    ? [[mid, top], [mid, bottom]]
    : spec.seriesMarks.map(() => [bottom, top]);

  spec.seriesMarks.forEach((series: SeriesMarkDoc, si: number) => {
    const [lo, hi] = bands[Math.min(si, bands.length - 1)];
    const y = linearScale(yMin, yMax, lo, hi);
    const zero = y(Math.max(yMin, 0));
    if (spec.markType === "bar") {
      const groupWidth = x.bandwidth || 16;
      const barWidth = groupWidth / (spec.seriesMarks.length + 0.5);
      for (const [cx, cy] of series.points) {
        const px = x(cx) + barWidth * (spec.mirror ? 0.25 : si + 0.25);
        const py = y(cy);
        parts.push(`<rect class="mark" x="${px.toFixed(1)}" ` +
          `y="${Math.min(py, zero).toFixed(1)}" ` +
          `width="${(barWidth * 0.9).toFixed(1)}" ` +
          `height="${Math.abs(py - zero).toFixed(1)}" ` +
          `fill="${esc(series.color)}"/>`);
      }
    } else if (spec.markType === "point") {
      for (const [cx, cy] of series.points) {
        parts.push(`<circle class="mark" cx="${(x(cx) + x.bandwidth / 2)
          .toFixed(1)}" cy="${y(cy).toFixed(1)}" r="3.5" ` +
          `fill="${esc(series.color)}"/>`);
      }
    } else {
      const coords = series.points.map(([cx, cy]) =>
        ({ x: x(cx) + x.bandwidth / 2, y: y(cy) }));
      if (spec.markType === "line") {
        parts.push(`<path class="mark" d="${seriesPath(coords, "")}" ` +
          `fill="none" stroke="${esc(series.color)}" stroke-width="2"/>`);
      } else { // area, stream
        const first = coords[0];
        const last = coords[coords.length - 1];
        const close = ` L${last.x.toFixed(1)},${zero.toFixed(1)}` +
          ` L${first.x.toFixed(1)},${zero.toFixed(1)} Z`;
        parts.push(`<path class="mark" d="${seriesPath(coords, close)}" ` +
          `fill="${esc(series.color)}" fill-opacity="0.8"/>`);
      }
    }
  });

  // axes
  parts.push(`<line x1="${innerLo}" y1="${bottom}" x2="${innerHi}" ` +
    `y2="${bottom}" stroke="#444"/>`);
  parts.push(`<line x1="${innerLo}" y1="${top}" x2="${innerLo}" ` +
    `y2="${bottom}" stroke="#444"/>`);
  if (spec.axes.x) {
    parts.push(`<text class="axis-title" x="${(innerLo + innerHi) / 2}" ` +
      `y="${size.height - 6}" text-anchor="middle">` +
      `${esc(spec.axes.x.title)}</text>`);
    for (const label of axisLabels(spec.axes.x)) {
      const px = x(label) + x.bandwidth / 2;
      parts.push(`<text class="tick" x="${px.toFixed(1)}" ` +
        `y="${bottom + 14}" text-anchor="middle">${esc(String(label))}` +
        `</text>`);
    }
  }
  if (yAxis) {
    parts.push(`<text class="axis-title" x="12" y="${(top + bottom) / 2}" ` +
      `text-anchor="middle" transform="rotate(-90 12 ${(top + bottom) / 2})"` +
      `>${esc(yAxis.title)}</text>`);
    parts.push(`<text class="tick" x="${innerLo - 4}" y="${bottom}" ` +
      `text-anchor="end">${yMin}</text>`);
    parts.push(`<text class="tick" x="${innerLo - 4}" y="${top + 8}" ` +
      `text-anchor="end">${yMax}</text>`);
  }
  return parts;
}

function renderArc(spec: RenderSpecDoc, size: ChartSize): string[] {
  const cx = size.width / 2;
  const cy = (size.height - PAD.bottom + PAD.top) / 2;
  const r = Math.min(size.width, size.height - PAD.bottom) / 2 - 8;
  const parts: string[] = [];
  for (const series of spec.seriesMarks) {
    const total = series.points.reduce((acc, [, v]) => acc + v, 0) || 1;
    let angle = -Math.PI / 2;
    for (const [label, value] of series.points) {
      const sweep = (value / total) * 2 * Math.PI;
      const x0 = cx + r * Math.cos(angle);
      const y0 = cy + r * Math.sin(angle);
      const x1 = cx + r * Math.cos(angle + sweep);
      const y1 = cy + r * Math.sin(angle + sweep);
      const large = sweep > Math.PI ? 1 : 0;
      const color = spec.legend.find(([l]) => l === String(label))?.[1]
        ?? series.color;
      parts.push(`<path class="mark" d="M${cx},${cy} L${x0.toFixed(1)},` +
        `${y0.toFixed(1)} A${r},${r} 0 ${large} 1 ${x1.toFixed(1)},` +
        `${y1.toFixed(1)} Z" fill="${esc(color)}"/>`);
      angle += sweep;
    }
  }
  return parts;
}

function renderLegend(spec: RenderSpecDoc, size: ChartSize): string[] {
  return spec.legend.map(([label, color], i) => {
    const y = PAD.top + i * 14;
    return `<g class="legend-entry">` +
      `<rect x="${size.width - 10}" y="${y - 8}" width="8" height="8" ` +
      `fill="${esc(color)}"/>` +
      `<text x="${size.width - 14}" y="${y}" text-anchor="end">` +
      `${esc(label)}</text></g>`;
  });
}

export function renderSpecToSvg(spec: RenderSpecDoc,
                                size: ChartSize = DEFAULT_SIZE): string {
  const body = spec.markType === "arc"
    ? renderArc(spec, size)
    : renderXY(spec, size);
  body.push(...renderLegend(spec, size));
  return `<svg class="chart" data-view-id="${esc(spec.viewId)}" ` +
    `data-mark-type="${spec.markType}" ` +
    `viewBox="0 0 ${size.width} ${size.height}" ` +
    `width="${size.width}" height="${size.height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${body.join("")}</svg>`;
}
