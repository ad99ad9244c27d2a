import { svgEl } from "./radar.js";
import type { PcpModel, PcpPolyline } from "./types.js";

const WIDTH = 960;
const HEIGHT = 540;
const MARGIN = { left: 60, right: 60, top: 40, bottom: 30 };

/** Stroke string for a server color triple, passed through verbatim. */
export function strokeOf(color: [number, number, number]): string {
  return `rgb(${color[0]},${color[1]},${color[2]})`;
}

function pathOf(polyline: PcpPolyline, xs: number[], plotHeight: number): string {
  return polyline.vertices
    .map((v, k) => {
      const x = xs[k].toFixed(2);
      const y = (MARGIN.top + (1 - v) * plotHeight).toFixed(2);
      return `${k === 0 ? "M" : "L"} ${x} ${y}`;
    })
    .join(" ");
}

/** Render the server's PCP model: geometry from axes and normalized
 * vertices, stroke colors exactly as delivered, better lines drawn on top.
 * Hovering reports the record index, its weighted metric, and the raw
 * per-axis values. */
export function renderPcp(
  model: PcpModel,
  onHover?: (line: PcpPolyline | null) => void,
): SVGSVGElement {
  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const nAxes = model.axes.length;
  const xs = model.axes.map((_, k) =>
    nAxes === 1 ? MARGIN.left + plotWidth / 2 : MARGIN.left + (k * plotWidth) / (nAxes - 1),
  );
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    class: "pcp",
  });

  const byPhiDescending = [...model.polylines].sort((a, b) => b.phi - a.phi);
  for (const line of byPhiDescending) {
    const path = svgEl("path", {
      d: pathOf(line, xs, plotHeight),
      fill: "none",
      stroke: strokeOf(line.color),
      "stroke-width": "1.2",
      "stroke-opacity": "0.85",
      class: "pcp-line",
      "data-record": String(line.record),
      "data-phi": String(line.phi),
    });
    const tip = svgEl("title");
    const raw = line.vertices
      .map((v, k) => {
        const axis = model.axes[k];
        return `${axis.name}=${(axis.lo + v * (axis.hi - axis.lo)).toPrecision(6)}`;
      })
      .join(", ");
    tip.textContent = `record ${line.record}, phi=${line.phi}, ${raw}`;
    path.append(tip);
    if (onHover) {
      path.addEventListener("mouseenter", () => onHover(line));
      path.addEventListener("mouseleave", () => onHover(null));
    }
    svg.append(path);
  }

  for (let k = 0; k < nAxes; k++) {
    const axis = model.axes[k];
    const x = xs[k].toFixed(2);
    svg.append(
      svgEl("line", {
        x1: x, y1: String(MARGIN.top), x2: x, y2: String(MARGIN.top + plotHeight),
        stroke: "#444", "stroke-width": "1", class: "pcp-axis",
      }),
    );
    const name = svgEl("text", {
      x, y: String(MARGIN.top - 18), "text-anchor": "middle",
      "font-size": "12", fill: "#222",
    });
    name.textContent = axis.name;
    const hi = svgEl("text", {
      x, y: String(MARGIN.top - 5), "text-anchor": "middle",
      "font-size": "9", fill: "#666",
    });
    hi.textContent = axis.hi.toPrecision(4);
    const lo = svgEl("text", {
      x, y: String(MARGIN.top + plotHeight + 14), "text-anchor": "middle",
      "font-size": "9", fill: "#666",
    });
    lo.textContent = axis.lo.toPrecision(4);
    svg.append(name, hi, lo);
  }
  return svg;
}
