import type { RadarGrid } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const BOARD_SIZE = 480;
const GLYPH_RADIUS_FRACTION = 0.45; // of one cell width

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

/** Vertex ring of one radar glyph: metric m sits at angle 2*pi*m/M starting
 * straight up, at radius proportional to its radar value (1 = best = full). */
export function glyphPoints(
  cx: number,
  cy: number,
  radius: number,
  radar: number[],
): string {
  const m = radar.length;
  return radar
    .map((value, k) => {
      const angle = (2 * Math.PI * k) / m - Math.PI / 2;
      const x = cx + radius * value * Math.cos(angle);
      const y = cy + radius * value * Math.sin(angle);
      return `${x.toFixed(2)},${y.toFixed(2)}`;
    })
    .join(" ");
}

/** Shoelace area of a rendered glyph's points attribute (test support). */
export function polygonArea(points: string): number {
  const xy = points.split(" ").map((pair) => pair.split(",").map(Number));
  let area = 0;
  for (let k = 0; k < xy.length; k++) {
    const [x0, y0] = xy[k];
    const [x1, y1] = xy[(k + 1) % xy.length];
    area += x0 * y1 - x1 * y0;
  }
  return Math.abs(area) / 2;
}

/** Draw the lattice of radar glyphs. Clicking a glyph reports its cell;
 * empty lattice positions have no element and therefore no handler. */
export function renderRadarBoard(
  grid: RadarGrid,
  onSelect: (i: number, j: number) => void,
  selected?: [number, number],
): SVGSVGElement {
  const cellSize = BOARD_SIZE / grid.grid;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${BOARD_SIZE} ${BOARD_SIZE}`,
    width: String(BOARD_SIZE),
    height: String(BOARD_SIZE),
    class: "radar-board",
  });
  for (let k = 0; k <= grid.grid; k++) {
    const offset = (k * cellSize).toFixed(2);
    svg.append(
      svgEl("line", {
        x1: offset, y1: "0", x2: offset, y2: String(BOARD_SIZE),
        stroke: "#ddd", "stroke-width": "1",
      }),
      svgEl("line", {
        x1: "0", y1: offset, x2: String(BOARD_SIZE), y2: offset,
        stroke: "#ddd", "stroke-width": "1",
      }),
    );
  }
  for (const cell of grid.cells) {
    const cx = (cell.i + 0.5) * cellSize;
    // row 0 at the bottom, matching the embedding's y axis
    const cy = (grid.grid - cell.j - 0.5) * cellSize;
    const isSelected =
      selected !== undefined && selected[0] === cell.i && selected[1] === cell.j;
    const glyph = svgEl("polygon", {
      points: glyphPoints(cx, cy, cellSize * GLYPH_RADIUS_FRACTION, cell.radar),
      class: isSelected ? "radar-glyph selected" : "radar-glyph",
      "data-cell": `${cell.i},${cell.j}`,
      fill: isSelected ? "rgba(220,90,40,0.5)" : "rgba(60,110,200,0.45)",
      stroke: isSelected ? "#c84" : "#369",
      "stroke-width": isSelected ? "2" : "1",
    });
    const tip = svgEl("title");
    tip.textContent =
      `cell (${cell.i}, ${cell.j}): ${cell.members.length} solution` +
      `${cell.members.length === 1 ? "" : "s"}`;
    glyph.append(tip);
    glyph.addEventListener("click", () => onSelect(cell.i, cell.j));
    svg.append(glyph);
  }
  return svg;
}
