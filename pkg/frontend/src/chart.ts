import type { HistoryRow } from "./types.js";

export interface ChartOptions {
  width: number;
  height: number;
  padding?: number;
}

export interface ChartPoint {
  generation: number;
  x: number;
  y: number;
}

export interface ChartModel {
  width: number;
  height: number;
  bestPath: string;
  meanPath: string;
  /** One marker per generation, riding the best-fitness series. */
  points: ChartPoint[];
  xTicks: Array<{ x: number; label: string }>;
  yTicks: Array<{ y: number; label: string }>;
}

const SVG_NS = "http://www.w3.org/2000/svg";

const fmt = (value: number): string => {
  const abs = Math.abs(value);
  if (abs >= 1_000_000) return `${(value / 1_000_000).toFixed(1)}M`;
  if (abs >= 10_000) return `${(value / 1000).toFixed(0)}k`;
  if (abs >= 100) return value.toFixed(0);
  return value.toFixed(2);
};

const pathFrom = (coords: Array<[number, number]>): string =>
  coords
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${x.toFixed(2)} ${y.toFixed(2)}`)
    .join(" ");

/** Pure geometry for the convergence chart; rendering is a thin layer
 * over this so tests can reason about coordinates directly. */
export function buildChartModel(history: HistoryRow[], options: ChartOptions): ChartModel {
  const { width, height } = options;
  const pad = options.padding ?? 36;
  const innerW = width - 2 * pad;
  const innerH = height - 2 * pad;
  if (history.length === 0) {
    return { width, height, bestPath: "", meanPath: "", points: [], xTicks: [], yTicks: [] };
  }

  const values = history.flatMap((row) => [row.best_fitness, row.mean_fitness]);
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (hi === lo) {
    lo -= 1;
    hi += 1;
  }
  const span = hi - lo;
  lo -= span * 0.05;
  hi += span * 0.05;

  const lastGen = history[history.length - 1]!.generation;
  const x = (generation: number): number =>
    pad + (lastGen === 0 ? innerW / 2 : (generation / lastGen) * innerW);
  const y = (value: number): number => pad + (1 - (value - lo) / (hi - lo)) * innerH;

  const points = history.map((row) => ({
    generation: row.generation,
    x: x(row.generation),
    y: y(row.best_fitness),
  }));

  const xTickCount = Math.min(6, lastGen + 1);
  const xTicks = Array.from({ length: xTickCount }, (_, i) => {
    const generation = Math.round((i / Math.max(1, xTickCount - 1)) * lastGen);
    return { x: x(generation), label: String(generation) };
  });
  const yTicks = Array.from({ length: 4 }, (_, i) => {
    const value = lo + ((hi - lo) * i) / 3;
    return { y: y(value), label: fmt(value) };
  });

  return {
    width,
    height,
    bestPath: pathFrom(history.map((row) => [x(row.generation), y(row.best_fitness)])),
    meanPath: pathFrom(history.map((row) => [x(row.generation), y(row.mean_fitness)])),
    points,
    xTicks,
    yTicks,
  };
}

const el = (name: string, attrs: Record<string, string>): SVGElement => {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
};

/** Replace `container`'s contents with the rendered chart. */
export function renderChart(container: Element, history: HistoryRow[], options: ChartOptions): void {
  const model = buildChartModel(history, options);
  const svg = el("svg", {
    viewBox: `0 0 ${model.width} ${model.height}`,
    class: "convergence-chart",
    role: "img",
  });
  for (const tick of model.yTicks) {
    svg.append(
      el("line", {
        x1: "36", x2: String(model.width - 36),
        y1: String(tick.y), y2: String(tick.y),
        class: "gridline",
      }),
    );
    const label = el("text", { x: "4", y: String(tick.y + 4), class: "tick" });
    label.textContent = tick.label;
    svg.append(label);
  }
  for (const tick of model.xTicks) {
    const label = el("text", {
      x: String(tick.x), y: String(model.height - 8),
      class: "tick", "text-anchor": "middle",
    });
    label.textContent = tick.label;
    svg.append(label);
  }
  if (model.meanPath) {
    svg.append(el("path", { d: model.meanPath, class: "series mean" }));
  }
  if (model.bestPath) {
    svg.append(el("path", { d: model.bestPath, class: "series best" }));
  }
  for (const point of model.points) {
    svg.append(
      el("circle", {
        cx: point.x.toFixed(2),
        cy: point.y.toFixed(2),
        r: "2.5",
        class: "pt",
        "data-generation": String(point.generation),
      }),
    );
  }
  container.replaceChildren(svg);
}
