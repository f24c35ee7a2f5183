import { forceLayout, hashSeed, type Point } from "./layout.js";
import type { NetworkNode, NetworkPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const ratioLine = (label: string, ratios: Record<string, number>): string =>
  `${label}: ` +
  Object.entries(ratios)
    .map(([bucket, value]) => `${bucket} ${value.toFixed(2)}`)
    .join("  ");

export const nodeTooltip = (node: NetworkNode): string =>
  [
    `${node.id} — ${node.domain}`,
    `reach ${node.reach_pct.toFixed(2)}%  cpm $${node.cpm_usd.toFixed(2)}`,
    ratioLine("age", node.age_ratios),
    ratioLine("income", node.income_ratios),
  ].join("\n");

/** SVG network view. Layout is seeded by the network hash, so the same
 * network always lands in the same positions between runs. */
export class GraphView {
  private positions = new Map<string, Point>();
  private nodeEls = new Map<string, SVGGElement>();
  private renderedHash = "";

  constructor(
    private readonly container: Element,
    private readonly width = 640,
    private readonly height = 420,
  ) {}

  render(network: NetworkPayload): void {
    if (network.network_hash !== this.renderedHash) {
      this.positions = forceLayout(network.nodes, network.edges, {
        width: this.width,
        height: this.height,
        seed: hashSeed(network.network_hash),
      });
      this.renderedHash = network.network_hash;
    }
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    svg.setAttribute("class", "network-graph");

    const seen = new Set<string>();
    for (const edge of network.edges) {
      const key = [edge.src, edge.dst].sort().join("|");
      if (seen.has(key)) continue; // draw each mutual pair once
      seen.add(key);
      const a = this.positions.get(edge.src);
      const b = this.positions.get(edge.dst);
      if (!a || !b) continue;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", a.x.toFixed(1));
      line.setAttribute("y1", a.y.toFixed(1));
      line.setAttribute("x2", b.x.toFixed(1));
      line.setAttribute("y2", b.y.toFixed(1));
      line.setAttribute("class", "edge");
      line.setAttribute("stroke-width", (0.5 + (edge.alpha_pct / 100) * 2.5).toFixed(2));
      svg.append(line);
    }

    this.nodeEls.clear();
    const reachMax = Math.max(...network.nodes.map((n) => n.reach_pct), 1);
    for (const node of network.nodes) {
      const pos = this.positions.get(node.id);
      if (!pos) continue;
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute("class", "node");
      group.setAttribute("data-id", node.id);
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", pos.x.toFixed(1));
      circle.setAttribute("cy", pos.y.toFixed(1));
      circle.setAttribute("r", (5 + 9 * Math.sqrt(node.reach_pct / reachMax)).toFixed(1));
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = nodeTooltip(node);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", pos.x.toFixed(1));
      label.setAttribute("y", (pos.y - 16).toFixed(1));
      label.setAttribute("text-anchor", "middle");
      label.setAttribute("class", "node-label");
      label.textContent = node.id;
      group.append(circle, title, label);
      svg.append(group);
      this.nodeEls.set(node.id, group);
    }
    this.container.replaceChildren(svg);
  }

  /** Mark exactly `ids` as selected; everything else is unmarked. */
  setHighlight(ids: Iterable<string>): void {
    const wanted = new Set(ids);
    for (const [id, group] of this.nodeEls) {
      group.classList.toggle("selected", wanted.has(id));
    }
  }

  highlighted(): string[] {
    return [...this.nodeEls.entries()]
      .filter(([, group]) => group.classList.contains("selected"))
      .map(([id]) => id)
      .sort();
  }
}
