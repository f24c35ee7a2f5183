import { ApiError, PlannerClient } from "./api.js";
import { renderChart } from "./chart.js";
import { compareRows } from "./compare.js";
import { GraphView } from "./graph.js";
import { ScenarioStore } from "./scenarios.js";
import type {
  HistoryRow,
  NetworkPayload,
  ScenarioDraft,
  ScenarioRecord,
} from "./types.js";
import { validateDraft } from "./validate.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

const serviceUrl = (): string =>
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8000";

const setBanner = (message: string, kind: "error" | "info" | "" = ""): void => {
  const banner = $("banner");
  banner.textContent = message;
  banner.className = kind ? `banner ${kind}` : "banner hidden";
};

const fieldErrorEl = (field: string): HTMLElement | null =>
  document.querySelector(`[data-error-for="${field}"]`);

const clearFieldErrors = (): void => {
  document.querySelectorAll("[data-error-for]").forEach((node) => {
    node.textContent = "";
  });
};

const showFieldErrors = (errors: Map<string, string>): boolean => {
  let shown = false;
  for (const [field, message] of errors) {
    const target = fieldErrorEl(field);
    if (target) {
      target.textContent = message;
      shown = true;
    }
  }
  return shown;
};

const checkedValues = (containerId: string): string[] =>
  Array.from(
    document.querySelectorAll<HTMLInputElement>(`#${containerId} input:checked`),
  ).map((input) => input.value);

const readDraft = (): ScenarioDraft => ({
  label: $<HTMLInputElement>("label-input").value.trim(),
  budget: $<HTMLInputElement>("budget-input").value,
  sites: $<HTMLInputElement>("sites-input").value,
  seed: $<HTMLInputElement>("seed-input").value,
  mode: $<HTMLSelectElement>("mode-input").value as ScenarioDraft["mode"],
  ageBuckets: checkedValues("age-buckets"),
  incomeBuckets: checkedValues("income-buckets"),
});

const writeDraft = (record: ScenarioRecord): void => {
  $<HTMLInputElement>("label-input").value = `${record.label} (edited)`;
  $<HTMLInputElement>("budget-input").value = String(record.spec.budget_usd);
  $<HTMLInputElement>("sites-input").value = String(record.spec.num_sites);
  $<HTMLInputElement>("seed-input").value =
    record.spec.seed === undefined ? "" : String(record.spec.seed);
  $<HTMLSelectElement>("mode-input").value = record.spec.objective_mode;
  for (const [containerId, wanted] of [
    ["age-buckets", record.spec.targeting.age_buckets],
    ["income-buckets", record.spec.targeting.income_buckets],
  ] as const) {
    document
      .querySelectorAll<HTMLInputElement>(`#${containerId} input`)
      .forEach((input) => {
        input.checked = wanted.includes(input.value);
      });
  }
};

const bucketCheckboxes = (containerId: string, buckets: string[]): void => {
  const container = $(containerId);
  container.replaceChildren(
    ...buckets.map((bucket) => {
      const label = document.createElement("label");
      const input = document.createElement("input");
      input.type = "checkbox";
      input.value = bucket;
      label.append(input, ` ${bucket}`);
      return label;
    }),
  );
};

const money = (value: number): string =>
  value.toLocaleString("en-US", { maximumFractionDigits: 2 });

class PlannerApp {
  private readonly client = new PlannerClient(serviceUrl());
  private readonly store = new ScenarioStore(localStorage);
  private readonly graph = new GraphView($("network-view"));
  private network: NetworkPayload | null = null;
  private liveStream: AbortController | null = null;
  private rows: HistoryRow[] = [];

  async boot(): Promise<void> {
    $("service-url").textContent = serviceUrl();
    $<HTMLFormElement>("campaign-form").addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
    $("compare-left").addEventListener("change", () => this.renderCompare());
    $("compare-right").addEventListener("change", () => this.renderCompare());
    $("clone-button").addEventListener("click", () => this.cloneSelected());
    this.refreshScenarioSelectors();
    await this.loadNetwork();
  }

  private async loadNetwork(): Promise<void> {
    try {
      this.network = await this.client.getNetwork();
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        setBanner("no network loaded on the service yet; PUT one to /network", "info");
      } else {
        setBanner(`cannot reach the planner service: ${(error as Error).message}`, "error");
      }
      return;
    }
    setBanner("");
    const { nodes, edges, buckets, network_hash } = this.network;
    $("network-summary").textContent =
      `${nodes.length} sites, ${edges.length} links (${network_hash.slice(0, 12)})`;
    bucketCheckboxes("age-buckets", buckets.age);
    bucketCheckboxes("income-buckets", buckets.income);
    this.graph.render(this.network);
  }

  private async submit(): Promise<void> {
    if (!this.network) {
      await this.loadNetwork();
      if (!this.network) return;
    }
    clearFieldErrors();
    setBanner("");
    const draft = readDraft();
    const { errors, spec } = validateDraft(draft, this.network.buckets);
    if (!spec) {
      showFieldErrors(errors);
      return;
    }
    let jobId: string;
    try {
      jobId = await this.client.submitJob(spec);
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.status === 400 && showFieldErrors(error.fieldErrors())) return;
        if (error.status === 422) {
          setBanner(`${error.message} — relax targeting or lower the site count`, "error");
          return;
        }
        setBanner(error.message, "error");
        return;
      }
      throw error;
    }
    $("run-status").textContent = `job ${jobId} running`;
    await this.follow(jobId, draft, spec);
  }

  private async follow(
    jobId: string,
    draft: ScenarioDraft,
    spec: NonNullable<ReturnType<typeof validateDraft>["spec"]>,
  ): Promise<void> {
    this.liveStream?.abort();
    const controller = new AbortController();
    this.liveStream = controller;
    this.rows = [];
    this.graph.setHighlight([]);
    const done = await this.client.streamJob(
      jobId,
      (row) => {
        this.rows.push(row);
        renderChart($("chart"), this.rows, { width: 640, height: 280 });
        $("run-status").textContent =
          `job ${jobId} — generation ${row.generation}, best ${money(row.best_fitness)}`;
      },
      controller.signal,
    );
    if (!done.result) {
      $("run-status").textContent = `job ${jobId} failed`;
      setBanner(done.error ?? "optimization failed", "error");
      return;
    }
    const result = done.result;
    $("run-status").textContent =
      `job ${jobId} done in ${result.history.length} generations`;
    this.graph.setHighlight(result.selection);
    this.renderResults(result.selection, result);
    const record = this.store.add({
      label: draft.label,
      jobId,
      networkHash: this.network?.network_hash ?? "",
      spec,
      result,
    });
    this.refreshScenarioSelectors(record.id);
  }

  private renderResults(selection: string[], result: {
    metrics: {
      gross_exposures: number;
      overlap_deduction: number;
      net_score: number;
      overlap_avoided: number;
      baseline_selection: string[];
    };
    seed: number;
  }): void {
    const byId = new Map((this.network?.nodes ?? []).map((n) => [n.id, n]));
    $("result-sites").replaceChildren(
      ...selection.map((id) => {
        const item = document.createElement("li");
        const node = byId.get(id);
        item.textContent = node
          ? `${id} — ${node.domain} (reach ${node.reach_pct.toFixed(1)}%, cpm $${node.cpm_usd.toFixed(2)})`
          : id;
        return item;
      }),
    );
    const m = result.metrics;
    $("metric-gross").textContent = money(m.gross_exposures);
    $("metric-deduction").textContent = money(m.overlap_deduction);
    $("metric-net").textContent = money(m.net_score);
    $("metric-avoided").textContent =
      `${money(m.overlap_avoided)} (baseline: ${m.baseline_selection.join(", ")})`;
    $("metric-seed").textContent = String(result.seed);
    $("results-panel").classList.remove("hidden");
  }

  private refreshScenarioSelectors(selectId?: string): void {
    const scenarios = this.store.list();
    for (const selectorId of ["compare-left", "compare-right"]) {
      const select = $<HTMLSelectElement>(selectorId);
      const previous = select.value;
      select.replaceChildren(
        ...scenarios.map((record) => {
          const option = document.createElement("option");
          option.value = record.id;
          option.textContent =
            `${record.label} — ${record.selection.join(",")} (${money(record.netScore)})`;
          return option;
        }),
      );
      select.value = selectId && selectorId === "compare-left" ? selectId : previous;
      if (!select.value && scenarios.length > 0) select.value = scenarios[0]!.id;
    }
    this.renderCompare();
  }

  private renderCompare(): void {
    const left = this.store.get($<HTMLSelectElement>("compare-left").value);
    const right = this.store.get($<HTMLSelectElement>("compare-right").value);
    const table = $("compare-table");
    if (!left || !right) {
      table.replaceChildren();
      return;
    }
    const header = document.createElement("tr");
    for (const text of ["", left.label, right.label, "Δ"]) {
      const cell = document.createElement("th");
      cell.textContent = text;
      header.append(cell);
    }
    const body = compareRows(left, right).map((row) => {
      const tr = document.createElement("tr");
      for (const text of [row.label, row.left, row.right, row.delta]) {
        const cell = document.createElement("td");
        cell.textContent = text;
        tr.append(cell);
      }
      return tr;
    });
    table.replaceChildren(header, ...body);
  }

  private cloneSelected(): void {
    const record = this.store.get($<HTMLSelectElement>("compare-left").value);
    if (record) {
      writeDraft(record);
      setBanner(`loaded '${record.label}' into the form`, "info");
    }
  }
}

void new PlannerApp().boot();
