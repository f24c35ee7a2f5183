import type { ScenarioRecord } from "./types.js";

export interface CompareRow {
  label: string;
  left: string;
  right: string;
  delta: string;
}

const money = (value: number): string =>
  value.toLocaleString("en-US", { maximumFractionDigits: 2 });

const signed = (value: number): string => (value > 0 ? `+${money(value)}` : money(value));

/** Side-by-side rows for two stored scenarios; delta is right minus left
 * where a numeric difference means something. */
export function compareRows(left: ScenarioRecord, right: ScenarioRecord): CompareRow[] {
  const numeric = (
    label: string,
    pick: (record: ScenarioRecord) => number,
  ): CompareRow => ({
    label,
    left: money(pick(left)),
    right: money(pick(right)),
    delta: signed(pick(right) - pick(left)),
  });
  return [
    {
      label: "sites",
      left: left.selection.join(", "),
      right: right.selection.join(", "),
      delta: "",
    },
    numeric("net score", (r) => r.netScore),
    numeric("gross exposures", (r) => r.grossExposures),
    numeric("overlap deduction", (r) => r.overlapDeduction),
    numeric("overlap avoided vs baseline", (r) => r.overlapAvoided),
    numeric("budget (USD)", (r) => r.spec.budget_usd),
    numeric("generations", (r) => r.generations),
    {
      label: "mode",
      left: left.spec.objective_mode,
      right: right.spec.objective_mode,
      delta: "",
    },
  ];
}
