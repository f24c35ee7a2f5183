import type { CampaignInput, ResultDoc, ScenarioRecord } from "./types.js";

const STORAGE_KEY = "adplanner.scenarios.v1";
const MAX_KEPT = 50;

export interface HeadlineMetrics {
  selection: string[];
  netScore: number;
  grossExposures: number;
  overlapDeduction: number;
  overlapAvoided: number;
  generations: number;
}

export const headlineFromResult = (result: ResultDoc): HeadlineMetrics => ({
  selection: [...result.selection],
  netScore: result.metrics.net_score,
  grossExposures: result.metrics.gross_exposures,
  overlapDeduction: result.metrics.overlap_deduction,
  overlapAvoided: result.metrics.overlap_avoided,
  generations: result.history.length,
});

/** Scenario history lives only in the browser; the service never sees
 * labels or comparisons. Storage is injectable for tests. */
export class ScenarioStore {
  constructor(private readonly storage: Storage) {}

  list(): ScenarioRecord[] {
    const raw = this.storage.getItem(STORAGE_KEY);
    if (!raw) return [];
    try {
      const parsed = JSON.parse(raw) as ScenarioRecord[];
      return Array.isArray(parsed) ? parsed : [];
    } catch {
      return [];
    }
  }

  get(id: string): ScenarioRecord | undefined {
    return this.list().find((record) => record.id === id);
  }

  add(input: {
    label: string;
    jobId: string;
    networkHash: string;
    spec: CampaignInput;
    result: ResultDoc;
  }): ScenarioRecord {
    const existing = this.list();
    const record: ScenarioRecord = {
      id: `scn-${Date.now().toString(36)}-${existing.length + 1}`,
      label: input.label || `scenario ${existing.length + 1}`,
      jobId: input.jobId,
      networkHash: input.networkHash,
      submittedAt: new Date().toISOString(),
      spec: input.spec,
      ...headlineFromResult(input.result),
    };
    const kept = [record, ...existing].slice(0, MAX_KEPT);
    this.storage.setItem(STORAGE_KEY, JSON.stringify(kept));
    return record;
  }

  clear(): void {
    this.storage.removeItem(STORAGE_KEY);
  }
}
