/** Wire types mirrored from the planner service. The UI never computes
 * fitness or overlap itself; everything rendered comes from these. */

export interface NetworkNode {
  id: string;
  domain: string;
  reach_pct: number;
  age_ratios: Record<string, number>;
  income_ratios: Record<string, number>;
  banner_ads: boolean;
  cpm_usd: number;
}

export interface NetworkEdge {
  src: string;
  dst: string;
  alpha_pct: number;
}

export interface BucketVocabulary {
  age: string[];
  income: string[];
}

export interface NetworkPayload {
  network_hash: string;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
  buckets: BucketVocabulary;
}

export interface TargetingInput {
  age_buckets: string[];
  income_buckets: string[];
}

export type ObjectiveMode = "unique-impressions" | "unique-reach";

export interface CampaignInput {
  budget_usd: number;
  num_sites: number;
  targeting: TargetingInput;
  objective_mode: ObjectiveMode;
  seed?: number;
}

export interface HistoryRow {
  generation: number;
  best_fitness: number;
  mean_fitness: number;
}

export interface ScoreBreakdown {
  gross_exposures: number;
  overlap_deduction: number;
  net_score: number;
}

export interface PlanMetrics extends ScoreBreakdown {
  naive_baseline: ScoreBreakdown;
  baseline_selection: string[];
  overlap_avoided: number;
}

export interface ResultDoc {
  selection: string[];
  fitness: number;
  history: HistoryRow[];
  metrics: PlanMetrics;
  seed: number;
  params: Record<string, number>;
}

export type JobState = "queued" | "running" | "done" | "failed";

export interface JobRecord {
  job_id: string;
  state: JobState;
  spec: Record<string, unknown>;
  history: HistoryRow[];
  result: ResultDoc | null;
  error: string | null;
}

/** Terminal line of the NDJSON stream. */
export interface DoneEvent {
  done: true;
  result?: ResultDoc;
  error?: string;
}

export type StreamEvent = HistoryRow | DoneEvent;

/** What the planner typed into the form, before submission. */
export interface ScenarioDraft {
  label: string;
  budget: string;
  sites: string;
  seed: string;
  mode: ObjectiveMode;
  ageBuckets: string[];
  incomeBuckets: string[];
}

/** One submitted scenario, kept in browser storage for comparison. */
export interface ScenarioRecord {
  id: string;
  label: string;
  jobId: string;
  networkHash: string;
  submittedAt: string;
  spec: CampaignInput;
  selection: string[];
  netScore: number;
  grossExposures: number;
  overlapDeduction: number;
  overlapAvoided: number;
  generations: number;
}
