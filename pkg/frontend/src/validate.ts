import type { BucketVocabulary, CampaignInput, ScenarioDraft } from "./types.js";

export interface DraftCheck {
  errors: Map<string, string>;
  spec?: CampaignInput;
}

const isCount = (value: number): boolean => Number.isInteger(value) && value >= 0;

/** Client-side mirror of the service's request validation, so obvious
 * mistakes never cost a round trip. The service stays authoritative. */
export function validateDraft(draft: ScenarioDraft, buckets: BucketVocabulary): DraftCheck {
  const errors = new Map<string, string>();

  const budget = Number(draft.budget);
  if (draft.budget.trim() === "" || !Number.isFinite(budget)) {
    errors.set("budget_usd", "budget must be a number");
  } else if (budget <= 0) {
    errors.set("budget_usd", "budget must be greater than 0");
  }

  const sites = Number(draft.sites);
  if (draft.sites.trim() === "" || !Number.isInteger(sites)) {
    errors.set("num_sites", "number of sites must be an integer");
  } else if (sites < 1) {
    errors.set("num_sites", "number of sites must be at least 1");
  }

  let seed: number | undefined;
  if (draft.seed.trim() !== "") {
    seed = Number(draft.seed);
    if (!isCount(seed)) {
      errors.set("seed", "seed must be an integer >= 0");
      seed = undefined;
    }
  }

  for (const bucket of draft.ageBuckets) {
    if (!buckets.age.includes(bucket)) {
      errors.set("targeting.age_buckets", `unknown age bucket '${bucket}'`);
    }
  }
  for (const bucket of draft.incomeBuckets) {
    if (!buckets.income.includes(bucket)) {
      errors.set("targeting.income_buckets", `unknown income bucket '${bucket}'`);
    }
  }

  if (errors.size > 0) return { errors };
  const spec: CampaignInput = {
    budget_usd: budget,
    num_sites: sites,
    targeting: {
      age_buckets: [...draft.ageBuckets].sort(),
      income_buckets: [...draft.incomeBuckets].sort(),
    },
    objective_mode: draft.mode,
  };
  if (seed !== undefined) spec.seed = seed;
  return { errors, spec };
}

export const emptyDraft = (): ScenarioDraft => ({
  label: "",
  budget: "",
  sites: "",
  seed: "",
  mode: "unique-impressions",
  ageBuckets: [],
  incomeBuckets: [],
});
