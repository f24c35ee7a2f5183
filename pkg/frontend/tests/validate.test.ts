import { describe, expect, it } from "vitest";

import { emptyDraft, validateDraft } from "../src/validate.js";
import type { BucketVocabulary, ScenarioDraft } from "../src/types.js";

const BUCKETS: BucketVocabulary = {
  age: ["18-24", "25-34", "35-44"],
  income: ["0-30k", "30-60k", "60-100k", "100k+"],
};

const draft = (overrides: Partial<ScenarioDraft>): ScenarioDraft => ({
  ...emptyDraft(),
  budget: "1000",
  sites: "3",
  ...overrides,
});

describe("validateDraft", () => {
  it("accepts a complete draft and builds the request body", () => {
    const { errors, spec } = validateDraft(
      draft({ ageBuckets: ["25-34", "18-24"], seed: "42", mode: "unique-reach" }),
      BUCKETS,
    );
    expect(errors.size).toBe(0);
    expect(spec).toEqual({
      budget_usd: 1000,
      num_sites: 3,
      targeting: { age_buckets: ["18-24", "25-34"], income_buckets: [] },
      objective_mode: "unique-reach",
      seed: 42,
    });
  });

  it("omits the seed field when the input is blank", () => {
    const { spec } = validateDraft(draft({ seed: "  " }), BUCKETS);
    expect(spec).toBeDefined();
    expect("seed" in spec!).toBe(false);
  });

  it("rejects a zero budget without producing a spec", () => {
    const { errors, spec } = validateDraft(draft({ budget: "0" }), BUCKETS);
    expect(spec).toBeUndefined();
    expect(errors.get("budget_usd")).toMatch(/greater than 0/);
  });

  it.each([
    ["", "must be a number"],
    ["abc", "must be a number"],
    ["-10", "greater than 0"],
  ])("flags budget %j", (value, message) => {
    const { errors } = validateDraft(draft({ budget: value }), BUCKETS);
    expect(errors.get("budget_usd")).toContain(message);
  });

  it.each(["0", "-1", "2.5", "x"])("flags site count %j", (value) => {
    const { errors, spec } = validateDraft(draft({ sites: value }), BUCKETS);
    expect(spec).toBeUndefined();
    expect(errors.has("num_sites")).toBe(true);
  });

  it.each(["-1", "1.5", "seed"])("flags seed %j", (value) => {
    const { errors } = validateDraft(draft({ seed: value }), BUCKETS);
    expect(errors.get("seed")).toMatch(/integer/);
  });

  it("rejects buckets outside the served vocabulary", () => {
    const { errors, spec } = validateDraft(
      draft({ ageBuckets: ["13-17"], incomeBuckets: ["1M+"] }),
      BUCKETS,
    );
    expect(spec).toBeUndefined();
    expect(errors.get("targeting.age_buckets")).toContain("13-17");
    expect(errors.get("targeting.income_buckets")).toContain("1M+");
  });

  it("treats empty targeting as valid", () => {
    const { errors, spec } = validateDraft(draft({}), BUCKETS);
    expect(errors.size).toBe(0);
    expect(spec!.targeting).toEqual({ age_buckets: [], income_buckets: [] });
  });

  it("collects several errors at once", () => {
    const { errors } = validateDraft(
      draft({ budget: "-1", sites: "0", seed: "no" }),
      BUCKETS,
    );
    expect([...errors.keys()].sort()).toEqual(["budget_usd", "num_sites", "seed"]);
  });
});
