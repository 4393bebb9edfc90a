import { describe, expect, it } from "vitest";

import { RequestSequencer, ScenarioState, WhatIfRunner } from "../src/scenario.js";
import type { WhatIfRequest, WhatIfResponse } from "../src/types.js";

const IDS = ["P1", "P2", "P3"];

describe("ScenarioState", () => {
  it("starts neutral", () => {
    const s = new ScenarioState(IDS);
    expect(s.isNeutral).toBe(true);
    expect(s.toRequest()).toEqual({
      metric: "pi",
      whatif: { exclusions: [], forced_success: [], overrides: [] },
    });
  });

  it("collects toggles into the request body", () => {
    const s = new ScenarioState(IDS);
    s.setExcluded("P1", true);
    s.setForceSuccess("P3", true);
    s.setOverride("P2", "peak_sales", 450);
    const req = s.toRequest();
    expect(req.whatif.exclusions).toEqual(["P1"]);
    expect(req.whatif.forced_success).toEqual(["P3"]);
    expect(req.whatif.overrides).toEqual([
      { project_id: "P2", field_path: "peak_sales", value: 450 },
    ]);
    expect(s.isNeutral).toBe(false);
  });

  it("re-setting an override replaces the previous value", () => {
    const s = new ScenarioState(IDS);
    s.setOverride("P2", "peak_sales", 450);
    s.setOverride("P2", "peak_sales", 500);
    expect(s.toRequest().whatif.overrides).toEqual([
      { project_id: "P2", field_path: "peak_sales", value: 500 },
    ]);
  });

  it("untoggling everything returns to neutral", () => {
    const s = new ScenarioState(IDS);
    s.setExcluded("P1", true);
    s.setExcluded("P1", false);
    expect(s.isNeutral).toBe(true);
  });

  it("rejects unknown project ids", () => {
    const s = new ScenarioState(IDS);
    expect(() => s.setExcluded("P99", true)).toThrow(/unknown project id/);
  });
});

describe("RequestSequencer", () => {
  it("accepts responses in order", () => {
    const seq = new RequestSequencer();
    const a = seq.next();
    const b = seq.next();
    expect(seq.accept(a)).toBe(true);
    expect(seq.accept(b)).toBe(true);
  });

  it("discards stale responses", () => {
    const seq = new RequestSequencer();
    const a = seq.next();
    const b = seq.next();
    expect(seq.accept(b)).toBe(true);
    expect(seq.accept(a)).toBe(false); // older request resolved late
  });
});

function fakeResponse(tag: string): WhatIfResponse {
  const pit = { metric: tag, center_value: 0, rows: [] };
  return {
    baseline: pit,
    scenario: pit,
    engine: "analytic",
    seed: 1,
    config: {
      iterations: 1, seed: 1, discount_rate: 0, market_years: 10, ramp_years: 0,
      engine: "analytic",
    },
  };
}

describe("WhatIfRunner", () => {
  it("renders only the newest acknowledged response", async () => {
    const resolvers: ((r: WhatIfResponse) => void)[] = [];
    const rendered: string[] = [];
    const runner = new WhatIfRunner(
      () => new Promise((resolve) => resolvers.push(resolve)),
      (resp) => rendered.push(resp.baseline.metric),
    );

    const req = {} as WhatIfRequest;
    const first = runner.run(req);
    const second = runner.run(req);
    // second request completes first; the late first response must be dropped
    resolvers[1](fakeResponse("new"));
    await second;
    resolvers[0](fakeResponse("old"));
    await first;
    expect(rendered).toEqual(["new"]);
  });

  it("routes errors through the error handler with the same staleness rule", async () => {
    const errors: string[] = [];
    const runner = new WhatIfRunner(
      () => Promise.reject(new Error("422 scenario")),
      () => { throw new Error("should not render"); },
      (err) => errors.push(String(err)),
    );
    await runner.run({} as WhatIfRequest);
    expect(errors).toHaveLength(1);
    expect(errors[0]).toContain("422");
  });
});
