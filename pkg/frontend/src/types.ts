/** Wire-format types for the pitplot service API. */

export interface PhaseDoc {
  phase: string;
  duration: number;
  cost: number;
  pos: number;
}

export interface ProjectDoc {
  id: string;
  name: string;
  peak_sales: number;
  phases: PhaseDoc[];
}

export interface PortfolioDoc {
  name: string;
  projects: ProjectDoc[];
}

export interface SimConfigDoc {
  iterations: number;
  seed: number;
  discount_rate: number;
  market_years: number;
  ramp_years: number;
  engine: string;
}

export interface PitRowDoc {
  rank: number;
  project_id: string;
  delta_exclusion: number;
  delta_success: number | null;
  project_metric: number | null;
  success_available: boolean;
  note: string;
}

export interface PitDoc {
  metric: string;
  center_value: number;
  rows: PitRowDoc[];
}

export interface WhatIfRequest {
  metric: string;
  whatif: {
    exclusions: string[];
    forced_success: string[];
    overrides: { project_id: string; field_path: string; value: number }[];
  };
}

export interface WhatIfResponse {
  baseline: PitDoc;
  scenario: PitDoc;
  engine: string;
  seed: number;
  config: SimConfigDoc;
}

export interface Diagnostic {
  project_id: string;
  field: string;
  message: string;
}
