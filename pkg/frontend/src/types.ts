/** JSON shapes exchanged with the sonowork service. */

export type TrainingPhase =
  | "intro"
  | "presenting"
  | "awaiting_response"
  | "feedback"
  | "completed";

export type ArrowKeyName = "up" | "down" | "left" | "right";

export interface DatasetSummary {
  id: string;
  name: string;
  columns: string[];
  row_count: number;
}

export interface DatasetColumn {
  name: string;
  values: (number | null)[];
}

export interface DatasetDetail {
  id: string;
  name: string;
  row_count: number;
  columns: DatasetColumn[];
}

export interface TransformStep {
  op: string;
  window?: number;
  lo?: number;
  hi?: number;
}

export interface SonifyConfigBody {
  waveform?: string;
  mapping?: string;
  f_min?: number;
  f_max?: number;
  note_duration?: number;
}

export interface RenderBody {
  dataset_id: string;
  y_col: string;
  x_col?: string | null;
  transform: TransformStep[];
  config: SonifyConfigBody;
}

export interface StimulusInfo {
  id: number;
  class: string;
  modality: string;
}

export interface ResponseRecordJson {
  stimulus_id: number;
  key: ArrowKeyName;
  correct: boolean;
  latency_ms: number;
}

export interface SessionStateJson {
  stimuli: StimulusInfo[];
  cursor: number;
  phase: TrainingPhase;
  responses: ResponseRecordJson[];
  allow_skip_intro: boolean;
  allow_replay: boolean;
  total: number;
}

export interface SessionEventBody {
  type: string;
  key?: ArrowKeyName;
  latency_ms?: number;
}

export interface CreateSessionBody {
  block: number;
  per_class_count: number;
  seed: number;
  modality: string;
  allow_skip_intro?: boolean;
  allow_replay?: boolean;
}

export interface ClassScoreJson {
  n: number;
  correct: number;
  pct: number;
}

export interface SessionReportJson {
  total: number;
  correct: number;
  overall_pct: number;
  overall_display: string;
  per_class: Record<string, ClassScoreJson>;
  median_latency_ms: number;
}
