/** Thin client for the sonowork HTTP service. */

import type {
  CreateSessionBody,
  DatasetDetail,
  DatasetSummary,
  RenderBody,
  SessionEventBody,
  SessionReportJson,
  SessionStateJson,
} from "./types";

export class ApiError extends Error {
  code: string;
  status: number;
  detail: unknown;

  constructor(status: number, code: string, message: string, detail?: unknown) {
    super(message);
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

async function fail(response: Response): Promise<never> {
  let code = "http_error";
  let message = `${response.status}`;
  let detail: unknown;
  try {
    const body = await response.json();
    code = body.code ?? code;
    message = body.message ?? message;
    detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, message, detail);
}

export class ApiClient {
  private base: string;

  constructor(base = "") {
    this.base = base;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) await fail(response);
    return (await response.json()) as T;
  }

  private async bytes(path: string, init?: RequestInit): Promise<Blob> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) await fail(response);
    return await response.blob();
  }

  uploadDataset(name: string, text: string): Promise<DatasetSummary> {
    const query = new URLSearchParams({ name });
    return this.json(`/api/datasets?${query}`, { method: "POST", body: text });
  }

  listDatasets(): Promise<DatasetSummary[]> {
    return this.json("/api/datasets");
  }

  getDataset(id: string): Promise<DatasetDetail> {
    return this.json(`/api/datasets/${id}`);
  }

  sonify(body: RenderBody, signal?: AbortSignal): Promise<Blob> {
    return this.bytes("/api/sonify", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  plot(body: RenderBody & { width?: number; height?: number }, signal?: AbortSignal): Promise<Blob> {
    return this.bytes("/api/plot", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  createSession(body: CreateSessionBody): Promise<{ id: string; state: SessionStateJson }> {
    return this.json("/api/training/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  sendSessionEvent(id: string, event: SessionEventBody): Promise<{ id: string; state: SessionStateJson }> {
    return this.json(`/api/training/sessions/${id}/events`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(event),
    });
  }

  stimulusAudio(id: string): Promise<Blob> {
    return this.bytes(`/api/training/sessions/${id}/stimulus`);
  }

  stimulusPlot(id: string): Promise<Blob> {
    return this.bytes(`/api/training/sessions/${id}/stimulus?format=svg`);
  }

  report(id: string): Promise<SessionReportJson> {
    return this.json(`/api/training/sessions/${id}/report`);
  }
}
