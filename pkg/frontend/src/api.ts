/** REST client for the consult service. */

import type {
  FindingsDelta,
  SessionState,
  StatsResponse,
  WhatIfResponse,
} from "./types.js";
import { parseSessionState, parseStats, parseWhatIf } from "./validate.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
  }
}

async function raiseFor(response: Response): Promise<never> {
  let code = "http_error";
  let message = `request failed: ${response.status}`;
  let detail: unknown = null;
  try {
    const body = await response.json();
    if (body && typeof body === "object") {
      code = typeof body.code === "string" ? body.code : code;
      message = typeof body.message === "string" ? body.message : message;
      detail = body.detail ?? null;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(response.status, code, message, detail);
}

export class ConsultApi {
  constructor(readonly baseUrl: string = "") {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await fetch(`${this.baseUrl}${path}`, init);
    if (!response.ok) await raiseFor(response);
    return response.json();
  }

  private post(path: string, body: unknown): Promise<unknown> {
    return this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async stats(): Promise<StatsResponse> {
    return parseStats(await this.request("/kb/stats"));
  }

  async thresholds(): Promise<unknown> {
    return this.request("/kb/thresholds");
  }

  async createSession(policy?: Record<string, unknown>): Promise<SessionState> {
    return parseSessionState(await this.post("/sessions", policy ? { policy } : {}));
  }

  async getSession(id: string): Promise<SessionState> {
    return parseSessionState(await this.request(`/sessions/${id}`));
  }

  async postFindings(id: string, delta: FindingsDelta): Promise<SessionState> {
    return parseSessionState(await this.post(`/sessions/${id}/findings`, delta));
  }

  async whatIf(id: string, assignment: Record<string, boolean>): Promise<WhatIfResponse> {
    return parseWhatIf(await this.post(`/sessions/${id}/whatif`, { assignment }));
  }
}
