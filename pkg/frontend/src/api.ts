import type {
  CampaignInput,
  DoneEvent,
  HistoryRow,
  JobRecord,
  NetworkPayload,
  StreamEvent,
} from "./types.js";

export interface FieldErrorDetail {
  loc: Array<string | number>;
  msg: string;
  type: string;
}

/** Non-2xx response. `detail` keeps whatever shape the service sent:
 * a plain message, or a list of field-level problems for a 400. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string | FieldErrorDetail[],
  ) {
    super(typeof detail === "string" ? detail : detail.map((d) => d.msg).join("; "));
    this.name = "ApiError";
  }

  /** field name -> message, for inline form display. */
  fieldErrors(): Map<string, string> {
    const out = new Map<string, string>();
    if (typeof this.detail === "string") return out;
    for (const err of this.detail) {
      const field = err.loc.filter((part) => part !== "body").join(".");
      if (field && !out.has(field)) out.set(field, err.msg);
    }
    return out;
  }
}

const isDone = (event: StreamEvent): event is DoneEvent =>
  (event as DoneEvent).done === true;

/** Splits a byte stream into complete lines; NDJSON frames never span
 * a yield once `push` has returned. */
export class LineBuffer {
  private pending = "";
  private readonly decoder = new TextDecoder();

  push(chunk: Uint8Array): string[] {
    this.pending += this.decoder.decode(chunk, { stream: true });
    const parts = this.pending.split("\n");
    this.pending = parts.pop() ?? "";
    return parts.filter((line) => line.trim().length > 0);
  }

  flush(): string[] {
    const rest = this.pending.trim();
    this.pending = "";
    return rest ? [rest] : [];
  }
}

export class PlannerClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail: string | FieldErrorDetail[] = `HTTP ${response.status}`;
      try {
        const body = (await response.json()) as { detail?: string | FieldErrorDetail[] };
        if (body.detail !== undefined) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return response;
  }

  async getNetwork(): Promise<NetworkPayload> {
    const response = await this.request("/network");
    return (await response.json()) as NetworkPayload;
  }

  async submitJob(spec: CampaignInput): Promise<string> {
    const response = await this.request("/jobs", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(spec),
    });
    const body = (await response.json()) as { job_id: string };
    return body.job_id;
  }

  async getJob(jobId: string): Promise<JobRecord> {
    const response = await this.request(`/jobs/${jobId}`);
    return (await response.json()) as JobRecord;
  }

  /** Follow a job's NDJSON stream. `onRow` fires once per generation,
   * in order; resolves with the terminal event. */
  async streamJob(
    jobId: string,
    onRow: (row: HistoryRow) => void,
    signal?: AbortSignal,
  ): Promise<DoneEvent> {
    const response = await this.request(`/jobs/${jobId}/stream`, { signal });
    if (!response.body) throw new Error("streaming response has no body");
    const reader = response.body.getReader();
    const buffer = new LineBuffer();
    const handle = (line: string): DoneEvent | undefined => {
      const event = JSON.parse(line) as StreamEvent;
      if (isDone(event)) return event;
      onRow(event);
      return undefined;
    };
    for (;;) {
      const { done, value } = await reader.read();
      const lines = done ? buffer.flush() : buffer.push(value ?? new Uint8Array());
      for (const line of lines) {
        const terminal = handle(line);
        if (terminal) {
          await reader.cancel().catch(() => undefined);
          return terminal;
        }
      }
      if (done) throw new Error("stream ended without a done event");
    }
  }
}
