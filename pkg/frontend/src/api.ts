// Typed client for the workbench session service. This is the only place
// the frontend touches the backend: everything goes through HTTP-JSON.

export interface SubmitResponse {
  status: "ok" | "error";
  staged: number;
  paraphrase: string[];
  warnings: string[];
  errors: ApiErrorBody[];
  drs?: string;
}

export interface AcceptResponse {
  status: "ok";
  asserted: number;
  warnings: string[];
}

export interface QueryResponse {
  answer: string;
  bindings: string[];
}

export interface ExecEvent {
  seq: number;
  kind: "prompt" | "trace" | "hook" | "warning" | "error" | "done";
  data: any;
}

export interface EventsResponse {
  events: ExecEvent[];
  running: boolean;
}

export interface ApiErrorBody {
  kind: string;
  detail: string;
  at: string | null;
}

export class ApiError extends Error {
  body: ApiErrorBody;
  constructor(body: ApiErrorBody) {
    super(`${body.kind}: ${body.detail}`);
    this.body = body;
  }
}

// Response subset we rely on, so tests can hand in a plain object.
export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<any>;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string }
) => Promise<FetchResponse>;

export class ApiClient {
  private base: string;
  private fetchImpl: FetchLike;
  private sessionId: string | null = null;
  // all requests per session are serialized client-side
  private chain: Promise<unknown> = Promise.resolve();

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? (fetch as unknown as FetchLike);
  }

  private request(method: string, path: string, body?: unknown): Promise<any> {
    const run = async () => {
      const init: { method: string; headers?: Record<string, string>; body?: string } =
        { method };
      if (body !== undefined) {
        init.headers = { "content-type": "application/json" };
        init.body = JSON.stringify(body);
      }
      const resp = await this.fetchImpl(this.base + path, init);
      const payload = await resp.json();
      if (!resp.ok) {
        const detail = payload?.detail;
        if (detail && typeof detail === "object" && "kind" in detail) {
          throw new ApiError(detail as ApiErrorBody);
        }
        throw new ApiError({
          kind: `http-${resp.status}`,
          detail: typeof detail === "string" ? detail : "request failed",
          at: null,
        });
      }
      return payload;
    };
    const next = this.chain.then(run, run);
    this.chain = next.catch(() => undefined);
    return next;
  }

  private sid(): string {
    if (this.sessionId === null) throw new Error("no session open");
    return this.sessionId;
  }

  async openSession(): Promise<string> {
    const data = await this.request("POST", "/sessions");
    this.sessionId = data.id;
    return data.id;
  }

  submit(text: string): Promise<SubmitResponse> {
    return this.request("POST", `/sessions/${this.sid()}/sentences`, { text });
  }

  accept(): Promise<AcceptResponse> {
    return this.request("POST", `/sessions/${this.sid()}/accept`);
  }

  query(text: string): Promise<QueryResponse> {
    return this.request("POST", `/sessions/${this.sid()}/query`, { text });
  }

  kb(): Promise<string> {
    return this.request("GET", `/sessions/${this.sid()}/kb`).then((d) => d.kb);
  }

  drs(): Promise<{ pre: string; cleaned: string }> {
    return this.request("GET", `/sessions/${this.sid()}/drs`);
  }

  lexicon(): Promise<string> {
    return this.request("GET", `/sessions/${this.sid()}/lexicon`).then(
      (d) => d.text
    );
  }

  addRecord(record: string): Promise<void> {
    return this.request("POST", `/sessions/${this.sid()}/lexicon`, { record });
  }

  startExec(): Promise<void> {
    return this.request("POST", `/sessions/${this.sid()}/exec`, {});
  }

  events(since: number): Promise<EventsResponse> {
    return this.request(
      "GET",
      `/sessions/${this.sid()}/exec/events?since=${since}`
    );
  }

  answer(text: string): Promise<void> {
    return this.request("POST", `/sessions/${this.sid()}/exec/answer`, { text });
  }
}
