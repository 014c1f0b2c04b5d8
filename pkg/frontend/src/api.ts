// Typed client for the core's /api endpoints. The UI never computes
// execution semantics: everything shown comes back from these calls.

export interface ValueJson {
  t: string;
  v?: unknown;
  id?: number;
}

export interface BindingJson {
  name: string;
  value: ValueJson;
}

export interface FrameJson {
  label: string;
  bindings: BindingJson[];
}

export interface StateJson {
  status: "running" | "finished" | "error";
  error?: string;
  frames: FrameJson[];
  heap: unknown[];
}

export interface TraceEventJson {
  step: number;
  line: number;
  kind: string;
  description: string;
  state: StateJson;
}

export interface TraceJson {
  version: number;
  name?: string;
  program: string;
  output: string[];
  events: TraceEventJson[];
}

export interface DiscrepancyJson {
  kind: string;
  subject: string;
  expected: string;
  actual: string;
}

export interface FeedbackReportJson {
  equivalent: boolean;
  score: number;
  discrepancies: DiscrepancyJson[];
  messages: string[];
}

export const SUPPORTED_TRACE_VERSION = 1;

export class SchemaVersionError extends Error {
  constructor(readonly found: number) {
    super(
      `trace schema version ${found} is not supported ` +
        `(this UI understands version ${SUPPORTED_TRACE_VERSION}); update the core or the UI`,
    );
  }
}

/** A 400 from /api/grade: the answer text was malformed at `line`. */
export class GradeRejection extends Error {
  constructor(message: string, readonly line: number | null) {
    super(message);
  }
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    throw new Error(`${response.status} ${response.statusText} for ${response.url}`);
  }
  return response;
}

export class CoreApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async program(): Promise<string> {
    const response = await expectOk(await fetch(this.url("/api/program")));
    return response.text();
  }

  async trace(): Promise<TraceJson> {
    const response = await expectOk(await fetch(this.url("/api/trace")));
    const doc = (await response.json()) as TraceJson;
    if (doc.version !== SUPPORTED_TRACE_VERSION) {
      throw new SchemaVersionError(doc.version);
    }
    return doc;
  }

  async diagramSvg(step: number | "last"): Promise<string> {
    const response = await expectOk(
      await fetch(this.url(`/api/diagram?step=${step}&format=svg`)),
    );
    return response.text();
  }

  async diagramVpsd(step: number | "last"): Promise<string> {
    const response = await expectOk(
      await fetch(this.url(`/api/diagram?step=${step}&format=vpsd`)),
    );
    return response.text();
  }

  async grade(step: number, answer: string): Promise<FeedbackReportJson> {
    const response = await fetch(this.url("/api/grade"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ step, answer }),
    });
    if (response.status === 400) {
      const body = (await response.json()) as { error: string; line?: number };
      throw new GradeRejection(body.error, body.line ?? null);
    }
    await expectOk(response);
    return (await response.json()) as FeedbackReportJson;
  }
}
