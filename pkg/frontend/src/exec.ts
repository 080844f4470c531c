// Execution console: starts a run, polls the event stream with a cursor,
// surfaces prompts, and forwards answers. At most one prompt is open at a
// time (the run is synchronous on the other side).

import { ApiClient, ExecEvent } from "./api.js";

export interface ConsoleLine {
  kind: ExecEvent["kind"];
  text: string;
}

export class ExecConsole {
  lines: ConsoleLine[] = [];
  running = false;
  /** Prompt text awaiting an answer, or null. */
  openPrompt: string | null = null;
  private cursor = 0;

  constructor(private api: ApiClient) {}

  async run(): Promise<void> {
    if (this.running) return;
    this.lines = [];
    this.cursor = 0;
    this.openPrompt = null;
    await this.api.startExec();
    this.running = true;
  }

  /** One polling step; the UI calls this on a 1 s interval while running. */
  async tick(): Promise<void> {
    if (!this.running) return;
    const data = await this.api.events(this.cursor);
    for (const ev of data.events) {
      this.cursor = ev.seq + 1;
      this.push(ev);
    }
    if (!data.running) {
      this.running = false;
      this.openPrompt = null;
    }
  }

  async answer(text: string): Promise<void> {
    if (this.openPrompt === null) return;
    await this.api.answer(text);
    this.lines.push({ kind: "trace", text: `> ${text}` });
    this.openPrompt = null;
  }

  private push(ev: ExecEvent): void {
    switch (ev.kind) {
      case "prompt":
        this.openPrompt = String(ev.data);
        this.lines.push({ kind: "prompt", text: String(ev.data) });
        break;
      case "done":
        this.lines.push({
          kind: "done",
          text: `run finished (${ev.data.trace_lines} events)`,
        });
        break;
      case "hook":
        this.lines.push({ kind: "hook", text: JSON.stringify(ev.data) });
        break;
      default:
        this.lines.push({ kind: ev.kind, text: String(ev.data) });
    }
  }
}
