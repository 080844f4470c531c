// Dialog pane state: user sentences, paraphrases with Accept/Rephrase,
// question answers, and errors. Items render strictly in arrival order.

import { ApiClient, ApiError } from "./api.js";

export interface DialogItem {
  kind: "user-sentence" | "paraphrase" | "error" | "answer" | "trace" | "prompt";
  text: string;
  sentenceNumber?: number;
  staged?: boolean;
  // set on unknown-word errors: opens the lexical editor pre-filled
  lexiconShortcut?: string;
}

export class DialogController {
  items: DialogItem[] = [];
  kbDump = "";
  drsPre = "";
  drsCleaned = "";
  private stagedCount = 0;
  private sentenceBase = 0; // sentences accepted so far
  private lastInput = "";

  constructor(private api: ApiClient) {}

  get hasStaged(): boolean {
    return this.stagedCount > 0;
  }

  /** The text of a failed or staged submission, so no input is ever lost. */
  get pendingInput(): string {
    return this.lastInput;
  }

  async submit(text: string): Promise<void> {
    this.lastInput = text;
    this.items.push({ kind: "user-sentence", text });
    let resp;
    try {
      resp = await this.api.submit(text);
    } catch (err) {
      this.pushFailure(err);
      return;
    }
    resp.paraphrase.forEach((p, i) => {
      this.items.push({
        kind: "paraphrase",
        text: p,
        sentenceNumber: this.sentenceBase + i + 1,
        staged: true,
      });
    });
    for (const w of resp.warnings) {
      this.items.push({ kind: "error", text: `warning: ${w}` });
    }
    if (resp.status === "error") {
      for (const e of resp.errors) {
        const item: DialogItem = {
          kind: "error",
          text: e.at ? `${e.kind}: ${e.detail} at ${e.at}` : `${e.kind}: ${e.detail}`,
        };
        if (e.kind === "unknown-word") {
          item.lexiconShortcut = e.detail.split(",")[0].trim();
        }
        this.items.push(item);
      }
    }
    this.stagedCount = resp.staged;
  }

  /** Accept the interpretation: commit staged sentences, refresh the KB pane. */
  async accept(): Promise<void> {
    if (this.stagedCount === 0) return;
    let resp;
    try {
      resp = await this.api.accept();
    } catch (err) {
      this.pushFailure(err);
      return;
    }
    this.sentenceBase += this.stagedCount;
    this.stagedCount = 0;
    this.lastInput = "";
    for (const item of this.items) {
      if (item.kind === "paraphrase") item.staged = false;
    }
    this.items.push({
      kind: "answer",
      text: `ok, ${resp.asserted} clauses asserted`,
    });
    await this.refreshInspector();
  }

  /** Rephrase: drop the staged interpretation; the knowledge base is untouched. */
  rephrase(): void {
    this.items = this.items.filter((item) => !(item.kind === "paraphrase" && item.staged));
    this.stagedCount = 0;
    // lastInput stays: the user edits it in the sentence box
  }

  async ask(text: string): Promise<void> {
    this.items.push({ kind: "user-sentence", text });
    try {
      const resp = await this.api.query(text);
      this.items.push({ kind: "answer", text: resp.answer });
    } catch (err) {
      this.pushFailure(err);
    }
  }

  async refreshInspector(): Promise<void> {
    this.kbDump = await this.api.kb();
    const drs = await this.api.drs();
    this.drsPre = drs.pre;
    this.drsCleaned = drs.cleaned;
  }

  private pushFailure(err: unknown): void {
    if (err instanceof ApiError) {
      const item: DialogItem = {
        kind: "error",
        text: err.body.at
          ? `${err.body.kind}: ${err.body.detail} at ${err.body.at}`
          : `${err.body.kind}: ${err.body.detail}`,
      };
      if (err.body.kind === "unknown-word") {
        item.lexiconShortcut = err.body.detail.split(",")[0].trim();
      }
      this.items.push(item);
      return;
    }
    // connection failures become dialog items; the input is kept
    this.items.push({ kind: "error", text: `connection: ${String(err)}` });
  }
}
