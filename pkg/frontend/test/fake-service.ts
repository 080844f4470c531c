// In-memory stand-in for the session service, used as the fetch
// implementation under test. Payload shapes mirror the real service:
// the frontend must work against this exact contract.

import { FetchLike, FetchResponse } from "../src/api";

interface FakeSession {
  known: Set<string>;
  staged: string[];
  kb: string[];
  nextConst: number;
  lexicon: string[];
  events: { seq: number; kind: string; data: any }[];
  running: boolean;
  awaitingAnswer: boolean;
}

const BASE_WORDS = [
  "a", "an", "the", "every", "no", "is", "are", "does", "do", "not",
  "customer", "customers", "card", "cards", "has", "have", "john",
  "enters", "enter", "valid",
];

function json(status: number, body: unknown): FetchResponse {
  return {
    ok: status < 400,
    status,
    json: async () => body,
  };
}

export class FakeService {
  sessions = new Map<string, FakeSession>();
  private nextId = 1;

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body) : undefined;
    const path = url.replace(/^https?:\/\/[^/]+/, "");

    if (method === "POST" && path === "/sessions") {
      const id = `s${this.nextId++}`;
      this.sessions.set(id, {
        known: new Set(BASE_WORDS),
        staged: [],
        kb: [],
        nextConst: 0,
        lexicon: ["noun(customer, customers, masc, count)."],
        events: [],
        running: false,
        awaitingAnswer: false,
      });
      return json(200, { id });
    }

    const m = path.match(/^\/sessions\/([^/]+)(\/.*)?$/);
    if (!m) return json(404, { detail: "no such route" });
    const session = this.sessions.get(m[1]);
    if (!session) return json(404, { detail: "no such session" });
    const rest = m[2] ?? "";

    if (method === "POST" && rest === "/sentences") {
      const sentences = String(body.text)
        .split(/(?<=[.?])\s+/)
        .filter((s: string) => s.length > 0);
      const unknown = sentences
        .join(" ")
        .replace(/[.?]/g, "")
        .split(/\s+/)
        .filter((w: string) => w && !session.known.has(w.toLowerCase()));
      if (unknown.length > 0) {
        return json(200, {
          status: "error",
          staged: 0,
          paraphrase: [],
          warnings: [],
          errors: [
            { kind: "unknown-word", detail: unknown.join(", "), at: null },
          ],
        });
      }
      session.staged = sentences;
      return json(200, {
        status: "ok",
        staged: sentences.length,
        paraphrase: sentences.slice(),
        warnings: [],
        errors: [],
      });
    }

    if (method === "POST" && rest === "/accept") {
      if (session.staged.length === 0) {
        return json(400, {
          detail: { kind: "session-state", detail: "nothing staged", at: null },
        });
      }
      let asserted = 0;
      for (const _s of session.staged) {
        session.kb.push(`fact(customer(${session.nextConst++})).`);
        asserted += 1;
      }
      session.staged = [];
      return json(200, { status: "ok", asserted, warnings: [] });
    }

    if (method === "POST" && rest === "/query") {
      if (!String(body.text).endsWith("?")) {
        return json(400, {
          detail: {
            kind: "syntax-error",
            detail: "expected a question ending in '?'",
            at: null,
          },
        });
      }
      return json(200, { answer: "Yes.", bindings: [] });
    }

    if (method === "GET" && rest === "/kb") {
      return json(200, { kb: session.kb.join("\n") });
    }
    if (method === "GET" && rest === "/drs") {
      return json(200, { pre: "drs([], [])", cleaned: "drs([], [])" });
    }
    if (method === "GET" && rest === "/lexicon") {
      return json(200, { text: session.lexicon.join("\n") });
    }
    if (method === "POST" && rest === "/lexicon") {
      const record = String(body.record);
      const ok =
        /^(noun|cnoun)\([a-z][a-z -]*, (-|[a-z][a-z -]*), (fem|masc|common|neut), (count|mass)\)\.$/.test(record) ||
        /^(tverb|iverb)\([a-z][a-z -]*, [a-z][a-z -]*\)\.$/.test(record) ||
        /^adj\([a-z][a-z -]*\)\.$/.test(record) ||
        /^pname\([a-z][a-z -]*, "[^"]+", (fem|masc|common|neut)\)\.$/.test(record) ||
        /^(syn|abbrev)\([a-z][a-z -]*, [a-z][a-z -]*\)\.$/.test(record);
      if (!ok) {
        return json(400, {
          detail: { kind: "lexicon-error", detail: "unrecognized record", at: null },
        });
      }
      session.lexicon.push(record);
      for (const word of record.matchAll(/[a-z][a-z-]*/g)) {
        session.known.add(word[0]);
      }
      return json(200, { status: "ok" });
    }

    if (method === "POST" && rest === "/exec") {
      if (session.running) {
        return json(409, {
          detail: { kind: "session-state", detail: "already running", at: null },
        });
      }
      session.running = true;
      session.events = [
        { seq: 0, kind: "prompt", data: "Please enter a customer:" },
      ];
      session.awaitingAnswer = true;
      return json(200, { status: "started" });
    }

    if (method === "GET" && rest.startsWith("/exec/events")) {
      const since = Number(rest.match(/since=(\d+)/)?.[1] ?? "0");
      return json(200, {
        events: session.events.filter((e) => e.seq >= since),
        running: session.running,
      });
    }

    if (method === "POST" && rest === "/exec/answer") {
      if (!session.running || !session.awaitingAnswer) {
        return json(400, {
          detail: { kind: "session-state", detail: "no open prompt", at: null },
        });
      }
      session.awaitingAnswer = false;
      const name = String(body.text).toLowerCase();
      session.kb.push(`fact(customer(${name})).`);
      session.kb.push(`fact(card(sk1(${name}))).`);
      session.kb.push(`fact(have(${name}, sk1(${name}))).`);
      session.events.push({
        seq: 1,
        kind: "trace",
        data: `event: ${body.text} has the card`,
      });
      session.events.push({ seq: 2, kind: "done", data: { trace_lines: 1 } });
      session.running = false;
      return json(200, { status: "ok" });
    }

    return json(404, { detail: "no such route" });
  };
}
