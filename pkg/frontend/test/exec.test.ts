import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { ExecConsole } from "../src/exec";
import { FakeService } from "./fake-service";

let api: ApiClient;
let cons: ExecConsole;

beforeEach(async () => {
  const service = new FakeService();
  api = new ApiClient("http://test", service.fetch);
  await api.openSession();
  cons = new ExecConsole(api);
});

describe("execution console", () => {
  it("surfaces the scaffolding prompt and pauses", async () => {
    await cons.run();
    expect(cons.running).toBe(true);
    await cons.tick();
    expect(cons.openPrompt).toBe("Please enter a customer:");
    expect(cons.lines.map((l) => l.kind)).toEqual(["prompt"]);
    // still running, still the same single open prompt on further polls
    await cons.tick();
    expect(cons.openPrompt).toBe("Please enter a customer:");
    expect(cons.lines.filter((l) => l.kind === "prompt")).toHaveLength(1);
  });

  it("resumes after an answer and closes on done", async () => {
    await cons.run();
    await cons.tick();
    await cons.answer("John");
    expect(cons.openPrompt).toBeNull();
    await cons.tick();
    expect(cons.running).toBe(false);
    const kinds = cons.lines.map((l) => l.kind);
    expect(kinds).toEqual(["prompt", "trace", "trace", "done"]);
    expect(cons.lines[1].text).toBe("> John");
    expect(cons.lines[2].text).toBe("event: John has the card");
    expect(cons.lines[3].text).toBe("run finished (1 events)");
  });

  it("the scaffold answer lands in the knowledge base", async () => {
    await cons.run();
    await cons.tick();
    await cons.answer("John");
    await cons.tick();
    const kb = await api.kb();
    expect(kb).toContain("fact(customer(john)).");
    expect(kb).toContain("fact(card(sk1(john))).");
    expect(kb).toContain("fact(have(john, sk1(john))).");
  });

  it("renders events in stream order using the since cursor", async () => {
    await cons.run();
    await cons.tick();
    await cons.answer("John");
    await cons.tick();
    await cons.tick(); // extra ticks must not duplicate or reorder
    const texts = cons.lines.map((l) => l.text);
    expect(texts).toEqual([
      "Please enter a customer:",
      "> John",
      "event: John has the card",
      "run finished (1 events)",
    ]);
  });

  it("a second run starts a fresh event stream and keeps the KB", async () => {
    await cons.run();
    await cons.tick();
    await cons.answer("John");
    await cons.tick();
    const kbAfterFirst = await api.kb();

    await cons.run();
    expect(cons.lines).toEqual([]);
    await cons.tick();
    expect(cons.openPrompt).toBe("Please enter a customer:");
    expect(await api.kb()).toBe(kbAfterFirst);
  });

  it("answers are ignored when no prompt is open", async () => {
    await cons.answer("John");
    expect(cons.lines).toEqual([]);
  });
});
