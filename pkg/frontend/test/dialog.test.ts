import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { DialogController } from "../src/dialog";
import { FakeService } from "./fake-service";

let api: ApiClient;
let dialog: DialogController;

beforeEach(async () => {
  const service = new FakeService();
  api = new ApiClient("http://test", service.fetch);
  await api.openSession();
  dialog = new DialogController(api);
});

describe("dialog flow", () => {
  it("stages a sentence and shows its paraphrase", async () => {
    await dialog.submit("A customer has a card.");
    const kinds = dialog.items.map((i) => i.kind);
    expect(kinds).toEqual(["user-sentence", "paraphrase"]);
    expect(dialog.items[1].staged).toBe(true);
    expect(dialog.hasStaged).toBe(true);
  });

  it("Accept commits: the KB pane changes", async () => {
    await dialog.refreshInspector();
    const before = dialog.kbDump;
    await dialog.submit("A customer has a card.");
    expect(await api.kb()).toBe(before); // staged only, nothing asserted yet
    await dialog.accept();
    expect(dialog.kbDump).not.toBe(before);
    expect(dialog.kbDump).toContain("fact(");
    const paraphrases = dialog.items.filter((i) => i.kind === "paraphrase");
    expect(paraphrases.every((i) => i.staged === false)).toBe(true);
  });

  it("Rephrase discards the staged interpretation: the KB dump is unchanged", async () => {
    await dialog.refreshInspector();
    const before = dialog.kbDump;
    await dialog.submit("A customer has a card.");
    dialog.rephrase();
    expect(dialog.hasStaged).toBe(false);
    expect(dialog.items.some((i) => i.kind === "paraphrase")).toBe(false);
    expect(await api.kb()).toBe(before);
    // the input is not lost: it comes back for editing
    expect(dialog.pendingInput).toBe("A customer has a card.");
  });

  it("unknown words produce an error item with a lexicon shortcut", async () => {
    await dialog.submit("A zorgle has a card.");
    const error = dialog.items.find((i) => i.kind === "error");
    expect(error).toBeDefined();
    expect(error!.text).toContain("unknown-word");
    expect(error!.lexiconShortcut).toBe("zorgle");
    expect(dialog.hasStaged).toBe(false);
  });

  it("questions render an answer item", async () => {
    await dialog.submit("A customer has a card.");
    await dialog.accept();
    await dialog.ask("Does the customer have a card?");
    expect(dialog.items[dialog.items.length - 1]).toEqual({
      kind: "answer",
      text: "Yes.",
    });
  });

  it("connection failures surface as dialog items and keep the input", async () => {
    const service = new FakeService();
    let down = false;
    const flakyApi = new ApiClient("http://test", (url, init) => {
      if (down) return Promise.reject(new Error("network down"));
      return service.fetch(url, init);
    });
    await flakyApi.openSession();
    const flaky = new DialogController(flakyApi);
    down = true;
    await flaky.submit("A customer has a card.");
    const last = flaky.items[flaky.items.length - 1];
    expect(last.kind).toBe("error");
    expect(last.text).toContain("connection");
    expect(flaky.pendingInput).toBe("A customer has a card.");
  });

  it("items render strictly in arrival order", async () => {
    await dialog.submit("A customer has a card.");
    await dialog.accept();
    await dialog.ask("Does the customer have a card?");
    const kinds = dialog.items.map((i) => i.kind);
    expect(kinds).toEqual([
      "user-sentence",
      "paraphrase",
      "answer",
      "user-sentence",
      "answer",
    ]);
  });
});
