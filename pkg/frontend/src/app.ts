// Four-pane single-page wiring: dialog, lexical editor, DRS/KB inspector,
// execution console. One service session per tab.

import { ApiClient } from "./api.js";
import { DialogController } from "./dialog.js";
import { ExecConsole } from "./exec.js";
import { EditorForm, FIELD_HELP, GenderChoice, recordLine, ValidationError } from "./records.js";

const POLL_MS = 1000;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function renderDialog(dialog: DialogController): void {
  const pane = el<HTMLDivElement>("dialog-items");
  pane.innerHTML = "";
  for (const item of dialog.items) {
    const row = document.createElement("div");
    row.className = `item ${item.kind}${item.staged ? " staged" : ""}`;
    row.textContent = item.text;
    if (item.lexiconShortcut) {
      const link = document.createElement("button");
      link.textContent = "Add to lexicon";
      link.onclick = () => {
        el<HTMLInputElement>("lex-singular").value = item.lexiconShortcut ?? "";
        el<HTMLInputElement>("lex-singular").focus();
      };
      row.appendChild(link);
    }
    pane.appendChild(row);
  }
  el<HTMLButtonElement>("btn-accept").disabled = !dialog.hasStaged;
  el<HTMLButtonElement>("btn-rephrase").disabled = !dialog.hasStaged;
  el<HTMLPreElement>("kb-pane").textContent = dialog.kbDump;
  el<HTMLPreElement>("drs-pane").textContent = dialog.drsCleaned;
  el<HTMLPreElement>("drs-pre-pane").textContent = dialog.drsPre;
  pane.scrollTop = pane.scrollHeight;
}

function renderConsole(cons: ExecConsole): void {
  const pane = el<HTMLDivElement>("exec-lines");
  pane.innerHTML = "";
  for (const line of cons.lines) {
    const row = document.createElement("div");
    row.className = `line ${line.kind}`;
    row.textContent = line.text;
    pane.appendChild(row);
  }
  el<HTMLDivElement>("exec-answer-row").style.display =
    cons.openPrompt === null ? "none" : "flex";
  el<HTMLButtonElement>("btn-run").disabled = cons.running;
  pane.scrollTop = pane.scrollHeight;
}

function editorForm(): EditorForm {
  const cls = el<HTMLSelectElement>("lex-class").value;
  const gender = el<HTMLSelectElement>("lex-gender").value as GenderChoice;
  if (cls === "noun") {
    const mass = el<HTMLInputElement>("lex-mass").checked;
    return {
      cls: "noun",
      singular: el<HTMLInputElement>("lex-singular").value,
      plural: el<HTMLInputElement>("lex-plural").value,
      gender,
      countability: mass ? "mass" : "count",
    };
  }
  if (cls === "tverb" || cls === "iverb") {
    return {
      cls,
      base: el<HTMLInputElement>("lex-singular").value,
      thirdSg: el<HTMLInputElement>("lex-plural").value,
    };
  }
  if (cls === "adj") {
    return { cls: "adj", word: el<HTMLInputElement>("lex-singular").value };
  }
  if (cls === "pname") {
    return {
      cls: "pname",
      display: el<HTMLInputElement>("lex-singular").value,
      gender,
    };
  }
  return {
    cls: cls as "syn" | "abbrev",
    word: el<HTMLInputElement>("lex-singular").value,
    target: el<HTMLInputElement>("lex-plural").value,
  };
}

export async function start(base: string): Promise<void> {
  const api = new ApiClient(base);
  await api.openSession();
  const dialog = new DialogController(api);
  const cons = new ExecConsole(api);

  for (const [field, help] of Object.entries(FIELD_HELP)) {
    const node = document.querySelector(`[data-help="${field}"]`);
    if (node) (node as HTMLElement).title = help;
  }

  el<HTMLButtonElement>("btn-send").onclick = async () => {
    const box = el<HTMLTextAreaElement>("sentence-box");
    const text = box.value.trim();
    if (!text) return;
    if (text.endsWith("?")) await dialog.ask(text);
    else await dialog.submit(text);
    if (!dialog.hasStaged) box.value = dialog.pendingInput;
    else box.value = "";
    renderDialog(dialog);
  };
  el<HTMLButtonElement>("btn-accept").onclick = async () => {
    await dialog.accept();
    renderDialog(dialog);
  };
  el<HTMLButtonElement>("btn-rephrase").onclick = () => {
    dialog.rephrase();
    el<HTMLTextAreaElement>("sentence-box").value = dialog.pendingInput;
    renderDialog(dialog);
  };

  el<HTMLButtonElement>("btn-add-record").onclick = async () => {
    const status = el<HTMLSpanElement>("lex-status");
    try {
      const line = recordLine(editorForm());
      await api.addRecord(line);
      status.textContent = `added: ${line}`;
      el<HTMLPreElement>("lexicon-pane").textContent = await api.lexicon();
    } catch (err) {
      status.textContent =
        err instanceof ValidationError ? err.message : String(err);
    }
  };

  el<HTMLButtonElement>("btn-run").onclick = async () => {
    await cons.run();
    renderConsole(cons);
    const timer = setInterval(async () => {
      await cons.tick();
      renderConsole(cons);
      if (!cons.running) clearInterval(timer);
    }, POLL_MS);
  };
  el<HTMLButtonElement>("btn-answer").onclick = async () => {
    const box = el<HTMLInputElement>("exec-answer");
    if (!box.value.trim()) return;
    await cons.answer(box.value.trim());
    box.value = "";
    renderConsole(cons);
  };

  el<HTMLPreElement>("lexicon-pane").textContent = await api.lexicon();
  renderDialog(dialog);
  renderConsole(cons);
}
