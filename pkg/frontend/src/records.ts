// Lexical editor form model: turns form fields into lexicon record lines.
// Only the surface forms are asked of the user; canonical symbols, the
// noun-vs-compound split and the record class are derived automatically.

export type GenderChoice = "feminine" | "masculine" | "fem-masc" | "neutrum";

const GENDER_SYMBOL: Record<GenderChoice, string> = {
  feminine: "fem",
  masculine: "masc",
  "fem-masc": "common",
  neutrum: "neut",
};

export interface NounForm {
  cls: "noun";
  singular: string;
  plural: string; // empty allowed for mass nouns only
  gender: GenderChoice;
  countability: "count" | "mass";
}

export interface VerbForm {
  cls: "tverb" | "iverb";
  base: string; // plural / base form
  thirdSg: string;
}

export interface AdjectiveForm {
  cls: "adj";
  word: string;
}

export interface NameForm {
  cls: "pname";
  display: string; // as written, capitalization kept
  gender: GenderChoice;
}

export interface LinkForm {
  cls: "syn" | "abbrev";
  word: string;
  target: string; // canonical of an existing entry
}

export type EditorForm =
  | NounForm
  | VerbForm
  | AdjectiveForm
  | NameForm
  | LinkForm;

export class ValidationError extends Error {}

// mirrors the lexicon file syntax: no record punctuation inside a form
const WORD = /^[a-zA-Z][a-zA-Z-]*(?: [a-zA-Z][a-zA-Z-]*)*$/;

function checkWord(label: string, value: string): string {
  const trimmed = value.trim().replace(/\s+/g, " ");
  if (trimmed.length === 0) throw new ValidationError(`${label} is required`);
  if (!WORD.test(trimmed)) {
    throw new ValidationError(
      `${label} must be letters (and spaces between words), got ${JSON.stringify(value)}`
    );
  }
  return trimmed;
}

function canonical(surface: string): string {
  return surface.toLowerCase().replace(/\s+/g, " ");
}

export function recordLine(form: EditorForm): string {
  switch (form.cls) {
    case "noun": {
      const singular = canonical(checkWord("singular", form.singular));
      let plural: string;
      if (form.countability === "mass") {
        plural = form.plural.trim() === "" ? "-" : canonical(checkWord("plural", form.plural));
      } else {
        if (form.plural.trim() === "") {
          throw new ValidationError("plural is required for a count noun");
        }
        plural = canonical(checkWord("plural", form.plural));
      }
      const cls = singular.includes(" ") ? "cnoun" : "noun";
      const gender = GENDER_SYMBOL[form.gender];
      return `${cls}(${singular}, ${plural}, ${gender}, ${form.countability}).`;
    }
    case "tverb":
    case "iverb": {
      const base = canonical(checkWord("base form", form.base));
      const third = canonical(checkWord("third person singular", form.thirdSg));
      return `${form.cls}(${base}, ${third}).`;
    }
    case "adj":
      return `adj(${canonical(checkWord("adjective", form.word))}).`;
    case "pname": {
      const display = checkWord("name", form.display);
      const gender = GENDER_SYMBOL[form.gender];
      return `pname(${canonical(display)}, "${display}", ${gender}).`;
    }
    case "syn":
    case "abbrev": {
      const word = canonical(checkWord("word", form.word));
      const target = canonical(checkWord("links to", form.target));
      return `${form.cls}(${word}, ${target}).`;
    }
  }
}

// Balloon-help texts for the editor fields.
export const FIELD_HELP: Record<string, string> = {
  singular:
    "The word as it appears with 'a' or 'the'. Two or more words make a compound noun, matched as a unit.",
  plural:
    "The plural surface form. Leave empty for a mass noun (stored as '-').",
  gender:
    "Drives pronoun and relative-pronoun agreement: 'who' needs feminine, masculine or fem-masc; 'which' needs neutrum.",
  countability:
    "Count nouns have a plural and agree in number; mass nouns only occur in the singular.",
  base: "The form used with 'do not' and plural subjects, e.g. 'enter'.",
  thirdSg: "The form used with singular subjects, e.g. 'enters'.",
  display:
    "The name as written in sentences, capitalization kept ('SimpleMat'). The internal symbol is derived automatically.",
  target:
    "Canonical form of the existing entry this word abbreviates or is synonymous with.",
};
