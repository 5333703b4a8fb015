// @vitest-environment jsdom
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { buildKeyboard, insertAtCaret, type TextFieldLike } from "../src/keyboard.js";
import type { KeyboardLayout } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const layoutFile = join(here, "..", "..", "src", "lughat", "data", "keyboard.json");
const layout: KeyboardLayout = JSON.parse(readFileSync(layoutFile, "utf-8"));

const utf8 = (s: string) => Array.from(new TextEncoder().encode(s));

function makeInput(value = "", caret?: number): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  document.body.appendChild(input);
  input.value = value;
  const at = caret ?? value.length;
  input.setSelectionRange(at, at);
  return input;
}

describe("insertAtCaret", () => {
  it("appends at the end by default", () => {
    const input = makeInput("پا");
    insertAtCaret(input, "ڻي");
    expect(input.value).toBe("پاڻي");
    expect(input.selectionStart).toBe(4);
  });

  it("inserts mid-string and preserves surrounding text", () => {
    const input = makeInput("پاي", 2);
    insertAtCaret(input, "ڻ");
    expect(input.value).toBe("پاڻي");
    expect(input.selectionStart).toBe(3);
    expect(input.selectionEnd).toBe(3);
  });

  it("replaces an active selection", () => {
    const input = makeInput("پاXXي");
    input.setSelectionRange(2, 4);
    insertAtCaret(input, "ڻ");
    expect(input.value).toBe("پاڻي");
  });

  it("works on plain field-like objects too", () => {
    const field: TextFieldLike = {
      value: "ab",
      selectionStart: 1,
      selectionEnd: 1,
      setSelectionRange(start, end) {
        this.selectionStart = start;
        this.selectionEnd = end;
      },
      focus() {},
    };
    expect(insertAtCaret(field, "xyz")).toBe("axyzb");
    expect(field.selectionStart).toBe(4);
  });
});

describe("buildKeyboard", () => {
  it("renders the layout right-to-left with one button per key", () => {
    const input = makeInput();
    const kb = buildKeyboard(document, layout, { target: () => input });
    expect(kb.dir).toBe("rtl");
    const buttons = kb.querySelectorAll("button.keyboard-key");
    const keyCount = layout.rows.reduce((n, row) => n + row.length, 0);
    expect(buttons.length).toBe(keyCount);
  });

  it("every key inserts exactly its declared codepoints (byte-level)", () => {
    const input = makeInput();
    const kb = buildKeyboard(document, layout, { target: () => input });
    document.body.appendChild(kb);
    const buttons = Array.from(kb.querySelectorAll<HTMLButtonElement>("button.keyboard-key"));
    const keys = layout.rows.flat();
    expect(buttons.length).toBe(keys.length);
    buttons.forEach((button, i) => {
      input.value = "";
      input.setSelectionRange(0, 0);
      button.click();
      expect(utf8(input.value)).toEqual(utf8(keys[i].codepoints));
    });
  });

  it("multi-codepoint keys land as a unit at the caret", () => {
    const digraphs = layout.rows.flat().filter((k) => Array.from(k.codepoints).length > 1);
    expect(digraphs.length).toBeGreaterThan(0);
    const input = makeInput("اب", 1);
    const kb = buildKeyboard(document, layout, { target: () => input });
    const button = kb.querySelector<HTMLButtonElement>(
      `button[data-codepoints="${digraphs[0].codepoints}"]`,
    );
    button!.click();
    expect(utf8(input.value)).toEqual(utf8("ا" + digraphs[0].codepoints + "ب"));
  });

  it("does nothing without a target field", () => {
    const kb = buildKeyboard(document, layout, { target: () => null });
    const button = kb.querySelector<HTMLButtonElement>("button.keyboard-key");
    expect(() => button!.click()).not.toThrow();
  });

  it("reports insertions so previews can refresh", () => {
    const input = makeInput();
    let pings = 0;
    const kb = buildKeyboard(document, layout, {
      target: () => input,
      onInput: () => {
        pings += 1;
      },
    });
    kb.querySelector<HTMLButtonElement>("button.keyboard-key")!.click();
    expect(pings).toBe(1);
  });
});
