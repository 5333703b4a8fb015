/** On-screen Sindhi keyboard: layout comes from the service as data. */

import type { KeyboardLayout } from "./types.js";

/**
 * The slice of HTMLInputElement/HTMLTextAreaElement the keyboard needs.
 * Narrow on purpose so insertion logic is testable without a browser.
 */
export interface TextFieldLike {
  value: string;
  selectionStart: number | null;
  selectionEnd: number | null;
  setSelectionRange(start: number, end: number): void;
  focus(): void;
}

/**
 * Insert text at the caret (replacing any selection), leave the caret
 * after the insertion and keep the field focused. Inserts exactly the
 * given codepoints; no normalization happens client-side.
 */
export function insertAtCaret(field: TextFieldLike, text: string): string {
  const value = field.value;
  const start = field.selectionStart ?? value.length;
  const end = field.selectionEnd ?? value.length;
  field.value = value.slice(0, start) + text + value.slice(end);
  const caret = start + text.length;
  field.focus();
  field.setSelectionRange(caret, caret);
  return field.value;
}

export interface KeyboardOptions {
  /** Which field receives keys; return null to ignore presses. */
  target: () => TextFieldLike | null;
  /** Called after every insertion (refresh previews, etc.). */
  onInput?: () => void;
}

/** Build the keyboard DOM. Keys never steal focus from the field. */
export function buildKeyboard(
  doc: Document,
  layout: KeyboardLayout,
  options: KeyboardOptions,
): HTMLElement {
  const container = doc.createElement("div");
  container.className = "keyboard";
  container.dir = "rtl";
  for (const row of layout.rows) {
    const rowEl = doc.createElement("div");
    rowEl.className = "keyboard-row";
    for (const key of row) {
      const button = doc.createElement("button");
      button.type = "button";
      button.className = "keyboard-key";
      button.textContent = key.label;
      button.dataset.codepoints = key.codepoints;
      // mousedown would move focus out of the text field
      button.addEventListener("mousedown", (event) => event.preventDefault());
      button.addEventListener("click", () => {
        const field = options.target();
        if (field === null) {
          return;
        }
        insertAtCaret(field, key.codepoints);
        options.onInput?.();
      });
      rowEl.appendChild(button);
    }
    container.appendChild(rowEl);
  }
  return container;
}
