/** The editor: dictionary picker, word list, record panel, add form. */

import { ApiClient, ApiError } from "./api.js";
import { buildKeyboard, insertAtCaret, type TextFieldLike } from "./keyboard.js";
import { UiSession } from "./session.js";
import type {
  ApiEntry,
  ChangeSet,
  DictionaryKind,
  EntryDraft,
  ErrorBody,
  KeyboardLayout,
  Listing,
} from "./types.js";

const KIND_TITLES: Record<DictionaryKind, string> = {
  e2s: "English → Sindhi",
  s2e: "Sindhi → English",
};

const GLOSS_SEPARATOR = "، ";

function splitGlosses(text: string): string[] {
  return text
    .split("،")
    .map((piece) => piece.trim())
    .filter((piece) => piece.length > 0);
}

export class App {
  readonly session = new UiSession();
  private listing: Listing | null = null;
  private current: ApiEntry | null = null;
  private layout: KeyboardLayout | null = null;
  private doc: Document;
  private keyboardTarget: TextFieldLike | null = null;
  private notice = "";

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {
    this.doc = root.ownerDocument;
  }

  /** Fetch what the UI needs and show the dictionary picker. */
  async start(): Promise<void> {
    try {
      await this.api.health();
      this.layout = await this.api.keyboard();
    } catch (error) {
      this.renderUnreachable(error);
      return;
    }
    this.renderSelectScreen();
  }

  // -- screens --------------------------------------------------------

  private renderUnreachable(error: unknown): void {
    this.root.replaceChildren();
    const banner = this.el("div", "error-banner");
    banner.textContent = `dictionary service unreachable: ${String(error)}`;
    const retry = this.el("button", "retry-btn", "retry");
    retry.addEventListener("click", () => void this.start());
    banner.appendChild(retry);
    this.root.appendChild(banner);
  }

  private renderSelectScreen(): void {
    this.root.replaceChildren();
    const screen = this.el("div", "dict-select");
    screen.appendChild(this.el("h1", "", "lughat"));
    screen.appendChild(this.el("p", "", "Choose a dictionary to work with"));
    for (const kind of ["e2s", "s2e"] as DictionaryKind[]) {
      const button = this.el("button", "dict-choice", KIND_TITLES[kind]);
      button.dataset.kind = kind;
      button.addEventListener("click", () => void this.openDictionary(kind));
      screen.appendChild(button);
    }
    this.root.appendChild(screen);
  }

  async openDictionary(kind: DictionaryKind): Promise<void> {
    this.session.selectDictionary(kind);
    this.current = null;
    this.notice = "";
    await this.refreshList();
  }

  async refreshList(prefix = ""): Promise<void> {
    try {
      this.listing = await this.api.listEntries(this.session.kind, prefix);
    } catch (error) {
      this.renderUnreachable(error);
      return;
    }
    this.renderMain(prefix);
  }

  private renderMain(prefix = ""): void {
    this.root.replaceChildren();
    const kind = this.session.kind;

    const header = this.el("header", "topbar");
    const back = this.el("button", "back-btn", "dictionaries");
    back.addEventListener("click", () => this.renderSelectScreen());
    header.appendChild(back);
    header.appendChild(this.el("h1", "", KIND_TITLES[kind]));
    const addButton = this.el("button", "add-btn", "Add New Record");
    addButton.addEventListener("click", () => {
      this.session.startAdding();
      this.renderMain(prefix);
    });
    header.appendChild(addButton);
    this.root.appendChild(header);

    if (this.notice) {
      const note = this.el("div", "notice", this.notice);
      this.root.appendChild(note);
    }

    const main = this.el("div", "main");
    main.appendChild(this.renderWordColumn(prefix));
    const panel = this.el("section", "panel");
    if (this.session.mode === "add") {
      panel.appendChild(this.renderAddForm());
      panel.appendChild(this.renderSessionList());
    } else if (this.current !== null) {
      panel.appendChild(this.renderDetail(this.current));
    } else {
      panel.appendChild(this.el("p", "placeholder", "Select a word from the list."));
    }
    main.appendChild(panel);
    this.root.appendChild(main);

    this.root.appendChild(this.renderKeyboardHost());
  }

  private renderWordColumn(prefix: string): HTMLElement {
    const column = this.el("aside", "word-column");
    const search = this.doc.createElement("input");
    search.className = "search-box";
    search.placeholder = "filter by prefix";
    search.value = prefix;
    search.dir = "auto";
    search.addEventListener("change", () => void this.refreshList(search.value));
    column.appendChild(search);

    const list = this.el("ul", "word-list");
    if (this.session.kind === "s2e") {
      list.dir = "rtl";
    }
    const words = this.listing?.words ?? [];
    if (words.length === 0) {
      column.appendChild(this.el("p", "empty-list", "no words yet"));
    }
    for (const row of words) {
      const item = this.el("li", "word-item");
      item.dataset.key = row.key;
      const label = this.el("span", "word-headword", row.headword);
      item.appendChild(label);
      if (row.provenance === "derived") {
        item.appendChild(this.el("span", "badge badge-derived", "derived"));
      }
      item.addEventListener("click", () => void this.selectWord(row.key));
      list.appendChild(item);
    }
    column.appendChild(list);
    return column;
  }

  async selectWord(key: string): Promise<void> {
    try {
      this.current = await this.api.getEntry(this.session.kind, key);
    } catch (error) {
      this.notice = error instanceof ApiError ? error.message : String(error);
      this.current = null;
    }
    this.session.stopAdding();
    this.session.select(this.current ? this.current.key : null);
    this.renderMain();
  }

  // -- record detail ---------------------------------------------------

  private renderDetail(entry: ApiEntry): HTMLElement {
    const detail = this.el("div", "detail-panel");
    const editing = this.session.editMode;

    const title = this.el("h2", "detail-headword", entry.headword);
    title.dir = "auto";
    detail.appendChild(title);
    const badge = this.el("span", `badge badge-${entry.provenance}`, entry.provenance);
    detail.appendChild(badge);
    if (entry.derived_from.length > 0) {
      detail.appendChild(
        this.el("p", "derived-from", `from: ${entry.derived_from.join(", ")}`),
      );
    }

    const form = this.el("div", "record-form");
    form.appendChild(this.field("headword", entry.headword, !editing, this.sindhiSide()));
    form.appendChild(this.field("pronunciation", entry.pronunciation, !editing, false));
    form.appendChild(this.field("grammar", entry.grammar, !editing, false));
    form.appendChild(
      this.field("sindhi", entry.sindhi_glosses.join(GLOSS_SEPARATOR), !editing, true),
    );
    form.appendChild(
      this.field("english", entry.english_glosses.join(GLOSS_SEPARATOR), !editing, false),
    );
    detail.appendChild(form);

    const actions = this.el("div", "actions");
    if (!editing) {
      const edit = this.el("button", "edit-btn", "Edit");
      edit.addEventListener("click", () => {
        this.session.enterEdit();
        this.renderMain();
      });
      actions.appendChild(edit);
    } else {
      const save = this.el("button", "save-btn", "Save");
      save.addEventListener("click", () => void this.saveEdit());
      actions.appendChild(save);
      const cancel = this.el("button", "cancel-btn", "Cancel");
      cancel.addEventListener("click", () => {
        this.session.exitEdit();
        this.renderMain();
      });
      actions.appendChild(cancel);
    }
    const del = this.el("button", "delete-btn", "Delete");
    del.addEventListener("click", () => void this.deleteCurrent());
    actions.appendChild(del);
    detail.appendChild(actions);

    detail.appendChild(this.el("div", "form-errors"));
    return detail;
  }

  private async saveEdit(): Promise<void> {
    // fields stay read-only and unsendable until Edit was pressed
    if (!this.session.canSaveEdit() || this.current === null) {
      return;
    }
    const draft = this.readDraft();
    try {
      await this.api.putEntry(this.session.kind, draft, this.current.revision);
    } catch (error) {
      this.showFormError(error);
      return;
    }
    this.notice = `saved ${draft.headword}`;
    this.current = await this.api.getEntry(this.session.kind, draft.headword);
    this.session.exitEdit();
    await this.refreshList();
  }

  private async deleteCurrent(): Promise<void> {
    if (this.current === null) {
      return;
    }
    try {
      await this.api.deleteEntry(this.session.kind, this.current.key);
    } catch (error) {
      this.showFormError(error);
      return;
    }
    this.notice = `deleted ${this.current.headword}`;
    this.current = null;
    this.session.select(null);
    await this.refreshList();
  }

  // -- add form ----------------------------------------------------------

  private renderAddForm(): HTMLElement {
    const wrap = this.el("div", "add-form");
    wrap.appendChild(this.el("h2", "", "Add New Record"));

    const form = this.el("div", "record-form");
    form.appendChild(this.field("headword", "", false, this.sindhiSide()));
    form.appendChild(this.field("pronunciation", "", false, false));
    form.appendChild(this.field("grammar", "", false, false));
    form.appendChild(this.field("sindhi", "", false, true));
    form.appendChild(this.field("english", "", false, false));
    wrap.appendChild(form);

    const preview = this.el("div", "derivation-preview");
    wrap.appendChild(preview);
    const sindhiField = form.querySelector<HTMLInputElement>('[data-field="sindhi"]');
    sindhiField?.addEventListener("input", () => void this.updatePreview());

    const actions = this.el("div", "actions");
    const save = this.el("button", "save-new-btn", "Save Record");
    save.addEventListener("click", () => void this.submitAdd());
    actions.appendChild(save);
    const done = this.el("button", "done-btn", "Done");
    done.addEventListener("click", () => {
      this.session.stopAdding();
      this.renderMain();
    });
    actions.appendChild(done);
    wrap.appendChild(actions);

    wrap.appendChild(this.el("div", "form-errors"));
    return wrap;
  }

  /** Show which reverse headwords the current Sindhi meaning will create. */
  async updatePreview(): Promise<void> {
    const preview = this.root.querySelector(".derivation-preview");
    const sindhiField = this.root.querySelector<HTMLInputElement>('[data-field="sindhi"]');
    if (preview === null || sindhiField === null) {
      return;
    }
    const text = sindhiField.value.trim();
    if (text === "" || this.session.kind !== "e2s") {
      preview.replaceChildren();
      return;
    }
    let tokens: string[];
    try {
      tokens = (await this.api.tokenize(text)).tokens;
    } catch {
      return; // preview is best-effort
    }
    preview.replaceChildren();
    preview.appendChild(
      this.el("p", "preview-label", `will create ${tokens.length} reverse entries:`),
    );
    const list = this.el("ul", "preview-tokens");
    list.dir = "rtl";
    for (const token of tokens) {
      list.appendChild(this.el("li", "preview-token", token));
    }
    preview.appendChild(list);
  }

  async submitAdd(): Promise<void> {
    const draft = this.readDraft();
    if (draft.headword.trim() === "") {
      this.showFormError(new ApiError(0, { error: "EmptyKey", message: "headword is required" }));
      return;
    }
    let changeset: ChangeSet;
    try {
      changeset = await this.api.putEntry(this.session.kind, draft);
    } catch (error) {
      this.showFormError(error);
      return;
    }
    const touched = [...changeset.created, ...changeset.updated];
    const main = touched.find((entry) => entry.kind === this.session.kind);
    if (main !== undefined) {
      this.session.recordAdded(main);
    }
    const derived = touched.filter((entry) => entry.kind !== this.session.kind);
    this.notice =
      `saved ${draft.headword}` +
      (derived.length > 0
        ? `; reverse entries: ${derived.map((entry) => entry.headword).join(GLOSS_SEPARATOR)}`
        : "");
    await this.refreshList(); // re-renders; form cleared, session list on top
  }

  private renderSessionList(): HTMLElement {
    const wrap = this.el("div", "session-panel");
    wrap.appendChild(this.el("h3", "", "added this session"));
    const list = this.el("ul", "session-list");
    const entries = this.session.entriesFor(this.session.kind);
    if (entries.length === 0) {
      wrap.appendChild(this.el("p", "empty-list", "nothing yet"));
    }
    for (const entry of entries) {
      const item = this.el("li", "session-item");
      item.dataset.key = entry.key;
      item.textContent = entry.headword;
      item.addEventListener("click", () => void this.selectWord(entry.key));
      list.appendChild(item);
    }
    wrap.appendChild(list);
    return wrap;
  }

  // -- shared form machinery -------------------------------------------

  private sindhiSide(): boolean {
    return this.session.kind === "s2e";
  }

  private field(name: string, value: string, readOnly: boolean, sindhi: boolean): HTMLElement {
    const row = this.el("label", "field-row");
    row.appendChild(this.el("span", "field-name", name));
    const input = this.doc.createElement("input");
    input.type = "text";
    input.value = value;
    input.readOnly = readOnly;
    input.dataset.field = name;
    input.dir = sindhi ? "rtl" : "auto";
    if (sindhi) {
      input.classList.add("sindhi-field");
      input.addEventListener("focus", () => {
        this.keyboardTarget = input;
        this.setKeyboardVisible(true);
      });
    } else {
      input.addEventListener("focus", () => {
        this.keyboardTarget = null;
        this.setKeyboardVisible(false);
      });
    }
    row.appendChild(input);
    return row;
  }

  private readDraft(): EntryDraft {
    const get = (name: string): string =>
      this.root.querySelector<HTMLInputElement>(`[data-field="${name}"]`)?.value ?? "";
    return {
      headword: get("headword").trim(),
      pronunciation: get("pronunciation").trim(),
      grammar: get("grammar").trim(),
      sindhi_glosses: splitGlosses(get("sindhi")),
      english_glosses: splitGlosses(get("english")),
    };
  }

  private showFormError(error: unknown): void {
    const box = this.root.querySelector(".form-errors");
    if (box === null) {
      return;
    }
    box.replaceChildren();
    if (!(error instanceof ApiError)) {
      box.appendChild(this.el("p", "error-text", String(error)));
      return;
    }
    const body: ErrorBody = error.body;
    if (error.status === 409) {
      const conflict = this.el("div", "conflict-box");
      conflict.appendChild(
        this.el(
          "p",
          "error-text",
          `someone else edited this record (now at revision ${body.current_revision}); reload it before saving`,
        ),
      );
      const reload = this.el("button", "reload-btn", "reload record");
      reload.addEventListener("click", () => {
        if (this.session.selectedKey !== null) {
          void this.selectWord(this.session.selectedKey);
        }
      });
      conflict.appendChild(reload);
      box.appendChild(conflict);
      return;
    }
    if (body.error === "RepertoireViolation" && body.violations) {
      const offsets = body.violations.map((violation) => violation.offset).join(", ");
      box.appendChild(
        this.el(
          "p",
          "error-text",
          `${body.field ?? "field"}: characters outside the Sindhi repertoire at offsets ${offsets}`,
        ),
      );
      const marked = this.markViolations(body);
      if (marked !== null) {
        box.appendChild(marked);
      }
      return;
    }
    box.appendChild(this.el("p", "error-text", body.message || body.error));
  }

  /** Re-render the offending value with the bad codepoints highlighted. */
  private markViolations(body: ErrorBody): HTMLElement | null {
    if (!body.field || !body.violations) {
      return null;
    }
    const name = body.field.startsWith("sindhi_glosses")
      ? "sindhi"
      : body.field.startsWith("headword")
        ? "headword"
        : null;
    if (name === null) {
      return null;
    }
    const input = this.root.querySelector<HTMLInputElement>(`[data-field="${name}"]`);
    if (input === null) {
      return null;
    }
    const bad = new Set(body.violations.map((violation) => violation.offset));
    const line = this.el("p", "violation-line");
    line.dir = "rtl";
    // offsets refer to the normalized gloss; highlight by character class instead
    const chars = Array.from(input.value);
    chars.forEach((ch, index) => {
      const span = this.el("span", bad.has(index) ? "bad-char" : "", ch);
      line.appendChild(span);
    });
    return line;
  }

  private renderKeyboardHost(): HTMLElement {
    const host = this.el("div", "keyboard-host");
    host.hidden = true;
    if (this.layout !== null) {
      host.appendChild(
        buildKeyboard(this.doc, this.layout, {
          target: () => this.keyboardTarget,
          onInput: () => void this.updatePreview(),
        }),
      );
    }
    return host;
  }

  private setKeyboardVisible(visible: boolean): void {
    const host = this.root.querySelector<HTMLElement>(".keyboard-host");
    if (host !== null) {
      host.hidden = !visible;
    }
  }

  private el(tag: string, className: string, text?: string): HTMLElement {
    const node = this.doc.createElement(tag);
    if (className) {
      node.className = className;
    }
    if (text !== undefined) {
      node.textContent = text;
    }
    return node;
  }
}
