/** Editing-session state: what the user opened, added and may touch. */

import type { ApiEntry, DictionaryKind } from "./types.js";

export type ViewMode = "browse" | "add";

export class UiSession {
  kind: DictionaryKind = "e2s";
  mode: ViewMode = "browse";
  /** Records added this session, newest first. Grows only. */
  readonly sessionEntries: ApiEntry[] = [];
  selectedKey: string | null = null;
  /** Fields of an existing record are read-only until this is true. */
  editMode = false;

  selectDictionary(kind: DictionaryKind): void {
    this.kind = kind;
    this.mode = "browse";
    this.selectedKey = null;
    this.editMode = false;
  }

  select(key: string | null): void {
    this.selectedKey = key;
    this.editMode = false;
  }

  enterEdit(): void {
    if (this.selectedKey !== null) {
      this.editMode = true;
    }
  }

  exitEdit(): void {
    this.editMode = false;
  }

  startAdding(): void {
    this.mode = "add";
    this.selectedKey = null;
    this.editMode = false;
  }

  stopAdding(): void {
    this.mode = "browse";
  }

  /** Gate for mutations of an existing record. */
  canSaveEdit(): boolean {
    return this.editMode && this.selectedKey !== null;
  }

  recordAdded(entry: ApiEntry): void {
    this.sessionEntries.unshift(entry);
  }

  /** Session entries for the dictionary currently on screen. */
  entriesFor(kind: DictionaryKind): ApiEntry[] {
    return this.sessionEntries.filter((entry) => entry.kind === kind);
  }
}
