/** Wire types mirroring the dictionary service's JSON schemas. */

export type DictionaryKind = "e2s" | "s2e";
export type Provenance = "manual" | "derived";

export interface ApiEntry {
  kind: DictionaryKind;
  key: string;
  headword: string;
  pronunciation: string;
  grammar: string;
  sindhi_glosses: string[];
  english_glosses: string[];
  provenance: Provenance;
  derived_from: string[];
  revision: number;
}

/** Record fields the client is allowed to author; the store owns the rest. */
export interface EntryDraft {
  headword: string;
  pronunciation: string;
  grammar: string;
  sindhi_glosses: string[];
  english_glosses: string[];
}

export interface WordRow {
  headword: string;
  key: string;
  provenance: Provenance;
}

export interface Listing {
  kind: DictionaryKind;
  prefix: string;
  offset: number;
  limit: number;
  total: number;
  words: WordRow[];
}

export interface ChangeSet {
  session_tag: string;
  created: ApiEntry[];
  updated: ApiEntry[];
  deleted: ApiEntry[];
}

export interface KeyboardKey {
  label: string;
  codepoints: string;
}

export interface KeyboardLayout {
  name: string;
  rows: KeyboardKey[][];
}

export interface Health {
  status: string;
  entries_e2s: number;
  entries_s2e: number;
}

export interface Violation {
  offset: number;
  codepoint: string;
}

export interface ErrorBody {
  error: string;
  message?: string;
  field?: string;
  violations?: Violation[];
  current_revision?: number;
}
