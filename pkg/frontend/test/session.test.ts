import { describe, expect, it } from "vitest";

import { UiSession } from "../src/session.js";
import type { ApiEntry } from "../src/types.js";

function entry(kind: "e2s" | "s2e", headword: string): ApiEntry {
  return {
    kind,
    key: headword,
    headword,
    pronunciation: "",
    grammar: "",
    sindhi_glosses: [],
    english_glosses: [],
    provenance: "manual",
    derived_from: [],
    revision: 1,
  };
}

describe("UiSession", () => {
  it("selecting a dictionary resets the view state", () => {
    const session = new UiSession();
    session.select("water");
    session.enterEdit();
    session.selectDictionary("s2e");
    expect(session.kind).toBe("s2e");
    expect(session.selectedKey).toBeNull();
    expect(session.editMode).toBe(false);
    expect(session.mode).toBe("browse");
  });

  it("fields stay read-only until edit mode is entered explicitly", () => {
    const session = new UiSession();
    expect(session.canSaveEdit()).toBe(false);
    session.enterEdit(); // nothing selected: stays read-only
    expect(session.editMode).toBe(false);
    session.select("water");
    expect(session.canSaveEdit()).toBe(false);
    session.enterEdit();
    expect(session.canSaveEdit()).toBe(true);
    session.exitEdit();
    expect(session.canSaveEdit()).toBe(false);
  });

  it("selecting another record drops edit mode", () => {
    const session = new UiSession();
    session.select("water");
    session.enterEdit();
    session.select("school");
    expect(session.editMode).toBe(false);
  });

  it("session list only grows, newest first", () => {
    const session = new UiSession();
    session.recordAdded(entry("e2s", "water"));
    session.recordAdded(entry("e2s", "school"));
    expect(session.sessionEntries.map((e) => e.headword)).toEqual(["school", "water"]);
    session.selectDictionary("s2e");
    expect(session.sessionEntries).toHaveLength(2);
  });

  it("session entries filter by dictionary", () => {
    const session = new UiSession();
    session.recordAdded(entry("e2s", "water"));
    session.recordAdded(entry("s2e", "پاڻي"));
    expect(session.entriesFor("e2s").map((e) => e.headword)).toEqual(["water"]);
    expect(session.entriesFor("s2e").map((e) => e.headword)).toEqual(["پاڻي"]);
  });

  it("add mode clears selection and is explicit to leave", () => {
    const session = new UiSession();
    session.select("water");
    session.startAdding();
    expect(session.mode).toBe("add");
    expect(session.selectedKey).toBeNull();
    session.stopAdding();
    expect(session.mode).toBe("browse");
  });
});
