/**
 * Application bootstrap: wires the store to the DOM panels.
 */

import { SessionApi, Suggestion } from "./api.js";
import { OwnershipGuard } from "./ownership.js";
import { AssistantStore } from "./store.js";
import {
  renderEditorDiff,
  renderLibrary,
  renderSuggestions,
  renderTree,
} from "./view.js";

export function mount(root: HTMLElement, baseUrl: string): AssistantStore {
  const doc = root.ownerDocument;
  const api = new SessionApi(baseUrl);
  const store = new AssistantStore(api);
  const guard = new OwnershipGuard(window.localStorage);

  const goalBox = doc.createElement("div");
  const treeBox = doc.createElement("div");
  const suggBox = doc.createElement("div");
  const editBox = doc.createElement("div");
  const libBox = doc.createElement("div");
  const statusBox = doc.createElement("div");
  statusBox.className = "status";

  const goalInput = doc.createElement("input");
  goalInput.placeholder = "|- ( 3 + 2 ) = 5";
  const startBtn = doc.createElement("button");
  startBtn.textContent = "start proof";
  startBtn.addEventListener("click", async () => {
    const ok = await store.createSession(goalInput.value);
    const sid = store.state.sessionId;
    if (ok && sid && !guard.claim(sid)) {
      statusBox.textContent = "session is owned by another tab";
      return;
    }
  });
  goalBox.append(goalInput, startBtn);

  const editor = doc.createElement("textarea");
  editor.rows = 3;
  editor.addEventListener("input", () => store.setEditor(editor.value));
  const applyBtn = doc.createElement("button");
  applyBtn.textContent = "apply";
  applyBtn.addEventListener("click", () => store.applyTactic(editor.value));
  const suggestBtn = doc.createElement("button");
  suggestBtn.textContent = "suggest";
  suggestBtn.addEventListener("click", () => store.requestSuggestions());
  const undoBtn = doc.createElement("button");
  undoBtn.textContent = "undo";
  undoBtn.addEventListener("click", () => store.undo());
  const redoBtn = doc.createElement("button");
  redoBtn.textContent = "redo";
  redoBtn.addEventListener("click", () => store.redo());
  const exportBtn = doc.createElement("button");
  exportBtn.textContent = "export .mm";
  exportBtn.addEventListener("click", async () => {
    const text = await store.exportText("mm");
    if (text) {
      const blob = new Blob([text], { type: "text/plain" });
      const a = doc.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "proof.mm";
      a.click();
    }
  });
  editBox.append(editor, suggestBtn, applyBtn, undoBtn, redoBtn, exportBtn);

  const libInput = doc.createElement("input");
  libInput.placeholder = "search the library";
  libInput.addEventListener("change", () =>
    store.searchLibrary(libInput.value),
  );
  libBox.append(libInput);
  const libResults = doc.createElement("div");
  libBox.append(libResults);

  root.append(goalBox, statusBox, treeBox, suggBox, editBox, libBox);

  store.subscribe((s) => {
    treeBox.replaceChildren();
    if (s.tree) {
      treeBox.append(
        renderTree(doc, s.tree, s.selectedGoal, {
          onSelect: (id) => store.selectGoal(id),
        }),
      );
    }
    suggBox.replaceChildren(
      renderSuggestions(doc, s.suggestions, {
        onPick: (sg: Suggestion) => store.applyTactic(sg.tactic),
        onEdit: (sg: Suggestion) => {
          editor.value = sg.tactic;
          store.setEditor(sg.tactic);
        },
      }),
      renderEditorDiff(doc, s.editorBuffer, s.suggestions),
    );
    libResults.replaceChildren(
      renderLibrary(doc, s.library, {
        onInsert: (row) => {
          editor.value = row.statement;
          store.setEditor(row.statement);
        },
      }),
    );
    statusBox.textContent = s.lastError ? `error: ${s.lastError}` : "";
  });
  return store;
}
