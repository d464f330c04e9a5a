import { ApiClient } from "./api.js";
import { render } from "./render.js";
import { AdjudicationStore } from "./state.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const store = new AdjudicationStore(new ApiClient());
store.subscribe(() => render(root, store));

function typingInField(event: KeyboardEvent): boolean {
  const target = event.target as HTMLElement | null;
  return !!target && (target.tagName === "INPUT" || target.tagName === "TEXTAREA"
    || target.tagName === "SELECT");
}

document.addEventListener("keydown", (event) => {
  if (typingInField(event) || event.metaKey || event.ctrlKey || event.altKey) return;
  if (event.key === "a") void store.submitResolution("take_a");
  else if (event.key === "b") void store.submitResolution("take_b");
  else if (event.key === "n") void store.nextUnresolved();
});

void store.init();
