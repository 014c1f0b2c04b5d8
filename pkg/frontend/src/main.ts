// Bootstrap: load the session from the serving core and wire the panes.

import { CoreApi, SchemaVersionError } from "./api.js";
import { maybeShowLegend, renderView } from "./dom.js";
import {
  SessionView,
  beginPrediction,
  editAnswer,
  enterPredict,
  exitPredict,
  loadSession,
  resolvePrediction,
  stepNext,
  stepPrev,
  stepTo,
} from "./session.js";

const api = new CoreApi("");

function panes() {
  return {
    source: document.getElementById("source-pane")!,
    diagram: document.getElementById("diagram-pane")!,
    controls: document.getElementById("controls-pane")!,
  };
}

let view: SessionView | null = null;

function draw(): void {
  if (view === null) {
    return;
  }
  renderView(view, panes(), {
    onPrev: () => act((v) => stepPrev(api, v)),
    onNext: () => act((v) => stepNext(api, v)),
    onGoto: (step) => act((v) => stepTo(api, v, step)),
    onPredictToggle: () =>
      view!.mode === "observe"
        ? act((v) => enterPredict(api, v))
        : apply(exitPredict(view!)),
    onAnswerEdit: (text) => {
      // keep the editor live without re-rendering on every keystroke
      view = editAnswer(view!, text);
    },
    onSubmit: submit,
  });
}

function apply(next: SessionView): void {
  view = next;
  draw();
}

function act(transition: (v: SessionView) => Promise<SessionView>): void {
  if (view === null) {
    return;
  }
  transition(view)
    .then(apply)
    .catch((err) => banner(`request failed: ${err.message}`));
}

function submit(): void {
  if (view === null) {
    return;
  }
  const submitted = beginPrediction(view);
  if (submitted === null) {
    return;
  }
  apply(submitted);
  resolvePrediction(api, submitted, () => view!)
    .then((outcome) => {
      if (outcome.applied) {
        apply(outcome.view);
      }
    })
    .catch((err) => banner(`grading failed: ${err.message}`));
}

function banner(message: string, retry = false): void {
  const el = document.getElementById("banner")!;
  el.textContent = "";
  el.className = "banner error";
  el.appendChild(document.createTextNode(message));
  if (retry) {
    const again = document.createElement("button");
    again.textContent = "retry";
    again.addEventListener("click", boot);
    el.appendChild(again);
  }
  el.hidden = false;
}

function boot(): void {
  const el = document.getElementById("banner")!;
  el.hidden = true;
  loadSession(api)
    .then((loaded) => {
      view = loaded;
      draw();
      maybeShowLegend(document.body);
    })
    .catch((err) => {
      if (err instanceof SchemaVersionError) {
        banner(err.message);
      } else {
        banner(`cannot reach the vps core: ${err.message}`, true);
      }
    });
}

boot();
