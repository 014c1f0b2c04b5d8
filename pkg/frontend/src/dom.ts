// DOM rendering: three panes (source, diagram, controls/feedback).
// All content comes out of the SessionView; this file only draws it.

import { SessionView, canStep, caption, currentEvent, lastStep } from "./session.js";

export interface Panes {
  source: HTMLElement;
  diagram: HTMLElement;
  controls: HTMLElement;
}

export function renderSource(view: SessionView, pane: HTMLElement): void {
  const highlight = currentEvent(view).line;
  pane.textContent = "";
  const pre = document.createElement("pre");
  pre.className = "source";
  view.program.split("\n").forEach((text, i) => {
    const line = document.createElement("div");
    line.className = i + 1 === highlight ? "line current" : "line";
    const no = document.createElement("span");
    no.className = "lineno";
    no.textContent = String(i + 1).padStart(3, " ");
    line.appendChild(no);
    line.appendChild(document.createTextNode(" " + text));
    pre.appendChild(line);
  });
  pane.appendChild(pre);
}

export function renderDiagram(view: SessionView, pane: HTMLElement): void {
  pane.textContent = "";
  const main = document.createElement("div");
  main.className = "diagram-main";
  main.innerHTML = view.diagramSvg;
  pane.appendChild(main);

  const note = document.createElement("div");
  note.className = "caption";
  note.textContent = `step ${view.currentStep}/${lastStep(view)} — ${caption(view)}`;
  pane.appendChild(note);

  if (view.revealSvg !== null) {
    const reveal = document.createElement("div");
    reveal.className = "reveal";
    const label = document.createElement("div");
    label.className = "reveal-label";
    label.textContent = "the machine's next step (left) vs your answer (right)";
    reveal.appendChild(label);
    const pair = document.createElement("div");
    pair.className = "reveal-pair";
    const truth = document.createElement("div");
    truth.className = "reveal-truth";
    truth.innerHTML = view.revealSvg;
    const yours = document.createElement("pre");
    yours.className = "reveal-answer";
    yours.textContent = view.pendingAnswer;
    pair.appendChild(truth);
    pair.appendChild(yours);
    reveal.appendChild(pair);
    pane.appendChild(reveal);
  }
}

export interface ControlHooks {
  onPrev(): void;
  onNext(): void;
  onGoto(step: number): void;
  onPredictToggle(): void;
  onAnswerEdit(text: string): void;
  onSubmit(): void;
}

export function renderControls(view: SessionView, pane: HTMLElement, hooks: ControlHooks): void {
  pane.textContent = "";

  const bar = document.createElement("div");
  bar.className = "stepbar";
  const prev = button("prev", hooks.onPrev, view.currentStep === 0 || !canStep(view));
  const next = button(
    "next", hooks.onNext, view.currentStep === lastStep(view) || !canStep(view),
  );
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = String(lastStep(view));
  slider.value = String(view.currentStep);
  slider.disabled = !canStep(view);
  slider.addEventListener("input", () => hooks.onGoto(Number(slider.value)));
  bar.append(prev, slider, next);
  pane.appendChild(bar);

  if (view.notice !== null) {
    const notice = document.createElement("div");
    notice.className = "notice";
    notice.textContent = view.notice;
    pane.appendChild(notice);
  }

  const toggle = button(
    view.mode === "observe" ? "predict the next step" : "back to observing",
    hooks.onPredictToggle,
    view.mode === "observe" && (view.currentStep === lastStep(view) || !canStep(view)),
  );
  toggle.className = "mode-toggle";
  pane.appendChild(toggle);

  if (view.mode === "predict") {
    const editor = document.createElement("textarea");
    editor.className = "answer-editor";
    editor.rows = 12;
    editor.value = view.pendingAnswer;
    editor.addEventListener("input", () => hooks.onAnswerEdit(editor.value));
    pane.appendChild(editor);
    pane.appendChild(button("grade my prediction", hooks.onSubmit, false));
  }

  if (view.lastReport !== null) {
    const report = view.lastReport;
    const box = document.createElement("div");
    box.className = report.equivalent ? "feedback good" : "feedback bad";
    for (const message of report.messages) {
      const line = document.createElement("div");
      line.className = "feedback-line";
      line.textContent = message;
      box.appendChild(line);
    }
    pane.appendChild(box);
  }

  const output = view.trace.output;
  if (output.length > 0) {
    const log = document.createElement("pre");
    log.className = "output-log";
    log.textContent = "program output:\n" + output.join("\n");
    pane.appendChild(log);
  }
}

function button(label: string, onClick: () => void, disabled: boolean): HTMLButtonElement {
  const b = document.createElement("button");
  b.textContent = label;
  b.disabled = disabled;
  b.addEventListener("click", onClick);
  return b;
}

export function renderView(view: SessionView, panes: Panes, hooks: ControlHooks): void {
  renderSource(view, panes.source);
  renderDiagram(view, panes.diagram);
  renderControls(view, panes.controls, hooks);
}

const LEGEND_KEY = "vps-legend-seen";

/** First-run overlay explaining the boxes-and-arrows notation. */
export function maybeShowLegend(root: HTMLElement): void {
  if (window.localStorage.getItem(LEGEND_KEY) === "yes") {
    return;
  }
  const overlay = document.createElement("div");
  overlay.className = "legend-overlay";
  overlay.innerHTML = `
    <div class="legend-card">
      <h2>How to read the diagrams</h2>
      <ul>
        <li>A <strong>box on the left</strong> is a variable in a frame; primitives show their value right next to the name.</li>
        <li>A <strong>numbered area</strong> (@1, @2, ...) is memory created by <code>new</code>: an object with its fields, or an array with its cells.</li>
        <li>An <strong>arrow</strong> is a reference. Copying a reference copies the arrow only, so two arrows into one area mean the same data is shared.</li>
        <li><code>null</code> means the reference points nowhere; no arrow is drawn.</li>
      </ul>
      <button class="legend-dismiss">Got it</button>
    </div>`;
  overlay.querySelector(".legend-dismiss")!.addEventListener("click", () => {
    window.localStorage.setItem(LEGEND_KEY, "yes");
    overlay.remove();
  });
  root.appendChild(overlay);
}
