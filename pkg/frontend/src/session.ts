// Session state and transitions. Pure data in, new view out; every diagram
// string is the exact byte body served by the core, never recomputed here.

import {
  CoreApi,
  FeedbackReportJson,
  GradeRejection,
  TraceJson,
} from "./api.js";

export type Mode = "observe" | "predict";

export interface SessionView {
  trace: TraceJson;
  program: string;
  currentStep: number;
  mode: Mode;
  /** byte-exact body of /api/diagram?step=currentStep&format=svg */
  diagramSvg: string;
  /** the student's editable VPS-D text (predict mode) */
  pendingAnswer: string;
  lastReport: FeedbackReportJson | null;
  /** the true next-step diagram, revealed after a grade round */
  revealSvg: string | null;
  /** transient banner: clamped steps, grade errors, connection problems */
  notice: string | null;
  /** monotonically increasing token; stale grade responses are discarded */
  gradeToken: number;
}

export function lastStep(view: SessionView): number {
  return view.trace.events.length - 1;
}

export function canStep(view: SessionView): boolean {
  return view.trace.events.length > 1;
}

export function clampStep(view: SessionView, target: number): number {
  return Math.max(0, Math.min(lastStep(view), target));
}

export function currentEvent(view: SessionView) {
  return view.trace.events[view.currentStep];
}

/** The caption under the diagram: the event's description, or the runtime
 * error message when the final event halted with one. */
export function caption(view: SessionView): string {
  const event = currentEvent(view);
  if (event.state.status === "error" && event.state.error) {
    return `${event.description} (${event.state.error})`;
  }
  return event.description;
}

export async function loadSession(api: CoreApi): Promise<SessionView> {
  const [program, trace] = await Promise.all([api.program(), api.trace()]);
  const diagramSvg = await api.diagramSvg(0);
  return {
    trace,
    program,
    currentStep: 0,
    mode: "observe",
    diagramSvg,
    pendingAnswer: "",
    lastReport: null,
    revealSvg: null,
    notice: null,
    gradeToken: 0,
  };
}

export async function stepTo(
  api: CoreApi,
  view: SessionView,
  target: number,
): Promise<SessionView> {
  const clamped = clampStep(view, target);
  const notice =
    clamped === target ? null : `step ${target} is out of range; showing step ${clamped}`;
  if (clamped === view.currentStep) {
    return { ...view, notice };
  }
  const diagramSvg = await api.diagramSvg(clamped);
  return {
    ...view,
    currentStep: clamped,
    diagramSvg,
    notice,
    lastReport: null,
    revealSvg: null,
  };
}

export function stepNext(api: CoreApi, view: SessionView): Promise<SessionView> {
  return stepTo(api, view, view.currentStep + 1);
}

export function stepPrev(api: CoreApi, view: SessionView): Promise<SessionView> {
  return stepTo(api, view, view.currentStep - 1);
}

/** Switch to predict mode; the editor starts from the CURRENT step's
 * machine-serialized VPS-D so the student edits the delta to the next step. */
export async function enterPredict(api: CoreApi, view: SessionView): Promise<SessionView> {
  if (view.currentStep >= lastStep(view)) {
    return { ...view, notice: "already at the last step; nothing left to predict" };
  }
  const pendingAnswer = await api.diagramVpsd(view.currentStep);
  return { ...view, mode: "predict", pendingAnswer, lastReport: null, revealSvg: null };
}

export function exitPredict(view: SessionView): SessionView {
  return { ...view, mode: "observe", lastReport: null, revealSvg: null, notice: null };
}

export function editAnswer(view: SessionView, text: string): SessionView {
  return { ...view, pendingAnswer: text };
}

export interface PredictionOutcome {
  view: SessionView;
  /** false when a newer request superseded this one */
  applied: boolean;
}

/** Mark a grade request as in flight (bumps the token synchronously, so a
 * later submission supersedes this one). Apply the returned view before
 * awaiting resolvePrediction. */
export function beginPrediction(view: SessionView): SessionView | null {
  if (view.mode !== "predict" || view.pendingAnswer.trim() === "") {
    return null;
  }
  return { ...view, gradeToken: view.gradeToken + 1, notice: null };
}

/** Grade the pending answer against step currentStep+1; on success the true
 * diagram is revealed next to the student's answer. A stale response (the
 * student re-submitted first) is discarded: `current` supplies the latest
 * view at resolution time. */
export async function resolvePrediction(
  api: CoreApi,
  submitted: SessionView,
  current: () => SessionView,
): Promise<PredictionOutcome> {
  const token = submitted.gradeToken;
  const target = submitted.currentStep + 1;
  let report: FeedbackReportJson;
  let revealSvg: string;
  try {
    report = await api.grade(target, submitted.pendingAnswer);
    revealSvg = await api.diagramSvg(target);
  } catch (err) {
    if (current().gradeToken > token) {
      return { view: current(), applied: false };
    }
    if (err instanceof GradeRejection) {
      const where = err.line === null ? "" : ` (line ${err.line})`;
      return {
        view: { ...current(), notice: `answer not accepted${where}: ${err.message}` },
        applied: true,
      };
    }
    throw err;
  }
  if (current().gradeToken > token) {
    return { view: current(), applied: false };
  }
  return {
    view: { ...submitted, lastReport: report, revealSvg },
    applied: true,
  };
}
