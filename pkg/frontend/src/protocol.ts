/**
 * Frame shapes for the play API.
 *
 * The client renders exactly what the server sends; every type here mirrors
 * one wire frame, and the guards reject anything that does not match so a
 * confused server surfaces as an error banner instead of a blank screen.
 */

export interface SessionRequest {
  difficulty?: string;
  qtype?: string;
  mode?: string;
  seed?: number;
  question_seed?: number;
  max_steps?: number;
}

export interface SessionFrame {
  type: "session";
  session_id: string;
  question: string;
  qtype: string;
  mode: string;
  max_steps: number;
  seed: number;
  question_seed: number;
  observation: string;
  steps_remaining: number;
  done: boolean;
  answer_candidates: string[];
  lexicons: { actions?: string[]; modifiers?: string[]; objects?: string[] };
}

export interface ObsFrame {
  type: "obs";
  step: number;
  observation: string;
  feedback: string;
  done: boolean;
  steps_remaining: number;
}

export interface ErrorFrame {
  type: "error";
  message: string;
}

export interface ResultFrame {
  type: "result";
  answer: string;
  correct: boolean;
  ground_truth: string;
  sufficient_info: { base: number; subject_seen: number; coverage: number };
}

function isObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null;
}

export function isSessionFrame(value: unknown): value is SessionFrame {
  return (
    isObject(value) &&
    value.type === "session" &&
    typeof value.session_id === "string" &&
    typeof value.question === "string" &&
    typeof value.observation === "string" &&
    typeof value.steps_remaining === "number" &&
    Array.isArray(value.answer_candidates)
  );
}

export function isObsFrame(value: unknown): value is ObsFrame {
  return (
    isObject(value) &&
    value.type === "obs" &&
    typeof value.step === "number" &&
    typeof value.observation === "string" &&
    typeof value.feedback === "string" &&
    typeof value.done === "boolean" &&
    typeof value.steps_remaining === "number"
  );
}

export function isErrorFrame(value: unknown): value is ErrorFrame {
  return isObject(value) && value.type === "error" && typeof value.message === "string";
}

export function isResultFrame(value: unknown): value is ResultFrame {
  return (
    isObject(value) &&
    value.type === "result" &&
    typeof value.answer === "string" &&
    typeof value.correct === "boolean" &&
    typeof value.ground_truth === "string"
  );
}
