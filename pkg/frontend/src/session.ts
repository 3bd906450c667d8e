/**
 * Pure session state: a reducer over protocol frames and user intents.
 *
 * All game knowledge lives server-side; this module only accumulates what
 * came over the wire (transcript lines, the step counter, the done flag)
 * and derives what the user may do next.  Keeping it pure makes the
 * transcript-equals-record property directly testable.
 */

import {
  ObsFrame,
  ResultFrame,
  SessionFrame,
} from "./protocol.js";

export type Phase = "idle" | "connecting" | "playing" | "awaiting-answer" | "finished" | "lost";

export interface TranscriptEntry {
  kind: "question" | "observation" | "command" | "feedback" | "notice";
  text: string;
}

/** One completed step, mirroring the server record's outcome rows. */
export interface StepTrace {
  step: number;
  command: string | null;
  feedback: string;
  observation: string;
}

export interface SessionState {
  phase: Phase;
  sessionId: string;
  question: string;
  qtype: string;
  mode: string;
  maxSteps: number;
  stepsRemaining: number;
  lastStep: number;
  transcript: TranscriptEntry[];
  trace: StepTrace[];
  answerCandidates: string[];
  verbs: string[];
  pendingCommand: string | null;
  banner: string | null;
  result: ResultFrame | null;
}

export type SessionEvent =
  | { kind: "session"; frame: SessionFrame }
  | { kind: "command-sent"; text: string }
  | { kind: "obs"; frame: ObsFrame }
  | { kind: "server-error"; message: string }
  | { kind: "result"; frame: ResultFrame }
  | { kind: "reconnecting"; attempt: number }
  | { kind: "reconnected" }
  | { kind: "connection-lost"; reason: string };

export function initialState(): SessionState {
  return {
    phase: "idle",
    sessionId: "",
    question: "",
    qtype: "",
    mode: "",
    maxSteps: 0,
    stepsRemaining: 0,
    lastStep: -1,
    transcript: [],
    trace: [],
    answerCandidates: [],
    verbs: [],
    pendingCommand: null,
    banner: null,
    result: null,
  };
}

/** Typing is allowed while playing with budget left and no command in flight. */
export function canType(state: SessionState): boolean {
  return (
    state.phase === "playing" &&
    state.stepsRemaining > 0 &&
    state.pendingCommand === null
  );
}

/** The answer box unlocks once the server reports the episode done. */
export function canAnswer(state: SessionState): boolean {
  return state.phase === "awaiting-answer";
}

export function reduce(state: SessionState, event: SessionEvent): SessionState {
  switch (event.kind) {
    case "session": {
      const frame = event.frame;
      return {
        ...initialState(),
        phase: frame.done ? "awaiting-answer" : "playing",
        sessionId: frame.session_id,
        question: frame.question,
        qtype: frame.qtype,
        mode: frame.mode,
        maxSteps: frame.max_steps,
        stepsRemaining: frame.steps_remaining,
        lastStep: 0,
        transcript: [
          { kind: "question", text: frame.question },
          { kind: "observation", text: frame.observation },
        ],
        trace: [
          { step: 0, command: null, feedback: "", observation: frame.observation },
        ],
        answerCandidates: frame.answer_candidates.slice(),
        verbs: (frame.lexicons.actions ?? []).slice(),
      };
    }
    case "command-sent": {
      if (!canType(state)) {
        return state;
      }
      return {
        ...state,
        pendingCommand: event.text,
        transcript: [...state.transcript, { kind: "command", text: event.text }],
      };
    }
    case "obs": {
      const frame = event.frame;
      if (frame.step <= state.lastStep) {
        // A replayed frame after reconnect: refresh counters, append nothing.
        return {
          ...state,
          stepsRemaining: frame.steps_remaining,
          phase: frame.done && state.phase === "playing" ? "awaiting-answer" : state.phase,
          banner: null,
        };
      }
      const transcript = [...state.transcript];
      if (frame.feedback !== "") {
        transcript.push({ kind: "feedback", text: frame.feedback });
      }
      transcript.push({ kind: "observation", text: frame.observation });
      return {
        ...state,
        phase: frame.done ? "awaiting-answer" : state.phase,
        stepsRemaining: frame.steps_remaining,
        lastStep: frame.step,
        pendingCommand: null,
        banner: null,
        transcript,
        trace: [
          ...state.trace,
          {
            step: frame.step,
            command: state.pendingCommand,
            feedback: frame.feedback,
            observation: frame.observation,
          },
        ],
      };
    }
    case "server-error": {
      return {
        ...state,
        pendingCommand: null,
        transcript: [
          ...state.transcript,
          { kind: "notice", text: `server: ${event.message}` },
        ],
      };
    }
    case "result": {
      return { ...state, phase: "finished", result: event.frame };
    }
    case "reconnecting": {
      return { ...state, banner: `connection lost, reconnecting (attempt ${event.attempt})` };
    }
    case "reconnected": {
      return { ...state, banner: null };
    }
    case "connection-lost": {
      if (state.phase === "finished") {
        return state;
      }
      return { ...state, phase: "lost", banner: `connection lost: ${event.reason}` };
    }
  }
}
