/**
 * DOM layer: renders session state into the page and forwards user intents.
 *
 * Rendering is a function of the state object; the view keeps no session
 * data of its own beyond what it needs to notice phase changes (to focus
 * the answer box exactly once when answering unlocks).
 */

import { CommandHistory } from "./history.js";
import { SessionState, canAnswer, canType } from "./session.js";

export interface ViewHandlers {
  onCommand(text: string): void;
  onAnswer(token: string): void;
}

function require<T extends Element>(root: Document, selector: string): T {
  const el = root.querySelector<T>(selector);
  if (el === null) {
    throw new Error(`missing element ${selector}`);
  }
  return el;
}

export class PlayView {
  private readonly question: HTMLElement;
  private readonly steps: HTMLElement;
  private readonly banner: HTMLElement;
  private readonly transcript: HTMLOListElement;
  private readonly verbs: HTMLElement;
  private readonly commandForm: HTMLFormElement;
  private readonly commandInput: HTMLInputElement;
  private readonly answerForm: HTMLFormElement;
  private readonly answerInput: HTMLInputElement;
  private readonly candidates: HTMLDataListElement;
  private readonly result: HTMLElement;
  private readonly history = new CommandHistory();
  private lastPhase = "idle";
  private renderedEntries = 0;
  private renderedVerbs = false;

  constructor(root: Document, private readonly handlers: ViewHandlers) {
    this.question = require(root, "#question");
    this.steps = require(root, "#steps-remaining");
    this.banner = require(root, "#banner");
    this.transcript = require(root, "#transcript");
    this.verbs = require(root, "#verbs");
    this.commandForm = require(root, "#command-form");
    this.commandInput = require(root, "#command");
    this.answerForm = require(root, "#answer-form");
    this.answerInput = require(root, "#answer");
    this.candidates = require(root, "#candidates");
    this.result = require(root, "#result");

    this.commandForm.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = this.commandInput.value.trim();
      if (text !== "") {
        this.history.push(text);
        this.commandInput.value = "";
        this.handlers.onCommand(text);
      }
    });
    this.commandInput.addEventListener("keydown", (event) => {
      if (event.key === "ArrowUp") {
        event.preventDefault();
        this.commandInput.value = this.history.up(this.commandInput.value);
      } else if (event.key === "ArrowDown") {
        event.preventDefault();
        this.commandInput.value = this.history.down();
      }
    });
    this.answerForm.addEventListener("submit", (event) => {
      event.preventDefault();
      const token = this.answerInput.value.trim();
      if (token !== "") {
        this.handlers.onAnswer(token);
      }
    });
  }

  render(state: SessionState): void {
    this.question.textContent = state.question;
    this.steps.textContent = String(state.stepsRemaining);

    this.banner.hidden = state.banner === null;
    this.banner.textContent = state.banner ?? "";

    for (const entry of state.transcript.slice(this.renderedEntries)) {
      const li = document.createElement("li");
      li.className = entry.kind;
      li.textContent = entry.text;
      this.transcript.appendChild(li);
    }
    if (state.transcript.length !== this.renderedEntries) {
      this.renderedEntries = state.transcript.length;
      this.transcript.scrollTop = this.transcript.scrollHeight;
    }

    if (!this.renderedVerbs && state.verbs.length > 0) {
      this.renderedVerbs = true;
      for (const verb of state.verbs) {
        const button = document.createElement("button");
        button.type = "button";
        button.textContent = verb;
        button.addEventListener("click", () => {
          this.commandInput.value = verb + " ";
          this.commandInput.focus();
        });
        this.verbs.appendChild(button);
      }
    }

    const typing = canType(state);
    this.commandInput.disabled = !typing;
    this.commandForm.hidden = state.phase === "finished" || state.phase === "lost";

    const answering = canAnswer(state);
    this.answerForm.hidden = !answering;
    if (answering && this.lastPhase !== "awaiting-answer") {
      this.candidates.replaceChildren(
        ...state.answerCandidates.map((token) => {
          const option = document.createElement("option");
          option.value = token;
          return option;
        }),
      );
      this.answerInput.focus();
    }

    if (state.result !== null) {
      const info = state.result.sufficient_info;
      const total = info.base + info.subject_seen + info.coverage;
      const verdict = state.result.correct ? "Correct!" : "Wrong.";
      this.result.hidden = false;
      this.result.textContent =
        `${verdict} You answered "${state.result.answer}"; ` +
        `the answer was "${state.result.ground_truth}". ` +
        `Information score ${total.toFixed(3)}.`;
    }

    this.lastPhase = state.phase;
  }
}
