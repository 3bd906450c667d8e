/**
 * Browser entry point: the setup form builds a session request, then the
 * controller and view take over for the rest of the episode.
 */

import { PlayClient } from "./client.js";
import { SessionRequest } from "./protocol.js";
import { PlayView } from "./ui.js";

function intOrUndefined(value: string): number | undefined {
  return /^-?\d+$/.test(value.trim()) ? Number(value.trim()) : undefined;
}

function main(): void {
  const setup = document.querySelector<HTMLElement>("#setup");
  const play = document.querySelector<HTMLElement>("#play");
  const form = document.querySelector<HTMLFormElement>("#setup-form");
  const setupError = document.querySelector<HTMLElement>("#setup-error");
  if (!setup || !play || !form || !setupError) {
    throw new Error("page skeleton is incomplete");
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const select = (id: string) =>
      (document.querySelector<HTMLSelectElement>(id) as HTMLSelectElement).value;
    const input = (id: string) =>
      (document.querySelector<HTMLInputElement>(id) as HTMLInputElement).value;

    const request: SessionRequest = {
      difficulty: select("#difficulty"),
      qtype: select("#qtype"),
      mode: "test",
    };
    const seed = intOrUndefined(input("#seed"));
    const questionSeed = intOrUndefined(input("#question-seed"));
    if (seed !== undefined) {
      request.seed = seed;
    }
    if (questionSeed !== undefined) {
      request.question_seed = questionSeed;
    }

    const client: PlayClient = new PlayClient({
      baseUrl: window.location.origin,
      socket: WebSocket,
      onChange: (state) => view.render(state),
    });
    const view = new PlayView(document, {
      onCommand: (text) => client.sendCommand(text),
      onAnswer: (token) => {
        client.submitAnswer(token).catch((error: Error) => {
          setupError.hidden = false;
          setupError.textContent = error.message;
        });
      },
    });

    client
      .start(request)
      .then(() => {
        setup.hidden = true;
        play.hidden = false;
      })
      .catch((error: Error) => {
        setupError.hidden = false;
        setupError.textContent = error.message;
      });
  });
}

main();
