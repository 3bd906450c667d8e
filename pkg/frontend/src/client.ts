/**
 * Session controller: plumbs protocol frames between the play API and the
 * pure session state.  Transports are injected (native WebSocket in the
 * browser, anything socket-shaped in tests), so the controller itself runs
 * unchanged in both places and holds no game logic.
 */

import {
  SessionRequest,
  isErrorFrame,
  isObsFrame,
  isResultFrame,
  isSessionFrame,
} from "./protocol.js";
import {
  SessionEvent,
  SessionState,
  canAnswer,
  canType,
  initialState,
  reduce,
} from "./session.js";

/** Loose handler shape so native, `ws`, and fake sockets all fit. */
export type SocketHandler = ((event: any) => void) | null;

export interface SocketLike {
  onopen: SocketHandler;
  onmessage: SocketHandler;
  onclose: SocketHandler;
  onerror: SocketHandler;
  send(data: string): void;
  close(): void;
}

export type SocketCtor = new (url: string) => SocketLike;

export interface PlayClientOptions {
  baseUrl: string;
  socket: SocketCtor;
  fetchFn?: typeof fetch;
  onChange?: (state: SessionState) => void;
  reconnectAttempts?: number;
  reconnectDelayMs?: number;
}

export class PlayClient {
  private current: SessionState = initialState();
  private ws: SocketLike | null = null;
  private closedByUs = false;
  private attempts = 0;
  private readonly baseUrl: string;
  private readonly Socket: SocketCtor;
  private readonly fetchFn: typeof fetch;
  private readonly onChange?: (state: SessionState) => void;
  private readonly maxAttempts: number;
  private readonly reconnectDelayMs: number;

  constructor(options: PlayClientOptions) {
    this.baseUrl = options.baseUrl.replace(/\/$/, "");
    this.Socket = options.socket;
    this.fetchFn = options.fetchFn ?? fetch;
    this.onChange = options.onChange;
    this.maxAttempts = options.reconnectAttempts ?? 2;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 500;
  }

  get state(): SessionState {
    return this.current;
  }

  private dispatch(event: SessionEvent): void {
    this.current = reduce(this.current, event);
    this.onChange?.(this.current);
  }

  async start(request: SessionRequest): Promise<SessionState> {
    const response = await this.fetchFn(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    const body: unknown = await response.json();
    if (!response.ok) {
      throw new Error(detailOf(body) ?? `session request failed (${response.status})`);
    }
    if (!isSessionFrame(body)) {
      throw new Error("server sent something other than a session frame");
    }
    this.dispatch({ kind: "session", frame: body });
    await this.openSocket();
    return this.current;
  }

  /** Send one command; returns false when input is gated off. */
  sendCommand(text: string): boolean {
    const trimmed = text.trim();
    if (trimmed === "" || !canType(this.current) || this.ws === null) {
      return false;
    }
    this.dispatch({ kind: "command-sent", text: trimmed });
    this.ws.send(JSON.stringify({ type: "cmd", text: trimmed }));
    return true;
  }

  async submitAnswer(token: string): Promise<SessionState> {
    if (!canAnswer(this.current)) {
      throw new Error("the episode is still running");
    }
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${this.current.sessionId}/answer`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ token }),
      },
    );
    const body: unknown = await response.json();
    if (!response.ok) {
      throw new Error(detailOf(body) ?? `answer rejected (${response.status})`);
    }
    if (!isResultFrame(body)) {
      throw new Error("server sent something other than a result frame");
    }
    this.dispatch({ kind: "result", frame: body });
    this.teardown();
    return this.current;
  }

  async fetchRecord(): Promise<unknown> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${this.current.sessionId}/record`,
    );
    const body: unknown = await response.json();
    if (!response.ok) {
      throw new Error(detailOf(body) ?? `record unavailable (${response.status})`);
    }
    return body;
  }

  dispose(): void {
    this.teardown();
  }

  private teardown(): void {
    this.closedByUs = true;
    this.ws?.close();
    this.ws = null;
  }

  private socketUrl(): string {
    const wsBase = this.baseUrl.replace(/^http/, "ws");
    return `${wsBase}/sessions/${this.current.sessionId}/stream`;
  }

  private openSocket(): Promise<void> {
    return new Promise((resolve, reject) => {
      let settled = false;
      const ws = new this.Socket(this.socketUrl());
      ws.onopen = () => {
        settled = true;
        this.attempts = 0;
        resolve();
      };
      ws.onmessage = (event) => this.handleFrame(String(event.data));
      ws.onerror = () => {
        // The close event that follows carries the recovery logic.
      };
      ws.onclose = () => {
        this.ws = null;
        if (!settled) {
          settled = true;
          reject(new Error("could not open the session stream"));
          return;
        }
        this.handleSocketClosed();
      };
      this.ws = ws;
    });
  }

  private handleSocketClosed(): void {
    if (this.closedByUs || this.current.phase === "finished") {
      return;
    }
    if (this.attempts >= this.maxAttempts) {
      this.dispatch({ kind: "connection-lost", reason: "the session stream closed" });
      return;
    }
    this.attempts += 1;
    this.dispatch({ kind: "reconnecting", attempt: this.attempts });
    setTimeout(() => {
      this.openSocket()
        .then(() => this.dispatch({ kind: "reconnected" }))
        .catch(() => this.handleSocketClosed());
    }, this.reconnectDelayMs);
  }

  private handleFrame(raw: string): void {
    let frame: unknown;
    try {
      frame = JSON.parse(raw);
    } catch {
      this.dispatch({ kind: "server-error", message: "unreadable frame" });
      return;
    }
    if (isObsFrame(frame)) {
      this.dispatch({ kind: "obs", frame });
    } else if (isErrorFrame(frame)) {
      this.dispatch({ kind: "server-error", message: frame.message });
    }
  }
}

function detailOf(body: unknown): string | null {
  if (typeof body === "object" && body !== null && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    if (typeof detail === "string") {
      return detail;
    }
  }
  return null;
}
