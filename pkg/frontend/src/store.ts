import { ApiError, ElenchusClient } from "./client.js";
import type {
  DiscardedItem,
  EventBody,
  NewProposition,
  Snapshot,
  TensionView,
} from "./types.js";

export interface ConsoleState {
  sessionId: string | null;
  snapshot: Snapshot | null;
  oracleBusy: boolean;
  suggestions: NewProposition[];
  discards: DiscardedItem[];
  lastError: string | null;
}

export type Listener = (state: ConsoleState) => void;

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

function emptyState(): ConsoleState {
  return {
    sessionId: null,
    snapshot: null,
    oracleBusy: false,
    suggestions: [],
    discards: [],
    lastError: null,
  };
}

// Local prediction of what the server will do with an event. Only has to be
// close: every successful send is followed by an authoritative refresh, and
// every failed send rolls back to the pre-send snapshot.
export function predict(snapshot: Snapshot, event: EventBody): Snapshot {
  const next: Snapshot = structuredClone(snapshot);
  next.lastSeq += 1;
  const pos = next.position;
  switch (event.kind) {
    case "commit":
    case "deny": {
      const side = event.kind === "commit" ? pos.commitments : pos.denials;
      if (!side.includes(event.id)) {
        side.push(event.id);
        side.sort();
      }
      next.propositions.push({ id: event.id, text: event.text, status: "active" });
      break;
    }
    case "retract": {
      pos.commitments = pos.commitments.filter((a) => a !== event.id);
      pos.denials = pos.denials.filter((a) => a !== event.id);
      for (const p of next.propositions) {
        if (p.id === event.id) p.status = "retracted";
      }
      next.implications = next.implications.filter(
        (i) => !i.lhs.includes(event.id) && !i.rhs.includes(event.id),
      );
      for (const t of next.openTensions) {
        t.lhs = t.lhs.filter((a) => a !== event.id);
        t.rhs = t.rhs.filter((a) => a !== event.id);
        if (t.lhs.length === 0 && t.rhs.length === 0) t.status = "dropped";
      }
      next.openTensions = next.openTensions.filter((t) => t.status === "open");
      break;
    }
    case "accept_tension": {
      const tension = next.openTensions.find((t) => t.id === event.tensionId);
      if (!tension) break;
      const resolution = event.resolution;
      for (const atom of resolution.retracted ?? []) {
        pos.commitments = pos.commitments.filter((a) => a !== atom);
        pos.denials = pos.denials.filter((a) => a !== atom);
      }
      if (resolution.added && resolution.added.side === "commit") {
        pos.commitments.push(resolution.added.id);
        pos.commitments.sort();
      }
      const endorsed = resolution.endorsed ?? { lhs: tension.lhs, rhs: tension.rhs };
      const retracted = new Set(resolution.retracted ?? []);
      const touchesRetracted =
        endorsed.lhs.some((a) => retracted.has(a)) ||
        endorsed.rhs.some((a) => retracted.has(a));
      if (!touchesRetracted) {
        next.implications.push({
          lhs: [...endorsed.lhs],
          rhs: [...endorsed.rhs],
          provenance: tension.id,
        });
      }
      next.openTensions = next.openTensions.filter((t) => t.id !== tension.id);
      markTension(next.tensions, tension.id, "accepted");
      break;
    }
    case "contest_tension": {
      next.openTensions = next.openTensions.filter((t) => t.id !== event.tensionId);
      markTension(next.tensions, event.tensionId, "contested");
      break;
    }
    case "resolve_challenge": {
      next.openChallenges = next.openChallenges.filter(
        (c) => c.id !== event.challengeId,
      );
      for (const c of next.challenges) {
        if (c.id === event.challengeId) c.status = "resolved";
      }
      break;
    }
  }
  return next;
}

function markTension(tensions: TensionView[], id: string, status: string): void {
  for (const t of tensions) {
    if (t.id === id) t.status = status;
  }
}

export class SessionConsole {
  private state: ConsoleState = emptyState();
  private listeners: Listener[] = [];

  constructor(
    private readonly client: ElenchusClient,
    private readonly pollMs = 150,
  ) {}

  getState(): ConsoleState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<ConsoleState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  async open(name: string): Promise<string> {
    const { sessionId } = await this.client.createSession(name);
    this.set({ sessionId, lastError: null });
    await this.refresh();
    return sessionId;
  }

  async attach(sessionId: string): Promise<void> {
    this.set({ sessionId, lastError: null });
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.state.sessionId) return;
    const doc = await this.client.getSession(this.state.sessionId);
    this.set({ snapshot: doc });
  }

  // Optimistic send: the predicted snapshot is shown immediately; a server
  // rejection restores the exact pre-send snapshot and records the error.
  async send(event: EventBody): Promise<boolean> {
    const { sessionId, snapshot } = this.state;
    if (!sessionId || !snapshot) throw new Error("no session attached");
    const before = snapshot;
    this.set({ snapshot: predict(snapshot, event), lastError: null });
    try {
      await this.client.appendEvent(sessionId, event);
    } catch (err) {
      const detail =
        err instanceof ApiError ? `${err.code}: ${err.body.detail ?? ""}` : String(err);
      this.set({ snapshot: before, lastError: detail });
      return false;
    }
    await this.refresh();
    return true;
  }

  async consultOracle(): Promise<boolean> {
    const { sessionId } = this.state;
    if (!sessionId) throw new Error("no session attached");
    this.set({ oracleBusy: true, lastError: null, suggestions: [], discards: [] });
    try {
      await this.client.requestOracle(sessionId);
      for (;;) {
        const status = await this.client.getProposals(sessionId);
        if (status.status === "pending") {
          await sleep(this.pollMs);
          continue;
        }
        if (status.status === "ready") {
          this.set({
            suggestions: status.newPropositions,
            discards: status.discarded,
          });
        }
        break;
      }
      await this.refresh();
      return true;
    } catch (err) {
      const detail =
        err instanceof ApiError ? `${err.code}: ${err.body.detail ?? ""}` : String(err);
      this.set({ lastError: detail });
      return false;
    } finally {
      this.set({ oracleBusy: false });
    }
  }
}
