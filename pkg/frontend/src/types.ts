// Wire types for the elenchus HTTP service. Field names mirror the JSON the
// service emits; everything here is plain data, no behavior.

export interface Position {
  commitments: string[];
  denials: string[];
}

export interface PropositionView {
  id: string;
  text: string;
  status: "active" | "retracted" | string;
}

export interface Resolution {
  kind: "retract" | "refine";
  retracted?: string[];
  added?: { id: string; text: string; side: "commit" | "deny" };
  endorsed?: { lhs: string[]; rhs: string[] };
}

export interface TensionView {
  id: string;
  lhs: string[];
  rhs: string[];
  status: "open" | "accepted" | "contested" | "dropped" | string;
  rationale?: string;
  resolution?: Resolution;
}

export interface ChallengeView {
  id: string;
  question: string;
  targets: string[];
  status: "open" | "resolved" | string;
  note?: string;
}

export interface Implication {
  lhs: string[];
  rhs: string[];
  provenance: string;
}

export interface Snapshot {
  lastSeq: number;
  position: Position;
  propositions: PropositionView[];
  openTensions: TensionView[];
  openChallenges: ChallengeView[];
  tensions: TensionView[];
  challenges: ChallengeView[];
  implications: Implication[];
}

export interface SessionSummary {
  sessionId: string;
  name: string;
  lastSeq: number;
}

export interface SessionDoc extends Snapshot {
  sessionId: string;
  name: string;
}

// Event bodies the console sends. The server assigns seq and timestamp.
export type EventBody =
  | { actor: "respondent"; kind: "commit"; id: string; text: string }
  | { actor: "respondent"; kind: "deny"; id: string; text: string }
  | { actor: "respondent"; kind: "retract"; id: string }
  | { actor: "respondent"; kind: "accept_tension"; tensionId: string; resolution: Resolution }
  | { actor: "respondent"; kind: "contest_tension"; tensionId: string }
  | { actor: "respondent"; kind: "resolve_challenge"; challengeId: string; note?: string };

export interface AppliedEvent {
  seq: number;
  actor: string;
  kind: string;
  timestamp: string;
  [extra: string]: unknown;
}

export interface NewProposition {
  id: string;
  text: string;
  suggestedSide: "commit" | "deny";
}

export interface DiscardedItem {
  item: string;
  reason: string;
  code: string;
}

export type ProposalStatus =
  | { status: "none" }
  | { status: "pending" }
  | {
      status: "ready";
      proposal: unknown;
      appliedEvents: AppliedEvent[];
      newPropositions: NewProposition[];
      discarded: DiscardedItem[];
    };

export interface BaseDoc {
  atoms: string[];
  implications: Implication[];
}

export interface ProveResponse {
  sequent: string;
  derivable: boolean;
  stats: { nodes: number; memoHits: number };
  proof?: ProofNode;
}

export interface ProofNode {
  sequent: string;
  rule: string;
  premises: ProofNode[];
}

export interface AnalysisDoc {
  containmentAudit: Record<string, boolean>;
  transitivityGaps: string[][];
  monotonicityDefeats: { lhs: string[]; rhs: string[]; extra: string }[];
}

export interface ApiErrorBody {
  error: string;
  detail?: string;
  offset?: number;
  atoms?: string[];
}
