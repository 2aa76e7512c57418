import type { ElenchusClient } from "./client.js";
import type { SessionConsole } from "./store.js";
import type { ConsoleState, } from "./store.js";
import type { Resolution, TensionView } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function sequentText(lhs: string[], rhs: string[]): string {
  return `${lhs.join(", ")} |- ${rhs.join(", ")}`;
}

export function renderApp(
  root: HTMLElement,
  session: SessionConsole,
  client: ElenchusClient,
): void {
  const status = el("div", { class: "status" });
  const errorBox = el("div", { class: "error", hidden: "hidden" });
  const position = el("div", { class: "panel" });
  const tensions = el("div", { class: "panel" });
  const challenges = el("div", { class: "panel" });
  const implications = el("div", { class: "panel" });
  const suggestions = el("div", { class: "panel" });
  const proveOut = el("pre", { class: "prove-out" });

  // session controls
  const nameInput = el("input", { placeholder: "session name", value: "console" });
  const openButton = el("button", {}, "new session");
  openButton.addEventListener("click", () => {
    void session.open(nameInput.value || "console");
  });

  // commit / deny form
  const idInput = el("input", { placeholder: "id (e.g. p1)" });
  const textInput = el("input", { placeholder: "proposition text", size: "40" });
  const commitButton = el("button", {}, "commit");
  const denyButton = el("button", {}, "deny");
  const sendPosition = (kind: "commit" | "deny") => {
    if (!idInput.value || !textInput.value) return;
    void session.send({
      actor: "respondent",
      kind,
      id: idInput.value.trim(),
      text: textInput.value.trim(),
    });
    idInput.value = "";
    textInput.value = "";
  };
  commitButton.addEventListener("click", () => sendPosition("commit"));
  denyButton.addEventListener("click", () => sendPosition("deny"));

  const oracleButton = el("button", {}, "consult opponent");
  oracleButton.addEventListener("click", () => {
    void session.consultOracle();
  });

  // prove box
  const proveInput = el("input", { placeholder: "sequent, e.g. p2 |- p18", size: "30" });
  const proveButton = el("button", {}, "prove");
  proveButton.addEventListener("click", () => {
    const state = session.getState();
    if (!state.sessionId || !proveInput.value) return;
    client
      .prove({ sessionId: state.sessionId, sequent: proveInput.value, proof: true })
      .then((result) => {
        proveOut.textContent = JSON.stringify(result, null, 2);
      })
      .catch((err: unknown) => {
        proveOut.textContent = String(err);
      });
  });

  root.append(
    el("div", { class: "toolbar" }, nameInput, openButton, status),
    errorBox,
    el("div", { class: "toolbar" }, idInput, textInput, commitButton, denyButton, oracleButton),
    el("div", { class: "columns" }, position, tensions, challenges),
    el("div", { class: "columns" }, implications, suggestions),
    el("div", { class: "toolbar" }, proveInput, proveButton),
    proveOut,
  );

  const renderTension = (t: TensionView): HTMLElement => {
    const line = el(
      "div",
      { class: "tension" },
      el("code", {}, `${t.id}: ${sequentText(t.lhs, t.rhs)}`),
    );
    if (t.rationale) line.append(el("em", {}, ` ${t.rationale}`));

    const retractButton = el("button", {}, "accept: retract lhs");
    retractButton.addEventListener("click", () => {
      const resolution: Resolution = { kind: "retract", retracted: [...t.lhs] };
      void session.send({
        actor: "respondent",
        kind: "accept_tension",
        tensionId: t.id,
        resolution,
      });
    });

    const refineButton = el("button", {}, "accept: refine");
    refineButton.addEventListener("click", () => {
      const target = t.rhs[0];
      if (!target) return;
      const text = window.prompt(`text for refined proposition ${target}`, target);
      if (!text) return;
      const resolution: Resolution = {
        kind: "refine",
        added: { id: target, text, side: "commit" },
      };
      void session.send({
        actor: "respondent",
        kind: "accept_tension",
        tensionId: t.id,
        resolution,
      });
    });

    const contestButton = el("button", {}, "contest");
    contestButton.addEventListener("click", () => {
      void session.send({
        actor: "respondent",
        kind: "contest_tension",
        tensionId: t.id,
      });
    });

    line.append(" ", retractButton, " ", refineButton, " ", contestButton);
    return line;
  };

  const update = (state: ConsoleState): void => {
    const snap = state.snapshot;
    status.textContent = state.sessionId
      ? `session ${state.sessionId}, seq ${snap?.lastSeq ?? 0}` +
        (state.oracleBusy ? ", opponent thinking..." : "")
      : "no session";
    errorBox.hidden = !state.lastError;
    errorBox.textContent = state.lastError ?? "";

    position.replaceChildren(el("h3", {}, "position"));
    tensions.replaceChildren(el("h3", {}, "open tensions"));
    challenges.replaceChildren(el("h3", {}, "open challenges"));
    implications.replaceChildren(el("h3", {}, "endorsed implications"));
    suggestions.replaceChildren(el("h3", {}, "opponent suggestions"));
    if (!snap) return;

    for (const side of ["commitments", "denials"] as const) {
      const list = el("ul", {});
      for (const atom of snap.position[side]) {
        const text = snap.propositions.find((p) => p.id === atom)?.text ?? "";
        const item = el("li", {}, el("code", {}, atom), ` ${text} `);
        const retract = el("button", {}, "retract");
        retract.addEventListener("click", () => {
          void session.send({ actor: "respondent", kind: "retract", id: atom });
        });
        item.append(retract);
        list.append(item);
      }
      position.append(el("h4", {}, side), list);
    }

    for (const t of snap.openTensions) tensions.append(renderTension(t));

    for (const c of snap.openChallenges) {
      const line = el(
        "div",
        { class: "challenge" },
        el("code", {}, c.id),
        ` ${c.question} [${c.targets.join(", ")}] `,
      );
      const resolveButton = el("button", {}, "resolve");
      resolveButton.addEventListener("click", () => {
        void session.send({
          actor: "respondent",
          kind: "resolve_challenge",
          challengeId: c.id,
        });
      });
      line.append(resolveButton);
      challenges.append(line);
    }

    const implicationList = el("ul", {});
    for (const i of snap.implications) {
      implicationList.append(
        el(
          "li",
          {},
          el("code", {}, sequentText(i.lhs, i.rhs)),
          el("small", {}, ` from ${i.provenance}`),
        ),
      );
    }
    implications.append(implicationList);

    for (const p of state.suggestions) {
      const line = el(
        "div",
        {},
        el("code", {}, p.id),
        ` ${p.text} `,
      );
      const takeButton = el("button", {}, p.suggestedSide);
      takeButton.addEventListener("click", () => {
        void session.send({
          actor: "respondent",
          kind: p.suggestedSide === "deny" ? "deny" : "commit",
          id: p.id,
          text: p.text,
        });
      });
      line.append(takeButton);
      suggestions.append(line);
    }
    for (const d of state.discards) {
      suggestions.append(
        el("div", { class: "discard" }, `discarded ${d.item}: ${d.reason}`),
      );
    }
  };

  session.subscribe(update);
  update(session.getState());
}
