/** Training-session runner: present, respond with arrows, hear feedback. */

import { ApiClient, ApiError } from "./api";
import type { Announcer } from "./a11y";
import type { AudioPlayer, Beeper } from "./audio";
import { button, labeledControl, option } from "./layout";
import { keyToTrainingEvent } from "./keys";
import { t, translate } from "./i18n";
import type { SessionReportJson, SessionStateJson } from "./types";

export class TrainingView {
  readonly root: HTMLElement;

  private api: ApiClient;
  private announcer: Announcer;
  private player: AudioPlayer;
  private beeper: Beeper;

  private blockSelect!: HTMLSelectElement;
  private perClassInput!: HTMLInputElement;
  private seedInput!: HTMLInputElement;
  private modalitySelect!: HTMLSelectElement;
  private replayCheckbox!: HTMLInputElement;
  private skipCheckbox!: HTMLInputElement;
  private startButton!: HTMLButtonElement;

  private stage!: HTMLElement;
  private progressLine!: HTMLElement;
  private promptLine!: HTMLElement;
  private feedbackLine!: HTMLElement;
  private continueButton!: HTMLButtonElement;
  private plotBox!: HTMLElement;
  private reportBox!: HTMLElement;

  private sessionId: string | null = null;
  private state: SessionStateJson | null = null;
  private audioEndedAt: number | null = null;
  private busy = false;

  constructor(
    root: HTMLElement,
    api: ApiClient,
    announcer: Announcer,
    player: AudioPlayer,
    beeper: Beeper,
  ) {
    this.root = root;
    this.api = api;
    this.announcer = announcer;
    this.player = player;
    this.beeper = beeper;
    this.build();
    translate(this.root);
  }

  private build(): void {
    this.root.classList.add("training-view");

    const settings = document.createElement("section");
    settings.className = "group";
    settings.setAttribute("role", "group");
    const heading = document.createElement("h2");
    heading.id = "training-settings-heading";
    heading.dataset.i18n = "training.settings";
    settings.setAttribute("aria-labelledby", heading.id);
    settings.append(heading);

    const block = document.createElement("select");
    block.append(option("1", "training.block_1"), option("2", "training.block_2"), option("3", "training.block_3"));
    const blockField = labeledControl(block, "training.block");
    this.blockSelect = blockField.control;

    const perClass = document.createElement("input");
    perClass.type = "number";
    perClass.min = "1";
    perClass.value = "3";
    const perClassField = labeledControl(perClass, "training.per_class");
    this.perClassInput = perClassField.control;

    const seed = document.createElement("input");
    seed.type = "number";
    seed.value = "7";
    const seedField = labeledControl(seed, "training.seed");
    this.seedInput = seedField.control;

    const modality = document.createElement("select");
    modality.append(option("audio_visual", "training.modality_av"), option("audio_only", "training.modality_audio"));
    const modalityField = labeledControl(modality, "training.modality");
    this.modalitySelect = modalityField.control;

    const replay = document.createElement("input");
    replay.type = "checkbox";
    replay.checked = true;
    const replayField = labeledControl(replay, "training.allow_replay");
    this.replayCheckbox = replayField.control;

    const skip = document.createElement("input");
    skip.type = "checkbox";
    skip.checked = true;
    const skipField = labeledControl(skip, "training.allow_skip");
    this.skipCheckbox = skipField.control;

    this.startButton = button("training.start", () => void this.start());
    settings.append(
      blockField.wrapper,
      perClassField.wrapper,
      seedField.wrapper,
      modalityField.wrapper,
      replayField.wrapper,
      skipField.wrapper,
      this.startButton,
    );

    this.stage = document.createElement("section");
    this.stage.className = "stage";
    this.stage.setAttribute("role", "group");
    const stageHeading = document.createElement("h2");
    stageHeading.id = "training-stage-heading";
    stageHeading.dataset.i18n = "training.intro_title";
    this.stage.setAttribute("aria-labelledby", stageHeading.id);
    this.stage.hidden = true;

    this.progressLine = document.createElement("p");
    this.progressLine.className = "progress";
    this.promptLine = document.createElement("p");
    this.promptLine.className = "prompt";
    this.feedbackLine = document.createElement("p");
    this.feedbackLine.className = "feedback";
    this.plotBox = document.createElement("figure");
    this.plotBox.className = "plot-box";
    this.plotBox.setAttribute("role", "img");
    this.plotBox.dataset.i18nLabel = "training.plot_alt";
    this.plotBox.setAttribute("aria-label", t("training.plot_alt"));
    this.continueButton = button("training.continue", () => void this.continueAfterFeedback());
    this.continueButton.hidden = true;

    this.stage.append(stageHeading, this.progressLine, this.promptLine, this.plotBox, this.feedbackLine, this.continueButton);

    this.reportBox = document.createElement("section");
    this.reportBox.className = "report";
    this.reportBox.hidden = true;

    this.root.append(settings, this.stage, this.reportBox);
  }

  // --- session flow ---------------------------------------------------------

  async start(): Promise<void> {
    try {
      const created = await this.api.createSession({
        block: Number(this.blockSelect.value),
        per_class_count: Math.max(1, Math.floor(Number(this.perClassInput.value))),
        seed: Math.floor(Number(this.seedInput.value)),
        modality: this.modalitySelect.value,
        allow_replay: this.replayCheckbox.checked,
        allow_skip_intro: this.skipCheckbox.checked,
      });
      this.sessionId = created.id;
      this.state = created.state;
      this.reportBox.hidden = true;
      this.reportBox.replaceChildren();
      this.stage.hidden = false;
      this.feedbackLine.textContent = "";
      this.plotBox.replaceChildren();
      this.continueButton.hidden = true;
      this.progressLine.textContent = t("training.progress", {
        current: 1,
        total: created.state.total,
      });
      this.promptLine.textContent = `${t("training.intro_keys")} ${t("training.intro_hint")}`;
      this.announcer.announce(t("status.session_created", { total: created.state.total }));
    } catch (error) {
      this.reportFailure(error);
    }
  }

  get phase(): string | null {
    return this.state?.phase ?? null;
  }

  /** Route a keyboard key according to the current phase. */
  async handleKey(key: string): Promise<void> {
    if (!this.sessionId || !this.state || this.busy) return;
    if (this.state.phase === "feedback" && key === "Enter") {
      await this.continueAfterFeedback();
      return;
    }
    const latency =
      this.audioEndedAt === null ? 0 : Math.round(performance.now() - this.audioEndedAt);
    const event = keyToTrainingEvent(key, this.state.phase, {
      allowReplay: this.state.allow_replay,
      allowSkipIntro: this.state.allow_skip_intro,
      latencyMs: latency,
    });
    if (!event) return;
    try {
      this.busy = true;
      const updated = await this.api.sendSessionEvent(this.sessionId, event);
      this.state = updated.state;
      this.busy = false;
      if (this.state.phase === "presenting") await this.present();
      else if (this.state.phase === "feedback") this.showFeedback();
    } catch (error) {
      this.busy = false;
      this.reportFailure(error);
    }
  }

  /** Play the current stimulus, then tell the service presentation is done. */
  private async present(): Promise<void> {
    if (!this.sessionId || !this.state) return;
    this.feedbackLine.textContent = "";
    this.continueButton.hidden = true;
    this.progressLine.textContent = t("training.progress", {
      current: this.state.cursor + 1,
      total: this.state.total,
    });
    this.promptLine.textContent = t("training.listening");
    const current = this.state.stimuli[this.state.cursor];
    try {
      if (current.modality === "audio_visual") {
        const svg = await this.api.stimulusPlot(this.sessionId);
        this.plotBox.innerHTML = await svg.text();
      } else {
        this.plotBox.replaceChildren();
      }
      const audio = await this.api.stimulusAudio(this.sessionId);
      await this.player.play(audio);
      const updated = await this.api.sendSessionEvent(this.sessionId, { type: "presentation_done" });
      this.state = updated.state;
      this.audioEndedAt = performance.now();
      const replayHint = this.state.allow_replay ? ` ${t("training.replay_hint")}` : "";
      this.promptLine.textContent = t("training.respond") + replayHint;
      this.announcer.announce(t("training.respond"));
    } catch (error) {
      this.reportFailure(error);
    }
  }

  /** Show and announce feedback exactly once, with its confirmation tone. */
  private showFeedback(): void {
    if (!this.state) return;
    const record = this.state.responses[this.state.responses.length - 1];
    const text = record.correct ? t("training.correct") : t("training.incorrect");
    this.feedbackLine.textContent = text;
    this.continueButton.hidden = false;
    this.promptLine.textContent = t("training.continue_hint");
    if (record.correct) this.beeper.correct();
    else this.beeper.incorrect();
    this.announcer.announceAssertive(text);
  }

  private async continueAfterFeedback(): Promise<void> {
    if (!this.sessionId || !this.state || this.state.phase !== "feedback") return;
    try {
      const updated = await this.api.sendSessionEvent(this.sessionId, { type: "feedback_done" });
      this.state = updated.state;
      if (this.state.phase === "presenting") await this.present();
      else if (this.state.phase === "completed") await this.showReport();
    } catch (error) {
      this.reportFailure(error);
    }
  }

  private async showReport(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const report = await this.api.report(this.sessionId);
      this.stage.hidden = true;
      this.reportBox.hidden = false;
      this.reportBox.replaceChildren(this.buildReport(report));
      translate(this.reportBox);
      this.announcer.announce(`${t("training.completed")}: ${report.overall_display}`);
    } catch (error) {
      this.reportFailure(error);
    }
  }

  private buildReport(report: SessionReportJson): HTMLElement {
    const box = document.createElement("div");
    const heading = document.createElement("h2");
    heading.dataset.i18n = "report.title";
    const summary = document.createElement("p");
    summary.textContent =
      `${t("report.total")}: ${report.total} — ${t("report.correct")}: ${report.correct} — ` +
      `${t("report.accuracy")}: ${report.overall_display} — ` +
      `${t("report.median_latency")}: ${report.median_latency_ms}`;
    const table = document.createElement("table");
    const head = document.createElement("tr");
    for (const key of ["report.class", "report.total", "report.correct", "report.accuracy"]) {
      const th = document.createElement("th");
      th.scope = "col";
      th.dataset.i18n = key;
      head.append(th);
    }
    table.append(head);
    for (const [cls, score] of Object.entries(report.per_class)) {
      const tr = document.createElement("tr");
      const name = document.createElement("th");
      name.scope = "row";
      name.dataset.i18n = `report.class_${cls}`;
      const n = document.createElement("td");
      n.textContent = String(score.n);
      const correct = document.createElement("td");
      correct.textContent = String(score.correct);
      const pct = document.createElement("td");
      pct.textContent = `${Math.round(score.pct)}%`;
      tr.append(name, n, correct, pct);
      table.append(tr);
    }
    box.append(heading, summary, table);
    return box;
  }

  private reportFailure(error: unknown): void {
    const message = error instanceof ApiError ? error.message : String(error);
    this.announcer.announce(t("status.error", { message }));
    this.promptLine.textContent = t("status.error", { message });
  }
}
