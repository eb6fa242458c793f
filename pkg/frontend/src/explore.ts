/** Interactive exploration: load a table, shape it, look at it, listen to it. */

import { ApiClient, ApiError } from "./api";
import type { Announcer } from "./a11y";
import type { AudioPlayer } from "./audio";
import { button, createGroup, labeledControl, option } from "./layout";
import { t, translate } from "./i18n";
import type { DatasetDetail, RenderBody, TransformStep } from "./types";

const GRID_ROW_LIMIT = 200;

function readFileText(file: File): Promise<string> {
  if (typeof file.text === "function") return file.text();
  return new Promise((resolve, reject) => {
    const reader = new FileReader();
    reader.onload = () => resolve(String(reader.result));
    reader.onerror = () => reject(reader.error);
    reader.readAsText(file);
  });
}

export class ExploreView {
  readonly root: HTMLElement;

  private api: ApiClient;
  private announcer: Announcer;
  private player: AudioPlayer;

  private datasetSelect!: HTMLSelectElement;
  private fileInput!: HTMLInputElement;
  private playButton!: HTMLButtonElement;
  private downloadLink!: HTMLAnchorElement;
  private xSelect!: HTMLSelectElement;
  private ySelect!: HTMLSelectElement;
  private plotBox!: HTMLElement;
  private gridBox!: HTMLElement;
  private pipelineList!: HTMLUListElement;
  private smoothWindowInput!: HTMLInputElement;
  private cutLoInput!: HTMLInputElement;
  private cutHiInput!: HTMLInputElement;
  private waveformSelect!: HTMLSelectElement;
  private mappingSelect!: HTMLSelectElement;
  private fMinInput!: HTMLInputElement;
  private fMaxInput!: HTMLInputElement;
  private noteDurInput!: HTMLInputElement;
  private statusLine!: HTMLElement;

  private dataset: DatasetDetail | null = null;
  private steps: TransformStep[] = [];
  private audioBlob: Blob | null = null;
  private audioStale = true;

  private plotSeq = 0;
  private plotAbort: AbortController | null = null;
  private playSeq = 0;

  constructor(root: HTMLElement, api: ApiClient, announcer: Announcer, player: AudioPlayer) {
    this.root = root;
    this.api = api;
    this.announcer = announcer;
    this.player = player;
    this.build();
    translate(this.root);
    void this.refreshDatasets();
  }

  // --- construction -------------------------------------------------------

  private build(): void {
    this.root.classList.add("explore-view");
    this.root.append(
      this.buildInputOutput(),
      this.buildDataDisplay(),
      this.buildDataOperations(),
      this.buildDataConfigurations(),
    );
  }

  private buildInputOutput(): HTMLElement {
    const group = createGroup("explore", "input_output");

    const file = document.createElement("input");
    file.type = "file";
    file.accept = ".csv,.txt,.tsv,.dat";
    const fileField = labeledControl(file, "io.file");
    this.fileInput = fileField.control;
    this.fileInput.addEventListener("change", () => void this.uploadSelectedFile());

    const select = document.createElement("select");
    const datasetField = labeledControl(select, "io.dataset");
    this.datasetSelect = datasetField.control;
    this.datasetSelect.addEventListener("change", () => void this.loadDataset(this.datasetSelect.value));

    this.playButton = button("io.play", () => void this.play());

    this.downloadLink = document.createElement("a");
    this.downloadLink.dataset.i18n = "io.download";
    this.downloadLink.download = "sonowork.wav";
    this.downloadLink.hidden = true;

    this.statusLine = document.createElement("p");
    this.statusLine.className = "status-line";
    this.statusLine.dataset.i18n = "io.no_dataset";

    group.append(fileField.wrapper, datasetField.wrapper, this.playButton, this.downloadLink, this.statusLine);
    return group;
  }

  private buildDataDisplay(): HTMLElement {
    const group = createGroup("explore", "data_display");

    const x = document.createElement("select");
    const xField = labeledControl(x, "display.x_column");
    this.xSelect = xField.control;
    this.xSelect.addEventListener("change", () => this.onSeriesChanged());

    const y = document.createElement("select");
    const yField = labeledControl(y, "display.y_column");
    this.ySelect = yField.control;
    this.ySelect.addEventListener("change", () => this.onSeriesChanged());

    this.plotBox = document.createElement("figure");
    this.plotBox.className = "plot-box";
    this.plotBox.setAttribute("role", "img");
    this.plotBox.setAttribute("aria-label", t("display.plot_alt"));
    this.plotBox.dataset.i18nLabel = "display.plot_alt";

    this.gridBox = document.createElement("div");
    this.gridBox.className = "grid-box";
    this.gridBox.tabIndex = 0;
    this.gridBox.dataset.i18nLabel = "display.grid_caption";
    this.gridBox.setAttribute("aria-label", t("display.grid_caption"));

    group.append(xField.wrapper, yField.wrapper, this.plotBox, this.gridBox);
    return group;
  }

  private buildDataOperations(): HTMLElement {
    const group = createGroup("explore", "data_operations");

    const simpleOps = document.createElement("div");
    simpleOps.className = "op-buttons";
    for (const op of ["normalize", "invert", "log", "square", "sqrt"]) {
      simpleOps.append(button(`ops.${op}`, () => this.addStep({ op })));
    }

    const smoothWindow = document.createElement("input");
    smoothWindow.type = "number";
    smoothWindow.min = "1";
    smoothWindow.step = "2";
    smoothWindow.value = "5";
    const windowField = labeledControl(smoothWindow, "ops.smooth_window");
    this.smoothWindowInput = windowField.control;
    const smoothButton = button("ops.smooth", () => {
      const window = Math.max(1, Math.floor(Number(this.smoothWindowInput.value)));
      this.addStep({ op: "smooth", window: window % 2 === 0 ? window + 1 : window });
    });

    const cutLo = document.createElement("input");
    cutLo.type = "range";
    cutLo.min = "0";
    cutLo.value = "0";
    const cutLoField = labeledControl(cutLo, "ops.cut_lo");
    this.cutLoInput = cutLoField.control;

    const cutHi = document.createElement("input");
    cutHi.type = "range";
    cutHi.min = "0";
    cutHi.value = "0";
    const cutHiField = labeledControl(cutHi, "ops.cut_hi");
    this.cutHiInput = cutHiField.control;

    // the pair always satisfies lo <= hi
    this.cutLoInput.addEventListener("input", () => {
      if (Number(this.cutLoInput.value) > Number(this.cutHiInput.value)) {
        this.cutHiInput.value = this.cutLoInput.value;
      }
    });
    this.cutHiInput.addEventListener("input", () => {
      if (Number(this.cutHiInput.value) < Number(this.cutLoInput.value)) {
        this.cutLoInput.value = this.cutHiInput.value;
      }
    });

    const cutButton = button("ops.cut", () => {
      this.addStep({
        op: "cut",
        lo: Number(this.cutLoInput.value),
        hi: Number(this.cutHiInput.value),
      });
    });

    const pipelineHeading = document.createElement("h3");
    pipelineHeading.dataset.i18n = "ops.pipeline";
    this.pipelineList = document.createElement("ul");
    this.pipelineList.className = "pipeline";
    const clearButton = button("ops.clear", () => {
      this.steps = [];
      this.onSeriesChanged();
    });

    group.append(
      simpleOps,
      windowField.wrapper,
      smoothButton,
      cutLoField.wrapper,
      cutHiField.wrapper,
      cutButton,
      pipelineHeading,
      this.pipelineList,
      clearButton,
    );
    return group;
  }

  private buildDataConfigurations(): HTMLElement {
    const group = createGroup("explore", "data_configurations");

    const waveform = document.createElement("select");
    waveform.append(option("sine", "config.waveform_sine"), option("square", "config.waveform_square"));
    const waveformField = labeledControl(waveform, "config.waveform");
    this.waveformSelect = waveformField.control;

    const mapping = document.createElement("select");
    mapping.append(option("linear", "config.mapping_linear"), option("logarithmic", "config.mapping_log"));
    const mappingField = labeledControl(mapping, "config.mapping");
    this.mappingSelect = mappingField.control;

    const fMin = document.createElement("input");
    fMin.type = "number";
    fMin.value = "220";
    const fMinField = labeledControl(fMin, "config.f_min");
    this.fMinInput = fMinField.control;

    const fMax = document.createElement("input");
    fMax.type = "number";
    fMax.value = "880";
    const fMaxField = labeledControl(fMax, "config.f_max");
    this.fMaxInput = fMaxField.control;

    const noteDur = document.createElement("input");
    noteDur.type = "number";
    noteDur.step = "0.01";
    noteDur.value = "0.1";
    const noteDurField = labeledControl(noteDur, "config.note_duration");
    this.noteDurInput = noteDurField.control;

    for (const control of [this.waveformSelect, this.mappingSelect, this.fMinInput, this.fMaxInput, this.noteDurInput]) {
      control.addEventListener("change", () => this.invalidateAudio());
    }

    group.append(waveformField.wrapper, mappingField.wrapper, fMinField.wrapper, fMaxField.wrapper, noteDurField.wrapper);
    return group;
  }

  // --- state --------------------------------------------------------------

  private renderBody(): RenderBody {
    const x = this.xSelect.value;
    return {
      dataset_id: this.dataset?.id ?? "",
      y_col: this.ySelect.value,
      x_col: x === "" ? null : x,
      transform: this.steps,
      config: {
        waveform: this.waveformSelect.value,
        mapping: this.mappingSelect.value,
        f_min: Number(this.fMinInput.value),
        f_max: Number(this.fMaxInput.value),
        note_duration: Number(this.noteDurInput.value),
      },
    };
  }

  /** Any change to the selection, transforms or sound settings makes the
   * last rendered audio stale. */
  private invalidateAudio(): void {
    this.audioStale = true;
    this.audioBlob = null;
    this.downloadLink.hidden = true;
    if (this.dataset) this.setStatus(t("io.audio_stale"));
  }

  get isAudioStale(): boolean {
    return this.audioStale;
  }

  get pipelineSteps(): readonly TransformStep[] {
    return this.steps;
  }

  private onSeriesChanged(): void {
    this.invalidateAudio();
    this.renderPipelineList();
    void this.renderPlot();
    this.renderGrid();
  }

  private addStep(step: TransformStep): void {
    this.steps = [...this.steps, step];
    this.onSeriesChanged();
  }

  private setStatus(message: string): void {
    delete this.statusLine.dataset.i18n;
    this.statusLine.textContent = message;
    this.announcer.announce(message);
  }

  private reportError(error: unknown): void {
    const message = error instanceof ApiError ? error.message : String(error);
    this.setStatus(t("status.error", { message }));
  }

  // --- actions ------------------------------------------------------------

  async refreshDatasets(selectId?: string): Promise<void> {
    try {
      const datasets = await this.api.listDatasets();
      this.datasetSelect.replaceChildren(
        ...datasets.map((d) => {
          const el = document.createElement("option");
          el.value = d.id;
          el.textContent = `${d.name} (${d.row_count})`;
          return el;
        }),
      );
      if (selectId) this.datasetSelect.value = selectId;
      if (this.datasetSelect.value && !this.dataset) {
        await this.loadDataset(this.datasetSelect.value);
      }
    } catch (error) {
      this.reportError(error);
    }
  }

  private async uploadSelectedFile(): Promise<void> {
    const file = this.fileInput.files?.[0];
    if (!file) return;
    try {
      const text = await readFileText(file);
      const summary = await this.api.uploadDataset(file.name, text);
      await this.refreshDatasets(summary.id);
      await this.loadDataset(summary.id);
      this.setStatus(t("io.uploaded", { name: summary.name, rows: summary.row_count }));
    } catch (error) {
      this.reportError(error);
    }
  }

  async loadDataset(id: string): Promise<void> {
    if (!id) return;
    try {
      this.dataset = await this.api.getDataset(id);
      this.datasetSelect.value = id;
      this.steps = [];
      const names = this.dataset.columns.map((c) => c.name);
      const indexOption = document.createElement("option");
      indexOption.value = "";
      indexOption.dataset.i18n = "display.x_index";
      indexOption.textContent = t("display.x_index");
      this.xSelect.replaceChildren(
        indexOption,
        ...names.map((n) => new Option(n, n)),
      );
      this.ySelect.replaceChildren(...names.map((n) => new Option(n, n)));
      this.xSelect.value = "";
      this.ySelect.value = names[names.length > 1 ? 1 : 0];
      const last = String(Math.max(0, this.dataset.row_count - 1));
      this.cutLoInput.max = last;
      this.cutHiInput.max = last;
      this.cutLoInput.value = "0";
      this.cutHiInput.value = last;
      this.onSeriesChanged();
    } catch (error) {
      this.reportError(error);
    }
  }

  /** Render the plot, discarding stale responses by sequence number. */
  async renderPlot(): Promise<void> {
    if (!this.dataset) return;
    const seq = ++this.plotSeq;
    this.plotAbort?.abort();
    const abort = new AbortController();
    this.plotAbort = abort;
    try {
      const blob = await this.api.plot(this.renderBody(), abort.signal);
      if (seq !== this.plotSeq) return; // a newer render superseded this one
      this.plotBox.innerHTML = await blob.text();
    } catch (error) {
      if (seq !== this.plotSeq || (error instanceof DOMException && error.name === "AbortError")) return;
      this.reportError(error);
    }
  }

  private renderGrid(): void {
    if (!this.dataset) return;
    const table = document.createElement("table");
    const caption = document.createElement("caption");
    caption.dataset.i18n = "display.grid_caption";
    caption.textContent = t("display.grid_caption");
    const head = document.createElement("tr");
    for (const column of this.dataset.columns) {
      const th = document.createElement("th");
      th.scope = "col";
      th.textContent = column.name;
      head.append(th);
    }
    table.append(caption, head);
    const rows = Math.min(this.dataset.row_count, GRID_ROW_LIMIT);
    for (let i = 0; i < rows; i++) {
      const tr = document.createElement("tr");
      for (const column of this.dataset.columns) {
        const td = document.createElement("td");
        const value = column.values[i];
        td.textContent = value === null ? "" : String(value);
        tr.append(td);
      }
      table.append(tr);
    }
    this.gridBox.replaceChildren(table);
  }

  private renderPipelineList(): void {
    if (this.steps.length === 0) {
      const empty = document.createElement("li");
      empty.dataset.i18n = "ops.pipeline_empty";
      empty.textContent = t("ops.pipeline_empty");
      this.pipelineList.replaceChildren(empty);
      return;
    }
    this.pipelineList.replaceChildren(
      ...this.steps.map((step, i) => {
        const li = document.createElement("li");
        const params =
          step.op === "smooth" ? ` (${step.window})` : step.op === "cut" ? ` (${step.lo}..${step.hi})` : "";
        li.textContent = `${i + 1}. ${t(`ops.${step.op}`)}${params}`;
        return li;
      }),
    );
  }

  /** Fetch fresh audio from the service and play it. */
  async play(): Promise<void> {
    if (!this.dataset) return;
    const seq = ++this.playSeq;
    try {
      const blob = await this.api.sonify(this.renderBody());
      if (seq !== this.playSeq) return;
      this.audioBlob = blob;
      this.audioStale = false;
      this.downloadLink.href = URL.createObjectURL ? URL.createObjectURL(blob) : "#";
      this.downloadLink.hidden = false;
      const seconds = ((blob.size - 44) / 2 / 44100).toFixed(2);
      this.setStatus(t("io.audio_ready", { seconds }));
      await this.player.play(blob);
    } catch (error) {
      this.reportError(error);
    }
  }

  get lastAudio(): Blob | null {
    return this.audioBlob;
  }
}
