import { ApiError, Client } from "./api.js";
import { renderPcp } from "./pcp.js";
import { renderRadarBoard } from "./radar.js";
import type { PreferenceResponse, RadarGrid, Selection, UploadResponse } from "./types.js";
import { renderWeightBar } from "./weights.js";

interface UiSession {
  id: string;
  summary: UploadResponse;
  grid: RadarGrid;
  selected?: [number, number];
  last?: PreferenceResponse;
}

/** Single-page controller: upload a dataset, show the radar lattice, post a
 * preference on click, and render the recolored PCP. All numbers shown come
 * from the server. */
export class App {
  private session?: UiSession;
  private inflight?: AbortController;

  readonly banner: HTMLElement;
  readonly summaryLine: HTMLElement;
  readonly radarPane: HTMLElement;
  readonly detailPane: HTMLElement;
  private readonly fileInput: HTMLInputElement;
  private readonly pointInput: HTMLInputElement;

  constructor(
    readonly root: HTMLElement,
    readonly client: Client = new Client(),
  ) {
    root.innerHTML = "";
    const header = document.createElement("header");

    this.fileInput = document.createElement("input");
    this.fileInput.type = "file";
    this.fileInput.accept = ".csv,.json,text/csv,application/json";
    this.fileInput.addEventListener("change", () => void this.handleFileChosen());

    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;

    this.summaryLine = document.createElement("div");
    this.summaryLine.className = "summary";

    header.append(this.fileInput, this.summaryLine, this.banner);

    const main = document.createElement("main");
    this.radarPane = document.createElement("section");
    this.radarPane.className = "radar-pane";
    this.detailPane = document.createElement("section");
    this.detailPane.className = "detail-pane";
    main.append(this.radarPane, this.detailPane);

    const pointForm = document.createElement("form");
    pointForm.className = "point-form";
    this.pointInput = document.createElement("input");
    this.pointInput.type = "text";
    this.pointInput.placeholder = "f_r, e.g. 1.2,0.8";
    const pointButton = document.createElement("button");
    pointButton.type = "submit";
    pointButton.textContent = "project point";
    pointForm.append(this.pointInput, pointButton);
    pointForm.addEventListener("submit", (event) => {
      event.preventDefault();
      const values = this.pointInput.value.split(",").map((v) => Number(v.trim()));
      if (values.length && values.every(Number.isFinite)) {
        void this.requestPreference({ f_r: values });
      } else {
        this.showError("BadPoint", "enter comma-separated finite numbers");
      }
    });

    root.append(header, main, pointForm);
  }

  private async handleFileChosen() {
    const file = this.fileInput.files?.[0];
    if (!file) return;
    const text = await file.text();
    const contentType = file.name.endsWith(".json") ? "application/json" : "text/csv";
    await this.uploadText(text, contentType);
  }

  async uploadText(text: string, contentType: "text/csv" | "application/json") {
    try {
      const summary = await this.client.uploadDataset(text, contentType);
      const grid = await this.client.radarGrid(summary.id);
      this.session = { id: summary.id, summary, grid };
      this.clearError();
      this.renderSummary();
      this.renderRadar();
      this.detailPane.innerHTML = "";
    } catch (error) {
      this.surface(error); // no state change on failure
    }
  }

  async selectCell(i: number, j: number) {
    if (!this.session) return;
    if (!this.session.grid.cells.some((c) => c.i === i && c.j === j)) return;
    this.session.selected = [i, j];
    this.renderRadar();
    await this.requestPreference({ cell: [i, j] });
  }

  private async requestPreference(selection: Selection) {
    if (!this.session) return;
    this.inflight?.abort(); // later clicks cancel earlier requests
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await this.client.preference(this.session.id, selection, controller.signal);
      if (this.inflight !== controller) return; // superseded
      this.session.last = response;
      this.clearError();
      this.renderDetail();
    } catch (error) {
      if (controller.signal.aborted) return;
      this.surface(error); // keep the previous PCP on preference failures
    }
  }

  private renderSummary() {
    if (!this.session) return;
    const s = this.session.summary;
    this.summaryLine.textContent =
      `dataset ${s.id}: n=${s.n}, d=${s.d}, m=${s.m}, ` +
      `pareto=${s.n_pareto}, fit_rms=${s.fit_rms}`;
  }

  private renderRadar() {
    if (!this.session) return;
    this.radarPane.innerHTML = "";
    this.radarPane.append(
      renderRadarBoard(
        this.session.grid,
        (i, j) => void this.selectCell(i, j),
        this.session.selected,
      ),
    );
  }

  private renderDetail() {
    if (!this.session?.last) return;
    const response = this.session.last;
    this.detailPane.innerHTML = "";

    const metricNames = response.pcp.axes
      .filter((axis) => axis.kind === "metric")
      .map((axis) => axis.name);
    this.detailPane.append(renderWeightBar(metricNames, response.weights));

    const readout = document.createElement("div");
    readout.className = "projection-readout";
    readout.textContent =
      `f_u = [${response.f_u.map(String).join(", ")}], distance = ${response.distance}`;
    this.detailPane.append(readout);

    const hoverLine = document.createElement("div");
    hoverLine.className = "hover-readout";
    this.detailPane.append(
      renderPcp(response.pcp, (line) => {
        hoverLine.textContent = line === null ? "" : `record ${line.record}, phi = ${line.phi}`;
      }),
      hoverLine,
    );
  }

  private surface(error: unknown) {
    if (error instanceof ApiError) {
      this.showError(error.errorName, error.message);
    } else {
      this.showError("Error", String(error));
    }
  }

  private showError(name: string, detail: string) {
    this.banner.hidden = false;
    this.banner.textContent = `${name}: ${detail}`;
  }

  private clearError() {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }
}
