/** Explorer view state.
 *
 * One analysis request in flight per session, each tagged with the session
 * version it was issued for; a response is accepted only when its version
 * still matches the current one, so a verdict can never be shown for a
 * polygon other than the one on screen.  Between a mutation and the arrival
 * of its report the state is `stale` and the badge greys out.
 */

import { AnalysisReportJson, ApiError, KnotApi, PolygonJson, SessionSummary } from "./api.js";

export interface VerdictBadge {
  text: string;
  kind: "ok" | "knot" | "warn" | "stale";
}

export interface ViewState {
  sessionId: string | null;
  version: number;
  report: AnalysisReportJson | null;
  reportVersion: number;
  stale: boolean;
  selectedVertex: number | null;
  dragPosition: [number, number, number] | null;
  preDragReport: AnalysisReportJson | null;
  lastSummary: SessionSummary | null;
  warning: string | null;
}

const DRAG_THROTTLE_MS = 200; // >= 5 Hz while dragging

export class ExplorerStore {
  state: ViewState = {
    sessionId: null,
    version: 0,
    report: null,
    reportVersion: -1,
    stale: false,
    selectedVertex: null,
    dragPosition: null,
    preDragReport: null,
    lastSummary: null,
    warning: null,
  };

  private analysisInFlight = false;
  private lastDragPost = 0;
  private listeners: Array<() => void> = [];

  constructor(
    private readonly api: KnotApi,
    private readonly now: () => number = () => Date.now(),
  ) {}

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  async load(polygon: PolygonJson, rounds: number): Promise<void> {
    const id = await this.api.createCurve(polygon, rounds);
    this.state.sessionId = id;
    this.state.version = 0;
    this.state.report = null;
    this.state.reportVersion = -1;
    this.state.stale = true;
    this.state.warning = null;
    this.emit();
    await this.refreshAnalysis();
  }

  /** Request the report for the current version; drop superseded replies. */
  async refreshAnalysis(): Promise<void> {
    const id = this.state.sessionId;
    if (id === null || this.analysisInFlight) return;
    const requestedVersion = this.state.version;
    this.analysisInFlight = true;
    try {
      const report = await this.api.analysis(id);
      if (this.state.version === requestedVersion) {
        this.state.report = report;
        this.state.reportVersion = requestedVersion;
        this.state.stale = false;
        this.state.warning = null;
      }
    } catch (err) {
      if (this.state.version === requestedVersion) {
        this.state.warning = err instanceof ApiError ? formatApiError(err) : String(err);
      }
    } finally {
      this.analysisInFlight = false;
    }
    this.emit();
    // a mutation landed while this request was in flight: fetch again
    if (this.state.version !== requestedVersion) {
      await this.refreshAnalysis();
    }
  }

  /** Send a vertex move; `sweep` certifies the rotation (drop only). */
  async moveVertex(
    vertexIndex: number,
    position: [number, number, number],
    sweep: boolean,
  ): Promise<SessionSummary | null> {
    const id = this.state.sessionId;
    if (id === null) return null;
    this.state.stale = true;
    this.emit();
    try {
      const summary = await this.api.moveVertex(id, vertexIndex, position, sweep);
      this.state.version = summary.version;
      this.state.lastSummary = summary;
      this.state.warning = null;
      this.emit();
      await this.refreshAnalysis();
      return summary;
    } catch (err) {
      // 409/422 keep the drag alive; surface the message inline
      this.state.warning = err instanceof ApiError ? formatApiError(err) : String(err);
      this.state.stale = this.state.reportVersion !== this.state.version;
      this.emit();
      return null;
    }
  }

  beginDrag(vertexIndex: number): void {
    this.state.selectedVertex = vertexIndex;
    this.state.preDragReport = this.state.report;
    this.state.dragPosition = null;
    this.emit();
  }

  /** Throttled mid-drag update; no sweep. Returns true if a POST was sent. */
  async dragTo(position: [number, number, number]): Promise<boolean> {
    if (this.state.selectedVertex === null) return false;
    this.state.dragPosition = position;
    const t = this.now();
    if (t - this.lastDragPost < DRAG_THROTTLE_MS) {
      this.emit();
      return false;
    }
    this.lastDragPost = t;
    await this.moveVertex(this.state.selectedVertex, position, false);
    return true;
  }

  /** Drop: always posts (unless the pointer never moved), with sweep. */
  async endDrag(position: [number, number, number] | null): Promise<void> {
    const vertex = this.state.selectedVertex;
    const moved = position ?? this.state.dragPosition;
    this.state.selectedVertex = null;
    this.state.dragPosition = null;
    if (vertex === null || moved === null) {
      this.emit();
      return; // zero-length drag: no request
    }
    await this.moveVertex(vertex, moved, true);
    this.state.preDragReport = null;
    this.emit();
  }

  /** The badge may only surface a verdict computed for the current polygon. */
  badge(): VerdictBadge {
    const { report, reportVersion, version, stale } = this.state;
    if (report === null || reportVersion !== version || stale) {
      return { text: "computing…", kind: "stale" };
    }
    if (!report.polygon_simple) {
      return { text: "polygon not simple — verdict withheld", kind: "warn" };
    }
    if (report.verdict === "NontrivialKnot") {
      return { text: `Nontrivial knot (Δ = ${prettyPolynomial(report.alexander)})`, kind: "knot" };
    }
    if (report.verdict === "Unknot") {
      return { text: "Unknot", kind: "ok" };
    }
    return { text: report.verdict, kind: "warn" };
  }

  /** Pre-drag verdict for the side-by-side display while dragging. */
  preDragBadge(): VerdictBadge | null {
    const report = this.state.preDragReport;
    if (report === null) return null;
    if (!report.polygon_simple) return { text: "polygon not simple", kind: "warn" };
    return {
      text:
        report.verdict === "NontrivialKnot"
          ? `Nontrivial knot (Δ = ${prettyPolynomial(report.alexander)})`
          : report.verdict,
      kind: report.verdict === "NontrivialKnot" ? "knot" : "ok",
    };
  }
}

export function formatApiError(err: ApiError): string {
  const detail = err.detail;
  if (typeof detail === "string") return detail;
  if (detail && typeof detail === "object") {
    const d = detail as { detail?: string; error?: string };
    if (d.error !== undefined && d.detail !== undefined) return `${d.error}: ${d.detail}`;
    if (d.detail !== undefined) return d.detail;
  }
  return err.message;
}

export function prettyPolynomial(p: { base_exp: number; coeffs: number[] } | null): string {
  if (p === null) return "?";
  const parts: string[] = [];
  p.coeffs.forEach((c, i) => {
    if (c === 0) return;
    const e = p.base_exp + i;
    const mag = Math.abs(c);
    const body =
      e === 0 ? `${mag}` : `${mag === 1 ? "" : mag}t${e === 1 ? "" : `^${e}`}`;
    if (parts.length === 0) {
      parts.push(c < 0 ? `−${body}` : body);
    } else {
      parts.push(c < 0 ? `− ${body}` : `+ ${body}`);
    }
  });
  return parts.length > 0 ? parts.join(" ") : "0";
}
