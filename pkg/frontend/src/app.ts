/** Application state: a pure command layer over the service client.
 * The UI computes no geometry itself — every displayed number comes
 * verbatim from the latest service report/frame. */

import {
  ApiClient,
  Frame,
  LiveEvent,
  RelaxStats,
  Report,
  ServiceError,
} from "./api.js";

export interface OpenSlot {
  face: number;
  index: number;
}

export interface ViewState {
  report: Report | null;
  frame: Frame | null;
  relaxStats: RelaxStats | null;
  relaxing: boolean;
  error: string | null;
  selectedSlot: OpenSlot | null;
}

export type Listener = (state: ViewState) => void;

export function openSlots(report: Report | null): OpenSlot[] {
  if (!report) return [];
  const slots: OpenSlot[] = [];
  for (const loop of report.boundary_loops) {
    for (const [face, index] of loop.slots) slots.push({ face, index });
  }
  slots.sort((a, b) => a.face - b.face || a.index - b.index);
  return slots;
}

export class App {
  private state: ViewState = {
    report: null,
    frame: null,
    relaxStats: null,
    relaxing: false,
    error: null,
    selectedSlot: null,
  };
  private listeners: Listener[] = [];
  private sid: string | null = null;
  private ws: WebSocket | null = null;
  private backoffMs = 250;

  constructor(
    private readonly api: ApiClient,
    private readonly wsFactory?: (url: string) => WebSocket,
  ) {}

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  getState(): ViewState {
    return this.state;
  }

  sessionId(): string | null {
    return this.sid;
  }

  private set(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  async start(): Promise<void> {
    this.sid = await this.api.createSession();
    await this.refresh();
    this.connectLive();
  }

  /** Re-fetch everything; after any interaction sequence this renders the
   * identical scene (the server is the single source of truth). */
  async refresh(): Promise<void> {
    if (!this.sid) return;
    const report = await this.api.report(this.sid);
    const frame = report.counts.faces > 0 ? await this.api.embedding(this.sid) : null;
    this.set({ report, frame, error: null });
  }

  selectSlot(slot: OpenSlot | null): void {
    this.set({ selectedSlot: slot });
  }

  /** Place a lone tile (the very first one, or a floating one). */
  async placeTile(sides: number): Promise<void> {
    if (!this.sid) return;
    try {
      await this.api.addFace(this.sid, sides);
      await this.refresh();
    } catch (e) {
      this.surface(e);
    }
  }

  /** Attach a new tile's slot 0 to the selected open slot.  On a glue
   * failure the just-added face is rolled back server-side so a failed
   * attach changes nothing. */
  async attachTile(sides: number, slot: OpenSlot): Promise<void> {
    if (!this.sid) return;
    let added: number | null = null;
    try {
      const resp = await this.api.addFace(this.sid, sides);
      added = resp.face;
      await this.api.glue(this.sid, [slot.face, slot.index], [added, 0]);
      this.set({ selectedSlot: null });
      await this.refresh();
    } catch (e) {
      if (added !== null) {
        await this.api.undo(this.sid); // roll back the dangling face
      }
      this.surface(e);
    }
  }

  async undo(): Promise<void> {
    if (!this.sid) return;
    try {
      await this.api.undo(this.sid);
      await this.refresh();
    } catch (e) {
      this.surface(e);
    }
  }

  async relaxOnce(iters = 2000): Promise<void> {
    if (!this.sid || this.state.relaxing) return;
    this.set({ relaxing: true });
    try {
      const stats = await this.api.relax(this.sid, iters);
      this.set({ relaxStats: stats });
      await this.refresh();
    } catch (e) {
      this.surface(e);
    } finally {
      this.set({ relaxing: false });
    }
  }

  /** Live updates with exponential-backoff reconnect; on reconnect the
   * state is re-fetched so nothing is lost. */
  connectLive(): void {
    if (!this.sid) return;
    const factory =
      this.wsFactory ?? ((url: string) => new WebSocket(url));
    let ws: WebSocket;
    try {
      ws = factory(this.api.liveUrl(this.sid));
    } catch {
      return; // non-browser host without WebSocket support
    }
    this.ws = ws;
    ws.onmessage = (ev: MessageEvent) => {
      const doc = JSON.parse(String(ev.data)) as LiveEvent;
      this.backoffMs = 250;
      this.set({ report: doc.report, frame: doc.frame ?? this.state.frame });
    };
    ws.onclose = () => {
      if (this.ws !== ws) return;
      const delay = this.backoffMs;
      this.backoffMs = Math.min(this.backoffMs * 2, 8000);
      setTimeout(() => {
        void this.refresh();
        this.connectLive();
      }, delay);
    };
  }

  close(): void {
    const ws = this.ws;
    this.ws = null;
    ws?.close();
  }

  private surface(e: unknown): void {
    if (e instanceof ServiceError) {
      this.set({ error: `${e.code}: ${e.message}` });
    } else {
      this.set({ error: String(e) });
    }
  }
}
