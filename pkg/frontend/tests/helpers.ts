/** Shared test plumbing: instant audio, counting beeper, UA key emulation. */

import { createApp, type AppHandles } from "../src/main";
import type { AudioPlayer, Beeper } from "../src/audio";
import { MockService } from "./mockService";

export class InstantPlayer implements AudioPlayer {
  plays = 0;

  async play(_data: Blob): Promise<void> {
    this.plays += 1;
    await sleep(0);
  }

  stop(): void {}
}

export class CountingBeeper implements Beeper {
  highs = 0;
  lows = 0;

  correct(): void {
    this.highs += 1;
  }

  incorrect(): void {
    this.lows += 1;
  }
}

export interface TestApp {
  app: AppHandles;
  mock: MockService;
  player: InstantPlayer;
  beeper: CountingBeeper;
  root: HTMLElement;
  status: HTMLElement;
  alert: HTMLElement;
}

export function mountApp(): TestApp {
  document.body.innerHTML = `
    <div id="app"></div>
    <div id="live-status" role="status" aria-live="polite"></div>
    <div id="live-alert" role="alert" aria-live="assertive"></div>
  `;
  const mock = new MockService();
  mock.install();
  const player = new InstantPlayer();
  const beeper = new CountingBeeper();
  const root = document.getElementById("app")!;
  const app = createApp(root, {
    player,
    beeper,
    statusRegion: document.getElementById("live-status")!,
    alertRegion: document.getElementById("live-alert")!,
  });
  return {
    app,
    mock,
    player,
    beeper,
    root,
    status: document.getElementById("live-status")!,
    alert: document.getElementById("live-alert")!,
  };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Let queued promises and zero-delay timers run. */
export async function flush(rounds = 6): Promise<void> {
  for (let i = 0; i < rounds; i++) {
    await sleep(0);
  }
}

/**
 * Emulate what a keyboard user's browser does: dispatch the key at the
 * target, and if nothing canceled a button/link activation key, click it.
 */
export function pressKey(target: HTMLElement, key: string): void {
  const event = new KeyboardEvent("keydown", { key, bubbles: true, cancelable: true });
  const notCanceled = target.dispatchEvent(event);
  if (
    notCanceled &&
    (key === "Enter" || key === " ") &&
    (target instanceof HTMLButtonElement || target instanceof HTMLAnchorElement)
  ) {
    target.click();
  }
}

/** Keyboard-only "typing": focus, set the value, fire input+change. */
export function typeValue(input: HTMLInputElement | HTMLSelectElement, value: string): void {
  input.focus();
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

const FOCUSABLE = "button, select, input, textarea, a[href], [tabindex]";

export function focusableIn(root: ParentNode): HTMLElement[] {
  return [...root.querySelectorAll<HTMLElement>(FOCUSABLE)].filter(
    (el) => !el.hidden && !(el.closest("[hidden]") instanceof HTMLElement),
  );
}

/** Approximate an element's accessible name the way a screen reader would. */
export function accessibleName(el: HTMLElement): string {
  const ariaLabel = el.getAttribute("aria-label");
  if (ariaLabel?.trim()) return ariaLabel.trim();
  const labelledBy = el.getAttribute("aria-labelledby");
  if (labelledBy) {
    const text = labelledBy
      .split(/\s+/)
      .map((id) => document.getElementById(id)?.textContent ?? "")
      .join(" ")
      .trim();
    if (text) return text;
  }
  if (el.id) {
    const label = document.querySelector(`label[for="${el.id}"]`);
    if (label?.textContent?.trim()) return label.textContent.trim();
  }
  return el.textContent?.trim() ?? "";
}
