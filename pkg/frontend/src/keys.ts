/** Pure mapping from keyboard keys to training-session events. */

import type { ArrowKeyName, SessionEventBody, TrainingPhase } from "./types";

const ARROWS: Record<string, ArrowKeyName> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
};

export interface KeyContext {
  allowReplay: boolean;
  allowSkipIntro: boolean;
  /** Milliseconds between the end of the audio and the keypress. */
  latencyMs?: number;
}

/**
 * Translate a key press in a phase into a session event, or null when the
 * key does nothing there.  Arrow keys answer, Space replays (when enabled),
 * Enter begins, Escape skips the intro (when enabled).
 */
export function keyToTrainingEvent(
  key: string,
  phase: TrainingPhase,
  context: KeyContext,
): SessionEventBody | null {
  if (phase === "awaiting_response") {
    if (key in ARROWS) {
      return {
        type: "key_press",
        key: ARROWS[key],
        latency_ms: Math.max(0, context.latencyMs ?? 0),
      };
    }
    if (key === " " || key === "Spacebar") {
      return context.allowReplay ? { type: "replay" } : null;
    }
    return null;
  }
  if (phase === "intro") {
    if (key === "Enter") return { type: "begin" };
    if (key === "Escape") return context.allowSkipIntro ? { type: "skip_intro" } : null;
  }
  return null;
}
