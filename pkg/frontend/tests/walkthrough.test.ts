/** Acceptance: a keyboard-only scripted walkthrough of a full 12-trial
 * training session, plus the accessibility and localization contracts. */

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { catalogKeys, hasKey, setLanguage } from "../src/i18n";
import {
  accessibleName,
  flush,
  focusableIn,
  mountApp,
  pressKey,
  sleep,
  type TestApp,
} from "./helpers";

const ARROW_FOR_CLASS: Record<string, string> = {
  increasing: "ArrowUp",
  decreasing: "ArrowDown",
  sine: "ArrowLeft",
  square: "ArrowRight",
};

let ctx: TestApp;

beforeEach(() => {
  ctx = mountApp();
});

afterEach(() => {
  setLanguage("en");
});

function trainingTab(): HTMLButtonElement {
  return ctx.root.querySelector<HTMLButtonElement>('nav button[data-view="training"]')!;
}

function startButton(): HTMLButtonElement {
  return [...ctx.root.querySelectorAll("button")].find(
    (b) => b.dataset.i18n === "training.start",
  ) as HTMLButtonElement;
}

async function keyOnDocument(key: string): Promise<void> {
  document.body.dispatchEvent(
    new KeyboardEvent("keydown", { key, bubbles: true, cancelable: true }),
  );
  await flush(12);
}

describe("keyboard-only training walkthrough", () => {
  it("completes a 12-trial session with arrows only and shows the report", async () => {
    // open the training view and start a session, keyboard style
    trainingTab().focus();
    pressKey(trainingTab(), "Enter");
    await flush();
    startButton().focus();
    pressKey(startButton(), "Enter");
    await flush(10);

    const sessionId = [...ctx.mock.sessions.keys()][0];
    const session = ctx.mock.sessions.get(sessionId)!;
    expect(session.state.total).toBe(12);
    expect(session.state.phase).toBe("intro");

    // non-mapped keys in the intro do nothing
    await keyOnDocument("ArrowUp");
    expect(session.state.phase).toBe("intro");

    // Enter begins; presentation plays and the view reports readiness
    await keyOnDocument("Enter");
    expect(["awaiting_response"]).toContain(session.state.phase);
    expect(ctx.player.plays).toBe(1);

    // replay once via Space, then answer every trial correctly by class
    await keyOnDocument(" ");
    expect(session.state.phase).toBe("awaiting_response");
    expect(ctx.player.plays).toBe(2);
    expect(session.state.responses.length).toBe(0);

    let feedbacks = 0;
    let nonEmptyAlerts = 0;
    const observer = new MutationObserver(() => {
      if (ctx.alert.textContent) nonEmptyAlerts += 1;
    });
    observer.observe(ctx.alert, { childList: true, characterData: true, subtree: true });

    for (let trial = 0; trial < 12; trial++) {
      const current = session.state.stimuli[session.state.cursor];
      await keyOnDocument(ARROW_FOR_CLASS[current.class]);
      expect(session.state.phase).toBe("feedback");
      feedbacks += 1;
      await sleep(5); // let the live region's deferred write land
      expect(ctx.alert.textContent).toBe("Correct");
      await keyOnDocument("Enter");
    }
    observer.disconnect();

    expect(session.state.phase).toBe("completed");
    expect(session.state.responses.length).toBe(12);
    expect(session.state.responses.every((r) => r.correct)).toBe(true);
    expect(nonEmptyAlerts).toBe(feedbacks);
    expect(ctx.beeper.highs).toBe(12);
    expect(ctx.beeper.lows).toBe(0);

    const report = ctx.root.querySelector(".report")!;
    expect((report as HTMLElement).hidden).toBe(false);
    expect(report.textContent).toContain("100%");
    expect(report.querySelectorAll("table tr").length).toBe(5); // header + 4 classes
  });

  it("records wrong answers with a low tone and Incorrect text", async () => {
    ctx.app.showView("training");
    startButton().click();
    await flush(10);
    const session = [...ctx.mock.sessions.values()][0];
    await keyOnDocument("Enter");
    const current = session.state.stimuli[session.state.cursor];
    const wrongArrow = current.class === "increasing" ? "ArrowDown" : "ArrowUp";
    await keyOnDocument(wrongArrow);
    await sleep(5);
    expect(session.state.responses[0].correct).toBe(false);
    expect(ctx.alert.textContent).toBe("Incorrect");
    expect(ctx.beeper.lows).toBe(1);
  });

  it("skips the intro with Escape when allowed", async () => {
    ctx.app.showView("training");
    startButton().click();
    await flush(10);
    const session = [...ctx.mock.sessions.values()][0];
    await keyOnDocument("Escape");
    expect(session.state.phase).toBe("awaiting_response");
    expect(session.presentations).toBe(1);
  });

  it("measures response latency from the end of the audio", async () => {
    ctx.app.showView("training");
    startButton().click();
    await flush(10);
    const session = [...ctx.mock.sessions.values()][0];
    await keyOnDocument("Enter");
    await sleep(30);
    const current = session.state.stimuli[session.state.cursor];
    await keyOnDocument(ARROW_FOR_CLASS[current.class]);
    const latency = session.state.responses[0].latency_ms;
    expect(latency).toBeGreaterThanOrEqual(25);
    expect(latency).toBeLessThan(5000);
  });
});

describe("localization contract", () => {
  it("toggling EN -> ES leaves no untranslated label behind", async () => {
    ctx.app.showView("training");
    await flush();
    const langSelect = ctx.root.querySelector<HTMLSelectElement>("#lang-select")!;
    langSelect.value = "es";
    langSelect.dispatchEvent(new Event("change", { bubbles: true }));
    await flush();

    for (const el of document.body.querySelectorAll<HTMLElement>("[data-i18n]")) {
      const key = el.dataset.i18n!;
      expect(hasKey(key, "es"), key).toBe(true);
      expect(el.textContent, key).not.toBe(key);
      expect(el.textContent?.trim(), key).not.toBe("");
    }
    for (const el of document.body.querySelectorAll<HTMLElement>("[data-i18n-label]")) {
      const key = el.dataset.i18nLabel!;
      expect(hasKey(key, "es"), key).toBe(true);
      expect(el.getAttribute("aria-label"), key).not.toBe(key);
    }
    // and every control still has an accessible name in Spanish
    for (const el of focusableIn(document.body)) {
      expect(accessibleName(el), el.outerHTML).not.toBe("");
    }
  });

  it("every data-i18n key used in the DOM exists in both catalogs", () => {
    ctx.app.showView("training");
    const used = new Set<string>();
    document.body
      .querySelectorAll<HTMLElement>("[data-i18n]")
      .forEach((el) => used.add(el.dataset.i18n!));
    document.body
      .querySelectorAll<HTMLElement>("[data-i18n-label]")
      .forEach((el) => used.add(el.dataset.i18nLabel!));
    const en = new Set(catalogKeys("en"));
    const es = new Set(catalogKeys("es"));
    for (const key of used) {
      expect(en.has(key), key).toBe(true);
      expect(es.has(key), key).toBe(true);
    }
  });
});
