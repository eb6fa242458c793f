/** Application bootstrap: header, language switch, view routing. */

import { ApiClient } from "./api";
import { Announcer } from "./a11y";
import { HtmlAudioPlayer, WebAudioBeeper, type AudioPlayer, type Beeper } from "./audio";
import { ExploreView } from "./explore";
import { TrainingView } from "./training";
import { availableLanguages, setLanguage, t, translate, type Language } from "./i18n";
import "./styles.css";

export interface AppHandles {
  explore: ExploreView;
  training: TrainingView;
  showView(name: "explore" | "training"): void;
}

export function createApp(
  root: HTMLElement,
  options?: {
    api?: ApiClient;
    player?: AudioPlayer;
    beeper?: Beeper;
    statusRegion?: HTMLElement;
    alertRegion?: HTMLElement;
  },
): AppHandles {
  const api = options?.api ?? new ApiClient();
  const player = options?.player ?? new HtmlAudioPlayer();
  const beeper = options?.beeper ?? new WebAudioBeeper();
  const status = options?.statusRegion ?? document.getElementById("live-status")!;
  const alert = options?.alertRegion ?? document.getElementById("live-alert")!;
  const announcer = new Announcer(status, alert);

  const header = document.createElement("header");
  const title = document.createElement("h1");
  title.dataset.i18n = "app.title";

  const nav = document.createElement("nav");
  nav.dataset.i18nLabel = "nav.label";
  nav.setAttribute("aria-label", t("nav.label"));
  const exploreTab = document.createElement("button");
  exploreTab.type = "button";
  exploreTab.dataset.i18n = "nav.explore";
  exploreTab.dataset.view = "explore";
  const trainingTab = document.createElement("button");
  trainingTab.type = "button";
  trainingTab.dataset.i18n = "nav.training";
  trainingTab.dataset.view = "training";
  nav.append(exploreTab, trainingTab);

  const langWrapper = document.createElement("div");
  langWrapper.className = "field lang-field";
  const langLabel = document.createElement("label");
  langLabel.dataset.i18n = "lang.label";
  langLabel.htmlFor = "lang-select";
  const langSelect = document.createElement("select");
  langSelect.id = "lang-select";
  for (const lang of availableLanguages()) {
    const el = document.createElement("option");
    el.value = lang;
    el.dataset.i18n = `lang.${lang}`;
    langSelect.append(el);
  }
  langSelect.addEventListener("change", () => {
    setLanguage(langSelect.value as Language);
    translate(document.body);
  });
  langWrapper.append(langLabel, langSelect);

  header.append(title, nav, langWrapper);

  const exploreRoot = document.createElement("main");
  exploreRoot.id = "explore-view";
  const trainingRoot = document.createElement("main");
  trainingRoot.id = "training-view";
  trainingRoot.hidden = true;

  root.replaceChildren(header, exploreRoot, trainingRoot);

  const explore = new ExploreView(exploreRoot, api, announcer, player);
  const training = new TrainingView(trainingRoot, api, announcer, player, beeper);

  function showView(name: "explore" | "training"): void {
    exploreRoot.hidden = name !== "explore";
    trainingRoot.hidden = name !== "training";
    exploreTab.setAttribute("aria-pressed", String(name === "explore"));
    trainingTab.setAttribute("aria-pressed", String(name === "training"));
  }

  exploreTab.addEventListener("click", () => showView("explore"));
  trainingTab.addEventListener("click", () => showView("training"));
  showView("explore");

  document.addEventListener("keydown", (event) => {
    if (trainingRoot.hidden) return;
    const target = event.target as HTMLElement | null;
    // let form fields keep their keys; the stage itself is keyboard-driven
    if (target && ["INPUT", "SELECT", "TEXTAREA"].includes(target.tagName)) return;
    const relevant =
      ["ArrowUp", "ArrowDown", "ArrowLeft", "ArrowRight", " ", "Enter", "Escape"].includes(event.key);
    if (!relevant) return;
    if (training.phase !== null) {
      event.preventDefault();
      void training.handleKey(event.key);
    }
  });

  translate(root);
  return { explore, training, showView };
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  createApp(document.getElementById("app")!);
}
