import { afterEach, describe, expect, it } from "vitest";

import { catalogKeys, currentLanguage, hasKey, setLanguage, t, translate } from "../src/i18n";

afterEach(() => setLanguage("en"));

describe("string catalogs", () => {
  it("en and es carry identical key sets", () => {
    const en = new Set(catalogKeys("en"));
    const es = new Set(catalogKeys("es"));
    const onlyEn = [...en].filter((k) => !es.has(k));
    const onlyEs = [...es].filter((k) => !en.has(k));
    expect(onlyEn).toEqual([]);
    expect(onlyEs).toEqual([]);
  });

  it("translates with interpolation", () => {
    expect(t("training.progress", { current: 2, total: 12 })).toBe("Trial 2 of 12");
    setLanguage("es");
    expect(t("training.progress", { current: 2, total: 12 })).toBe("Intento 2 de 12");
  });

  it("toggling language swaps every data-i18n label", () => {
    document.body.innerHTML = "";
    const el = document.createElement("button");
    el.dataset.i18n = "io.play";
    document.body.append(el);
    translate(document.body);
    expect(el.textContent).toBe("Play");
    setLanguage("es");
    translate(document.body);
    expect(el.textContent).toBe("Reproducir");
    expect(currentLanguage()).toBe("es");
  });

  it("every catalog entry is non-empty", () => {
    for (const lang of ["en", "es"] as const) {
      for (const key of catalogKeys(lang)) {
        setLanguage(lang);
        expect(t(key).length, `${lang}:${key}`).toBeGreaterThan(0);
      }
    }
  });

  it("hasKey distinguishes real keys", () => {
    expect(hasKey("io.play", "en")).toBe(true);
    expect(hasKey("made.up.key", "en")).toBe(false);
  });
});
