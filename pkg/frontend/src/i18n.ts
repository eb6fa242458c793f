/** English/Spanish string catalogs; both must carry identical key sets. */

export type Language = "en" | "es";

const CATALOGS: Record<Language, Record<string, string>> = {
  en: {
    "app.title": "sonowork",
    "nav.label": "Views",
    "nav.explore": "Explore data",
    "nav.training": "Training",
    "lang.label": "Language",
    "lang.en": "English",
    "lang.es": "Spanish",

    "group.input_output": "Input / output",
    "group.data_display": "Data display",
    "group.data_operations": "Data operations",
    "group.data_configurations": "Data configurations",

    "io.file": "Data file",
    "io.upload": "Upload",
    "io.dataset": "Dataset",
    "io.play": "Play",
    "io.download": "Download WAV",
    "io.uploaded": "Dataset {name} loaded: {rows} rows",
    "io.no_dataset": "No dataset loaded yet",
    "io.audio_ready": "Audio rendered: {seconds} s",
    "io.audio_stale": "Settings changed; press Play to render again",

    "display.x_column": "X column",
    "display.x_index": "(row index)",
    "display.y_column": "Y column",
    "display.grid_caption": "Data values",
    "display.plot_alt": "Plot of the selected series",

    "ops.transforms": "Transforms",
    "ops.normalize": "Normalize",
    "ops.invert": "Invert",
    "ops.log": "Logarithm",
    "ops.square": "Square",
    "ops.sqrt": "Square root",
    "ops.smooth": "Smooth",
    "ops.smooth_window": "Smoothing window",
    "ops.cut": "Cut",
    "ops.cut_lo": "Cut start",
    "ops.cut_hi": "Cut end",
    "ops.pipeline": "Applied steps",
    "ops.pipeline_empty": "No steps applied",
    "ops.clear": "Clear steps",

    "config.waveform": "Waveform",
    "config.waveform_sine": "Sine",
    "config.waveform_square": "Square",
    "config.mapping": "Pitch mapping",
    "config.mapping_linear": "Linear",
    "config.mapping_log": "Logarithmic",
    "config.f_min": "Lowest frequency (Hz)",
    "config.f_max": "Highest frequency (Hz)",
    "config.note_duration": "Seconds per point",

    "training.settings": "Session settings",
    "training.block": "Block",
    "training.block_1": "1: clean signals",
    "training.block_2": "2: light noise",
    "training.block_3": "3: heavy noise",
    "training.per_class": "Stimuli per class",
    "training.seed": "Seed",
    "training.modality": "Modality",
    "training.modality_av": "Audio and visual",
    "training.modality_audio": "Audio only",
    "training.allow_replay": "Allow replaying the sound",
    "training.allow_skip": "Allow skipping the intro",
    "training.start": "Start session",
    "training.intro_title": "How to respond",
    "training.intro_keys":
      "Press the key that matches the sound you heard: Up for increasing, Down for decreasing, Left for sine, Right for square.",
    "training.intro_hint": "Press Enter to begin, Escape to skip this intro.",
    "training.listening": "Listening…",
    "training.respond": "Your answer? Use the arrow keys.",
    "training.replay_hint": "Press Space to hear it again.",
    "training.progress": "Trial {current} of {total}",
    "training.correct": "Correct",
    "training.incorrect": "Incorrect",
    "training.continue": "Continue",
    "training.continue_hint": "Press Enter to continue.",
    "training.completed": "Session completed",
    "training.plot_alt": "Plot of the current signal",

    "report.title": "Session report",
    "report.total": "Trials",
    "report.correct": "Correct",
    "report.accuracy": "Accuracy",
    "report.median_latency": "Median response time (ms)",
    "report.class": "Class",
    "report.class_increasing": "Increasing",
    "report.class_decreasing": "Decreasing",
    "report.class_sine": "Sine",
    "report.class_square": "Square",

    "status.error": "Error: {message}",
    "status.session_created": "Training session ready: {total} trials",
  },
  es: {
    "app.title": "sonowork",
    "nav.label": "Vistas",
    "nav.explore": "Explorar datos",
    "nav.training": "Entrenamiento",
    "lang.label": "Idioma",
    "lang.en": "Inglés",
    "lang.es": "Español",

    "group.input_output": "Entrada / salida",
    "group.data_display": "Visualización de datos",
    "group.data_operations": "Operaciones sobre los datos",
    "group.data_configurations": "Configuración de los datos",

    "io.file": "Archivo de datos",
    "io.upload": "Cargar",
    "io.dataset": "Conjunto de datos",
    "io.play": "Reproducir",
    "io.download": "Descargar WAV",
    "io.uploaded": "Conjunto {name} cargado: {rows} filas",
    "io.no_dataset": "Todavía no hay datos cargados",
    "io.audio_ready": "Audio generado: {seconds} s",
    "io.audio_stale": "La configuración cambió; presione Reproducir de nuevo",

    "display.x_column": "Columna X",
    "display.x_index": "(índice de fila)",
    "display.y_column": "Columna Y",
    "display.grid_caption": "Valores de los datos",
    "display.plot_alt": "Gráfico de la serie seleccionada",

    "ops.transforms": "Transformaciones",
    "ops.normalize": "Normalizar",
    "ops.invert": "Invertir",
    "ops.log": "Logaritmo",
    "ops.square": "Cuadrado",
    "ops.sqrt": "Raíz cuadrada",
    "ops.smooth": "Suavizar",
    "ops.smooth_window": "Ventana de suavizado",
    "ops.cut": "Cortar",
    "ops.cut_lo": "Inicio del corte",
    "ops.cut_hi": "Fin del corte",
    "ops.pipeline": "Pasos aplicados",
    "ops.pipeline_empty": "Sin pasos aplicados",
    "ops.clear": "Quitar pasos",

    "config.waveform": "Forma de onda",
    "config.waveform_sine": "Senoidal",
    "config.waveform_square": "Cuadrada",
    "config.mapping": "Mapeo de tono",
    "config.mapping_linear": "Lineal",
    "config.mapping_log": "Logarítmico",
    "config.f_min": "Frecuencia mínima (Hz)",
    "config.f_max": "Frecuencia máxima (Hz)",
    "config.note_duration": "Segundos por punto",

    "training.settings": "Configuración de la sesión",
    "training.block": "Bloque",
    "training.block_1": "1: señales limpias",
    "training.block_2": "2: ruido leve",
    "training.block_3": "3: ruido fuerte",
    "training.per_class": "Estímulos por clase",
    "training.seed": "Semilla",
    "training.modality": "Modalidad",
    "training.modality_av": "Audio y visual",
    "training.modality_audio": "Solo audio",
    "training.allow_replay": "Permitir repetir el sonido",
    "training.allow_skip": "Permitir saltear la introducción",
    "training.start": "Iniciar sesión",
    "training.intro_title": "Cómo responder",
    "training.intro_keys":
      "Presione la tecla que corresponda al sonido escuchado: Arriba para creciente, Abajo para decreciente, Izquierda para senoidal, Derecha para cuadrada.",
    "training.intro_hint": "Presione Enter para comenzar, Escape para saltear la introducción.",
    "training.listening": "Escuchando…",
    "training.respond": "¿Su respuesta? Use las flechas.",
    "training.replay_hint": "Presione Espacio para escuchar de nuevo.",
    "training.progress": "Intento {current} de {total}",
    "training.correct": "Correcto",
    "training.incorrect": "Incorrecto",
    "training.continue": "Continuar",
    "training.continue_hint": "Presione Enter para continuar.",
    "training.completed": "Sesión completada",
    "training.plot_alt": "Gráfico de la señal actual",

    "report.title": "Informe de la sesión",
    "report.total": "Intentos",
    "report.correct": "Correctos",
    "report.accuracy": "Precisión",
    "report.median_latency": "Tiempo de respuesta mediano (ms)",
    "report.class": "Clase",
    "report.class_increasing": "Creciente",
    "report.class_decreasing": "Decreciente",
    "report.class_sine": "Senoidal",
    "report.class_square": "Cuadrada",

    "status.error": "Error: {message}",
    "status.session_created": "Sesión de entrenamiento lista: {total} intentos",
  },
};

let current: Language = "en";
const listeners = new Set<() => void>();

export function availableLanguages(): Language[] {
  return Object.keys(CATALOGS) as Language[];
}

export function currentLanguage(): Language {
  return current;
}

export function setLanguage(lang: Language): void {
  if (lang === current) return;
  current = lang;
  document.documentElement.lang = lang;
  for (const listener of listeners) listener();
}

export function onLanguageChange(listener: () => void): void {
  listeners.add(listener);
}

export function catalogKeys(lang: Language): string[] {
  return Object.keys(CATALOGS[lang]);
}

export function hasKey(key: string, lang: Language = current): boolean {
  return key in CATALOGS[lang];
}

/** Translate a key, interpolating {placeholders} from params. */
export function t(key: string, params?: Record<string, string | number>): string {
  const template = CATALOGS[current][key] ?? CATALOGS.en[key] ?? key;
  if (!params) return template;
  return template.replace(/\{(\w+)\}/g, (_, name: string) =>
    name in params ? String(params[name]) : `{${name}}`,
  );
}

/**
 * Re-apply translations below root: data-i18n sets textContent,
 * data-i18n-label sets aria-label.
 */
export function translate(root: ParentNode): void {
  root.querySelectorAll<HTMLElement>("[data-i18n]").forEach((el) => {
    el.textContent = t(el.dataset.i18n as string);
  });
  root.querySelectorAll<HTMLElement>("[data-i18n-label]").forEach((el) => {
    el.setAttribute("aria-label", t(el.dataset.i18nLabel as string));
  });
}
