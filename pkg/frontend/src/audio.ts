/** Audio playback and feedback tones, injectable so tests can run silent. */

export interface AudioPlayer {
  /** Play a WAV blob to the end; resolves when playback finishes. */
  play(data: Blob): Promise<void>;
  stop(): void;
}

/** Plays served WAV bytes through a native audio element, so what the user
 * hears is exactly what the service rendered. */
export class HtmlAudioPlayer implements AudioPlayer {
  private element: HTMLAudioElement | null = null;
  private url: string | null = null;

  play(data: Blob): Promise<void> {
    this.stop();
    const url = URL.createObjectURL(data);
    const element = new Audio(url);
    this.element = element;
    this.url = url;
    return new Promise((resolve, reject) => {
      element.addEventListener("ended", () => {
        this.cleanup();
        resolve();
      });
      element.addEventListener("error", () => {
        this.cleanup();
        reject(new Error("audio playback failed"));
      });
      void element.play().catch(reject);
    });
  }

  stop(): void {
    if (this.element) {
      this.element.pause();
    }
    this.cleanup();
  }

  private cleanup(): void {
    if (this.url) {
      URL.revokeObjectURL(this.url);
      this.url = null;
    }
    this.element = null;
  }
}

export interface Beeper {
  correct(): void;
  incorrect(): void;
}

/** Short confirmation/denial tones: high beep for correct, low for not. */
export class WebAudioBeeper implements Beeper {
  private context: AudioContext | null = null;

  correct(): void {
    this.beep(880);
  }

  incorrect(): void {
    this.beep(220);
  }

  private beep(frequency: number): void {
    try {
      this.context = this.context ?? new AudioContext();
      const ctx = this.context;
      const oscillator = ctx.createOscillator();
      const gain = ctx.createGain();
      oscillator.frequency.value = frequency;
      gain.gain.setValueAtTime(0.2, ctx.currentTime);
      gain.gain.exponentialRampToValueAtTime(0.001, ctx.currentTime + 0.15);
      oscillator.connect(gain).connect(ctx.destination);
      oscillator.start();
      oscillator.stop(ctx.currentTime + 0.15);
    } catch {
      // no audio output available; the visual + live region still inform
    }
  }
}
