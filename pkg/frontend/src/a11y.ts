/** Screen-reader announcements through the page's two live regions. */

export class Announcer {
  private status: HTMLElement;
  private alert: HTMLElement;

  constructor(status: HTMLElement, alert: HTMLElement) {
    this.status = status;
    this.alert = alert;
  }

  /** Polite status update (does not interrupt the screen reader). */
  announce(message: string): void {
    this.write(this.status, message);
  }

  /** Assertive announcement for feedback that must be heard immediately. */
  announceAssertive(message: string): void {
    this.write(this.alert, message);
  }

  private write(el: HTMLElement, message: string): void {
    // Clear first so repeating the same text is still announced.
    el.textContent = "";
    window.setTimeout(() => {
      el.textContent = message;
    }, 0);
  }
}
