/**
 * Shell-style command history: up recalls older entries, down walks back
 * toward the line being edited, and sending anything resets the cursor.
 */

export class CommandHistory {
  private entries: string[] = [];
  private cursor = -1;
  private draft = "";

  push(text: string): void {
    if (text !== "" && text !== this.entries[this.entries.length - 1]) {
      this.entries.push(text);
    }
    this.cursor = -1;
    this.draft = "";
  }

  /** Move up from the given input value; returns the text to show. */
  up(current: string): string {
    if (this.entries.length === 0) {
      return current;
    }
    if (this.cursor === -1) {
      this.draft = current;
      this.cursor = this.entries.length - 1;
    } else if (this.cursor > 0) {
      this.cursor -= 1;
    }
    return this.entries[this.cursor] ?? current;
  }

  /** Move back down; past the newest entry the unsent draft comes back. */
  down(): string {
    if (this.cursor === -1) {
      return this.draft;
    }
    this.cursor += 1;
    if (this.cursor >= this.entries.length) {
      this.cursor = -1;
      return this.draft;
    }
    return this.entries[this.cursor] ?? this.draft;
  }

  size(): number {
    return this.entries.length;
  }
}
