// Chat transport: plain request/response polling of the since-sequence
// endpoint, no sockets. Each poll asks only for messages newer than the
// highest sequence already seen.

import type { ApiClient } from './api.js';
import type { ChatMessageView } from './types.js';

export class ChatPoller {
  private lastSequence = 0;
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;

  constructor(
    private readonly client: ApiClient,
    readonly room: string,
    private readonly onMessages: (messages: ChatMessageView[]) => void,
    readonly intervalMs = 3000,
  ) {}

  get sinceSequence(): number {
    return this.lastSequence;
  }

  async pollOnce(): Promise<ChatMessageView[]> {
    if (this.inFlight) return [];
    this.inFlight = true;
    try {
      const messages = await this.client.getChat(this.room, this.lastSequence);
      if (messages.length > 0) {
        this.lastSequence = messages[messages.length - 1].sequence;
        this.onMessages(messages);
      }
      return messages;
    } finally {
      this.inFlight = false;
    }
  }

  start(): void {
    if (this.timer !== null) return;
    void this.pollOnce();
    this.timer = setInterval(() => {
      void this.pollOnce().catch(() => undefined);
    }, this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
