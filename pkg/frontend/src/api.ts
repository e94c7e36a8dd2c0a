// Thin fetch client for the game server. Every number shown in the UI comes
// out of these responses; the client computes no game outcomes itself.

import type {
  AttemptView,
  ChatMessageView,
  DecisionInput,
  LeaderEntryView,
  MarketStateView,
  PackView,
  PlanView,
  ProgressView,
  TurnResponse,
} from './types.js';

export interface ApiError {
  status: number;
  error_code: string;
  message: string;
}

export class RequestFailed extends Error {
  readonly detail: ApiError;

  constructor(detail: ApiError) {
    super(`${detail.error_code}: ${detail.message}`);
    this.detail = detail;
  }
}

export type FetchLike = typeof fetch;

export class ApiClient {
  private token: string | null = null;

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    if (this.token !== null) headers['Authorization'] = `Bearer ${this.token}`;
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail: ApiError = {
        status: response.status,
        error_code: 'unknown_error',
        message: response.statusText,
      };
      try {
        const parsed = (await response.json()) as {
          error_code?: string;
          message?: string;
        };
        detail = {
          status: response.status,
          error_code: parsed.error_code ?? 'unknown_error',
          message: parsed.message ?? response.statusText,
        };
      } catch {
        // non-JSON error body; keep the status-line fallback
      }
      throw new RequestFailed(detail);
    }
    const contentType = response.headers.get('content-type') ?? '';
    if (contentType.includes('text/plain')) {
      return (await response.text()) as T;
    }
    return (await response.json()) as T;
  }

  async register(displayName: string): Promise<{ player_id: string; token: string }> {
    const result = await this.request<{ player_id: string; token: string }>(
      'POST',
      '/api/players',
      { display_name: displayName },
    );
    this.setToken(result.token);
    return result;
  }

  getPack(): Promise<PackView> {
    return this.request('GET', '/api/pack');
  }

  getProgress(): Promise<ProgressView> {
    return this.request('GET', '/api/progress');
  }

  submitAttempt(
    levelNumber: number,
    answers: { question_id: string; chosen_index: number }[],
  ): Promise<AttemptView> {
    return this.request('POST', `/api/levels/${levelNumber}/attempts`, { answers });
  }

  getHistory(): Promise<
    {
      level_number: number;
      prompt: string;
      chosen: string;
      correct: string;
      was_correct: boolean;
    }[]
  > {
    return this.request('GET', '/api/history');
  }

  submitProfile(
    responses: { item_id: string; rating: number }[],
  ): Promise<{ area_scores: Record<string, number> }> {
    return this.request('POST', '/api/profile', { responses });
  }

  getPlan(): Promise<PlanView> {
    return this.request('GET', '/api/plan');
  }

  putSection(sectionKey: string, body: string): Promise<PlanView> {
    return this.request('PUT', `/api/plan/sections/${encodeURIComponent(sectionKey)}`, {
      body,
    });
  }

  exportPlan(): Promise<string> {
    return this.request('GET', '/api/plan/export');
  }

  startMarket(options?: {
    config?: Record<string, unknown>;
    seed?: number;
  }): Promise<MarketStateView> {
    return this.request('POST', '/api/market/start', options ?? {});
  }

  playTurn(decision: DecisionInput): Promise<TurnResponse> {
    return this.request('POST', '/api/market/turn', { decision });
  }

  getTopList(): Promise<LeaderEntryView[]> {
    return this.request('GET', '/api/toplist');
  }

  postChat(room: string, body: string): Promise<ChatMessageView> {
    return this.request('POST', `/api/chat/${encodeURIComponent(room)}`, { body });
  }

  getChat(room: string, since = 0): Promise<ChatMessageView[]> {
    return this.request('GET', `/api/chat/${encodeURIComponent(room)}?since=${since}`);
  }
}
