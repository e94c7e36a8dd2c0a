// Single-page shell: a vertical floor list with a lift control on the left
// and the active floor's panel on the right. Locked levels stay visible but
// greyed, showing the unmet prerequisite.

import { ApiClient, RequestFailed } from './api.js';
import { formatStatements } from './format.js';
import { quizSubmissionGuard, type DraftAnswers } from './guard.js';
import { ChatPoller } from './poll.js';
import { allFloorRoutes, type FloorRoute } from './routes.js';
import type {
  ChatMessageView,
  DecisionInput,
  MarketStateView,
  PackView,
  ProgressView,
} from './types.js';

interface ViewState {
  pack: PackView | null;
  progress: ProgressView | null;
  simulation: MarketStateView | null;
  activeFloor: number;
}

export class App {
  private readonly state: ViewState = {
    pack: null,
    progress: null,
    simulation: null,
    activeFloor: 1,
  };
  private chatPoller: ChatPoller | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async boot(): Promise<void> {
    this.state.pack = await this.client.getPack();
    this.renderLogin();
  }

  private el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    text?: string,
    className?: string,
  ): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (text !== undefined) node.textContent = text;
    if (className !== undefined) node.className = className;
    return node;
  }

  private renderLogin(): void {
    this.root.replaceChildren();
    const form = this.el('form');
    const input = this.el('input');
    input.placeholder = 'Display name';
    const button = this.el('button', 'Enter the building');
    form.append(input, button);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      button.disabled = true;
      void this.client
        .register(input.value.trim() || 'Anonymous')
        .then(() => this.refresh())
        .finally(() => {
          button.disabled = false;
        });
    });
    this.root.append(this.el('h1', 'Venture Tower'), form);
  }

  private async refresh(): Promise<void> {
    this.state.progress = await this.client.getProgress();
    this.render();
  }

  private render(): void {
    const pack = this.state.pack;
    const progress = this.state.progress;
    if (pack === null || progress === null) return;
    this.root.replaceChildren();

    const layout = this.el('div', undefined, 'layout');
    const lift = this.el('nav', undefined, 'lift');
    lift.append(this.el('h2', 'Lift'));
    for (const route of allFloorRoutes(pack).slice().reverse()) {
      lift.append(this.liftButton(route, progress));
    }
    const panel = this.el('main', undefined, 'panel');
    this.renderFloor(panel, this.state.activeFloor);
    layout.append(lift, panel);
    this.root.append(this.el('h1', 'Venture Tower'), layout);
  }

  private liftButton(route: FloorRoute, progress: ProgressView): HTMLButtonElement {
    const button = this.el('button', `${route.floorIndex}. ${route.title}`);
    if ('level' in route.kind) {
      const level = route.kind.level;
      const unlocked = progress.unlocked[String(level)] ?? level === 1;
      if (!unlocked) {
        button.disabled = true;
        button.title = `Pass level ${level - 1} (score 50 or more) to unlock`;
        button.classList.add('locked');
      }
    }
    button.addEventListener('click', () => {
      this.state.activeFloor = route.floorIndex;
      this.render();
    });
    return button;
  }

  private renderFloor(panel: HTMLElement, floorIndex: number): void {
    const pack = this.state.pack;
    if (pack === null) return;
    if (floorIndex <= 8) {
      this.renderLevel(panel, pack.levels[floorIndex - 1]);
      return;
    }
    const floor = pack.floors[floorIndex - 9];
    panel.append(this.el('h2', floor.title));
    switch (floor.kind) {
      case 'virtual_market':
        this.renderMarket(panel);
        break;
      case 'top_list':
        void this.renderTopList(panel);
        break;
      case 'chat':
        this.renderChat(panel, 'lobby');
        break;
      case 'business_plan':
        void this.renderPlan(panel);
        break;
      case 'recreation':
        this.renderProfile(panel);
        break;
      case 'lift_station':
        panel.append(
          this.el('p', 'Use the lift on the left to move between floors.'),
        );
        break;
    }
  }

  private renderLevel(panel: HTMLElement, level: PackView['levels'][number]): void {
    panel.append(this.el('h2', `Level ${level.number}: ${level.title}`));
    for (const unit of level.content_units) {
      panel.append(this.el('h3', unit.heading), this.el('p', unit.body));
    }
    const draft: DraftAnswers = {};
    const form = this.el('form');
    for (const question of level.quiz) {
      const fieldset = this.el('fieldset');
      fieldset.append(this.el('legend', question.prompt));
      question.options.forEach((option, index) => {
        const label = this.el('label');
        const radio = this.el('input');
        radio.type = 'radio';
        radio.name = question.id;
        radio.addEventListener('change', () => {
          draft[question.id] = index;
          submit.disabled = !quizSubmissionGuard(level.quiz, draft).submittable;
        });
        label.append(radio, document.createTextNode(option));
        fieldset.append(label);
      });
      form.append(fieldset);
    }
    const submit = this.el('button', 'Submit answers');
    submit.disabled = true;
    const outcome = this.el('p');
    form.append(submit, outcome);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const guard = quizSubmissionGuard(level.quiz, draft);
      if (!guard.submittable) return;
      submit.disabled = true;
      const answers = level.quiz.map((q) => ({
        question_id: q.id,
        chosen_index: draft[q.id] as number,
      }));
      void this.client
        .submitAttempt(level.number, answers)
        .then((attempt) => {
          outcome.textContent = attempt.passed
            ? `Passed with score ${attempt.score}.`
            : `Score ${attempt.score}; 50 is needed to pass. Try again.`;
          return this.refresh();
        })
        .catch((error: unknown) => {
          outcome.textContent =
            error instanceof RequestFailed ? error.message : String(error);
          submit.disabled = false;
        });
    });
    panel.append(form);
  }

  private renderMarket(panel: HTMLElement): void {
    const status = this.el('p');
    const table = this.el('table');
    const start = this.el('button', 'Start a new venture');
    const form = this.el('form');
    const price = this.numberInput(form, 'Price', 10);
    const production = this.numberInput(form, 'Production', 4700);
    const spend = this.numberInput(form, 'Communication spend', 5000);
    const distribution = this.el('select');
    for (const option of ['intensive', 'selective', 'exclusive']) {
      distribution.append(new Option(option, option));
    }
    form.append(this.el('label', 'Distribution '), distribution);
    const strategy = this.el('input');
    strategy.value = 'competitive pricing';
    form.append(this.el('label', ' Pricing strategy '), strategy);
    const play = this.el('button', 'Play turn');
    form.append(play);

    const showState = (state: MarketStateView): void => {
      status.textContent =
        `Turn ${state.turn}/${state.horizon} — cash ${state.cash.toFixed(2)}, ` +
        `inventory ${state.inventory_units} units` +
        (state.bankrupt ? ' — BANKRUPT' : '');
    };

    start.addEventListener('click', () => {
      void this.client.startMarket().then((state) => {
        this.state.simulation = state;
        showState(state);
        table.replaceChildren();
      });
    });
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      play.disabled = true;
      const decision: DecisionInput = {
        price: Number(price.value),
        production: Number(production.value),
        communication_spend: Number(spend.value),
        distribution: distribution.value as DecisionInput['distribution'],
        pricing_strategy: strategy.value,
      };
      void this.client
        .playTurn(decision)
        .then((turn) => {
          this.state.simulation = turn.finished ? null : turn.state;
          showState(turn.state);
          table.replaceChildren();
          for (const row of formatStatements(turn.result.pnl)) {
            const tr = this.el('tr');
            tr.append(this.el('td', row.label), this.el('td', row.display));
            table.append(tr);
          }
          if (turn.outcome !== undefined) {
            status.textContent += turn.outcome.success
              ? ` — venture succeeded, score ${turn.outcome.score}`
              : ' — venture did not grow its equity';
          }
        })
        .catch((error: unknown) => {
          status.textContent =
            error instanceof RequestFailed ? error.message : String(error);
        })
        .finally(() => {
          play.disabled = false;
        });
    });
    panel.append(start, status, form, table);
  }

  private numberInput(form: HTMLElement, label: string, value: number): HTMLInputElement {
    const input = this.el('input');
    input.type = 'number';
    input.value = String(value);
    form.append(this.el('label', `${label} `), input, this.el('br'));
    return input;
  }

  private async renderTopList(panel: HTMLElement): Promise<void> {
    const table = this.el('table');
    panel.append(table);
    const entries = await this.client.getTopList();
    for (const entry of entries) {
      const tr = this.el('tr');
      tr.append(this.el('td', entry.display_name), this.el('td', String(entry.score)));
      table.append(tr);
    }
    if (entries.length === 0) panel.append(this.el('p', 'No successful ventures yet.'));
  }

  private renderChat(panel: HTMLElement, room: string): void {
    const log = this.el('ul');
    const form = this.el('form');
    const input = this.el('input');
    const send = this.el('button', 'Send');
    form.append(input, send);
    panel.append(log, form);

    this.chatPoller?.stop();
    this.chatPoller = new ChatPoller(this.client, room, (messages: ChatMessageView[]) => {
      for (const message of messages) {
        log.append(this.el('li', `${message.sender}: ${message.body}`));
      }
    });
    this.chatPoller.start();

    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const body = input.value.trim();
      if (body === '') return;
      send.disabled = true;
      void this.client
        .postChat(room, body)
        .then(() => {
          input.value = '';
          return this.chatPoller?.pollOnce();
        })
        .finally(() => {
          send.disabled = false;
        });
    });
  }

  private async renderPlan(panel: HTMLElement): Promise<void> {
    const plan = await this.client.getPlan();
    const summary = this.el(
      'p',
      `${plan.filled}/${plan.section_order.length} sections filled.`,
    );
    panel.append(summary);
    for (const key of plan.section_order) {
      const details = this.el('details');
      details.append(this.el('summary', key));
      const area = this.el('textarea');
      area.value = plan.sections[key] ?? '';
      const save = this.el('button', 'Save section');
      save.addEventListener('click', () => {
        save.disabled = true;
        void this.client
          .putSection(key, area.value)
          .then((updated) => {
            summary.textContent = `${updated.filled}/${updated.section_order.length} sections filled.`;
          })
          .finally(() => {
            save.disabled = false;
          });
      });
      details.append(area, save);
      panel.append(details);
    }
  }

  private renderProfile(panel: HTMLElement): void {
    const pack = this.state.pack;
    if (pack === null) return;
    const form = this.el('form');
    const ratings = new Map<string, number>();
    for (const item of pack.profile_questionnaire) {
      const fieldset = this.el('fieldset');
      fieldset.append(this.el('legend', `[${item.area}] ${item.text}`));
      for (let rating = 1; rating <= 5; rating++) {
        const label = this.el('label', String(rating));
        const radio = this.el('input');
        radio.type = 'radio';
        radio.name = item.id;
        radio.addEventListener('change', () => ratings.set(item.id, rating));
        label.prepend(radio);
        fieldset.append(label);
      }
      form.append(fieldset);
    }
    const submit = this.el('button', 'See my entrepreneur profile');
    const outcome = this.el('p');
    form.append(submit, outcome);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      submit.disabled = true;
      const responses = [...ratings.entries()].map(([item_id, rating]) => ({
        item_id,
        rating,
      }));
      void this.client
        .submitProfile(responses)
        .then((report) => {
          outcome.textContent = Object.entries(report.area_scores)
            .map(([area, score]) => `${area}: ${score.toFixed(2)}`)
            .join(' · ');
        })
        .catch((error: unknown) => {
          outcome.textContent =
            error instanceof RequestFailed ? error.message : String(error);
        })
        .finally(() => {
          submit.disabled = false;
        });
    });
    panel.append(form);
  }
}

export function mount(baseUrl: string, root: HTMLElement): App {
  const app = new App(new ApiClient(baseUrl), root);
  void app.boot();
  return app;
}
