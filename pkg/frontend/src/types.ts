// View types mirroring the server's JSON API. The client never sees quiz
// answer keys before submitting an attempt, so QuizQuestionView has no
// correct_index.

export interface QuizQuestionView {
  id: string;
  prompt: string;
  options: string[];
}

export interface ExerciseView {
  id: string;
  kind: 'classification' | 'ordering';
  title: string;
  taxonomy?: string;
  stages?: string[];
}

export interface ContentUnitView {
  heading: string;
  body: string;
}

export interface LevelView {
  number: number;
  title: string;
  content_units: ContentUnitView[];
  quiz: QuizQuestionView[];
  exercises: ExerciseView[];
}

export type FloorKind =
  | 'business_plan'
  | 'recreation'
  | 'lift_station'
  | 'virtual_market'
  | 'chat'
  | 'top_list';

export interface FloorView {
  kind: FloorKind;
  title: string;
  static_resources: { label: string; uri: string }[];
}

export interface TaxonomyView {
  categories: string[];
  items: [string, string][];
}

export interface ProfileItemView {
  id: string;
  area: string;
  text: string;
}

export interface PackView {
  version: string;
  levels: LevelView[];
  floors: FloorView[];
  taxonomies: Record<string, TaxonomyView>;
  profile_questionnaire: ProfileItemView[];
}

export interface AnswerResult {
  question_id: string;
  chosen_index: number;
  correct_index: number;
  was_correct: boolean;
}

export interface AttemptView {
  level_number: number;
  score: number;
  passed: boolean;
  timestamp: number;
  answers: AnswerResult[];
}

export interface ProgressView {
  player_id: string;
  display_name: string;
  learning_score: { value: number; per_level: Record<string, number> };
  unlocked: Record<string, boolean>;
  attempts: Record<string, AttemptView[]>;
  profile: { area_scores: Record<string, number> } | null;
}

export interface ProfitAndLossView {
  sales: number;
  cogs: number;
  gross_margin: number;
  sga: number;
  ebitda: number;
  depreciation: number;
  ebit: number;
  interest: number;
  income_before_taxes: number;
  taxes: number;
  net_income: number;
}

export interface BalanceSheetView {
  cash: number;
  inventory_value: number;
  equipment_net: number;
  total_assets: number;
  debt: number;
  equity: number;
  total_liabilities_and_equity: number;
}

export interface MarketStateView {
  turn: number;
  horizon: number;
  cash: number;
  inventory_units: number;
  learning_score: number;
  bankrupt: boolean;
  balance: BalanceSheetView;
  config: Record<string, unknown>;
}

export interface TurnResponse {
  result: {
    turn: number;
    demand_units: number;
    units_sold: number;
    pnl: ProfitAndLossView;
    balance: BalanceSheetView;
  };
  state: MarketStateView;
  finished: boolean;
  outcome?: { success: boolean; score: number };
}

export interface DecisionInput {
  price: number;
  production: number;
  communication_spend: number;
  distribution: 'intensive' | 'selective' | 'exclusive';
  pricing_strategy: string;
}

export interface PlanView {
  section_order: string[];
  sections: Record<string, string>;
  filled: number;
  missing: string[];
  last_modified: number;
}

export interface LeaderEntryView {
  player_id: string;
  display_name: string;
  score: number;
  achieved_at: number;
}

export interface ChatMessageView {
  room: string;
  sender: string;
  body: string;
  sequence: number;
  sent_at: number;
}
