// Rendering of the per-turn financial statements. Row order and labels are
// fixed; values are displayed exactly as reported by the server.

import type { ProfitAndLossView } from './types.js';

export interface StatementRow {
  label: string;
  value: number;
  display: string;
}

/** "1,234.50" with negatives parenthesized: "(1,234.50)". */
export function formatMoney(value: number): string {
  const magnitude = Math.abs(value).toLocaleString('en-US', {
    minimumFractionDigits: 2,
    maximumFractionDigits: 2,
  });
  return value < 0 ? `(${magnitude})` : magnitude;
}

const PNL_ROWS: [string, keyof ProfitAndLossView][] = [
  ['Sales', 'sales'],
  ['Cost of goods sold', 'cogs'],
  ['Gross margin', 'gross_margin'],
  ['SG&A', 'sga'],
  ['EBITDA', 'ebitda'],
  ['Depreciation', 'depreciation'],
  ['EBIT', 'ebit'],
  ['Interest', 'interest'],
  ['Income before taxes', 'income_before_taxes'],
  ['Taxes', 'taxes'],
  ['Net income', 'net_income'],
];

export function formatStatements(pnl: ProfitAndLossView): StatementRow[] {
  return PNL_ROWS.map(([label, key]) => ({
    label,
    value: pnl[key],
    display: formatMoney(pnl[key]),
  }));
}
