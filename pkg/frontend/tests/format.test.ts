import { describe, expect, it } from 'vitest';

import { formatMoney, formatStatements } from '../src/format';
import type { ProfitAndLossView } from '../src/types';

// Single-turn oracle: price 10, production and sales 5000 units, unit cost 6,
// fixed costs 8000, communication spend 5000, equipment 24000 over 12 turns,
// 1% interest on 20000 debt, 25% tax. The same case is verified against the
// simulation engine by the server's own test suite.
const ORACLE_PNL: ProfitAndLossView = {
  sales: 50_000.0,
  cogs: 30_000.0,
  gross_margin: 20_000.0,
  sga: 13_000.0,
  ebitda: 7_000.0,
  depreciation: 2_000.0,
  ebit: 5_000.0,
  interest: 200.0,
  income_before_taxes: 4_800.0,
  taxes: 1_200.0,
  net_income: 3_600.0,
};

describe('formatMoney', () => {
  it('parenthesizes negatives', () => {
    expect(formatMoney(-1234.5)).toBe('(1,234.50)');
  });

  it('uses thousands separators and two decimals', () => {
    expect(formatMoney(1234567.891)).toBe('1,234,567.89');
    expect(formatMoney(0)).toBe('0.00');
    expect(formatMoney(999.9)).toBe('999.90');
  });
});

describe('formatStatements', () => {
  it('emits eleven rows in canonical order', () => {
    const rows = formatStatements(ORACLE_PNL);
    expect(rows.map((r) => r.label)).toEqual([
      'Sales',
      'Cost of goods sold',
      'Gross margin',
      'SG&A',
      'EBITDA',
      'Depreciation',
      'EBIT',
      'Interest',
      'Income before taxes',
      'Taxes',
      'Net income',
    ]);
  });

  it('rows equal the oracle statement values', () => {
    const rows = formatStatements(ORACLE_PNL);
    expect(rows.map((r) => r.value)).toEqual([
      50_000, 30_000, 20_000, 13_000, 7_000, 2_000, 5_000, 200, 4_800, 1_200, 3_600,
    ]);
    expect(rows.map((r) => r.display)).toEqual([
      '50,000.00',
      '30,000.00',
      '20,000.00',
      '13,000.00',
      '7,000.00',
      '2,000.00',
      '5,000.00',
      '200.00',
      '4,800.00',
      '1,200.00',
      '3,600.00',
    ]);
  });

  it('renders an all-zero statement as eleven "0.00" rows', () => {
    const zero = Object.fromEntries(
      Object.keys(ORACLE_PNL).map((key) => [key, 0]),
    ) as unknown as ProfitAndLossView;
    const rows = formatStatements(zero);
    expect(rows).toHaveLength(11);
    expect(rows.every((r) => r.display === '0.00')).toBe(true);
  });

  it('parenthesizes a loss-making statement', () => {
    const losing = { ...ORACLE_PNL, net_income: -1234.5 };
    const rows = formatStatements(losing);
    expect(rows[rows.length - 1].display).toBe('(1,234.50)');
  });
});
