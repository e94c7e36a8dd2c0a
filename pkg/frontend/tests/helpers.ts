import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';
import { dirname, join } from 'node:path';

import type { PackView } from '../src/types';

const HERE = dirname(fileURLToPath(import.meta.url));

/** The server's built-in content pack, as shipped in this repository. */
export function rawPack(): Record<string, unknown> {
  const path = join(HERE, '..', '..', 'src', 'venturetower', 'data', 'default_pack.json');
  return JSON.parse(readFileSync(path, 'utf-8')) as Record<string, unknown>;
}

/** The pack as the API serves it: quiz questions without answer keys. */
export function packView(): PackView {
  const document = rawPack() as unknown as PackView & {
    levels: { quiz: ({ correct_index?: number } & PackView['levels'][number]['quiz'][number])[] }[];
  };
  for (const level of document.levels) {
    for (const question of level.quiz) {
      delete question.correct_index;
    }
  }
  return document;
}

/** Answer key for a level, keyed by question id (test-only knowledge). */
export function answerKey(levelNumber: number): Map<string, number> {
  const document = rawPack() as {
    levels: { number: number; quiz: { id: string; correct_index: number }[] }[];
  };
  const level = document.levels.find((l) => l.number === levelNumber);
  if (level === undefined) throw new Error(`no level ${levelNumber}`);
  return new Map(level.quiz.map((q) => [q.id, q.correct_index]));
}
