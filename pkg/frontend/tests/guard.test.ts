import { describe, expect, it } from 'vitest';

import { quizSubmissionGuard, type DraftAnswers } from '../src/guard';
import type { QuizQuestionView } from '../src/types';
import { packView } from './helpers';

// Mock of the server's attempt validation: an attempt is rejected as
// incomplete when it has duplicate question ids, ids outside the quiz, or
// fails to answer every question.
function mockServerAccepts(
  quiz: QuizQuestionView[],
  answers: { question_id: string; chosen_index: number }[],
): boolean {
  const ids = answers.map((a) => a.question_id);
  if (new Set(ids).size !== ids.length) return false;
  const quizIds = new Set(quiz.map((q) => q.id));
  if (ids.some((id) => !quizIds.has(id))) return false;
  return quizIds.size === ids.length;
}

function draftToAnswers(draft: DraftAnswers): { question_id: string; chosen_index: number }[] {
  return Object.entries(draft)
    .filter(([, index]) => index !== undefined)
    .map(([question_id, chosen_index]) => ({
      question_id,
      chosen_index: chosen_index as number,
    }));
}

// Small deterministic generator so the 10,000-draft run is reproducible.
function makeRng(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

describe('quizSubmissionGuard', () => {
  const pack = packView();
  const quizzes = pack.levels.map((level) => level.quiz);

  it('fully answered quiz is submittable with nothing missing', () => {
    const quiz = quizzes[0];
    const draft: DraftAnswers = {};
    for (const q of quiz) draft[q.id] = 0;
    expect(quizSubmissionGuard(quiz, draft)).toEqual({ submittable: true, missing: [] });
  });

  it('empty draft reports every question missing', () => {
    const quiz = quizzes[0];
    const result = quizSubmissionGuard(quiz, {});
    expect(result.submittable).toBe(false);
    expect(result.missing).toEqual(quiz.map((q) => q.id));
  });

  it('one unanswered question is reported by id', () => {
    const quiz = quizzes[1];
    const draft: DraftAnswers = {};
    for (const q of quiz.slice(1)) draft[q.id] = 1;
    const result = quizSubmissionGuard(quiz, draft);
    expect(result.submittable).toBe(false);
    expect(result.missing).toEqual([quiz[0].id]);
  });

  it('admits no draft the mock server rejects as incomplete (10,000 drafts)', () => {
    const rng = makeRng(20260824);
    let admitted = 0;
    for (let trial = 0; trial < 10_000; trial++) {
      const quiz = quizzes[Math.floor(rng() * quizzes.length)];
      const draft: DraftAnswers = {};
      for (const q of quiz) {
        const roll = rng();
        if (roll < 0.6) draft[q.id] = Math.floor(rng() * q.options.length);
        else if (roll < 0.7) draft[q.id] = undefined;
      }
      if (rng() < 0.15) draft[`stray_${trial}`] = 0;

      const guard = quizSubmissionGuard(quiz, draft);
      if (guard.submittable) {
        admitted++;
        expect(mockServerAccepts(quiz, draftToAnswers(draft))).toBe(true);
        expect(guard.missing).toEqual([]);
      } else {
        expect(guard.missing.length > 0 || !mockServerAccepts(quiz, draftToAnswers(draft))).toBe(
          true,
        );
      }
    }
    // The generator must actually exercise the submittable path.
    expect(admitted).toBeGreaterThan(100);
  });
});
