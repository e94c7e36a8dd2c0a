// Client-side mirror of the server's incomplete-answers rule: an attempt is
// only sent once every question has exactly one answer and no stray answers
// exist, so the server never rejects a guarded submission as incomplete.

import type { QuizQuestionView } from './types.js';

export interface SubmissionGuardResult {
  submittable: boolean;
  missing: string[];
}

export type DraftAnswers = Record<string, number | undefined>;

export function quizSubmissionGuard(
  quiz: QuizQuestionView[],
  draft: DraftAnswers,
): SubmissionGuardResult {
  const quizIds = new Set(quiz.map((q) => q.id));
  const missing = quiz
    .filter((q) => draft[q.id] === undefined)
    .map((q) => q.id);
  const stray = Object.keys(draft).some(
    (id) => draft[id] !== undefined && !quizIds.has(id),
  );
  return { submittable: missing.length === 0 && !stray, missing };
}
