"""Player journey through the eight levels.

Levels unlock strictly in sequence: passing level k opens level k+1. Retakes
are allowed and the best passed score per level counts. The aggregate learning
score in [0, 1] is what the virtual market consumes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

from .content import PROFILE_AREAS, ContentPack
from .errors import (
    IncompleteAnswers,
    IncompleteResponses,
    LevelLocked,
    RatingOutOfRange,
)

DEFAULT_PASS_THRESHOLD = 50  # percent

LEVEL_NUMBERS = range(1, 9)


def round_half_up(x: float) -> int:
    """Round to the nearest integer with ties going up (not banker's rounding)."""
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class LevelAttempt:
    level_number: int
    answers: tuple[tuple[str, int], ...]  # (question_id, chosen_index)
    score: int  # 0..100
    passed: bool
    timestamp: float


@dataclass(frozen=True)
class ProfileReport:
    area_scores: dict[str, float]  # 6 areas -> mean rating in [1, 5]
    responses: tuple[tuple[str, int], ...]  # (item_id, rating 1..5)


@dataclass(frozen=True)
class LearningScore:
    value: float  # in [0, 1]
    per_level: dict[int, int]  # level -> best passed score percentage, 0 if never passed


@dataclass(frozen=True)
class PlayerProgress:
    player_id: str
    attempts: dict[int, tuple[LevelAttempt, ...]] = field(default_factory=dict)
    profile: ProfileReport | None = None

    def attempts_for(self, level_number: int) -> tuple[LevelAttempt, ...]:
        return self.attempts.get(level_number, ())


def is_level_unlocked(progress: PlayerProgress, level_number: int) -> bool:
    """Level 1 is always open; level k needs a passing attempt at k-1."""
    if level_number == 1:
        return True
    return any(a.passed for a in progress.attempts_for(level_number - 1))


def submit_assessment(
    progress: PlayerProgress,
    pack: ContentPack,
    level_number: int,
    answers: list[tuple[str, int]],
    pass_threshold: int = DEFAULT_PASS_THRESHOLD,
    now: float | None = None,
) -> tuple[PlayerProgress, LevelAttempt]:
    """Grade a full quiz submission and append the attempt.

    Every question of the level's quiz must be answered exactly once; partial
    or stray submissions are rejected before anything is recorded.
    """
    if not is_level_unlocked(progress, level_number):
        raise LevelLocked(f"level {level_number} requires passing level {level_number - 1}")
    level = pack.level(level_number)
    quiz_ids = [q.id for q in level.quiz]
    answered_ids = [qid for qid, _ in answers]
    duplicates = {qid for qid in answered_ids if answered_ids.count(qid) > 1}
    if duplicates:
        raise IncompleteAnswers(f"duplicate answers for question(s): {sorted(duplicates)}")
    unknown = set(answered_ids) - set(quiz_ids)
    if unknown:
        raise IncompleteAnswers(f"unknown question id(s): {sorted(unknown)}")
    missing = set(quiz_ids) - set(answered_ids)
    if missing:
        raise IncompleteAnswers(f"missing answers for question(s): {sorted(missing)}")

    by_id = {q.id: q for q in level.quiz}
    correct = sum(1 for qid, idx in answers if idx == by_id[qid].correct_index)
    score = round_half_up(100 * correct / len(quiz_ids))
    attempt = LevelAttempt(
        level_number=level_number,
        answers=tuple(answers),
        score=score,
        passed=score >= pass_threshold,
        timestamp=time.time() if now is None else now,
    )
    new_attempts = dict(progress.attempts)
    new_attempts[level_number] = progress.attempts_for(level_number) + (attempt,)
    return replace(progress, attempts=new_attempts), attempt


def aggregate_learning_score(progress: PlayerProgress) -> LearningScore:
    """Best passed score per level, summed and normalized to [0, 1]."""
    per_level: dict[int, int] = {}
    for k in LEVEL_NUMBERS:
        passed_scores = [a.score for a in progress.attempts_for(k) if a.passed]
        per_level[k] = max(passed_scores) if passed_scores else 0
    return LearningScore(value=sum(per_level.values()) / 800, per_level=per_level)


def record_profile_questionnaire(
    progress: PlayerProgress, pack: ContentPack, responses: list[tuple[str, int]]
) -> tuple[PlayerProgress, ProfileReport]:
    """Score the six-area self-assessment; every item rated exactly once, 1..5."""
    items = {item.id: item for item in pack.profile_questionnaire}
    answered = [item_id for item_id, _ in responses]
    duplicates = {i for i in answered if answered.count(i) > 1}
    if duplicates:
        raise IncompleteResponses(f"duplicate response(s): {sorted(duplicates)}")
    unknown = set(answered) - set(items)
    if unknown:
        raise IncompleteResponses(f"unknown item id(s): {sorted(unknown)}")
    missing = set(items) - set(answered)
    if missing:
        raise IncompleteResponses(f"missing response(s): {sorted(missing)}")
    for item_id, rating in responses:
        if not isinstance(rating, int) or not (1 <= rating <= 5):
            raise RatingOutOfRange(f"rating {rating!r} for '{item_id}' not in 1..5")

    by_area: dict[str, list[int]] = {area: [] for area in PROFILE_AREAS}
    for item_id, rating in responses:
        by_area[items[item_id].area].append(rating)
    area_scores = {
        area: (sum(ratings) / len(ratings)) for area, ratings in by_area.items() if ratings
    }
    report = ProfileReport(area_scores=area_scores, responses=tuple(responses))
    return replace(progress, profile=report), report


@dataclass(frozen=True)
class HistoryRow:
    level_number: int
    prompt: str
    chosen: str
    correct: str
    was_correct: bool


def answer_history(progress: PlayerProgress, pack: ContentPack) -> list[HistoryRow]:
    """Every answered question across all attempts, in attempt order (lift station view)."""
    rows: list[HistoryRow] = []
    all_attempts = [a for k in sorted(progress.attempts) for a in progress.attempts[k]]
    all_attempts.sort(key=lambda a: a.timestamp)
    for attempt in all_attempts:
        level = pack.level(attempt.level_number)
        by_id = {q.id: q for q in level.quiz}
        for qid, idx in attempt.answers:
            q = by_id[qid]
            chosen = q.options[idx] if 0 <= idx < len(q.options) else f"<option {idx}>"
            rows.append(
                HistoryRow(
                    level_number=attempt.level_number,
                    prompt=q.prompt,
                    chosen=chosen,
                    correct=q.options[q.correct_index],
                    was_correct=idx == q.correct_index,
                )
            )
    return rows
