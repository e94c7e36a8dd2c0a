"""Scored in-level exercises: classification rounds and ordering rounds.

Everything here is a pure function over immutable inputs. Shuffles are
Fisher-Yates driven by ``random.Random(seed)`` so a round can be replayed
bit-for-bit from its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .content import Taxonomy
from .errors import EmptyTaxonomy, MissingPlacement, NotAPermutation, UnknownCategory


@dataclass(frozen=True)
class ClassificationRound:
    taxonomy_name: str
    presented_items: tuple[str, ...]
    seed: int


@dataclass(frozen=True)
class RoundScore:
    correct: int
    total: int

    @property
    def fraction(self) -> float:
        return self.correct / self.total


def new_classification_round(taxonomy: Taxonomy, seed: int) -> ClassificationRound:
    """Deal the taxonomy's item labels in a seed-determined shuffled order."""
    if not taxonomy.items:
        raise EmptyTaxonomy(f"taxonomy '{taxonomy.name}' has no items")
    labels = [label for label, _ in taxonomy.items]
    random.Random(seed).shuffle(labels)
    return ClassificationRound(
        taxonomy_name=taxonomy.name, presented_items=tuple(labels), seed=seed
    )


def score_classification(
    round_: ClassificationRound, taxonomy: Taxonomy, placements: dict[str, str]
) -> RoundScore:
    """Count placements that match the taxonomy's ground-truth category.

    The score depends only on placements vs the taxonomy, never on the
    presentation order.
    """
    for label in round_.presented_items:
        if label not in placements:
            raise MissingPlacement(f"no placement for item '{label}'")
    extra = set(placements) - set(round_.presented_items)
    if extra:
        raise MissingPlacement(f"placements for unknown item(s): {sorted(extra)}")
    for label, category in placements.items():
        if category not in taxonomy.categories:
            raise UnknownCategory(f"'{category}' is not a category of '{taxonomy.name}'")
    truth = dict(taxonomy.items)
    correct = sum(1 for label, category in placements.items() if truth[label] == category)
    return RoundScore(correct=correct, total=len(round_.presented_items))


def score_ordering(expected: list[str], given: list[str]) -> RoundScore:
    """Positional match count: one point per stage sitting in its correct slot."""
    if sorted(expected) != sorted(given):
        raise NotAPermutation(f"{given!r} is not a permutation of {expected!r}")
    correct = sum(1 for e, g in zip(expected, given) if e == g)
    return RoundScore(correct=correct, total=len(expected))
