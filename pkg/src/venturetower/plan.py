"""The business plan floor: one free-text section per curriculum level.

The section key set is fixed at creation from the pack's eight level titles
and never changes afterwards.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

from .content import ContentPack
from .errors import UnknownSection

PLAN_TITLE = "Business Plan"


@dataclass(frozen=True)
class BusinessPlan:
    player_id: str
    section_order: tuple[str, ...]  # the 8 level titles, in level order
    sections: dict[str, str]
    last_modified: float


def new_plan(player_id: str, pack: ContentPack, now: float | None = None) -> BusinessPlan:
    titles = tuple(pack.level_titles())
    return BusinessPlan(
        player_id=player_id,
        section_order=titles,
        sections={t: "" for t in titles},
        last_modified=time.time() if now is None else now,
    )


def upsert_section(
    plan: BusinessPlan, section_key: str, body: str, now: float | None = None
) -> BusinessPlan:
    """Replace one section's body; writing an empty string clears it."""
    if section_key not in plan.sections:
        raise UnknownSection(f"'{section_key}' is not a section of this plan")
    sections = dict(plan.sections)
    sections[section_key] = body
    return replace(
        plan, sections=sections, last_modified=time.time() if now is None else now
    )


def completeness_report(plan: BusinessPlan) -> tuple[int, list[str]]:
    """(number of non-blank sections, missing section keys in level order)."""
    missing = [key for key in plan.section_order if not plan.sections[key].strip()]
    return len(plan.section_order) - len(missing), missing


def export_plan(plan: BusinessPlan) -> bytes:
    """Deterministic UTF-8 text export: title line, then '## <key>' blocks in level order."""
    lines = [f"# {PLAN_TITLE}", ""]
    for key in plan.section_order:
        lines.append(f"## {key}")
        lines.append(plan.sections[key])
        lines.append("")
    return "\n".join(lines).encode("utf-8")
