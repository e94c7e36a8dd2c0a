"""File-based persistence: player records, the top-15 leaderboard, chat rooms.

Layout under the state directory:

    players/<player_id>.json   one document per player
    leaderboard.json           best successful score per player
    chat/<room>.json           append-only message log per room

Every write goes through write-temp-then-rename, so a crash mid-write leaves
the previous version intact. Mutations are serialized per player, per room and
for the leaderboard via in-process locks; the service runs as a single process,
which is the deployment model here.
"""

from __future__ import annotations

import json
import os
import re
import secrets
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

from . import market
from .errors import (
    BodyTooLong,
    EmptyBody,
    GameError,
    StorageError,
    UnknownPlayer,
)
from .market import SimulationOutcome, VentureConfig
from .plan import BusinessPlan
from .progression import LevelAttempt, PlayerProgress, ProfileReport

TOP_LIST_SIZE = 15
MAX_CHAT_BODY = 1_000

_ROOM_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


@dataclass(frozen=True)
class LeaderEntry:
    player_id: str
    display_name: str
    score: int
    achieved_at: float


@dataclass(frozen=True)
class ChatMessage:
    room: str
    sender: str
    body: str
    sequence: int
    sent_at: float


@dataclass(frozen=True)
class ActiveSimulation:
    config: VentureConfig
    state: market.MarketState
    initial_equity: float
    seed: int


@dataclass(frozen=True)
class PlayerRecord:
    player_id: str
    display_name: str
    token: str
    progress: PlayerProgress
    plan: BusinessPlan | None = None
    simulation: ActiveSimulation | None = None


# ---------------------------------------------------------------------------
# Record (de)serialization


def progress_to_dict(progress: PlayerProgress) -> dict:
    return {
        "player_id": progress.player_id,
        "attempts": {
            str(level): [
                {
                    "level_number": a.level_number,
                    "answers": [list(pair) for pair in a.answers],
                    "score": a.score,
                    "passed": a.passed,
                    "timestamp": a.timestamp,
                }
                for a in attempts
            ]
            for level, attempts in progress.attempts.items()
        },
        "profile": None
        if progress.profile is None
        else {
            "area_scores": dict(progress.profile.area_scores),
            "responses": [list(pair) for pair in progress.profile.responses],
        },
    }


def progress_from_dict(data: dict) -> PlayerProgress:
    attempts = {
        int(level): tuple(
            LevelAttempt(
                level_number=a["level_number"],
                answers=tuple((qid, idx) for qid, idx in a["answers"]),
                score=a["score"],
                passed=a["passed"],
                timestamp=a["timestamp"],
            )
            for a in raw
        )
        for level, raw in data["attempts"].items()
    }
    profile = None
    if data["profile"] is not None:
        profile = ProfileReport(
            area_scores=dict(data["profile"]["area_scores"]),
            responses=tuple((i, r) for i, r in data["profile"]["responses"]),
        )
    return PlayerProgress(player_id=data["player_id"], attempts=attempts, profile=profile)


def record_to_dict(record: PlayerRecord) -> dict:
    return {
        "player_id": record.player_id,
        "display_name": record.display_name,
        "token": record.token,
        "progress": progress_to_dict(record.progress),
        "plan": None
        if record.plan is None
        else {
            "player_id": record.plan.player_id,
            "section_order": list(record.plan.section_order),
            "sections": dict(record.plan.sections),
            "last_modified": record.plan.last_modified,
        },
        "simulation": None
        if record.simulation is None
        else {
            "config": market.config_to_dict(record.simulation.config),
            "state": market.state_to_dict(record.simulation.state),
            "initial_equity": record.simulation.initial_equity,
            "seed": record.simulation.seed,
        },
    }


def record_from_dict(data: dict) -> PlayerRecord:
    plan = None
    if data["plan"] is not None:
        plan = BusinessPlan(
            player_id=data["plan"]["player_id"],
            section_order=tuple(data["plan"]["section_order"]),
            sections=dict(data["plan"]["sections"]),
            last_modified=data["plan"]["last_modified"],
        )
    simulation = None
    if data["simulation"] is not None:
        simulation = ActiveSimulation(
            config=market.config_from_dict(data["simulation"]["config"]),
            state=market.state_from_dict(data["simulation"]["state"]),
            initial_equity=data["simulation"]["initial_equity"],
            seed=data["simulation"]["seed"],
        )
    return PlayerRecord(
        player_id=data["player_id"],
        display_name=data["display_name"],
        token=data["token"],
        progress=progress_from_dict(data["progress"]),
        plan=plan,
        simulation=simulation,
    )


class Store:
    """All durable state, rooted at one directory."""

    def __init__(self, state_dir: str | Path):
        self.root = Path(state_dir)
        self.players_dir = self.root / "players"
        self.chat_dir = self.root / "chat"
        self.players_dir.mkdir(parents=True, exist_ok=True)
        self.chat_dir.mkdir(parents=True, exist_ok=True)
        self._master = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._players: dict[str, PlayerRecord] = {}
        self._tokens: dict[str, str] = {}  # token -> player_id
        self._load_players()

    def _lock(self, key: str) -> threading.Lock:
        with self._master:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def _atomic_write(self, path: Path, payload: dict | list) -> None:
        tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
        try:
            tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise StorageError(f"failed writing {path}: {exc}") from exc
        finally:
            tmp.unlink(missing_ok=True)

    # -- players ------------------------------------------------------------

    def _load_players(self) -> None:
        for path in sorted(self.players_dir.glob("*.json")):
            try:
                record = record_from_dict(json.loads(path.read_text(encoding="utf-8")))
            except (json.JSONDecodeError, KeyError, GameError) as exc:
                raise StorageError(f"corrupt player record {path}: {exc}") from exc
            self._players[record.player_id] = record
            self._tokens[record.token] = record.player_id

    def register_player(self, display_name: str) -> PlayerRecord:
        display_name = display_name.strip()
        if not display_name:
            raise EmptyBody("display name is empty")
        player_id = uuid.uuid4().hex
        record = PlayerRecord(
            player_id=player_id,
            display_name=display_name,
            token=secrets.token_urlsafe(24),
            progress=PlayerProgress(player_id=player_id),
        )
        self.save_player(record)
        return record

    def save_player(self, record: PlayerRecord) -> None:
        with self._lock(f"player:{record.player_id}"):
            self._atomic_write(
                self.players_dir / f"{record.player_id}.json", record_to_dict(record)
            )
            with self._master:
                self._players[record.player_id] = record
                self._tokens[record.token] = record.player_id

    def get_player(self, player_id: str) -> PlayerRecord:
        try:
            return self._players[player_id]
        except KeyError:
            raise UnknownPlayer(f"no player '{player_id}'") from None

    def player_by_token(self, token: str) -> PlayerRecord:
        player_id = self._tokens.get(token)
        if player_id is None:
            raise UnknownPlayer("unknown session token")
        return self._players[player_id]

    def has_player(self, player_id: str) -> bool:
        return player_id in self._players

    def update_player(self, player_id: str, mutate) -> PlayerRecord:
        """Apply ``mutate(record) -> record`` under the player's lock and persist."""
        with self._lock(f"player-txn:{player_id}"):
            record = mutate(self.get_player(player_id))
            self.save_player(record)
            return record

    # -- leaderboard --------------------------------------------------------

    @property
    def _leaderboard_path(self) -> Path:
        return self.root / "leaderboard.json"

    def _load_leaderboard(self) -> list[LeaderEntry]:
        if not self._leaderboard_path.exists():
            return []
        raw = json.loads(self._leaderboard_path.read_text(encoding="utf-8"))
        return [
            LeaderEntry(
                player_id=e["player_id"],
                display_name=e["display_name"],
                score=e["score"],
                achieved_at=e["achieved_at"],
            )
            for e in raw
        ]

    def record_result(
        self, player_id: str, outcome: SimulationOutcome, now: float | None = None
    ) -> None:
        """Rank a successful run, keeping each player's best score only."""
        if not outcome.success:
            raise GameError("only successful outcomes are ranked")
        record = self.get_player(player_id)
        entry = LeaderEntry(
            player_id=player_id,
            display_name=record.display_name,
            score=outcome.score,
            achieved_at=time.time() if now is None else now,
        )
        with self._lock("leaderboard"):
            entries = {e.player_id: e for e in self._load_leaderboard()}
            existing = entries.get(player_id)
            if existing is None or entry.score > existing.score:
                entries[player_id] = entry
            self._atomic_write(
                self._leaderboard_path,
                [
                    {
                        "player_id": e.player_id,
                        "display_name": e.display_name,
                        "score": e.score,
                        "achieved_at": e.achieved_at,
                    }
                    for e in entries.values()
                ],
            )

    def top_list(self) -> list[LeaderEntry]:
        """Up to 15 entries: score descending, earlier achievement wins ties."""
        with self._lock("leaderboard"):
            entries = self._load_leaderboard()
        entries.sort(key=lambda e: (-e.score, e.achieved_at, e.player_id))
        return entries[:TOP_LIST_SIZE]

    # -- chat ---------------------------------------------------------------

    def _room_path(self, room: str) -> Path:
        if not _ROOM_RE.match(room):
            raise GameError(f"invalid room name '{room}'")
        return self.chat_dir / f"{room}.json"

    def _load_room(self, room: str) -> list[ChatMessage]:
        path = self._room_path(room)
        if not path.exists():
            return []
        raw = json.loads(path.read_text(encoding="utf-8"))
        return [
            ChatMessage(
                room=room,
                sender=m["sender"],
                body=m["body"],
                sequence=m["sequence"],
                sent_at=m["sent_at"],
            )
            for m in raw
        ]

    def post_message(
        self, room: str, sender: str, body: str, now: float | None = None
    ) -> ChatMessage:
        body = body.strip()
        if not body:
            raise EmptyBody("message body is empty")
        if len(body) > MAX_CHAT_BODY:
            raise BodyTooLong(f"message body exceeds {MAX_CHAT_BODY} characters")
        if not self.has_player(sender):
            raise UnknownPlayer(f"no player '{sender}'")
        with self._lock(f"room:{room}"):
            messages = self._load_room(room)
            message = ChatMessage(
                room=room,
                sender=sender,
                body=body,
                sequence=messages[-1].sequence + 1 if messages else 1,
                sent_at=time.time() if now is None else now,
            )
            messages.append(message)
            self._atomic_write(
                self._room_path(room),
                [
                    {
                        "sender": m.sender,
                        "body": m.body,
                        "sequence": m.sequence,
                        "sent_at": m.sent_at,
                    }
                    for m in messages
                ],
            )
            return message

    def list_messages(self, room: str, since_sequence: int = 0) -> list[ChatMessage]:
        with self._lock(f"room:{room}"):
            messages = self._load_room(room)
        return [m for m in messages if m.sequence > since_sequence]
