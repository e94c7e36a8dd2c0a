"""HTTP/JSON API consumed by the browser client.

All player-scoped endpoints authenticate with ``Authorization: Bearer <token>``
using the opaque token issued at registration. Correct quiz answers never leave
the server before an attempt has been submitted: the pack view strips
``correct_index`` and per-question correctness is only included in attempt
responses.
"""

from __future__ import annotations

import hashlib
from dataclasses import replace
from typing import Any

from fastapi import Body, FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from . import market, plan as plan_mod, progression
from .content import ContentPack, pack_to_document
from .errors import (
    AlreadyBankrupt,
    GameError,
    IncompleteAnswers,
    InvalidDecision,
    LevelLocked,
    ParseError,
    SimulationOver,
    StorageError,
    UnknownPlayer,
    UnknownSection,
    ValidationError,
)
from .market import VentureConfig
from .store import ActiveSimulation, PlayerRecord, Store

_STATUS_BY_CODE = {
    LevelLocked.code: 403,
    UnknownPlayer.code: 401,
    UnknownSection.code: 404,
    SimulationOver.code: 409,
    AlreadyBankrupt.code: 409,
    StorageError.code: 500,
}


def public_pack_view(pack: ContentPack) -> dict:
    """The pack document with quiz answer keys removed."""
    document = pack_to_document(pack)
    for level in document["levels"]:
        for question in level["quiz"]:
            del question["correct_index"]
    return document


def _attempt_view(attempt: progression.LevelAttempt, pack: ContentPack) -> dict:
    level = pack.level(attempt.level_number)
    by_id = {q.id: q for q in level.quiz}
    return {
        "level_number": attempt.level_number,
        "score": attempt.score,
        "passed": attempt.passed,
        "timestamp": attempt.timestamp,
        "answers": [
            {
                "question_id": qid,
                "chosen_index": idx,
                "correct_index": by_id[qid].correct_index,
                "was_correct": idx == by_id[qid].correct_index,
            }
            for qid, idx in attempt.answers
        ],
    }


def _state_view(sim: ActiveSimulation) -> dict:
    state = sim.state
    return {
        "turn": state.turn,
        "horizon": sim.config.horizon,
        "cash": state.cash,
        "inventory_units": state.inventory_units,
        "learning_score": state.learning_score,
        "bankrupt": state.bankrupt,
        "balance": market.balance_to_dict(state.balance_sheet(sim.config)),
        "config": market.config_to_dict(sim.config),
    }


def create_app(pack: ContentPack, store: Store, base_seed: int = 0) -> FastAPI:
    app = FastAPI(title="venturetower", docs_url=None, redoc_url=None)

    @app.exception_handler(GameError)
    async def game_error_handler(_request: Request, exc: GameError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status, content={"error_code": exc.code, "message": exc.message}
        )

    def authed(authorization: str | None) -> PlayerRecord:
        if not authorization or not authorization.startswith("Bearer "):
            raise UnknownPlayer("missing bearer token")
        return store.player_by_token(authorization.removeprefix("Bearer "))

    # -- registration and content ------------------------------------------

    @app.post("/api/players")
    def register(payload: dict = Body(...)):
        name = payload.get("display_name", "")
        if not isinstance(name, str):
            raise ParseError("display_name must be a string")
        record = store.register_player(name)
        return {"player_id": record.player_id, "token": record.token}

    @app.get("/api/pack")
    def get_pack():
        return public_pack_view(pack)

    # -- progression --------------------------------------------------------

    @app.get("/api/progress")
    def get_progress(authorization: str | None = Header(default=None)):
        record = authed(authorization)
        score = progression.aggregate_learning_score(record.progress)
        return {
            "player_id": record.player_id,
            "display_name": record.display_name,
            "learning_score": {"value": score.value, "per_level": score.per_level},
            "unlocked": {
                n: progression.is_level_unlocked(record.progress, n) for n in range(1, 9)
            },
            "attempts": {
                n: [_attempt_view(a, pack) for a in record.progress.attempts_for(n)]
                for n in range(1, 9)
                if record.progress.attempts_for(n)
            },
            "profile": None
            if record.progress.profile is None
            else {
                "area_scores": record.progress.profile.area_scores,
                "responses": [list(p) for p in record.progress.profile.responses],
            },
        }

    @app.post("/api/levels/{level_number}/attempts")
    def submit_attempt(
        level_number: int,
        payload: dict = Body(...),
        authorization: str | None = Header(default=None),
    ):
        record = authed(authorization)
        if not (1 <= level_number <= 8):
            raise IncompleteAnswers(f"no level {level_number}")
        raw = payload.get("answers")
        if not isinstance(raw, list):
            raise IncompleteAnswers("answers must be a list")
        try:
            answers = [(a["question_id"], int(a["chosen_index"])) for a in raw]
        except (TypeError, KeyError, ValueError) as exc:
            raise IncompleteAnswers(f"malformed answers: {exc}") from exc

        result: dict[str, Any] = {}

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            progress, attempt = progression.submit_assessment(
                rec.progress, pack, level_number, answers
            )
            result["attempt"] = attempt
            return replace(rec, progress=progress)

        store.update_player(record.player_id, mutate)
        return _attempt_view(result["attempt"], pack)

    @app.get("/api/history")
    def get_history(authorization: str | None = Header(default=None)):
        record = authed(authorization)
        rows = progression.answer_history(record.progress, pack)
        return [
            {
                "level_number": r.level_number,
                "prompt": r.prompt,
                "chosen": r.chosen,
                "correct": r.correct,
                "was_correct": r.was_correct,
            }
            for r in rows
        ]

    @app.post("/api/profile")
    def submit_profile(
        payload: dict = Body(...), authorization: str | None = Header(default=None)
    ):
        record = authed(authorization)
        raw = payload.get("responses")
        if not isinstance(raw, list):
            raise ParseError("responses must be a list")
        try:
            responses = [(r["item_id"], r["rating"]) for r in raw]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"malformed responses: {exc}") from exc

        result: dict[str, Any] = {}

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            progress, report = progression.record_profile_questionnaire(
                rec.progress, pack, responses
            )
            result["report"] = report
            return replace(rec, progress=progress)

        store.update_player(record.player_id, mutate)
        report = result["report"]
        return {
            "area_scores": report.area_scores,
            "responses": [list(p) for p in report.responses],
        }

    # -- business plan -------------------------------------------------------

    def _plan_of(record: PlayerRecord) -> plan_mod.BusinessPlan:
        return record.plan or plan_mod.new_plan(record.player_id, pack)

    def _plan_view(plan: plan_mod.BusinessPlan) -> dict:
        filled, missing = plan_mod.completeness_report(plan)
        return {
            "section_order": list(plan.section_order),
            "sections": dict(plan.sections),
            "filled": filled,
            "missing": missing,
            "last_modified": plan.last_modified,
        }

    @app.get("/api/plan")
    def get_plan(authorization: str | None = Header(default=None)):
        return _plan_view(_plan_of(authed(authorization)))

    @app.put("/api/plan")
    def put_plan(payload: dict = Body(...), authorization: str | None = Header(default=None)):
        record = authed(authorization)
        sections = payload.get("sections")
        if not isinstance(sections, dict):
            raise ParseError("sections must be an object")

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            plan = _plan_of(rec)
            for key, body in sections.items():
                if not isinstance(body, str):
                    raise ParseError(f"section '{key}' body must be a string")
                plan = plan_mod.upsert_section(plan, key, body)
            return replace(rec, plan=plan)

        updated = store.update_player(record.player_id, mutate)
        return _plan_view(updated.plan)

    @app.put("/api/plan/sections/{section_key}")
    def put_section(
        section_key: str,
        payload: dict = Body(...),
        authorization: str | None = Header(default=None),
    ):
        record = authed(authorization)
        body = payload.get("body")
        if not isinstance(body, str):
            raise ParseError("body must be a string")

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            plan = plan_mod.upsert_section(_plan_of(rec), section_key, body)
            return replace(rec, plan=plan)

        updated = store.update_player(record.player_id, mutate)
        return _plan_view(updated.plan)

    @app.get("/api/plan/export")
    def export_plan(authorization: str | None = Header(default=None)):
        record = authed(authorization)
        data = plan_mod.export_plan(_plan_of(record))
        return PlainTextResponse(content=data.decode("utf-8"))

    # -- virtual market -------------------------------------------------------

    @app.post("/api/market/start")
    def market_start(
        payload: dict = Body(default={}), authorization: str | None = Header(default=None)
    ):
        record = authed(authorization)
        overrides = payload.get("config", {})
        if not isinstance(overrides, dict):
            raise ParseError("config overrides must be an object")
        config = market.config_from_dict({**market.config_to_dict(VentureConfig()), **overrides})
        if "seed" in payload:
            seed = int(payload["seed"])
        else:
            digest = hashlib.sha256(
                f"{base_seed}:{record.player_id}:{record.progress.attempts}".encode()
            ).digest()
            seed = int.from_bytes(digest[:8], "big")
        learning = progression.aggregate_learning_score(record.progress).value

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            state = market.initial_state(config, learning, seed)
            sim = ActiveSimulation(
                config=config, state=state, initial_equity=state.equity, seed=seed
            )
            return replace(rec, simulation=sim)

        updated = store.update_player(record.player_id, mutate)
        return _state_view(updated.simulation)

    @app.post("/api/market/turn")
    def market_turn(
        payload: dict = Body(...), authorization: str | None = Header(default=None)
    ):
        record = authed(authorization)
        if record.simulation is None:
            raise InvalidDecision("no active simulation; start one first")
        decision = market.decision_from_dict(payload.get("decision", payload))

        result: dict[str, Any] = {}

        def mutate(rec: PlayerRecord) -> PlayerRecord:
            sim = rec.simulation
            if sim is None:
                raise InvalidDecision("no active simulation; start one first")
            state, turn_result = market.step_turn(sim.state, decision, sim.config)
            result["turn"] = turn_result
            finished = state.bankrupt or state.turn >= sim.config.horizon
            new_sim = ActiveSimulation(
                config=sim.config,
                state=state,
                initial_equity=sim.initial_equity,
                seed=sim.seed,
            )
            if finished:
                success = (not state.bankrupt) and state.equity > sim.initial_equity
                result["outcome"] = {
                    "success": success,
                    "score": progression.round_half_up(state.equity),
                }
                result["sim"] = new_sim
                return replace(rec, simulation=None)
            result["sim"] = new_sim
            return replace(rec, simulation=new_sim)

        store.update_player(record.player_id, mutate)
        turn_result = result["turn"]
        response: dict[str, Any] = {
            "result": {
                "turn": turn_result.turn,
                "demand_units": turn_result.demand_units,
                "units_sold": turn_result.units_sold,
                "pnl": market.pnl_to_dict(turn_result.pnl),
                "balance": market.balance_to_dict(turn_result.balance),
            },
            "state": _state_view(result["sim"]),
            "finished": "outcome" in result,
        }
        if "outcome" in result:
            outcome = result["outcome"]
            response["outcome"] = outcome
            if outcome["success"]:
                sim = result["sim"]
                store.record_result(
                    record.player_id,
                    market.SimulationOutcome(
                        final_state=sim.state,
                        turns=(),
                        success=True,
                        score=outcome["score"],
                    ),
                )
        return response

    # -- leaderboard and chat -------------------------------------------------

    @app.get("/api/toplist")
    def toplist():
        return [
            {
                "player_id": e.player_id,
                "display_name": e.display_name,
                "score": e.score,
                "achieved_at": e.achieved_at,
            }
            for e in store.top_list()
        ]

    @app.post("/api/chat/{room}")
    def post_chat(
        room: str, payload: dict = Body(...), authorization: str | None = Header(default=None)
    ):
        record = authed(authorization)
        body = payload.get("body")
        if not isinstance(body, str):
            raise ParseError("body must be a string")
        message = store.post_message(room, record.player_id, body)
        return {
            "room": message.room,
            "sender": message.sender,
            "body": message.body,
            "sequence": message.sequence,
            "sent_at": message.sent_at,
        }

    @app.get("/api/chat/{room}")
    def get_chat(room: str, since: int = Query(default=0, ge=0)):
        return [
            {
                "room": m.room,
                "sender": m.sender,
                "body": m.body,
                "sequence": m.sequence,
                "sent_at": m.sent_at,
            }
            for m in store.list_messages(room, since)
        ]

    return app
