"""Exception hierarchy shared by all game modules.

Every error carries a stable ``code`` string so the HTTP layer can map it
to a JSON ``{error_code, message}`` body without inspecting types twice.
"""


class GameError(Exception):
    code = "game_error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__


class ParseError(GameError):
    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(GameError):
    code = "validation_error"

    def __init__(self, report):
        errors = [d for d in report.diagnostics if d.severity == "error"]
        super().__init__(f"invalid content pack: {len(errors)} error(s)")
        self.report = report


class LevelLocked(GameError):
    code = "level_locked"


class IncompleteAnswers(GameError):
    code = "incomplete_answers"


class IncompleteResponses(GameError):
    code = "incomplete_responses"


class RatingOutOfRange(GameError):
    code = "rating_out_of_range"


class EmptyTaxonomy(GameError):
    code = "empty_taxonomy"


class MissingPlacement(GameError):
    code = "missing_placement"


class UnknownCategory(GameError):
    code = "unknown_category"


class NotAPermutation(GameError):
    code = "not_a_permutation"


class UnknownSection(GameError):
    code = "unknown_section"


class DomainError(GameError):
    code = "domain_error"


class InvalidDecision(GameError):
    code = "invalid_decision"


class SimulationOver(GameError):
    code = "simulation_over"


class AlreadyBankrupt(GameError):
    code = "already_bankrupt"


class StorageError(GameError):
    code = "storage_error"


class EmptyBody(GameError):
    code = "empty_body"


class BodyTooLong(GameError):
    code = "body_too_long"


class UnknownPlayer(GameError):
    code = "unknown_player"
