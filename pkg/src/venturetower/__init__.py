"""A self-hosted entrepreneurship learning game: eight assessed curriculum
levels, six feature floors and a turn-based virtual market whose odds of
success rise with the player's demonstrated learning."""

__version__ = "0.1.0"
