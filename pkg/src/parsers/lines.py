"""Shared tokenizer for the line-oriented input formats."""

from typing import Iterator, List, Tuple

from src.model.errors import ParseError


def directives(text: str) -> Iterator[Tuple[int, str, List[str]]]:
    """Yield (line number, directive, arguments) for every non-blank line; ``#`` starts a comment."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        yield number, tokens[0], tokens[1:]


def expect_arity(line: int, directive: str, args: List[str], count: int):
    if len(args) != count:
        raise ParseError(f"'{directive}' takes {count} argument(s), got {len(args)}", line)


def expect_some(line: int, directive: str, args: List[str]):
    if not args:
        raise ParseError(f"'{directive}' needs at least one argument", line)


def unknown_directive(line: int, directive: str):
    raise ParseError(f"unknown directive '{directive}'", line)
