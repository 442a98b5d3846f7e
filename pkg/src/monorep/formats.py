"""Reading monoids from table text files, generator JSON and builtin names."""

from __future__ import annotations

import json
from pathlib import Path

from .builders import builtin, matrix_monoid, transformation_monoid
from .monoid import FiniteMonoid, MonoidError, from_table


class ParseError(MonoidError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


def parse_table_text(text: str, name: str | None = None) -> FiniteMonoid:
    """Parse ``N identity`` followed by N rows of N whitespace-separated integers.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows: list[tuple[int, list[tuple[int, str]]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        toks = []
        col = 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        rows.append((ln, toks))
    if not rows:
        raise ParseError("empty table file", 1, 1)

    def num(ln, col, tok):
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", ln, col)

    ln, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'N identity'", ln, 1)
    n = num(ln, *head[0])
    e = num(ln, *head[1])
    if n < 1:
        raise ParseError("N must be positive", ln, head[0][0])
    if not 0 <= e < n:
        raise ParseError("identity index out of range", ln, head[1][0])
    body = rows[1:]
    if len(body) != n:
        where = body[-1][0] + 1 if body else ln + 1
        raise ParseError(f"expected {n} table rows, found {len(body)}", where, 1)
    table = []
    for ln, toks in body:
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else (toks[-1][0] + len(toks[-1][1]) if toks else 1)
            raise ParseError(f"expected {n} entries, found {len(toks)}", ln, col)
        row = []
        for col, tok in toks:
            v = num(ln, col, tok)
            if not 0 <= v < n:
                raise ParseError(f"entry {v} out of range 0..{n - 1}", ln, col)
            row.append(v)
        table.append(row)
    return from_table(table, e, name=name)


def format_table_text(M: FiniteMonoid) -> str:
    lines = [f"{M.size} {M.identity}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.table]
    return "\n".join(lines) + "\n"


def parse_generator_json(obj, name: str | None = None) -> FiniteMonoid:
    """Build a monoid from a generator description.

    ``{"kind": "transformations", "degree": n, "generators": [[...], ...]}``,
    ``{"kind": "gf_matrices", "n": n, "q": q, "generators": [[[...]], ...]}``,
    ``{"kind": "table", "table": [[...]], "identity": e}`` or
    ``{"kind": "builtin", "name": "M(2,2)"}``.
    """
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("generator JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "transformations":
            return transformation_monoid(int(obj["degree"]), obj["generators"], name=name)
        if kind == "gf_matrices":
            return matrix_monoid(int(obj["n"]), int(obj["q"]), obj["generators"], name=name)
        if kind == "table":
            return from_table(obj["table"], obj.get("identity"), name=name)
        if kind == "builtin":
            return builtin(obj["name"])
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r} for kind {kind!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MonoidError):
            raise
        raise ParseError(f"malformed {kind!r} description: {exc}")
    raise ParseError(f"unknown kind {kind!r}")


def load_monoid(arg: str) -> FiniteMonoid:
    """Resolve a command-line monoid argument: builtin name, table file or generator JSON."""
    path = Path(arg)
    if path.is_file():
        text = path.read_text()
        if path.suffix == ".json" or text.lstrip().startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, exc.lineno, exc.colno)
            return parse_generator_json(obj, name=path.name)
        return parse_table_text(text, name=path.name)
    M = builtin(arg)
    if M.name is None:
        M.name = arg
    return M
