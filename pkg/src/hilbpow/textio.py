"""Text and JSON forms of monomial ideals.

Text form: comma-separated generators, each a product of ``xi^e`` factors
joined by ``*`` or whitespace, e.g. ``x1^2*x2, x3``.  ``1`` is the unit
ideal and ``0`` (or an empty string) the zero ideal.  JSON form:
``{"n": 3, "gens": [[2, 1, 0], [0, 0, 1]]}``.
"""

from __future__ import annotations

import json
import re

from .monomial import Monomial, MonomialIdeal


class IdealParseError(ValueError):
    def __init__(self, message: str, text: str = "", column: int | None = None):
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


_FACTOR = re.compile(r"x(\d+)(?:\s*\^\s*(\d+))?|1(?![\d^])")


def _parse_generator(chunk: str, offset: int, n: int, text: str) -> Monomial:
    exps = [0] * n
    pos = 0
    seen_factor = False
    while pos < len(chunk):
        ch = chunk[pos]
        if ch.isspace() or (ch == "*" and seen_factor):
            pos += 1
            continue
        m = _FACTOR.match(chunk, pos)
        if m is None:
            raise IdealParseError(f"unexpected {ch!r}", text, offset + pos + 1)
        if m.group(1) is not None:
            var = int(m.group(1))
            if not 1 <= var <= n:
                raise IdealParseError(
                    f"variable x{var} outside x1..x{n}", text, offset + pos + 1
                )
            exps[var - 1] += int(m.group(2)) if m.group(2) is not None else 1
        seen_factor = True
        pos = m.end()
    if not seen_factor:
        raise IdealParseError("empty generator", text, offset + 1)
    return tuple(exps)


def parse_ideal(text: str, n: int) -> MonomialIdeal:
    """Parse the text form of a monomial ideal in n variables.

    A JSON object is accepted too; its ``n`` must agree with the one given.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return ideal_from_json(stripped, n)
    if stripped in ("", "0"):
        return MonomialIdeal.zero(n)
    gens = []
    offset = 0
    for chunk in text.split(","):
        gens.append(_parse_generator(chunk, offset, n, text))
        offset += len(chunk) + 1
    return MonomialIdeal(n, gens)


def ideal_from_json(payload: str | dict, n: int | None = None) -> MonomialIdeal:
    data = json.loads(payload) if isinstance(payload, str) else payload
    try:
        dim = int(data["n"])
        gens = data["gens"]
    except (KeyError, TypeError) as exc:
        raise IdealParseError(f"ideal JSON needs 'n' and 'gens' ({exc})") from exc
    if n is not None and dim != n:
        raise IdealParseError(f"ideal JSON declares n={dim}, expected {n}")
    try:
        return MonomialIdeal(dim, gens)
    except ValueError as exc:
        raise IdealParseError(str(exc)) from exc


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"n": ideal.n, "gens": [list(g) for g in ideal.gens]}


def format_monomial(m: Monomial) -> str:
    factors = []
    for i, e in enumerate(m):
        if e == 1:
            factors.append(f"x{i + 1}")
        elif e > 1:
            factors.append(f"x{i + 1}^{e}")
    return "*".join(factors) or "1"


def format_ideal(ideal: MonomialIdeal) -> str:
    if ideal.is_zero:
        return "0"
    return ", ".join(format_monomial(g) for g in ideal.gens)
