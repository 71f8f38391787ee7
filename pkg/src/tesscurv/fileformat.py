"""Line-oriented text formats for patches and operators.

Patch format::

    tess 1
    face <fid>: <v0> <v1> ... <vk-1>
    complete_vertices: <id> <id> ... | all
    complete_faces: <id> <id> ... | all

Operator format::

    op 1
    entry <v> <w> <num>/<den>

Lines starting with ``#`` and blank lines are ignored.
"""
from __future__ import annotations

from fractions import Fraction

from .patch import TessellationPatch


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(tok: str) -> Fraction:
    if "/" in tok:
        n, d = tok.split("/", 1)
        return Fraction(int(n), int(d))
    return Fraction(int(tok))


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(lineno, f"expected integers: {exc}") from None


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_patch(text: str) -> TessellationPatch:
    faces: dict[int, tuple[int, ...]] = {}
    cv = cf = None
    header = False
    for lineno, line in _content_lines(text):
        if not header:
            if line.split() != ["tess", "1"]:
                raise ParseError(lineno, "expected header 'tess 1'")
            header = True
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(lineno, f"cannot parse {line!r}")
        words = key.split()
        if len(words) == 2 and words[0] == "face":
            (fid,) = _ints(words[1:], lineno)
            if fid < 0:
                raise ParseError(lineno, "face id must be non-negative")
            if fid in faces:
                raise ParseError(lineno, f"duplicate face id {fid}")
            cyc = _ints(rest.split(), lineno)
            if len(cyc) < 3:
                raise ParseError(lineno, f"face {fid} has fewer than 3 vertices")
            if len(set(cyc)) != len(cyc):
                raise ParseError(lineno, f"face {fid} cycle is not simple")
            if min(cyc) < 0:
                raise ParseError(lineno, "vertex ids must be non-negative")
            faces[fid] = tuple(cyc)
        elif words == ["complete_vertices"] or words == ["complete_faces"]:
            toks = rest.split()
            val = "all" if toks == ["all"] else frozenset(_ints(toks, lineno))
            if words[0] == "complete_vertices":
                if cv is not None:
                    raise ParseError(lineno, "duplicate complete_vertices line")
                cv = val
            else:
                if cf is not None:
                    raise ParseError(lineno, "duplicate complete_faces line")
                cf = val
        else:
            raise ParseError(lineno, f"unknown record {key!r}")
    if not header:
        raise ParseError(1, "empty input")
    verts = {v for c in faces.values() for v in c}
    cv = frozenset(verts) if cv == "all" else (cv or frozenset())
    cf = frozenset(faces) if cf == "all" else (cf or frozenset())
    return TessellationPatch(faces, cv, cf)


def save_patch(patch: TessellationPatch) -> str:
    out = ["tess 1"]
    for f in patch.face_ids:
        out.append(f"face {f}: " + " ".join(map(str, patch.faces[f])))

    def ids(sel, universe):
        if sel == universe and universe:
            return "all"
        return " ".join(map(str, sorted(sel)))

    out.append(("complete_vertices: " + ids(patch.complete_vertices, patch.vertices)).rstrip())
    out.append(("complete_faces: " + ids(patch.complete_faces, frozenset(patch.faces))).rstrip())
    return "\n".join(out) + "\n"


def load_operator_entries(text: str) -> dict[tuple[int, int], Fraction]:
    entries: dict[tuple[int, int], Fraction] = {}
    header = False
    for lineno, line in _content_lines(text):
        if not header:
            if line.split() != ["op", "1"]:
                raise ParseError(lineno, "expected header 'op 1'")
            header = True
            continue
        toks = line.split()
        if len(toks) != 4 or toks[0] != "entry":
            raise ParseError(lineno, f"cannot parse {line!r}")
        v, w = _ints(toks[1:3], lineno)
        try:
            val = parse_rational(toks[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(lineno, f"bad rational {toks[3]!r}: {exc}") from None
        if (v, w) in entries:
            raise ParseError(lineno, f"duplicate entry ({v}, {w})")
        entries[(v, w)] = val
    if not header:
        raise ParseError(1, "empty input")
    return entries


def save_operator_entries(entries) -> str:
    out = ["op 1"]
    for (v, w) in sorted(entries):
        out.append(f"entry {v} {w} {fmt_rational(entries[(v, w)])}")
    return "\n".join(out) + "\n"
