"""The SurfaceSpec text format: the durable interchange form for surfaces.

Grammar (UTF-8, line oriented, ``#`` starts a comment)::

    faces:
    <name> <sides> [edge=<rational>] [count=<n>]
    ...
    glue:
    <nameA> <slotA> <nameB> <slotB> [flip]
    ...

``count=<n>`` declares n faces named ``<name>_0 .. <name>_{n-1}``.
Writing is canonical: faces sorted by name, gluings normalized and sorted,
so output is bit-exact reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DanglingReference, DuplicateGluing, ParseError
from .surface import SlotRef, Surface


def parse_spec(text: str) -> Surface:
    surface, _ = parse_spec_named(text)
    return surface


def parse_spec_named(text: str) -> tuple[Surface, dict[str, int]]:
    """Parse and also return the name -> face id mapping."""
    s = Surface()
    names: dict[str, int] = {}
    section = None
    glued: set[SlotRef] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "faces:":
            section = "faces"
            continue
        if line == "glue:":
            section = "glue"
            continue
        if section is None:
            raise ParseError("expected 'faces:' section header", line=lineno)
        tokens = line.split()
        if section == "faces":
            _parse_face_line(s, names, tokens, lineno)
        else:
            _parse_glue_line(s, names, glued, tokens, lineno)
    return s, names


def _parse_face_line(s: Surface, names: dict[str, int], tokens: list[str], lineno: int) -> None:
    if len(tokens) < 2:
        raise ParseError("face line needs '<name> <sides>'", line=lineno)
    name = tokens[0]
    try:
        sides = int(tokens[1])
    except ValueError:
        raise ParseError(f"bad side count {tokens[1]!r}", line=lineno, column=len(name) + 2) from None
    edge = Fraction(1)
    count = None
    for tok in tokens[2:]:
        if tok.startswith("edge="):
            try:
                edge = Fraction(tok[5:])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad edge length {tok[5:]!r}", line=lineno) from None
        elif tok.startswith("count="):
            try:
                count = int(tok[6:])
            except ValueError:
                raise ParseError(f"bad count {tok[6:]!r}", line=lineno) from None
            if count < 1:
                raise ParseError("count must be >= 1", line=lineno)
        else:
            raise ParseError(f"unexpected token {tok!r} on face line", line=lineno)
    expanded = [name] if count is None else [f"{name}_{i}" for i in range(count)]
    for n in expanded:
        if n in names:
            raise ParseError(f"duplicate face name {n!r}", line=lineno)
        try:
            names[n] = s.add_face(sides, edge)
        except Exception as e:
            raise ParseError(str(e), line=lineno) from None


def _parse_glue_line(
    s: Surface, names: dict[str, int], glued: set[SlotRef], tokens: list[str], lineno: int
) -> None:
    if len(tokens) not in (4, 5):
        raise ParseError("glue line needs '<nameA> <slotA> <nameB> <slotB> [flip]'", line=lineno)
    flipped = False
    if len(tokens) == 5:
        if tokens[4] != "flip":
            raise ParseError(f"unexpected token {tokens[4]!r}, only 'flip' allowed", line=lineno)
        flipped = True
    na, ia_text, nb, ib_text = tokens[:4]
    for n in (na, nb):
        if n not in names:
            raise DanglingReference(f"unknown face name {n!r}", line=lineno)
    try:
        ia, ib = int(ia_text), int(ib_text)
    except ValueError:
        raise ParseError("slot indices must be integers", line=lineno) from None
    a = SlotRef(names[na], ia)
    b = SlotRef(names[nb], ib)
    if a in glued or b in glued:
        raise DuplicateGluing(f"slot glued twice: {na} {ia} / {nb} {ib}", line=lineno)
    try:
        s.glue(a, b, flipped)
    except Exception as e:
        raise ParseError(str(e), line=lineno) from None
    glued.add(a)
    glued.add(b)


def face_names(s: Surface) -> dict[int, str]:
    """Canonical face names: zero-padded creation-order ids."""
    width = max((len(str(f)) for f in s.faces), default=1)
    return {f: f"f{f:0{width}d}" for f in sorted(s.faces)}


def write_spec(s: Surface, names: dict[int, str] | None = None) -> str:
    if names is None:
        names = face_names(s)
    lines = ["faces:"]
    for fid, name in sorted(names.items(), key=lambda kv: kv[1]):
        f = s.faces[fid]
        suffix = "" if f.edge_length == 1 else f" edge={f.edge_length}"
        lines.append(f"{name} {f.sides}{suffix}")
    entries = []
    for g in s.gluings:
        a = (names[g.a.face], g.a.index)
        b = (names[g.b.face], g.b.index)
        if b < a:
            a, b = b, a
        entries.append((a[0], a[1], b[0], b[1], g.flipped))
    if entries:
        lines.append("glue:")
        for na, ia, nb, ib, flipped in sorted(entries):
            lines.append(f"{na} {ia} {nb} {ib}" + (" flip" if flipped else ""))
    return "\n".join(lines) + "\n"
