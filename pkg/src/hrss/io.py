"""Line-oriented text formats.

Instance files::

    hrss 1
    resident r1
    hospital h1 cap 2
    pref r1: h1 h2
    pref h1: r1
    acq r1 h1

Matching files hold ``match <resident> <hospital>`` lines.  SMTI files use
``smti 1`` / ``man`` / ``woman`` / ``pref`` with parenthesised tie groups,
graph files use ``graph 1`` / ``vertex`` / ``edge``, and reduction mapping
sidecars use ``map <new-id> <original-id>``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from hrss.model import HrssError, HrssInstance, InvalidInstanceError, Matching, validate
from hrss.reductions import HrsnInstance, SimpleGraph, SmtiInstance

_PREF = re.compile(r"^pref\s+(\S+?):(?:\s+(.*))?$")


class ParseError(HrssError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines: list[tuple[int, str]], kind: str) -> list[tuple[int, str]]:
    if not lines or lines[0][1].split() != [kind, "1"]:
        no = lines[0][0] if lines else 1
        raise ParseError(f"expected header '{kind} 1'", no)
    return lines[1:]


def parse(text: str, check: bool = True) -> HrssInstance:
    """Parse an instance file; with ``check`` the result must also validate."""
    body = _header(list(_lines(text)), "hrss")
    residents: dict[str, int] = {}
    hospitals: dict[str, int] = {}
    capacity: dict[str, int] = {}
    prefs: dict[str, tuple[str, ...]] = {}
    pref_line: dict[str, int] = {}
    acq: list[tuple[str, str]] = []
    for no, line in body:
        words = line.split()
        head = words[0]
        if head == "resident":
            if len(words) != 2:
                raise ParseError("expected 'resident <id>'", no)
            if words[1] in residents or words[1] in hospitals:
                raise ParseError(f"duplicate id {words[1]}", no)
            residents[words[1]] = no
        elif head == "hospital":
            if len(words) != 4 or words[2] != "cap":
                raise ParseError("expected 'hospital <id> cap <c>'", no)
            if words[1] in residents or words[1] in hospitals:
                raise ParseError(f"duplicate id {words[1]}", no)
            try:
                capacity[words[1]] = int(words[3])
            except ValueError:
                raise ParseError(f"capacity {words[3]!r} is not an integer", no) from None
            hospitals[words[1]] = no
        elif head == "pref":
            m = _PREF.match(line)
            if not m:
                raise ParseError("expected 'pref <id>: <id> ...'", no)
            who = m.group(1)
            if who in prefs:
                raise ParseError(f"second preference line for {who}", no)
            prefs[who] = tuple((m.group(2) or "").split())
            pref_line[who] = no
        elif head == "acq":
            if len(words) != 3:
                raise ParseError("expected 'acq <resident> <hospital>'", no)
            acq.append((words[1], words[2]))
        else:
            raise ParseError(f"unknown directive {head!r}", no)

    for who, no in pref_line.items():
        if who not in residents and who not in hospitals:
            raise ParseError(f"preference line for undeclared agent {who}", no)
    for agents, kind in ((residents, "resident"), (hospitals, "hospital")):
        for a, no in agents.items():
            if a not in prefs:
                raise ParseError(f"{kind} {a} has no pref line", no)

    instance = HrssInstance(
        residents=tuple(residents),
        hospitals=tuple(hospitals),
        capacity=capacity,
        resident_prefs={r: prefs[r] for r in residents},
        hospital_prefs={h: prefs[h] for h in hospitals},
        acquainted=frozenset(acq),
    )
    if check:
        violations = validate(instance)
        if violations:
            raise InvalidInstanceError(violations)
    return instance


def serialize(instance: HrssInstance) -> str:
    out = ["hrss 1"]
    out += [f"resident {r}" for r in instance.residents]
    out += [f"hospital {h} cap {instance.capacity[h]}" for h in instance.hospitals]
    for r in instance.residents:
        out.append(f"pref {r}: {' '.join(instance.resident_prefs[r])}".rstrip())
    for h in instance.hospitals:
        out.append(f"pref {h}: {' '.join(instance.hospital_prefs[h])}".rstrip())
    for r, h in instance.canonical_pairs(instance.acquainted):
        out.append(f"acq {r} {h}")
    return "\n".join(out) + "\n"


def serialize_hrsn(hrsn: HrsnInstance) -> str:
    """HR part in instance syntax under an ``hrsn 1`` header, plus ``friend`` lines."""
    body = serialize(hrsn.hr).split("\n", 1)[1]
    order = {r: i for i, r in enumerate(hrsn.hr.residents)}
    friends = sorted(tuple(sorted(e, key=order.__getitem__)) for e in hrsn.edges)
    friends.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return "hrsn 1\n" + body + "".join(f"friend {a} {b}\n" for a, b in friends)


def parse_hrsn(text: str) -> HrsnInstance:
    lines = text.splitlines()
    hr_lines, friends = [], []
    for no, raw in enumerate(lines, 1):
        words = raw.split("#", 1)[0].split()
        if words and words[0] == "friend":
            if len(words) != 3:
                raise ParseError("expected 'friend <resident> <resident>'", no)
            friends.append(frozenset(words[1:]))
            hr_lines.append("")
        elif words == ["hrsn", "1"]:
            hr_lines.append("hrss 1")
        else:
            hr_lines.append(raw)
    hr = parse("\n".join(hr_lines))
    if hr.acquainted:
        raise ParseError("HR+SN files carry friend lines, not acq lines")
    try:
        return HrsnInstance(hr, frozenset(friends))
    except HrssError as e:
        raise ParseError(str(e)) from None


def format_matching(matching: Matching) -> str:
    """One ``match`` line per pair, sorted by resident id."""
    return "".join(f"match {r} {h}\n" for r, h in sorted(matching.pairs))


def parse_matching(text: str) -> Matching:
    pairs = []
    for no, line in _lines(text):
        words = line.split()
        if words[0] != "match":
            continue
        if len(words) != 3:
            raise ParseError("expected 'match <resident> <hospital>'", no)
        pairs.append((words[1], words[2]))
    if len(set(pairs)) != len(pairs):
        raise ParseError("duplicate match line")
    return Matching(frozenset(pairs))


def format_mapping(mapping: Mapping[str, str]) -> str:
    return "".join(f"map {new} {old}\n" for new, old in mapping.items())


def parse_mapping(text: str) -> dict[str, str]:
    out = {}
    for no, line in _lines(text):
        words = line.split()
        if words[0] != "map" or len(words) != 3:
            raise ParseError("expected 'map <new> <original>'", no)
        out[words[1]] = words[2]
    return out


_GROUP = re.compile(r"\(([^()]*)\)|(\S+)")


def parse_smti(text: str) -> SmtiInstance:
    body = _header(list(_lines(text)), "smti")
    men: list[str] = []
    women: list[str] = []
    prefs: dict[str, list[tuple[str, ...]]] = {}
    for no, line in body:
        words = line.split()
        if words[0] in ("man", "woman") and len(words) == 2:
            (men if words[0] == "man" else women).append(words[1])
        elif words[0] == "pref":
            m = _PREF.match(line)
            if not m:
                raise ParseError("expected 'pref <id>: ...'", no)
            groups = []
            for tie, single in _GROUP.findall(m.group(2) or ""):
                groups.append(tuple(tie.split()) if tie else (single,))
            prefs[m.group(1)] = groups
        else:
            raise ParseError(f"unknown directive {words[0]!r}", no)
    for w in women:
        if any(len(g) > 1 for g in prefs.get(w, ())):
            raise ParseError(f"woman {w} has a tie; ties are only allowed on men's lists")
    missing = [a for a in men + women if a not in prefs]
    if missing:
        raise ParseError(f"no pref line for {missing[0]}")
    try:
        return SmtiInstance(
            tuple(men),
            tuple(women),
            {m: tuple(prefs[m]) for m in men},
            {w: tuple(g[0] for g in prefs[w]) for w in women},
        )
    except HrssError as e:
        raise ParseError(str(e)) from None


def serialize_smti(smti: SmtiInstance) -> str:
    out = ["smti 1"]
    out += [f"man {m}" for m in smti.men]
    out += [f"woman {w}" for w in smti.women]
    for m in smti.men:
        parts = [g[0] if len(g) == 1 else f"({' '.join(g)})" for g in smti.men_prefs[m]]
        out.append(f"pref {m}: {' '.join(parts)}".rstrip())
    for w in smti.women:
        out.append(f"pref {w}: {' '.join(smti.women_prefs[w])}".rstrip())
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> SimpleGraph:
    body = _header(list(_lines(text)), "graph")
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for no, line in body:
        words = line.split()
        if words[0] == "vertex" and len(words) == 2:
            vertices.append(words[1])
        elif words[0] == "edge" and len(words) == 3:
            edges.append((words[1], words[2]))
        else:
            raise ParseError(f"unrecognised line {line!r}", no)
    try:
        return SimpleGraph.from_edges(vertices, edges)
    except HrssError as e:
        raise ParseError(str(e)) from None


def serialize_graph(g: SimpleGraph) -> str:
    order = {v: i for i, v in enumerate(g.vertices)}
    edges = sorted((tuple(sorted(e, key=order.__getitem__)) for e in g.edges), key=lambda e: (order[e[0]], order[e[1]]))
    lines = ["graph 1", *(f"vertex {v}" for v in g.vertices), *(f"edge {a} {b}" for a, b in edges)]
    return "\n".join(lines) + "\n"


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)

