"""Line-oriented text format for posets with consistencies.

::

    # comment
    elem a b c            declare elements
    le a b                a <= b
    bottom a / top c      name the bounds
    lower a b             (a, b) lower consistent
    upper a b             (a, b) upper consistent
    chain A a1 > a2 > a3  declare a chain (">" descending or "<" ascending);
                          its members are declared if new
    consistent-chains A B every cross pair of two chains in both relations
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .poset import Poset, build_poset

_WORD = re.compile(r"\S+")
_NAME = re.compile(r"^[A-Za-z0-9_'.{},]+$")


@dataclass
class DslDocument:
    elements: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    bottom: str | None = None
    top: str | None = None
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    chains: dict = field(default_factory=dict)

    def poset(self) -> Poset:
        return build_poset(self.elements, self.relations, self.bottom, self.top)

    def bounded_poset(self) -> Poset:
        """The poset with its least/greatest elements as bounds.

        Where no least (greatest) element exists, a fresh "0" ("1") is adjoined.
        """
        p = self.poset()
        elements = list(self.elements)
        rel = list(self.relations)
        bottom, top = self.bottom, self.top
        if bottom is None:
            least = [x for i, x in enumerate(p.elements) if p.leq[i].all()]
            if least:
                bottom = least[0]
            else:
                bottom = _fresh("0", elements)
                rel += [(bottom, x) for x in elements]
                elements.insert(0, bottom)
        if top is None:
            greatest = [x for i, x in enumerate(p.elements) if p.leq[:, i].all()]
            if greatest:
                top = greatest[0]
            else:
                top = _fresh("1", elements)
                rel += [(x, top) for x in elements]
                elements.append(top)
        return build_poset(elements, rel, bottom, top)


def _fresh(name, taken):
    while name in taken:
        name += "'"
    return name


def parse_dsl(text: str) -> DslDocument:
    doc = DslDocument()
    declared: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(0), m.start() + 1) for m in _WORD.finditer(line)]
        if not toks:
            continue
        cmd, ccol = toks[0]
        args = toks[1:]

        def need(k):
            if len(args) != k:
                col = args[k][1] if len(args) > k else len(line.rstrip()) + 1
                raise ParseError(f"'{cmd}' takes {k} argument(s), got {len(args)}", lineno, col)

        def known(tok):
            name, col = tok
            if name not in declared:
                raise ParseError(f"undeclared element {name!r}", lineno, col)
            return name

        if cmd == "elem":
            if not args:
                raise ParseError("'elem' needs at least one name", lineno, len(line.rstrip()) + 1)
            for name, col in args:
                if not _NAME.match(name):
                    raise ParseError(f"invalid element name {name!r}", lineno, col)
                if name in declared:
                    raise ParseError(f"element {name!r} declared twice", lineno, col)
                declared.add(name)
                doc.elements.append(name)
        elif cmd == "le":
            need(2)
            doc.relations.append((known(args[0]), known(args[1])))
        elif cmd in ("bottom", "top"):
            need(1)
            setattr(doc, cmd, known(args[0]))
        elif cmd in ("lower", "upper"):
            need(2)
            getattr(doc, cmd).append((known(args[0]), known(args[1])))
        elif cmd == "chain":
            if len(args) < 2:
                raise ParseError("'chain' needs a name and at least one member", lineno,
                                 len(line.rstrip()) + 1)
            cname, ncol = args[0]
            if cname in doc.chains:
                raise ParseError(f"chain {cname!r} declared twice", lineno, ncol)
            body = args[1:]
            members = [body[0]]
            direction = None
            k = 1
            while k < len(body):
                op, ocol = body[k]
                if op not in (">", "<"):
                    raise ParseError(f"expected '>' or '<', found {op!r}", lineno, ocol)
                if direction is None:
                    direction = op
                elif op != direction:
                    raise ParseError("a chain must use one direction", lineno, ocol)
                if k + 1 >= len(body):
                    raise ParseError("chain ends with an operator", lineno, ocol + 1)
                members.append(body[k + 1])
                k += 2
            names = []
            for name, col in members:
                if not _NAME.match(name):
                    raise ParseError(f"invalid element name {name!r}", lineno, col)
                if name not in declared:
                    declared.add(name)
                    doc.elements.append(name)
                names.append(name)
            for x, y in zip(names, names[1:]):
                doc.relations.append((y, x) if direction == ">" else (x, y))
            doc.chains[cname] = (names, direction or ">")
        elif cmd == "consistent-chains":
            need(2)
            lists = []
            for name, col in args:
                if name not in doc.chains:
                    raise ParseError(f"unknown chain {name!r}", lineno, col)
                lists.append(doc.chains[name][0])
            for x in lists[0]:
                for y in lists[1]:
                    doc.lower.append((x, y))
                    doc.upper.append((x, y))
        else:
            raise ParseError(f"unknown directive {cmd!r}", lineno, ccol)
    return doc
