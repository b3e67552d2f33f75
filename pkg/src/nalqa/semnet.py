"""Semantic network stored as binary terms edge(node1, node2)."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Set, Tuple

IS = "is"
IS_SYNONYMS = ("is", "is_a")


class NetworkError(ValueError):
    pass


class KindViolation(NetworkError):
    pass


class Triple(NamedTuple):
    node1: str
    edge: str
    node2: str


class PathSequence(NamedTuple):
    n1: str
    e1: str
    n2: str
    e2: str
    n3: str
    e3: str
    n4: str

    def __str__(self) -> str:
        return ", ".join(self)


def object_id(*parts: object) -> str:
    """Stable content-derived identifier for a network object."""
    h = hashlib.md5("\x1f".join(str(p) for p in parts).encode("utf-8"))
    return h.hexdigest()


@dataclass
class SemanticNetwork:
    class_names: Set[str] = field(default_factory=set)
    _triples: Dict[Triple, None] = field(default_factory=dict)
    _class_of: Dict[str, str] = field(default_factory=dict)
    _out: Dict[str, List[Triple]] = field(default_factory=dict)
    _targets: Set[str] = field(default_factory=set)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: object) -> bool:
        return t in self._triples

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SemanticNetwork) and set(self._triples) == set(other._triples)

    def triples(self) -> List[Triple]:
        return list(self._triples)

    def is_class(self, node: str) -> bool:
        return node in self.class_names or node in self._class_targets()

    def _class_targets(self) -> Set[str]:
        return self._targets

    def is_object(self, node: str) -> bool:
        return node in self._class_of

    def objects(self) -> List[str]:
        return list(self._class_of)

    def class_of(self, obj: str) -> Optional[str]:
        return self._class_of.get(obj)

    def edges_from(self, node: str) -> List[Triple]:
        return [t for t in self._out.get(node, []) if t.edge != IS]

    def insert(self, t: Tuple[str, str, str]) -> None:
        n1, edge, n2 = t
        if not n1 or not edge or n2 == "":
            raise KindViolation(f"empty field in triple {t!r}")
        if edge in IS_SYNONYMS:
            edge = IS
        t = Triple(n1, edge, n2)
        if t in self._triples:
            return
        if self.is_class(n1):
            raise KindViolation(f"edge '{edge}' out of class node '{n1}'")
        if edge == IS:
            if n2 in self._class_of or n2 in self._out:
                raise KindViolation(f"'{n2}' is an object and cannot be a class")
            prev = self._class_of.get(n1)
            if prev is not None and prev != n2:
                raise KindViolation(f"object '{n1}' already has class '{prev}'")
            self._class_of[n1] = n2
            self._targets.add(n2)
        else:
            if self.is_class(n2):
                raise KindViolation(f"attribute edge '{edge}' cannot point at class node '{n2}'")
        self._triples[t] = None
        self._out.setdefault(n1, []).append(t)

    def extend(self, triples: Iterable[Tuple[str, str, str]]) -> None:
        for t in triples:
            self.insert(t)

    def copy(self) -> "SemanticNetwork":
        net = SemanticNetwork(set(self.class_names))
        net.extend(self._triples)
        return net

    def atomic_attributes(self, obj: str) -> List[Tuple[str, str]]:
        return [(t.edge, t.node2) for t in self.edges_from(obj) if not self.is_object(t.node2)]

    def object_attributes(self, obj: str) -> List[Tuple[str, str]]:
        return [(t.edge, t.node2) for t in self.edges_from(obj) if self.is_object(t.node2)]

    def check(self) -> None:
        """Raise if a stored triple breaks a node-kind rule."""
        classes = self._class_targets() | self.class_names
        for t in self._triples:
            if t.node1 in classes:
                raise KindViolation(f"edge '{t.edge}' out of class node '{t.node1}'")
            if t.edge != IS and t.node2 in classes:
                raise KindViolation(f"attribute edge '{t.edge}' points at class node '{t.node2}'")
        for obj in self._out:
            if obj not in self._class_of:
                raise KindViolation(f"node '{obj}' has attributes but no '{IS}' edge")


def enumerate_paths(net: SemanticNetwork) -> List[PathSequence]:
    """All leaf-to-root sequences with exactly two intermediate object nodes."""
    out: List[PathSequence] = []
    for n3 in net.objects():
        n4 = net.class_of(n3)
        for e2, n2 in net.object_attributes(n3):
            for e1, n1 in net.atomic_attributes(n2):
                out.append(PathSequence(n1, e1, n2, e2, n3, IS, n4))
    return out


def serialize(net: SemanticNetwork) -> str:
    lines = []
    for t in net:
        for part in t:
            if "\t" in part or "\n" in part:
                raise NetworkError(f"tab or newline inside node label {part!r}")
        lines.append("\t".join(t))
    return "".join(line + "\n" for line in lines)


def parse(text: str, class_names: Iterable[str] = ()) -> SemanticNetwork:
    net = SemanticNetwork(set(class_names))
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if cols == ["sn_node1", "sn_edge", "sn_node2"]:
            continue
        if len(cols) != 3:
            raise NetworkError(f"line {lineno}: expected 3 tab-separated columns, got {len(cols)}")
        try:
            net.insert((cols[0], cols[1], cols[2]))
        except KindViolation as exc:
            raise NetworkError(f"line {lineno}: {exc}") from None
    return net
