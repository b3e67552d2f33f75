"""Class hierarchy, attribute schemas, property clauses and response templates.

The clause language is line oriented::

    domain(X) => entity(X) | event(X)
    g1 <- court(X)
    attribute(court(X), [court_type(X, _)])
    attribute(legal_proceeding(X), [plaintiff(X, person(_);organization(_))])
    props(g1, [name(g1, mahkamah_majistret_shahalam)])
    props(c2, [name(c2, "high court")]) :- c2 <- court(X)
    template(occur_on, "<EVENT> took place on <ANSWER>")
    display(date, [day_of_week, day_of_month, month, year])

Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union


class OntologyError(ValueError):
    pass


class ClauseSyntaxError(OntologyError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleError(OntologyError):
    def __init__(self, cls: str):
        super().__init__(f"subclass cycle through class '{cls}'")
        self.cls = cls


class UnknownNameError(OntologyError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


_BARE_ATOM = re.compile(r"^(?:[a-z][A-Za-z0-9_]*|\d+(?:\.\d+)?)$")


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        if _BARE_ATOM.match(self.name):
            return self.name
        return '"' + self.name.replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class Compound:
    functor: str
    args: Tuple["Term", ...]

    def __str__(self) -> str:
        return f"{self.functor}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Alt:
    """Disjunction of class terms, only legal as an attribute value constraint."""
    options: Tuple["Term", ...]

    def __str__(self) -> str:
        return ";".join(str(o) for o in self.options)


Term = Union[Var, Atom, Compound, Alt]


def substitute(term: Term, var: str, value: Term) -> Term:
    if isinstance(term, Var):
        return value if term.name == var else term
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(substitute(a, var, value) for a in term.args))
    if isinstance(term, Alt):
        return Alt(tuple(substitute(a, var, value) for a in term.options))
    return term


def term_matches(pattern: Term, term: Term) -> bool:
    """Structural equality where a variable in ``pattern`` matches anything."""
    if isinstance(pattern, Var):
        return True
    if isinstance(pattern, Compound):
        return (isinstance(term, Compound) and term.functor == pattern.functor
                and len(term.args) == len(pattern.args)
                and all(term_matches(p, t) for p, t in zip(pattern.args, term.args)))
    return pattern == term


# ---------------------------------------------------------------- clauses

@dataclass(frozen=True)
class ClassClause:
    """Kind-1 O-clause: every class in every group is a subclass of ``head``."""
    head: str
    groups: Tuple[Tuple[str, ...], ...]
    var: str = "X"

    def __str__(self) -> str:
        body = ", ".join(" | ".join(f"{c}({self.var})" for c in g) for g in self.groups)
        return f"{self.head}({self.var}) => {body}"


@dataclass(frozen=True)
class InstanceClause:
    """Kind-2 O-clause."""
    instance: str
    classes: Tuple[str, ...]
    var: str = "X"

    def __str__(self) -> str:
        cs = ", ".join(f"{c}({self.var})" for c in self.classes)
        return f"{Atom(self.instance)} <- {cs}"


@dataclass(frozen=True)
class AttributeSchema:
    cls: str
    name: str
    constraint: Tuple[str, ...] = ()   # empty means an atomic value

    @property
    def atomic(self) -> bool:
        return not self.constraint


@dataclass(frozen=True)
class SubclassGoal:
    sub: str
    sup: str

    def __str__(self) -> str:
        return f"subclass({self.sub}, {self.sup})"


@dataclass(frozen=True)
class InstanceGoal:
    instance: str
    cls: str

    def __str__(self) -> str:
        return f"{Atom(self.instance)} <- {self.cls}(X)"


@dataclass(frozen=True)
class HaspropGoal:
    instance: str
    prop: Compound

    def __str__(self) -> str:
        return f"hasprop({Atom(self.instance)}, {self.prop})"


@dataclass(frozen=True)
class Conj:
    left: "Goal"
    right: "Goal"

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class Disj:
    left: "Goal"
    right: "Goal"

    def __str__(self) -> str:
        return f"({self.left}; {self.right})"


Goal = Union[SubclassGoal, InstanceGoal, HaspropGoal, Conj, Disj]


@dataclass(frozen=True)
class PClause:
    owner: Union[str, Compound]   # instance symbol or class term c(X)
    props: Tuple[Compound, ...]
    guard: Optional[Goal] = None

    def __str__(self) -> str:
        owner = str(Atom(self.owner)) if isinstance(self.owner, str) else str(self.owner)
        text = f"props({owner}, [{', '.join(str(p) for p in self.props)}])"
        if self.guard is not None:
            text += f" :- {self.guard}"
        return text


# ---------------------------------------------------------------- lexer / parser

_TOKEN = re.compile(r"""
    \s*(?:
      (?P<op>=>|<-|:-|[()\[\],;|])
    | "(?P<dq>(?:[^"\\]|\\.)*)"
    | '(?P<sq>(?:[^'\\]|\\.)*)'
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*|\d+(?:\.\d+)?)
    )""", re.VERBOSE)


def _lex(text: str, line: int) -> List[Tuple[str, str]]:
    out: List[Tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ClauseSyntaxError(line, f"unexpected character {text[pos:].strip()[:1]!r}")
        pos = m.end()
        if m.group("op"):
            out.append(("op", m.group("op")))
        elif m.group("dq") is not None:
            out.append(("str", re.sub(r"\\(.)", r"\1", m.group("dq"))))
        elif m.group("sq") is not None:
            out.append(("str", re.sub(r"\\(.)", r"\1", m.group("sq"))))
        else:
            out.append(("name", m.group("name")))
    return out


class _Parser:
    def __init__(self, tokens: List[Tuple[str, str]], line: int):
        self.toks = tokens
        self.i = 0
        self.line = line

    def error(self, msg: str) -> ClauseSyntaxError:
        return ClauseSyntaxError(self.line, msg)

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def at_op(self, op: str) -> bool:
        t = self.peek()
        return t is not None and t == ("op", op)

    def expect(self, op: str) -> None:
        if not self.at_op(op):
            got = self.peek()
            raise self.error(f"expected '{op}', got {got[1] if got else 'end of line'!r}")
        self.i += 1

    def done(self) -> bool:
        return self.i >= len(self.toks)

    def term(self, allow_alt: bool = False) -> Term:
        first = self._simple()
        if allow_alt and self.at_op(";"):
            opts = [first]
            while self.at_op(";"):
                self.i += 1
                opts.append(self._simple())
            return Alt(tuple(opts))
        return first

    def _simple(self) -> Term:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of line")
        kind, val = t
        self.i += 1
        if kind == "str":
            return Atom(val)
        if kind != "name":
            raise self.error(f"unexpected {val!r}")
        if self.at_op("("):
            self.i += 1
            args = [self.term(allow_alt=True)]
            while self.at_op(","):
                self.i += 1
                args.append(self.term(allow_alt=True))
            self.expect(")")
            return Compound(val, tuple(args))
        if val[0].isupper() or val[0] == "_":
            return Var(val)
        return Atom(val)

    def term_list(self) -> List[Term]:
        self.expect("[")
        items: List[Term] = []
        if not self.at_op("]"):
            items.append(self.term(allow_alt=True))
            while self.at_op(","):
                self.i += 1
                items.append(self.term(allow_alt=True))
        self.expect("]")
        return items

    # goals: disjunction of conjunctions of primaries
    def goal(self) -> Goal:
        g = self._conj()
        while self.at_op(";"):
            self.i += 1
            g = Disj(g, self._conj())
        return g

    def _conj(self) -> Goal:
        g = self._primary()
        while self.at_op(","):
            self.i += 1
            g = Conj(g, self._primary())
        return g

    def _primary(self) -> Goal:
        if self.at_op("("):
            self.i += 1
            g = self.goal()
            self.expect(")")
            return g
        t = self._simple()
        if self.at_op("<-"):
            self.i += 1
            cls = self._simple()
            if not isinstance(t, Atom) or not _is_class_term(cls):
                raise self.error("instance goal must read 'e <- c(X)'")
            return InstanceGoal(t.name, cls.functor)
        if isinstance(t, Compound) and t.functor == "subclass" and len(t.args) == 2:
            a, b = t.args
            if isinstance(a, Atom) and isinstance(b, Atom):
                return SubclassGoal(a.name, b.name)
        if isinstance(t, Compound) and t.functor == "hasprop" and len(t.args) == 2:
            e, p = t.args
            if isinstance(e, Atom) and isinstance(p, Compound) and len(p.args) == 2:
                return HaspropGoal(e.name, p)
        raise self.error(f"not a goal: {t}")


def _is_class_term(t: Term) -> bool:
    return isinstance(t, Compound) and len(t.args) == 1 and isinstance(t.args[0], (Var, Atom))


def _class_var(t: Term, line: int) -> Tuple[str, str]:
    if not (isinstance(t, Compound) and len(t.args) == 1 and isinstance(t.args[0], Var)):
        raise ClauseSyntaxError(line, f"expected a class term like c(X), got {t}")
    return t.functor, t.args[0].name


# ---------------------------------------------------------------- ontology

@dataclass
class Ontology:
    parents: Dict[str, List[str]] = field(default_factory=dict)
    class_clauses: List[ClassClause] = field(default_factory=list)
    instances: Dict[str, List[str]] = field(default_factory=dict)
    instance_clauses: List[InstanceClause] = field(default_factory=list)
    own_schemas: Dict[str, List[AttributeSchema]] = field(default_factory=dict)
    pclauses: List[PClause] = field(default_factory=list)
    templates: Dict[str, str] = field(default_factory=dict)
    display_attrs: Dict[str, List[str]] = field(default_factory=dict)
    _ancestors: Dict[str, frozenset] = field(default_factory=dict, repr=False)

    # -- structure
    @property
    def classes(self) -> List[str]:
        return list(self.parents)

    def _declare(self, cls: str) -> None:
        self.parents.setdefault(cls, [])

    def _check_class(self, cls: str) -> None:
        if cls not in self.parents:
            raise UnknownNameError(f"unknown class '{cls}'")

    def _finalize(self) -> None:
        state: Dict[str, int] = {}

        def visit(c: str) -> frozenset:
            if state.get(c) == 2:
                return self._ancestors[c]
            if state.get(c) == 1:
                raise CycleError(c)
            state[c] = 1
            acc = {c}
            for p in self.parents[c]:
                acc |= visit(p)
            state[c] = 2
            self._ancestors[c] = frozenset(acc)
            return self._ancestors[c]

        for c in self.parents:
            visit(c)

    def ancestors(self, cls: str) -> frozenset:
        """Reflexive ancestor set."""
        self._check_class(cls)
        return self._ancestors[cls]

    def children(self, cls: str) -> List[str]:
        self._check_class(cls)
        return [c for c, ps in self.parents.items() if cls in ps]

    def descendants(self, cls: str) -> List[str]:
        self._check_class(cls)
        return [c for c in self.parents if cls in self._ancestors[c]]

    def roots(self) -> List[str]:
        return [c for c, ps in self.parents.items() if not ps]

    def is_event_class(self, cls: str) -> bool:
        return cls in self.parents and "event" in self._ancestors[cls]

    def is_entity_class(self, cls: str) -> bool:
        return cls in self.parents and "entity" in self._ancestors[cls]

    # -- inference
    def subclass_of(self, c1: str, c2: str) -> bool:
        self._check_class(c1)
        self._check_class(c2)
        return c2 in self._ancestors[c1]

    def instance_of(self, e: str, c: str) -> bool:
        if e not in self.instances:
            raise UnknownNameError(f"unknown instance '{e}'")
        self._check_class(c)
        return any(self.subclass_of(d, c) for d in self.instances[e])

    def hasprop(self, e: str, prop: Compound, _depth: int = 0) -> bool:
        if e not in self.instances:
            raise UnknownNameError(f"unknown instance '{e}'")
        if _depth > 32:
            return False
        for pc in self.pclauses:
            if isinstance(pc.owner, str):
                if pc.owner != e:
                    continue
                props = pc.props
                guard = pc.guard
            else:
                cls, var = pc.owner.functor, pc.owner.args[0]
                if cls not in self.parents or not self.instance_of(e, cls):
                    continue
                name = var.name if isinstance(var, Var) else None
                props = tuple(substitute(p, name, Atom(e)) for p in pc.props) if name else pc.props
                guard = pc.guard
            if not any(term_matches(prop, p) for p in props):
                continue
            if guard is None or self._prove(guard, _depth + 1):
                return True
        return False

    def prove_goal(self, g: Goal) -> bool:
        return self._prove(g, 0)

    def _prove(self, g: Goal, depth: int) -> bool:
        if isinstance(g, Conj):
            # evaluate both sides so unknown names always surface as errors
            left = self._prove(g.left, depth)
            right = self._prove(g.right, depth)
            return left and right
        if isinstance(g, Disj):
            left = self._prove(g.left, depth)
            right = self._prove(g.right, depth)
            return left or right
        if isinstance(g, SubclassGoal):
            return self.subclass_of(g.sub, g.sup)
        if isinstance(g, InstanceGoal):
            return self.instance_of(g.instance, g.cls)
        if isinstance(g, HaspropGoal):
            return self.hasprop(g.instance, g.prop, depth)
        raise TypeError(f"not a goal: {g!r}")

    # -- schemas, templates
    def attribute_schema(self, cls: str) -> List[AttributeSchema]:
        """Own attributes first, then inherited ones nearest-ancestor first."""
        self._check_class(cls)
        seen: Dict[str, AttributeSchema] = {}
        for c in self._linear_ancestors(cls):
            for a in self.own_schemas.get(c, []):
                seen.setdefault(a.name, a)
        return list(seen.values())

    def attribute(self, cls: str, name: str) -> Optional[AttributeSchema]:
        for a in self.attribute_schema(cls):
            if a.name == name:
                return a
        return None

    def _linear_ancestors(self, cls: str) -> List[str]:
        order: List[str] = []
        frontier = [cls]
        while frontier:
            nxt: List[str] = []
            for c in frontier:
                if c not in order:
                    order.append(c)
                    nxt.extend(self.parents[c])
            frontier = nxt
        return order

    def event_attributes(self) -> Dict[str, AttributeSchema]:
        out: Dict[str, AttributeSchema] = {}
        for c in self.parents:
            if self.is_event_class(c):
                for a in self.own_schemas.get(c, []):
                    out.setdefault(a.name, a)
        return out

    def response_template_for(self, attr: str) -> str:
        if attr not in self.event_attributes():
            raise UnknownNameError(f"unknown event attribute '{attr}'")
        return self.templates.get(attr, "<ANSWER>")

    def display_attributes(self, cls: str) -> List[str]:
        """Attributes that identify an object of ``cls`` when it is printed."""
        for c in self._linear_ancestors(cls):
            if c in self.display_attrs:
                return list(self.display_attrs[c])
        return [a.name for a in self.attribute_schema(cls) if a.atomic]

    # -- serialization
    def clauses(self) -> frozenset:
        items: List[object] = list(self.class_clauses) + list(self.instance_clauses) + list(self.pclauses)
        for cls, attrs in self.own_schemas.items():
            items.extend(attrs)
        items.extend(("template", k, v) for k, v in self.templates.items())
        items.extend(("display", k, tuple(v)) for k, v in self.display_attrs.items())
        return frozenset(items)


def _add_class_clause(onto: Ontology, clause: ClassClause) -> None:
    onto.class_clauses.append(clause)
    onto._declare(clause.head)
    for group in clause.groups:
        for c in group:
            onto._declare(c)
            if clause.head not in onto.parents[c]:
                onto.parents[c].append(clause.head)


def load_ontology(text: str) -> Ontology:
    onto = Ontology()
    pending_attrs: List[Tuple[int, str, List[AttributeSchema]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        p = _Parser(_lex(line, lineno), lineno)
        _parse_clause(p, onto, pending_attrs)
    for lineno, cls, attrs in pending_attrs:
        if cls not in onto.parents:
            raise ClauseSyntaxError(lineno, f"attribute declared on unknown class '{cls}'")
        own = onto.own_schemas.setdefault(cls, [])
        for a in attrs:
            own[:] = [x for x in own if x.name != a.name]
            own.append(a)
    for e, classes in onto.instances.items():
        for c in classes:
            onto._check_class(c)
    onto._finalize()
    return onto


def _strip_comment(raw: str) -> str:
    in_q = None
    escaped = False
    for i, ch in enumerate(raw):
        if escaped:
            escaped = False
        elif in_q:
            if ch == "\\":
                escaped = True
            elif ch == in_q:
                in_q = None
        elif ch in "\"'":
            in_q = ch
        elif ch == "#":
            return raw[:i]
    return raw


def _parse_clause(p: _Parser, onto: Ontology,
                  pending_attrs: List[Tuple[int, str, List[AttributeSchema]]]) -> None:
    line = p.line
    if (len(p.toks) > 1 and p.toks[0][0] == "name" and p.toks[1] == ("op", "(")
            and p.toks[0][1] in ("attribute", "props", "prop", "template", "display")):
        _parse_keyword_clause(p, p.toks[0][1], onto, pending_attrs)
        return
    head = p.term()
    if p.at_op("=>"):
        p.i += 1
        cls, var = _class_var(head, line)
        groups: List[Tuple[str, ...]] = []
        while True:
            group = []
            while True:
                c, v = _class_var(p.term(), line)
                if v != var:
                    raise ClauseSyntaxError(line, f"class {c}({v}) does not share variable {var}")
                group.append(c)
                if not p.at_op("|"):
                    break
                p.i += 1
            groups.append(tuple(group))
            if not p.at_op(","):
                break
            p.i += 1
        if not p.done():
            raise p.error("trailing input after class clause")
        _add_class_clause(onto, ClassClause(cls, tuple(groups), var))
        return
    if p.at_op("<-"):
        p.i += 1
        if not isinstance(head, Atom):
            raise p.error("instance symbol expected before '<-'")
        classes: List[str] = []
        var = None
        while True:
            c, v = _class_var(p.term(), line)
            if var is not None and v != var:
                raise ClauseSyntaxError(line, "instance classes must share one variable")
            var = v
            classes.append(c)
            if not p.at_op(","):
                break
            p.i += 1
        if not p.done():
            raise p.error("trailing input after instance clause")
        onto.instance_clauses.append(InstanceClause(head.name, tuple(classes), var or "X"))
        onto.instances.setdefault(head.name, [])
        for c in classes:
            if c not in onto.instances[head.name]:
                onto.instances[head.name].append(c)
        return
    raise p.error(f"unrecognised clause starting with {head}")


def _parse_keyword_clause(p: _Parser, kw: str, onto: Ontology,
                          pending_attrs: List[Tuple[int, str, List[AttributeSchema]]]) -> None:
    line = p.line
    name = p.toks[0][1]
    p.i = 1
    p.expect("(")
    if kw == "attribute":
        cls, var = _class_var(p.term(), line)
        p.expect(",")
        items = p.term_list()
        p.expect(")")
        attrs: List[AttributeSchema] = []
        for it in items:
            if not (isinstance(it, Compound) and len(it.args) == 2
                    and isinstance(it.args[0], Var) and it.args[0].name == var):
                raise ClauseSyntaxError(line, f"attribute must read p({var}, value): {it}")
            attrs.append(AttributeSchema(cls, it.functor, _constraint(it.args[1], line)))
        pending_attrs.append((line, cls, attrs))
    elif kw in ("props", "prop"):
        owner_t = p.term()
        p.expect(",")
        items = p.term_list()
        p.expect(")")
        guard = None
        if p.at_op(":-"):
            p.i += 1
            guard = p.goal()
        if isinstance(owner_t, Atom):
            owner: Union[str, Compound] = owner_t.name
            subj: Term = owner_t
        elif isinstance(owner_t, Compound) and len(owner_t.args) == 1 and isinstance(owner_t.args[0], Var):
            owner = owner_t
            subj = owner_t.args[0]
        else:
            raise ClauseSyntaxError(line, f"props owner must be an instance or class term: {owner_t}")
        props = []
        for it in items:
            if not (isinstance(it, Compound) and len(it.args) == 2 and it.args[0] == subj):
                raise ClauseSyntaxError(line, f"property must read p({subj}, value): {it}")
            props.append(it)
        onto.pclauses.append(PClause(owner, tuple(props), guard))
    elif kw == "template":
        attr = p.term()
        p.expect(",")
        text = p.peek()
        if not isinstance(attr, Atom) or text is None or text[0] != "str":
            raise ClauseSyntaxError(line, "template must read template(attr, \"text\")")
        p.i += 1
        p.expect(")")
        onto.templates[attr.name] = text[1]
    else:
        cls = p.term()
        p.expect(",")
        items = p.term_list()
        p.expect(")")
        if not isinstance(cls, Atom) or not all(isinstance(i, Atom) for i in items):
            raise ClauseSyntaxError(line, "display must read display(class, [attr, ...])")
        onto.display_attrs[cls.name] = [i.name for i in items]
    if not p.done():
        raise p.error(f"trailing input after {name} clause")


def _constraint(t: Term, line: int) -> Tuple[str, ...]:
    if isinstance(t, Var):
        return ()
    opts = t.options if isinstance(t, Alt) else (t,)
    names = []
    for o in opts:
        if not _is_class_term(o):
            raise ClauseSyntaxError(line, f"value constraint must be '_' or class terms: {t}")
        names.append(o.functor)
    return tuple(names)


def serialize_ontology(onto: Ontology) -> str:
    lines: List[str] = []
    lines.extend(str(c) for c in onto.class_clauses)
    lines.extend(str(c) for c in onto.instance_clauses)
    for cls, attrs in onto.own_schemas.items():
        if not attrs:
            continue
        parts = []
        for a in attrs:
            value = ";".join(f"{c}(_)" for c in a.constraint) if a.constraint else "_"
            parts.append(f"{a.name}(X, {value})")
        lines.append(f"attribute({cls}(X), [{', '.join(parts)}])")
    lines.extend(str(pc) for pc in onto.pclauses)
    for attr, text in onto.templates.items():
        lines.append(f"template({attr}, {_quote(text)})")
    for cls, attrs in onto.display_attrs.items():
        lines.append(f"display({cls}, [{', '.join(attrs)}])")
    return "\n".join(lines) + ("\n" if lines else "")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def parse_goal(text: str) -> Goal:
    p = _Parser(_lex(text, 1), 1)
    g = p.goal()
    if not p.done():
        raise p.error("trailing input after goal")
    return g


def iter_placeholders(template: str) -> Iterable[str]:
    return re.findall(r"<([A-Z_]+)>", template)
