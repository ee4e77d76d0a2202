"""
Declarative input files: charts, tensors and requested checks.

Format (line-oriented, '#' starts a comment, indices are 1-based):

    space <name> dim=<n> [coords=<c1,...,cn>]
    bivector <name> on <space>     then indented "<i> <j>: <expr>", i < j
    endo <name> on <space>         then indented "<i> <j>: <expr>" (row i, column j)
    vector <name> on <space>       then indented "<i>: <expr>"
    check <suite> <args...> [key=value ...]

Unlisted components are zero. ``format_specfile`` prints the canonical form:
declarations in file order, nonzero components in index order, expressions
in canonical grammar.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from utils.constants import SUITE_ARGUMENTS, SUITE_OPTIONS, SUITES
from utils.errors import (
    DuplicateNameError,
    ExpressionError,
    SpecIndexError,
    SpecSyntaxError,
    UnknownReferenceError,
)
from utils.expr_parser import parse_expr
from utils.symexpr import IDENTIFIER, ChartSpace, Poly
from utils.tensorcalc import Bivector, EndoField, VectorField

TENSOR_KINDS = ('bivector', 'endo', 'vector')

_WORD = re.compile(r"\S+")
_TENSOR_HEADER = re.compile(r"(bivector|endo|vector)\s+(\S+)\s+on\s+(\S+)\s*$")
_PAIR_ENTRY = re.compile(r"(\d+)\s+(\d+)\s*:\s*(.*)$")
_SINGLE_ENTRY = re.compile(r"(\d+)\s*:\s*(.*)$")


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    space: ChartSpace
    line: int


@dataclass(frozen=True)
class TensorDecl:
    kind: str
    name: str
    space_name: str
    value: Union[Bivector, EndoField, VectorField]
    line: int


@dataclass(frozen=True)
class CheckSpec:
    suite: str
    args: Tuple[str, ...]
    options: Tuple[Tuple[str, Union[str, int]], ...]
    line: int

    @property
    def option_map(self) -> Dict[str, Union[str, int]]:
        return dict(self.options)

    def describe(self) -> str:
        words = ['check', self.suite, *self.args]
        words += [f"{key}={value}" for key, value in self.options]
        return ' '.join(words)


@dataclass
class SpecFile:
    spaces: Dict[str, ChartSpace] = field(default_factory=dict)
    tensors: Dict[str, Dict[str, TensorDecl]] = field(
        default_factory=lambda: {kind: {} for kind in TENSOR_KINDS})
    checks: List[CheckSpec] = field(default_factory=list)
    declarations: List[Union[SpaceDecl, TensorDecl]] = field(default_factory=list)

    def tensor(self, kind: str, name: str):
        return self.tensors[kind][name].value


# --- parsing ---------------------------------------------------------------

class _Block:
    """Open tensor declaration collecting indented component lines."""

    def __init__(self, kind: str, name: str, space_name: str, space: ChartSpace, line: int):
        self.kind = kind
        self.name = name
        self.space_name = space_name
        self.space = space
        self.line = line
        self.entries: Dict[Tuple[int, ...], Poly] = {}

    def build(self) -> TensorDecl:
        if self.kind == 'bivector':
            value = Bivector(self.space, self.entries)
        elif self.kind == 'endo':
            value = EndoField.from_entries(self.space, self.entries)
        else:
            components = [self.entries.get((i,), Poly(self.space)) for i in range(self.space.dim)]
            value = VectorField(self.space, tuple(components))
        return TensorDecl(self.kind, self.name, self.space_name, value, self.line)


class _SpecParser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.spec = SpecFile()
        self.block: Optional[_Block] = None

    def parse(self) -> SpecFile:
        for number, raw in enumerate(self.lines, start=1):
            line = raw.split('#', 1)[0].rstrip()
            if not line.strip():
                continue
            indent = len(line) - len(line.lstrip())
            if indent:
                self._component(line, indent, number)
                continue
            self._close()
            keyword = line.split()[0]
            if keyword == 'space':
                self._space(line, number)
            elif keyword in TENSOR_KINDS:
                self._tensor(line, number)
            elif keyword == 'check':
                self._check(line, number)
            else:
                raise SpecSyntaxError(f"Unknown declaration '{keyword}'", number, 1)
        self._close()
        return self.spec

    def _close(self) -> None:
        if self.block is not None:
            decl = self.block.build()
            self.spec.tensors[decl.kind][decl.name] = decl
            self.spec.declarations.append(decl)
            self.block = None

    def _name(self, name: str, number: int, column: int) -> str:
        if not IDENTIFIER.match(name):
            raise SpecSyntaxError(f"Invalid name '{name}'", number, column)
        return name

    def _space(self, line: str, number: int) -> None:
        words = list(_WORD.finditer(line))
        if len(words) < 3:
            raise SpecSyntaxError("Expected 'space <name> dim=<n> [coords=<c1,...>]'", number, 1)
        name = self._name(words[1].group(), number, words[1].start() + 1)
        if name in self.spec.spaces:
            raise DuplicateNameError(f"Space '{name}' is already declared", number, words[1].start() + 1)
        settings = {}
        for word in words[2:]:
            key, _, value = word.group().partition('=')
            if key not in ('dim', 'coords') or not value or key in settings:
                raise SpecSyntaxError(f"Unexpected '{word.group()}'", number, word.start() + 1)
            settings[key] = (value, word.start() + 1)
        if 'dim' not in settings:
            raise SpecSyntaxError("Missing dim=<n>", number, len(line) + 1)
        dim_text, dim_column = settings['dim']
        if not dim_text.isdigit() or int(dim_text) < 1:
            raise SpecSyntaxError(f"dim must be a positive integer, got '{dim_text}'", number, dim_column)
        dim = int(dim_text)
        if 'coords' in settings:
            coords_text, coords_column = settings['coords']
            coords = tuple(coords_text.split(','))
            if len(coords) != dim:
                raise SpecSyntaxError(f"dim={dim} but {len(coords)} coordinates given", number, coords_column)
            try:
                space = ChartSpace(coords, name=name)
            except ValueError as exc:
                raise SpecSyntaxError(str(exc), number, coords_column) from None
        else:
            space = ChartSpace.euclidean(dim, name=name)
        self.spec.spaces[name] = space
        self.spec.declarations.append(SpaceDecl(name, space, number))

    def _tensor(self, line: str, number: int) -> None:
        match = _TENSOR_HEADER.match(line)
        if match is None:
            raise SpecSyntaxError(f"Expected '{line.split()[0]} <name> on <space>'", number, 1)
        kind, name, space_name = match.groups()
        self._name(name, number, match.start(2) + 1)
        if name in self.spec.tensors[kind]:
            raise DuplicateNameError(f"{kind} '{name}' is already declared", number, match.start(2) + 1)
        if space_name not in self.spec.spaces:
            raise UnknownReferenceError(f"Unknown space '{space_name}'", number, match.start(3) + 1)
        self.block = _Block(kind, name, space_name, self.spec.spaces[space_name], number)

    def _component(self, line: str, indent: int, number: int) -> None:
        block = self.block
        if block is None:
            raise SpecSyntaxError("Indented line outside a tensor declaration", number, indent + 1)
        body = line[indent:]
        pattern = _SINGLE_ENTRY if block.kind == 'vector' else _PAIR_ENTRY
        match = pattern.match(body)
        if match is None:
            shape = "<i>: <expr>" if block.kind == 'vector' else "<i> <j>: <expr>"
            raise SpecSyntaxError(f"Expected '{shape}'", number, indent + 1)
        *index_text, expr_text = match.groups()
        dim = block.space.dim
        indices = tuple(int(t) for t in index_text)
        for k, value in enumerate(indices):
            if not 1 <= value <= dim:
                raise SpecIndexError(f"Index {value} out of range 1..{dim}", number,
                                     indent + match.start(k + 1) + 1)
        if block.kind == 'bivector':
            i, j = indices
            if i == j:
                raise SpecIndexError(f"Diagonal entry {i} {j} of an antisymmetric tensor", number, indent + 1)
            if i > j:
                raise SpecIndexError(f"Entry {i} {j} is not writable; use '{j} {i}:' with the negated expression",
                                     number, indent + 1)
        key = tuple(v - 1 for v in indices)
        if key in block.entries:
            raise SpecIndexError(f"Duplicate entry {' '.join(index_text)}", number, indent + 1)
        expr_column = indent + match.start(len(indices) + 1) + 1
        try:
            block.entries[key] = parse_expr(expr_text, block.space)
        except ExpressionError as exc:
            offset = exc.position or 0
            raise SpecSyntaxError(exc.reason, number, expr_column + offset) from None

    def _check(self, line: str, number: int) -> None:
        words = list(_WORD.finditer(line))
        if len(words) < 2:
            raise SpecSyntaxError("Expected 'check <suite> ...'", number, 1)
        suite = words[1].group()
        if suite not in SUITES:
            raise SpecSyntaxError(f"Unknown suite '{suite}'. Must be one of: {', '.join(SUITES)}",
                                  number, words[1].start() + 1)
        args, options = [], []
        allowed = SUITE_OPTIONS[suite]
        for word in words[2:]:
            text, column = word.group(), word.start() + 1
            if '=' not in text:
                args.append((text, column))
                continue
            key, _, value = text.partition('=')
            if key not in allowed:
                raise SpecSyntaxError(f"Option '{key}' is not accepted by check {suite}", number, column)
            if key in dict(options):
                raise SpecSyntaxError(f"Option '{key}' given twice", number, column)
            choices = allowed[key]
            if choices is None:
                if not value.isdigit() or (key == 'trials' and int(value) < 1):
                    kind = 'positive' if key == 'trials' else 'nonnegative'
                    raise SpecSyntaxError(f"Option '{key}' needs a {kind} integer, got '{value}'",
                                          number, column)
                options.append((key, int(value)))
            elif value not in choices:
                raise SpecSyntaxError(f"Invalid {key} '{value}'. Must be one of: {', '.join(choices)}",
                                      number, column)
            else:
                options.append((key, value))

        kinds = SUITE_ARGUMENTS[suite]
        if len(args) != len(kinds):
            expected = ' '.join(f"<{k}>" for k in kinds) or 'no arguments'
            raise SpecSyntaxError(f"check {suite} expects {expected}", number, words[1].start() + 1)
        spaces = set()
        for (name, column), kind in zip(args, kinds):
            if kind == 'space':
                if name not in self.spec.spaces:
                    raise UnknownReferenceError(f"Unknown space '{name}'", number, column)
                continue
            decl = self.spec.tensors[kind].get(name)
            if decl is None:
                raise UnknownReferenceError(f"Unknown {kind} '{name}'", number, column)
            spaces.add(decl.space_name)
        if len(spaces) > 1:
            raise SpecSyntaxError(f"Arguments of check {suite} live on different spaces", number,
                                  words[2].start() + 1)
        order = list(allowed)
        options.sort(key=lambda item: order.index(item[0]))
        self.spec.checks.append(CheckSpec(suite, tuple(n for n, _ in args), tuple(options), number))


def parse_specfile(text: str) -> SpecFile:
    """
    Parse and fully resolve a spec file.

    Raises:
        SpecSyntaxError: Malformed line, bad option or expression error
        DuplicateNameError: Name declared twice for one kind
        UnknownReferenceError: Reference to an undeclared space or tensor
        SpecIndexError: Component index out of range, diagonal or below the diagonal
    """
    return _SpecParser(text).parse()


# --- formatting ------------------------------------------------------------

def _format_tensor(decl: TensorDecl) -> List[str]:
    lines = [f"{decl.kind} {decl.name} on {decl.space_name}"]
    value = decl.value
    if decl.kind == 'bivector':
        for (i, j), poly in value.items():
            lines.append(f"  {i + 1} {j + 1}: {poly.to_expr()}")
    elif decl.kind == 'endo':
        n = value.space.dim
        for i in range(n):
            for j in range(n):
                if value.entry(i, j):
                    lines.append(f"  {i + 1} {j + 1}: {value.entry(i, j).to_expr()}")
    else:
        for i, poly in enumerate(value.components):
            if poly:
                lines.append(f"  {i + 1}: {poly.to_expr()}")
    return lines


def format_specfile(spec: SpecFile) -> str:
    """Canonical text of a parsed spec file."""
    lines = []
    for decl in spec.declarations:
        if isinstance(decl, SpaceDecl):
            space = decl.space
            lines.append(f"space {decl.name} dim={space.dim} coords={','.join(space.coord_names)}")
        else:
            lines.extend(_format_tensor(decl))
    for check in spec.checks:
        lines.append(check.describe())
    return "\n".join(lines) + "\n"
