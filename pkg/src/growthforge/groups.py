"""Group models, words and generating sets.

Two models are supported: integer matrix groups (elements are unimodular
matrices) and split extensions ``Z^r x|_A Z`` whose elements are pairs
``(w, k)`` multiplied by ``(w1, k1)(w2, k2) = (w1 + A^k1 w2, k1 + k2)``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InvalidTable,
    KindMismatch,
    NotTransitive,
    NotUnimodular,
    ParseError,
    UnknownLabel,
    ValidationError,
)
from .exact import IntMatrix

LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LETTER_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^(-?1))?$")


class Word(tuple):
    """Sequence of letters ``(label, +1 | -1)``."""

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, ((str(l), int(e)) for l, e in letters))

    @classmethod
    def parse(cls, text: str) -> Word:
        letters = []
        for tok in text.split():
            m = _LETTER_RE.match(tok)
            if not m:
                raise ParseError(f"bad letter {tok!r} in word {text!r}")
            letters.append((m.group(1), -1 if m.group(3) == "-1" else 1))
        return cls(letters)

    @classmethod
    def of(cls, *labels: str) -> Word:
        return cls((l, 1) for l in labels)

    def __add__(self, other) -> Word:
        return Word(tuple.__add__(self, tuple(other)))

    def __mul__(self, n: int) -> Word:
        return Word(tuple.__mul__(self, n))

    def inverse(self) -> Word:
        return Word((l, -e) for l, e in reversed(self))

    def power(self, n: int) -> Word:
        return self * n if n >= 0 else self.inverse() * (-n)

    def reduced(self) -> Word:
        out = []
        for letter in self:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(out)

    def __str__(self):
        return " ".join(l if e == 1 else f"{l}^-1" for l, e in self)

    def __repr__(self):
        return f"Word({str(self)!r})"


def as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w)
    return Word(w)


# ---------------------------------------------------------------------------
# group models and elements


class SplitExtension:
    """The group ``Z^r x|_A Z`` for a unimodular ``A``."""

    kind = "split_extension"

    def __init__(self, matrix: IntMatrix):
        if not matrix.is_unimodular:
            raise NotUnimodular("split extension needs a unimodular square matrix")
        self.matrix = matrix
        self.rank = matrix.nrows
        self._powers = {0: IntMatrix.identity(self.rank), 1: matrix}
        self._inverse = None

    def __eq__(self, other):
        return isinstance(other, SplitExtension) and self.matrix == other.matrix

    def __hash__(self):
        return hash(("split", self.matrix))

    def __repr__(self):
        return f"SplitExtension({self.matrix.tolist()})"

    def action(self, k: int) -> IntMatrix:
        """``A^k``, cached."""
        p = self._powers.get(k)
        if p is None:
            if k < 0:
                if self._inverse is None:
                    self._inverse = self.matrix.inverse()
                p = self.action(k + 1) @ self._inverse
            else:
                p = self.action(k - 1) @ self.matrix
            self._powers[k] = p
        return p

    def element(self, w: Sequence[int], k: int = 0) -> SplitElement:
        w = tuple(int(x) for x in w)
        if len(w) != self.rank:
            raise DimensionMismatch(f"vector of length {len(w)} in rank {self.rank} extension")
        return SplitElement(w, int(k), self)

    def identity(self) -> SplitElement:
        return SplitElement((0,) * self.rank, 0, self)

    def t(self) -> SplitElement:
        return SplitElement((0,) * self.rank, 1, self)

    def basis_vector(self, i: int) -> SplitElement:
        return SplitElement(tuple(int(i == j) for j in range(self.rank)), 0, self)


class MatrixGroup:
    """Subgroups of ``GL_m(Z)``."""

    kind = "matrix_group"

    def __init__(self, degree: int):
        self.degree = degree

    def __eq__(self, other):
        return isinstance(other, MatrixGroup) and self.degree == other.degree

    def __hash__(self):
        return hash(("matrix", self.degree))

    def __repr__(self):
        return f"MatrixGroup({self.degree})"

    def element(self, m) -> MatrixElement:
        m = m if isinstance(m, IntMatrix) else IntMatrix(m)
        if m.shape != (self.degree, self.degree):
            raise DimensionMismatch(f"matrix of shape {m.shape} in degree {self.degree} group")
        if not m.is_unimodular:
            raise NotUnimodular(f"matrix {m.tolist()} is not unimodular")
        return MatrixElement(m)

    def identity(self) -> MatrixElement:
        return MatrixElement(IntMatrix.identity(self.degree))


@dataclass(frozen=True)
class SplitElement:
    w: tuple
    k: int
    group: SplitExtension = field(compare=False, repr=False, hash=False)

    def __mul__(self, other):
        return element_compose(self, other)

    def inverse(self):
        return element_invert(self)


@dataclass(frozen=True)
class MatrixElement:
    m: IntMatrix

    def __mul__(self, other):
        return element_compose(self, other)

    def inverse(self):
        return element_invert(self)


GroupElement = SplitElement | MatrixElement


def element_compose(g, h):
    if type(g) is not type(h):
        raise KindMismatch(f"cannot compose {type(g).__name__} with {type(h).__name__}")
    if isinstance(g, SplitElement):
        grp = g.group
        if grp is not h.group:
            if len(g.w) != len(h.w):
                raise DimensionMismatch("split elements of different rank")
            if grp != h.group:
                raise KindMismatch("split elements from different extensions")
        ak = grp.action(g.k)
        w = tuple(a + sum(x * y for x, y in zip(row, h.w)) for a, row in zip(g.w, ak.rows))
        return SplitElement(w, g.k + h.k, grp)
    if g.m.shape != h.m.shape:
        raise DimensionMismatch(f"matrices of shape {g.m.shape} and {h.m.shape}")
    return MatrixElement(g.m @ h.m)


def element_invert(g):
    if isinstance(g, SplitElement):
        # (w, k)^-1 = (-A^-k w, -k)
        w = g.group.action(-g.k).apply(g.w)
        return SplitElement(tuple(-x for x in w), -g.k, g.group)
    return MatrixElement(g.m.inverse())


def element_power(g, n: int):
    base = g if n >= 0 else element_invert(g)
    n = abs(n)
    result = identity_like(g)
    while n:
        if n & 1:
            result = element_compose(result, base)
        n >>= 1
        if n:
            base = element_compose(base, base)
    return result


def identity_like(g):
    if isinstance(g, SplitElement):
        return g.group.identity()
    return MatrixElement(IntMatrix.identity(g.m.nrows))


def is_identity(g) -> bool:
    return g == identity_like(g)


def commutator(g, h):
    """``[g, h] = g h g^-1 h^-1``."""
    return element_compose(
        element_compose(g, h), element_compose(element_invert(g), element_invert(h))
    )


def _int_bytes(x: int) -> bytes:
    mag = abs(x)
    body = mag.to_bytes((mag.bit_length() + 7) // 8, "big")
    sign = b"\x00" if x == 0 else (b"\x01" if x > 0 else b"\x02")
    return sign + len(body).to_bytes(4, "big") + body


def canonical_encode(g) -> bytes:
    """Injective byte encoding: kind tag, dimensions, then each integer."""
    if isinstance(g, SplitElement):
        parts = [b"S", _int_bytes(len(g.w))]
        parts.extend(_int_bytes(x) for x in g.w)
        parts.append(_int_bytes(g.k))
    else:
        parts = [b"M", _int_bytes(g.m.nrows), _int_bytes(g.m.ncols)]
        parts.extend(_int_bytes(x) for row in g.m.rows for x in row)
    return b"".join(parts)


# ---------------------------------------------------------------------------
# generating sets and specs


class GeneratingSet:
    """Labeled group elements; inverses are implicit.

    ``definitions`` optionally records each generator as a word over a parent
    generating set, so words here can be expanded back into parent letters.
    """

    def __init__(self, labels: Sequence[str], elements: Sequence, definitions=None, parent=None):
        labels = tuple(labels)
        if not labels:
            raise ValidationError("generating set must be nonempty")
        for l in labels:
            if not LABEL_RE.match(l):
                raise ValidationError(f"invalid generator label {l!r}")
        if len(set(labels)) != len(labels):
            raise ValidationError(f"duplicate generator labels in {labels}")
        if len(elements) != len(labels):
            raise ValidationError("labels and elements differ in length")
        self.labels = labels
        self.elements = tuple(elements)
        self.definitions = tuple(definitions) if definitions is not None else None
        self.parent = parent
        self._table = dict(zip(labels, self.elements))
        self._inverses = {}

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"GeneratingSet({list(self.labels)})"

    def items(self):
        return zip(self.labels, self.elements)

    def element(self, label: str, exponent: int = 1):
        try:
            g = self._table[label]
        except KeyError:
            raise UnknownLabel(f"unknown generator label {label!r}") from None
        if exponent == 1:
            return g
        if exponent == -1:
            inv = self._inverses.get(label)
            if inv is None:
                inv = self._inverses[label] = element_invert(g)
            return inv
        return element_power(g, exponent)

    def identity(self):
        return identity_like(self.elements[0])

    def evaluate(self, word) -> object:
        word = as_word(word)
        result = self.identity()
        for label, e in word:
            result = element_compose(result, self.element(label, e))
        return result

    def symmetric(self) -> list:
        """``S u S^-1`` as ``(letter, element)`` pairs, generator order."""
        out = []
        for l in self.labels:
            out.append(((l, 1), self.element(l, 1)))
            out.append(((l, -1), self.element(l, -1)))
        return out

    def expand(self, word) -> Word:
        """Rewrite a word in these labels as a word over the parent labels."""
        word = as_word(word)
        if self.definitions is None:
            return word
        defs = dict(zip(self.labels, self.definitions))
        out = Word()
        for label, e in word:
            if label not in defs:
                raise UnknownLabel(f"unknown generator label {label!r}")
            d = defs[label]
            out = out + (d if e == 1 else d.inverse())
        return out

    def permuted(self, order: Sequence[int]) -> GeneratingSet:
        defs = None if self.definitions is None else [self.definitions[i] for i in order]
        return GeneratingSet(
            [self.labels[i] for i in order], [self.elements[i] for i in order], defs, self.parent
        )


class GroupSpec:
    """A group model together with its labeled generators."""

    def __init__(self, group, generators: GeneratingSet):
        self.group = group
        self.generators = generators

    @property
    def kind(self) -> str:
        return self.group.kind

    @property
    def matrix(self) -> IntMatrix:
        if self.kind != "split_extension":
            raise KindMismatch("only split extensions carry an action matrix")
        return self.group.matrix

    @property
    def rank(self) -> int:
        return self.group.rank

    def __repr__(self):
        return f"GroupSpec({self.group!r}, {list(self.generators.labels)})"

    def __eq__(self, other):
        return (
            isinstance(other, GroupSpec)
            and self.group == other.group
            and self.generators.labels == other.generators.labels
            and self.generators.elements == other.generators.elements
        )

    @classmethod
    def split_extension(cls, matrix, generators: Mapping | None = None) -> GroupSpec:
        """Split extension spec; default generators are ``t, e1..er``.

        ``generators`` maps labels to elements, to ``(vector, k)`` pairs, or to
        words over the standard labels.
        """
        a = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
        if not a.is_square:
            raise ValidationError(f"action matrix of shape {a.shape} is not square")
        if not a.is_unimodular:
            raise ValidationError(f"action matrix has determinant {a.det()}, not +1 or -1")
        grp = SplitExtension(a)
        std = standard_generating_set(grp)
        if generators is None:
            return cls(grp, std)
        labels, elements, defs = [], [], []
        any_words = False
        for label, g in generators.items():
            labels.append(label)
            if isinstance(g, (str, Word)):
                w = as_word(g)
                elements.append(std.evaluate(w))
                defs.append(w)
                any_words = True
            elif isinstance(g, SplitElement):
                elements.append(g)
                defs.append(None)
            else:
                vec, k = g
                elements.append(grp.element(vec, k))
                defs.append(None)
        if any_words and all(d is not None for d in defs):
            return cls(grp, GeneratingSet(labels, elements, defs, std))
        return cls(grp, GeneratingSet(labels, elements))

    @classmethod
    def matrix_group(cls, generators: Mapping) -> GroupSpec:
        mats = {l: (m if isinstance(m, IntMatrix) else IntMatrix(m)) for l, m in generators.items()}
        if not mats:
            raise ValidationError("matrix group needs at least one generator")
        degrees = {m.nrows for m in mats.values()}
        for l, m in mats.items():
            if not m.is_square:
                raise ValidationError(f"generator {l} is not square")
            if not m.is_unimodular:
                raise ValidationError(f"generator {l} has determinant {m.det()}, not +1 or -1")
        if len(degrees) != 1:
            raise ValidationError("generators have different degrees")
        grp = MatrixGroup(degrees.pop())
        return cls(grp, GeneratingSet(list(mats), [MatrixElement(m) for m in mats.values()]))

    def with_words(self, words: Mapping[str, object]) -> GeneratingSet:
        """A new generating set whose members are words over this spec's generators."""
        labels = list(words)
        defs = [as_word(w) for w in words.values()]
        return GeneratingSet(labels, [self.generators.evaluate(d) for d in defs], defs, self.generators)


def standard_generating_set(grp: SplitExtension) -> GeneratingSet:
    labels = ["t"] + [f"e{i + 1}" for i in range(grp.rank)]
    elements = [grp.t()] + [grp.basis_vector(i) for i in range(grp.rank)]
    return GeneratingSet(labels, elements)


def evaluate_word(spec, word):
    """Left-to-right product of the letters of ``word``; empty word gives identity."""
    gens = spec.generators if isinstance(spec, GroupSpec) else spec
    return gens.evaluate(word)


def finite_index_generators(spec, table: Mapping[str, Sequence[int]]) -> GeneratingSet:
    """Schreier generators of the stabilizer of symbol 0 under a coset action.

    ``table`` maps every generator label to its permutation of ``0..d-1``
    (``table[s][i]`` is the image of ``i`` under right multiplication by
    ``s``).  Transversal words come from breadth-first search, so they have
    length at most ``d - 1`` and every output word has length at most
    ``2d - 1``.
    """
    gens = spec.generators if isinstance(spec, GroupSpec) else spec
    perms = {}
    d = None
    for label in gens.labels:
        if label not in table:
            raise InvalidTable(f"no permutation for generator {label!r}")
        p = tuple(int(x) for x in table[label])
        if d is None:
            d = len(p)
        if len(p) != d or sorted(p) != list(range(d)):
            raise InvalidTable(f"image of {label!r} is not a permutation of 0..{d - 1}")
        perms[label] = p
    extra = set(table) - set(gens.labels)
    if extra:
        raise InvalidTable(f"table mentions unknown labels {sorted(extra)}")
    inv = {l: tuple(p.index(i) for i in range(d)) for l, p in perms.items()}

    reps = {0: Word()}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for label in gens.labels:
            for e, p in ((1, perms[label]), (-1, inv[label])):
                j = p[i]
                if j not in reps:
                    reps[j] = reps[i] + Word([(label, e)])
                    queue.append(j)
    if len(reps) != d:
        raise NotTransitive(f"coset action reaches {len(reps)} of {d} symbols")

    words = []
    seen = set()
    for i in range(d):
        for label in gens.labels:
            w = (reps[i] + Word([(label, 1)]) + reps[perms[label][i]].inverse()).reduced()
            if w and w not in seen:
                seen.add(w)
                words.append(w)
    if not words:
        # trivial subgroup data; keep the generating set nonempty
        words.append(Word())
    labels = [f"k{i + 1}" for i in range(len(words))]
    return GeneratingSet(labels, [gens.evaluate(w) for w in words], words, gens)
