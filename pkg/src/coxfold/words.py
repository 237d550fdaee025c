"""The word problem for a Coxeter system, solved geometrically.

Every group element is represented by the matrix of its action on the span
of the simple roots (columns = images of simple roots, coordinates exact
CycloReal scalars), together with the inverse action.  Descent queries are
then sign tests: s is a left descent of w exactly when w^-1(alpha_s) is a
negative root, and right descents read off the action itself.

The stored word of an Element is canonical: the ShortLex-least reduced
word, extracted by repeatedly peeling the smallest left descent.  Equality
of elements is equality of canonical words.

Root vectors are plain tuples of CycloReal in simple-root coordinates; a
root is positive or negative according to the common sign of its nonzero
coordinates.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .coxeter import CoxeterMatrix, classify_finite, validate
from .cyclo import ArithContext, CycloReal, make_context

# safety valve for normal-form extraction; far beyond desk scale
_MAX_EXTRACT_STEPS = 100_000


def root_sign(coords: Sequence[CycloReal]) -> int:
    """+1 for a positive root, -1 for a negative one.

    Roots have all coordinates of one sign, so the first nonzero
    coordinate decides.
    """
    for c in coords:
        s = c.sign()
        if s:
            return s
    raise ValueError("zero vector is not a root")


def is_positive_root(coords: Sequence[CycloReal]) -> bool:
    return root_sign(coords) > 0


class CoxeterGroup:
    """A Coxeter system (W, S) with an exact word-problem engine.

    Generators are the integers 1..rank.  Elements are constructed with
    :meth:`reduce` (from an arbitrary word) and combined with ``*`` and
    ``~``; they are immutable and hashable.
    """

    def __init__(self, matrix: CoxeterMatrix, rank_cap: int = 16,
                 degree_cap: int = 64):
        # rank 0 is legal here: it is the folded matrix of an empty
        # generator set (the trivial group).  User input enforces rank >= 1.
        errs = validate(matrix, rank_cap=rank_cap)
        if matrix.rank == 0:
            errs = [e for e in errs if not e.startswith("rank")]
        if errs:
            raise ValueError("invalid Coxeter matrix: " + "; ".join(errs))
        self.matrix = matrix
        self.rank = matrix.rank
        self.ctx: ArithContext = make_context(matrix, degree_cap=degree_cap)
        zero = self.ctx.zero
        one = self.ctx.one
        n = self.rank
        self._coeff = [[zero] * (n + 1) for _ in range(n + 1)]
        self._nbrs: list[tuple[int, ...]] = [()] * (n + 1)
        for s in range(1, n + 1):
            nbrs = []
            for t in range(1, n + 1):
                if t != s and matrix.m(s, t) != 2:
                    self._coeff[s][t] = self.ctx.two_cos_pi_over(matrix.m(s, t))
                    nbrs.append(t)
            self._nbrs[s] = tuple(nbrs)
        unit = []
        for j in range(n):
            col = [zero] * n
            col[j] = one
            unit.append(tuple(col))
        self._unit_cols = tuple(unit)
        self._identity = Element(self, (), self._unit_cols, self._unit_cols)
        self._simples = {
            s: self._element_from_word_trusted((s,)) for s in self.generators()
        }

    def generators(self) -> range:
        return range(1, self.rank + 1)

    def __repr__(self):
        return f"CoxeterGroup(rank={self.rank}, N={self.ctx.N})"

    def __eq__(self, other):
        return isinstance(other, CoxeterGroup) and other.matrix == self.matrix

    def __hash__(self):
        return hash(self.matrix.entries)

    # -- root-level action ---------------------------------------------------

    def simple_root(self, s: int) -> tuple[CycloReal, ...]:
        return self._unit_cols[s - 1]

    def reflect(self, s: int, coords: Sequence[CycloReal]) -> tuple[CycloReal, ...]:
        """Apply the simple reflection s to a vector in root coordinates."""
        acc = -coords[s - 1]
        for t in self._nbrs[s]:
            ct = coords[t - 1]
            if not ct.is_zero():
                acc = acc + self._coeff[s][t] * ct
        out = list(coords)
        out[s - 1] = acc
        return tuple(out)

    # -- raw action pairs (cols, inv_cols) ------------------------------------

    def _left_mul_cols(self, cols, s):
        return tuple(self.reflect(s, col) for col in cols)

    def _right_mul_cols(self, cols, s):
        old = cols[s - 1]
        out = list(cols)
        out[s - 1] = tuple(-c for c in old)
        for t in self._nbrs[s]:
            coeff = self._coeff[s][t]
            out[t - 1] = tuple(
                a + coeff * b for a, b in zip(cols[t - 1], old)
            )
        return tuple(out)

    def _apply_cols(self, cols, coords):
        acc = None
        for t, ct in enumerate(coords):
            if ct.is_zero():
                continue
            contrib = tuple(ct * x for x in cols[t])
            acc = contrib if acc is None else tuple(
                a + b for a, b in zip(acc, contrib)
            )
        if acc is None:
            return tuple([self.ctx.zero] * self.rank)
        return acc

    def _compose_cols(self, outer, inner):
        return tuple(self._apply_cols(outer, col) for col in inner)

    def _min_left_descent(self, inv_cols):
        """Smallest s with w^-1(alpha_s) negative, or None for the identity."""
        for s in self.generators():
            if root_sign(inv_cols[s - 1]) < 0:
                return s
        return None

    def _extract_word(self, cols, inv_cols) -> tuple[int, ...]:
        """Canonical word from an action pair by peeling smallest descents."""
        letters = []
        for _ in range(_MAX_EXTRACT_STEPS):
            s = self._min_left_descent(inv_cols)
            if s is None:
                assert cols == self._unit_cols, "residual action is not identity"
                return tuple(letters)
            letters.append(s)
            cols = self._left_mul_cols(cols, s)
            inv_cols = self._right_mul_cols(inv_cols, s)
        raise RuntimeError("normal-form extraction did not terminate")

    def _element_from_cols(self, cols, inv_cols) -> "Element":
        return Element(self, self._extract_word(cols, inv_cols), cols, inv_cols)

    def _element_from_word_trusted(self, word) -> "Element":
        cols, inv_cols = self._unit_cols, self._unit_cols
        for s in word:
            cols = self._right_mul_cols(cols, s)
            inv_cols = self._left_mul_cols(inv_cols, s)
        return self._element_from_cols(cols, inv_cols)

    # -- public element constructors ------------------------------------------

    @property
    def identity(self) -> "Element":
        return self._identity

    def simple(self, s: int) -> "Element":
        return self._simples[s]

    def reduce(self, word: Iterable[int]) -> "Element":
        """Element of an arbitrary word; its stored word is the ShortLex
        normal form, so this also computes lengths and canonical forms."""
        word = tuple(word)
        for s in word:
            if not (isinstance(s, int) and 1 <= s <= self.rank):
                raise ValueError(f"letter {s!r} out of range 1..{self.rank}")
        elt = self._element_from_word_trusted(word)
        assert (len(word) - elt.length) % 2 == 0, "length parity broken"
        return elt

    def multiply(self, a: "Element", b: "Element") -> "Element":
        if a.group.matrix != self.matrix or b.group.matrix != self.matrix:
            raise ValueError("elements belong to a different Coxeter matrix")
        cols = self._compose_cols(a.cols, b.cols)
        inv_cols = self._compose_cols(b.inv_cols, a.inv_cols)
        out = self._element_from_cols(cols, inv_cols)
        assert out.length <= a.length + b.length
        assert (out.length - a.length - b.length) % 2 == 0
        return out

    def inverse(self, a: "Element") -> "Element":
        return self._element_from_cols(a.inv_cols, a.cols)

    # -- descents --------------------------------------------------------------

    def is_left_descent(self, s: int, w: "Element") -> bool:
        """True exactly when l(s*w) < l(w)."""
        return root_sign(w.inv_cols[s - 1]) < 0

    def is_right_descent(self, s: int, w: "Element") -> bool:
        return root_sign(w.cols[s - 1]) < 0

    def left_descents(self, w: "Element") -> tuple[int, ...]:
        return tuple(s for s in self.generators() if self.is_left_descent(s, w))

    def right_descents(self, w: "Element") -> tuple[int, ...]:
        return tuple(s for s in self.generators() if self.is_right_descent(s, w))

    # -- parabolic machinery -----------------------------------------------------

    def positive_roots(self, subset=None) -> set:
        """All positive roots of the standard parabolic W_I (finite I only)."""
        if subset is None:
            subset = self.generators()
        subset = sorted(set(subset))
        if classify_finite(self.matrix, subset) is None:
            raise ValueError("parabolic subgroup is infinite")
        roots = {self.simple_root(s) for s in subset}
        frontier = list(roots)
        while frontier:
            nxt = []
            for r in frontier:
                for s in subset:
                    img = self.reflect(s, r)
                    if is_positive_root(img) and img not in roots:
                        roots.add(img)
                        nxt.append(img)
            frontier = nxt
        return roots

    def longest_element(self, subset) -> "Element":
        """Longest element of a finite standard parabolic, built greedily:
        keep left-multiplying by the smallest generator in I that does not
        yet descend.  Verifies it is an involution of the expected length."""
        subset = sorted(set(subset))
        for s in subset:
            if not 1 <= s <= self.rank:
                raise ValueError(f"generator index {s} out of range")
        if classify_finite(self.matrix, subset) is None:
            raise ValueError("parabolic subgroup is infinite; no longest element")
        w = self.identity
        while True:
            for s in subset:
                if not self.is_left_descent(s, w):
                    w = self.multiply(self.simple(s), w)
                    break
            else:
                break
        assert self.multiply(w, w) == self.identity, "longest element not an involution"
        assert w.length == len(self.positive_roots(subset)), \
            "longest element has wrong length"
        return w

    def coset_decompose(self, w: "Element", subset) -> tuple["Element", "Element"]:
        """Write w = u * x with u in W_I, x a minimal coset representative
        (no left descent of x lies in I), and l(w) = l(u) + l(x)."""
        subset = sorted(set(subset))
        letters = []
        x = w
        while True:
            for s in subset:
                if self.is_left_descent(s, x):
                    letters.append(s)
                    x = self.multiply(self.simple(s), x)
                    break
            else:
                break
        u = self.reduce(letters)
        assert u.length + x.length == w.length, "coset lengths must add"
        return u, x

    def exchange(self, word: Sequence[int], s: int) -> int:
        """Exchange property: for reduced `word` and a left descent s of it,
        the smallest 1-based index whose removal yields s * word."""
        word = tuple(word)
        w = self.reduce(word)
        if w.length != len(word):
            raise ValueError("word is not reduced")
        if not self.is_left_descent(s, w):
            raise ValueError("not a descent")
        target = self.multiply(self.simple(s), w)
        for i in range(len(word)):
            if self.reduce(word[:i] + word[i + 1:]) == target:
                return i + 1
        raise RuntimeError("exchange failed on a reduced word; engine bug")


class Element:
    """Group element: canonical reduced word plus its exact root action."""

    __slots__ = ("group", "word", "cols", "inv_cols", "_hash")

    def __init__(self, group: CoxeterGroup, word: tuple[int, ...], cols, inv_cols):
        self.group = group
        self.word = word
        self.cols = cols          # cols[j] = image of alpha_{j+1} under w
        self.inv_cols = inv_cols  # images under w^-1
        self._hash = None

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def __mul__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.group.multiply(self, other)

    def __invert__(self):
        return self.group.inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.word == other.word and self.group.matrix == other.group.matrix

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.word)
        return h

    def __repr__(self):
        return f"Element({' '.join(map(str, self.word)) or 'e'})"

    def __str__(self):
        return " ".join(map(str, self.word)) if self.word else "e"

    def inversion_count(self) -> int:
        """Number of positive roots of W sent negative (finite W only).

        Independent of the stored word; used to cross-check lengths.
        """
        count = 0
        for r in self.group.positive_roots():
            if not is_positive_root(self.group._apply_cols(self.cols, r)):
                count += 1
        return count


def word_str(word: Sequence[int]) -> str:
    return " ".join(map(str, word)) if word else "e"


def parse_word(text: str, rank: int) -> tuple[int, ...]:
    """Parse space-separated 1-based generator indices; '' is the identity."""
    text = text.strip()
    if not text:
        return ()
    letters = []
    for tok in text.split():
        try:
            v = int(tok)
        except ValueError:
            raise ValueError(f"bad word letter {tok!r}") from None
        if not 1 <= v <= rank:
            raise ValueError(f"word letter {v} out of range 1..{rank}")
        letters.append(v)
    return tuple(letters)
