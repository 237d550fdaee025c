"""Folding a Coxeter system along diagram automorphisms.

Given matrix-preserving permutations of the generators, the fixed subgroup
is generated by the longest elements w_I of the finite-parabolic orbits I.
This module computes those generators, factorizes fixed elements over
them, derives the folded Coxeter matrix from dihedral orbit pairs, and
checks the exchange condition at the folded level.

Every structural fact used along the way (orbits of descents are full
descent sets, coset components are longest elements, folded labels are
integral, dropped blocks reproduce products) is asserted at runtime; a
failure raises InvariantViolation carrying a replayable witness instead
of returning a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coxeter import CoxeterMatrix, classify_finite, components, type_string
from .cyclo import INF
from .words import CoxeterGroup, Element


class InvariantViolation(RuntimeError):
    """A structural invariant of the folding construction failed.

    Carries a witness: enough data (matrix, automorphisms, offending
    words) to replay the failure in isolation.
    """

    def __init__(self, check: str, message: str, witness: dict):
        self.check = check
        self.witness = dict(witness)
        self.witness.setdefault("check", check)
        super().__init__(f"{check}: {message}")


@dataclass(frozen=True)
class Automorphism:
    """A permutation of the generators; images[i-1] = image of generator i."""

    images: tuple[int, ...]

    def __call__(self, s: int) -> int:
        return self.images[s - 1]

    @property
    def rank(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(self(s) == s for s in range(1, self.rank + 1))

    def apply_word(self, word: Sequence[int]) -> tuple[int, ...]:
        return tuple(self(s) for s in word)

    def apply_element(self, w: Element) -> Element:
        out = w.group.reduce(self.apply_word(w.word))
        assert out.length == w.length, "automorphism must preserve length"
        return out

    @staticmethod
    def identity_of(rank: int) -> "Automorphism":
        return Automorphism(tuple(range(1, rank + 1)))

    def __str__(self):
        moved = [f"{s}>{self(s)}" for s in range(1, self.rank + 1) if self(s) != s]
        return " ".join(moved) if moved else "id"


def validate_automorphism(matrix: CoxeterMatrix, images: Sequence[int]) -> list[str]:
    """Bijectivity and label preservation; violations carry a witness pair."""
    images = tuple(images)
    errors = []
    n = matrix.rank
    if sorted(images) != list(range(1, n + 1)):
        errors.append(f"not a permutation of 1..{n}: {images}")
        return errors
    gamma = Automorphism(images)
    for s in range(1, n + 1):
        for t in range(s + 1, n + 1):
            if matrix.m(gamma(s), gamma(t)) != matrix.m(s, t):
                errors.append(
                    f"label mismatch at witness pair ({s},{t}): "
                    f"m({gamma(s)},{gamma(t)}) = {matrix.m(gamma(s), gamma(t))} "
                    f"!= m({s},{t}) = {matrix.m(s, t)}"
                )
    return errors


def orbits(matrix: CoxeterMatrix, autos: Sequence[Automorphism]) -> tuple[frozenset, ...]:
    """Orbits of the generated permutation group, via union-find closure
    over the generators.  Sorted by smallest member."""
    parent = list(range(matrix.rank + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        for s in range(1, matrix.rank + 1):
            a, b = find(s), find(gamma(s))
            if a != b:
                parent[max(a, b)] = min(a, b)
    buckets: dict[int, set] = {}
    for s in range(1, matrix.rank + 1):
        buckets.setdefault(find(s), set()).add(s)
    return tuple(
        frozenset(buckets[r]) for r in sorted(buckets)
    )


def conjugate_action(gamma: Automorphism, cols):
    """Action matrix of gamma(w) from that of w.

    gamma preserves the Coxeter matrix, so it permutes the simple roots and
    conjugates the reflection action: entry (i, j) moves to (gamma i,
    gamma j).  Agrees with mapping the word letterwise and reducing, at a
    fraction of the cost.
    """
    n = len(cols)
    out = [None] * n
    for j in range(n):
        src = cols[j]
        permuted = [None] * n
        for i in range(n):
            permuted[gamma(i + 1) - 1] = src[i]
        out[gamma(j + 1) - 1] = tuple(permuted)
    return tuple(out)


def is_fixed(w: Element, autos: Sequence[Automorphism]) -> bool:
    """Fixed by every generator; that suffices for the generated group."""
    return all(conjugate_action(gamma, w.cols) == w.cols for gamma in autos)


def _orbit_str(orbit) -> str:
    return "{" + ",".join(map(str, sorted(orbit))) + "}"


@dataclass(frozen=True)
class DihedralDetail:
    """Derivation record for one folded matrix entry."""

    orbit_a: frozenset
    orbit_b: frozenset
    label: float            # folded m, INF allowed
    longest_length: int | None  # l(w_K) when K spans a finite parabolic
    weight_a: int
    weight_b: int


@dataclass
class FoldedSystem:
    """Folded generators and matrix of one (matrix, automorphisms) input."""

    group: CoxeterGroup
    autos: tuple[Automorphism, ...]
    orbit_partition: tuple[frozenset, ...]
    bar_s: tuple[frozenset, ...]          # finite-parabolic orbits, by min member
    dropped: tuple[frozenset, ...]        # infinite-parabolic orbits
    longest: dict[frozenset, Element]
    weight: dict[frozenset, int]
    folded_matrix: CoxeterMatrix
    details: tuple[DihedralDetail, ...]
    _orbit_of: dict[int, frozenset] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for orbit in self.orbit_partition:
            for s in orbit:
                self._orbit_of[s] = orbit

    # -- structure -----------------------------------------------------------

    def orbit_of(self, s: int) -> frozenset:
        return self._orbit_of[s]

    def generator_index(self, orbit: frozenset) -> int:
        """1-based index of a folded generator in the folded matrix."""
        return self.bar_s.index(orbit) + 1

    def is_fixed(self, w: Element) -> bool:
        return is_fixed(w, self.autos)

    def product_of(self, orbit_word: Sequence[frozenset]) -> Element:
        out = self.group.identity
        for orbit in orbit_word:
            out = out * self.longest[orbit]
        return out

    def _witness(self, **extra) -> dict:
        base = {
            "matrix": str(self.group.matrix).split("\n"),
            "automorphisms": [list(g.images) for g in self.autos],
        }
        base.update(extra)
        return base

    # -- factorization over the folded generators ------------------------------

    def _factorize_pair(self, cols, inv_cols, choose=None, source=None):
        """Factorize the element with action pair (cols, inv_cols).

        Peels one descent orbit at a time: all letters of the orbit must
        descend, and greedily stripping them must remove exactly the weight
        of the orbit (the longest element is the unique maximal-length
        element of a finite parabolic, so the count equality pins it).
        Returns (orbit sequence, letters stripped); the letter total is the
        length of the element.  Works letter by letter on the raw action,
        no normal-form extraction anywhere.
        """
        from .words import root_sign

        group = self.group
        seq: list[frozenset] = []
        letters = 0
        while True:
            descents = [s for s in group.generators()
                        if root_sign(inv_cols[s - 1]) < 0]
            if not descents:
                break
            s = choose(descents) if choose is not None else descents[0]
            orbit = self.orbit_of(s)
            for t in sorted(orbit):
                if root_sign(inv_cols[t - 1]) >= 0:
                    raise InvariantViolation(
                        "factorize", "orbit of a descent is not all-descending",
                        self._witness(source=source, descent=s,
                                      orbit=sorted(orbit), non_descent=t,
                                      peeled=[sorted(J) for J in seq]),
                    )
            if orbit not in self.longest:
                raise InvariantViolation(
                    "factorize", "descent orbit spans an infinite parabolic",
                    self._witness(source=source, orbit=sorted(orbit)),
                )
            count = 0
            stripping = True
            while stripping:
                stripping = False
                for t in sorted(orbit):
                    if root_sign(inv_cols[t - 1]) < 0:
                        cols = group._left_mul_cols(cols, t)
                        inv_cols = group._right_mul_cols(inv_cols, t)
                        count += 1
                        stripping = True
                        break
            if count != self.weight[orbit]:
                raise InvariantViolation(
                    "factorize", "parabolic component is not the longest element",
                    self._witness(source=source, orbit=sorted(orbit),
                                  stripped=count, weight=self.weight[orbit]),
                )
            seq.append(orbit)
            letters += count
        if cols != group._unit_cols:
            raise InvariantViolation(
                "factorize", "residual action is not the identity",
                self._witness(source=source,
                              factors=[sorted(J) for J in seq]),
            )
        return seq, letters

    def greedy_factorize(
        self, w: Element, choose: Callable[[list[int]], int] | None = None,
    ) -> list[frozenset]:
        """Peel w into folded generators: take a left descent s (smallest by
        default, or per `choose`), strip the full parabolic component of its
        orbit, recurse.  The factor weights sum to l(w) and the factors
        multiply back to w; violations raise with a counterexample.
        """
        if not self.is_fixed(w):
            raise ValueError("element is not fixed by the automorphism group")
        seq, letters = self._factorize_pair(
            w.cols, w.inv_cols, choose=choose, source=list(w.word)
        )
        if letters != w.length:
            raise InvariantViolation(
                "factorize", "factor weights do not sum to the length",
                self._witness(word=list(w.word),
                              factors=[sorted(J) for J in seq]),
            )
        return seq

    def lambda_length(self, w: Element) -> int:
        """Word length of a fixed element over the folded generators."""
        return len(self.greedy_factorize(w))

    def _product_pair(self, orbit_word: Sequence[frozenset]):
        group = self.group
        cols, inv_cols = group._unit_cols, group._unit_cols
        for J in orbit_word:
            wj = self.longest[J]
            cols = group._compose_cols(cols, wj.cols)
            inv_cols = group._compose_cols(wj.inv_cols, inv_cols)
        return cols, inv_cols

    def factorize_product(self, orbit_word: Sequence[frozenset]):
        """(greedy factor sequence, length) of a product of folded
        generators, computed without materializing the product."""
        cols, inv_cols = self._product_pair(orbit_word)
        return self._factorize_pair(
            cols, inv_cols, source=[sorted(J) for J in orbit_word]
        )

    def lambda_of_product(self, a: Element, b: Element) -> int:
        group = self.group
        cols = group._compose_cols(a.cols, b.cols)
        inv_cols = group._compose_cols(b.inv_cols, a.inv_cols)
        seq, _ = self._factorize_pair(cols, inv_cols)
        return len(seq)

    # -- folded-level predicates ------------------------------------------------

    def weight_additivity(self, w: Element, wp: Element,
                          lam_w: int | None = None,
                          lam_wp: int | None = None) -> tuple[bool, bool]:
        """(lengths add, folded lengths add) for a pair of fixed elements."""
        if not (self.is_fixed(w) and self.is_fixed(wp)):
            raise ValueError("both elements must be fixed")
        group = self.group
        cols = group._compose_cols(w.cols, wp.cols)
        inv_cols = group._compose_cols(wp.inv_cols, w.inv_cols)
        seq, letters = self._factorize_pair(cols, inv_cols)
        if lam_w is None:
            lam_w = self.lambda_length(w)
        if lam_wp is None:
            lam_wp = self.lambda_length(wp)
        l_add = letters == w.length + wp.length
        lam_add = len(seq) == lam_w + lam_wp
        return l_add, lam_add

    def folded_exchange(self, orbit_word: Sequence[frozenset], orbit: frozenset) -> int:
        """Folded exchange property.

        For a minimal orbit word [J_1..J_p] of w and a folded generator w_I
        with lambda(w_I * w) <= lambda(w), returns an index i such that
        dropping block i yields w_I * w.  The block is located through the
        plain exchange property inside the concatenated reduced word, and
        both the prefix conjugation z^-1 w_I z = w_{J_i} and the dropped
        product are verified exactly.
        """
        orbit_word = list(orbit_word)
        for J in orbit_word + [orbit]:
            if J not in self.longest:
                raise ValueError(f"{_orbit_str(J)} is not a folded generator")
        group = self.group
        w = self.product_of(orbit_word)
        p = len(orbit_word)
        if self.lambda_length(w) != p:
            raise ValueError("orbit word is not minimal for its product")
        w_i = self.longest[orbit]
        if self.lambda_of_product(w_i, w) > p:
            raise ValueError("not a folded descent")

        descent_letters = [t for t in sorted(orbit) if group.is_left_descent(t, w)]
        if not descent_letters:
            raise InvariantViolation(
                "folded-exchange", "folded descent without a letter descent",
                self._witness(orbit=sorted(orbit), word=list(w.word)),
            )
        s = descent_letters[0]

        blocks = [self.longest[J] for J in orbit_word]
        concat: tuple[int, ...] = ()
        for b in blocks:
            concat += b.word
        if len(concat) != w.length:
            raise InvariantViolation(
                "folded-exchange", "concatenated minimal word is not reduced",
                self._witness(word=list(w.word),
                              factors=[sorted(J) for J in orbit_word]),
            )
        letter_index = group.exchange(concat, s)  # 1-based

        # locate the block containing the dropped letter
        upto = 0
        block_index = None
        for i, b in enumerate(blocks, start=1):
            if letter_index <= upto + b.length:
                block_index = i
                break
            upto += b.length
        assert block_index is not None

        z = self.product_of(orbit_word[: block_index - 1])
        conj = ~z * w_i * z
        if conj != blocks[block_index - 1]:
            raise InvariantViolation(
                "folded-exchange", "prefix conjugate is not the dropped generator",
                self._witness(orbit=sorted(orbit),
                              factors=[sorted(J) for J in orbit_word],
                              block=block_index, conjugate=list(conj.word)),
            )
        dropped = self.product_of(
            orbit_word[: block_index - 1] + orbit_word[block_index:]
        )
        if dropped != w_i * w:
            raise InvariantViolation(
                "folded-exchange", "dropping the block does not give w_I * w",
                self._witness(orbit=sorted(orbit),
                              factors=[sorted(J) for J in orbit_word],
                              block=block_index),
            )
        return block_index

    # -- presentation ------------------------------------------------------------

    def folded_type(self) -> str:
        return folded_type_string(self.folded_matrix)

    def diagram_order(self) -> tuple[int, ...]:
        """Display permutation of the folded generators (1-based indices).

        Path-shaped folded diagrams are read end to end, oriented so the
        label sequence is lexicographically least (ties: smaller first
        orbit); anything else keeps the by-minimum order.
        """
        n = len(self.bar_s)
        if n <= 1:
            return tuple(range(1, n + 1))
        fm = self.folded_matrix
        comps = components(fm, range(1, n + 1))
        if len(comps) != 1:
            return tuple(range(1, n + 1))
        adj = {
            i: [j for j in fm.generators() if j != i and fm.m(i, j) >= 3]
            for i in fm.generators()
        }
        if any(len(v) > 2 for v in adj.values()):
            return tuple(range(1, n + 1))
        ends = sorted(i for i, v in adj.items() if len(v) == 1)
        if len(ends) != 2:
            return tuple(range(1, n + 1))

        def walk(start):
            path = [start]
            prev = None
            while len(path) < n:
                nxt = [x for x in adj[path[-1]] if x != prev][0]
                prev = path[-1]
                path.append(nxt)
            return path

        def labels(path):
            return [fm.m(path[k], path[k + 1]) for k in range(n - 1)]

        a, b = walk(ends[0]), walk(ends[1])
        la, lb = labels(a), labels(b)
        if la < lb:
            return tuple(a)
        if lb < la:
            return tuple(b)
        return tuple(a if a[0] < b[0] else b)

    def ordered_bar_s(self) -> tuple[frozenset, ...]:
        return tuple(self.bar_s[i - 1] for i in self.diagram_order())

    def ordered_weights(self) -> tuple[int, ...]:
        return tuple(self.weight[J] for J in self.ordered_bar_s())


def folded_type_string(matrix: CoxeterMatrix) -> str:
    """Type of the folded matrix.

    Rank-2 results are described as dihedral groups where the
    classification would say B2 (label 4) or nothing (infinite label);
    labels 3 and >= 5 already classify as A2 and I2(m).
    """
    if matrix.rank == 0:
        return "trivial"
    if matrix.rank == 2:
        m = matrix.m(1, 2)
        if m == INF:
            return "I2(inf)"
        if m == 4:
            return "I2(4)"
    return type_string(matrix)


def _folded_order(system_group: CoxeterGroup, longest, weight, a, b, witness):
    """Folded label of an orbit pair via the longest element of their union,
    cross-checked by iterating the product of the two folded generators."""
    K = a | b
    if classify_finite(system_group.matrix, K) is None:
        return INF, None
    w_k = system_group.longest_element(K)
    total = weight[a] + weight[b]
    if (2 * w_k.length) % total != 0:
        raise InvariantViolation(
            "folded-label", "2*l(w_K) is not a multiple of the weight sum",
            dict(witness, orbits=[sorted(a), sorted(b)],
                 longest_length=w_k.length, weights=[weight[a], weight[b]]),
        )
    m = (2 * w_k.length) // total
    if m < 2:
        raise InvariantViolation(
            "folded-label", f"folded label {m} below 2",
            dict(witness, orbits=[sorted(a), sorted(b)]),
        )
    t = longest[a] * longest[b]
    power = t
    for k in range(1, m):
        if power.is_identity():
            raise InvariantViolation(
                "folded-label", f"product order {k} below folded label {m}",
                dict(witness, orbits=[sorted(a), sorted(b)], label=m),
            )
        power = power * t
    if not power.is_identity():
        raise InvariantViolation(
            "folded-label", f"product order exceeds folded label {m}",
            dict(witness, orbits=[sorted(a), sorted(b)], label=m),
        )
    return m, w_k.length


def fold(group: CoxeterGroup, autos: Sequence[Automorphism]) -> FoldedSystem:
    """Build the folded system: orbits, folded generators, folded matrix.

    Orbits spanning infinite parabolics carry no longest element and are
    dropped (recorded, not silently).  The folded matrix is a valid Coxeter
    matrix and can be fed back into every other module.
    """
    autos = tuple(autos)
    if not autos:
        raise ValueError("need at least one automorphism (identity is allowed)")
    witness = {
        "matrix": str(group.matrix).split("\n"),
        "automorphisms": [list(g.images) for g in autos],
    }
    for gamma in autos:
        errs = validate_automorphism(group.matrix, gamma.images)
        if errs:
            raise ValueError(
                "invalid automorphism " + str(gamma) + ": " + "; ".join(errs)
            )

    partition = orbits(group.matrix, autos)
    bar_s = []
    dropped = []
    longest: dict[frozenset, Element] = {}
    weight: dict[frozenset, int] = {}
    for orbit in partition:
        if classify_finite(group.matrix, orbit) is None:
            dropped.append(orbit)
            continue
        w_i = group.longest_element(orbit)
        if not is_fixed(w_i, autos):
            raise InvariantViolation(
                "folded-generator", "longest element of an orbit is not fixed",
                dict(witness, orbit=sorted(orbit), word=list(w_i.word)),
            )
        if not (w_i * w_i).is_identity():
            raise InvariantViolation(
                "folded-generator", "folded generator is not an involution",
                dict(witness, orbit=sorted(orbit), word=list(w_i.word)),
            )
        bar_s.append(orbit)
        longest[orbit] = w_i
        weight[orbit] = w_i.length

    bar_s.sort(key=min)
    n = len(bar_s)
    entries = [[1.0] * n for _ in range(n)]
    details = []
    for i in range(n):
        entries[i][i] = 1
    for i in range(n):
        for j in range(i + 1, n):
            m, lk = _folded_order(group, longest, weight, bar_s[i], bar_s[j], witness)
            entries[i][j] = entries[j][i] = m
            details.append(DihedralDetail(
                orbit_a=bar_s[i], orbit_b=bar_s[j], label=m,
                longest_length=lk,
                weight_a=weight[bar_s[i]], weight_b=weight[bar_s[j]],
            ))
    folded_matrix = CoxeterMatrix(tuple(
        tuple(INF if v == INF else int(v) for v in row) for row in entries
    ))
    return FoldedSystem(
        group=group,
        autos=autos,
        orbit_partition=partition,
        bar_s=tuple(bar_s),
        dropped=tuple(dropped),
        longest=longest,
        weight=weight,
        folded_matrix=folded_matrix,
        details=tuple(details),
    )
