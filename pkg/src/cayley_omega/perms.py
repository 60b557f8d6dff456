"""Permutations as perfect matchings of K_{n,n}, partial and partitioned permutations.

Everything is 1-based.  A permutation of ``[n]`` is stored in one-line
notation: ``images[i - 1]`` is the image of ``i``, i.e. the edge ``i -> pi(i)``
in its diagram.  A partial permutation is a two-line array whose lower row
(``domain``) is sorted and whose upper row (``word``) carries the images.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .poly import Polynomial, make_monomial


class NotContainedError(ValueError):
    """A partial permutation is not a sub-matching of the given permutation."""


class OverlapError(ValueError):
    pass


def _word_inversions(word: Sequence[int]) -> list[tuple[int, int]]:
    n = len(word)
    return [(a + 1, b + 1) for a in range(n) for b in range(a + 1, n) if word[a] > word[b]]


def word_sign(word: Sequence[int]) -> int:
    """Sign of the relative order of a sequence of distinct integers."""
    return -1 if len(_word_inversions(word)) % 2 else 1


def _rank_map(values: Iterable[int]) -> dict[int, int]:
    return {v: r for r, v in enumerate(sorted(values), start=1)}


def rising_factorial(s: int, k: int) -> int:
    """``s (s+1) ... (s+k-1)``; the empty product for ``k == 0``."""
    out = 1
    for t in range(k):
        out *= s + t
    return out


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if not text:
            return cls(())
        try:
            values = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"malformed permutation {text!r}") from None
        return cls(values)

    @classmethod
    def all(cls, n: int) -> list["Permutation"]:
        return [cls(p) for p in itertools.permutations(range(1, n + 1))]

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, v) for i, v in enumerate(self.images, start=1)]

    def __str__(self) -> str:
        return ",".join(map(str, self.images))


def inversions(p: Permutation) -> list[tuple[int, int]]:
    """Pairs ``a < b`` with ``p(a) > p(b)``; these are the crossings of the diagram."""
    return _word_inversions(p.images)


def sign(p: Permutation) -> int:
    return word_sign(p.images)


def weight(p: Permutation) -> Polynomial:
    """Signed monomial ``sgn(p) * prod x[i, p(i)]``."""
    return Polynomial.term(sign(p), make_monomial([(e, 1) for e in p.edges()]))


def remove_edge(p: Permutation, i: int) -> tuple[Permutation, int]:
    """Erase the edge ``i -> p(i)`` and compact both rows to ``[n-1]``.

    Returns ``(p_star, (-1)**(p(i) - i))`` with ``sign(p) == factor * sign(p_star)``.
    """
    if not 1 <= i <= p.n:
        raise IndexError(f"edge index {i} outside 1..{p.n}")
    target = p(i)
    rest = tuple(v - (v > target) for a, v in p.edges() if a != i)
    factor = -1 if (target - i) % 2 else 1
    return Permutation(rest), factor


@dataclass(frozen=True)
class IndexSet:
    """A subset of an ordered ambient set."""

    elements: tuple[int, ...]
    ambient: tuple[int, ...]

    def __post_init__(self):
        ambient = tuple(sorted(set(self.ambient)))
        elements = tuple(sorted(set(self.elements)))
        missing = set(elements) - set(ambient)
        if missing:
            raise ValueError(f"elements {sorted(missing)} not in ambient set {ambient}")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "elements", elements)

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "IndexSet":
        return cls(tuple(elements), tuple(range(1, n + 1)))

    def complement(self) -> tuple[int, ...]:
        own = set(self.elements)
        return tuple(a for a in self.ambient if a not in own)

    def __len__(self) -> int:
        return len(self.elements)


def signsumset(s: IndexSet) -> int:
    """``(-1)`` to the sum of the 1-based positions of ``s.elements`` in ``s.ambient``."""
    pos = {a: r for r, a in enumerate(s.ambient, start=1)}
    return -1 if sum(pos[e] for e in s.elements) % 2 else 1


def eps(elements: Iterable[int], ambient: Iterable[int]) -> int:
    return signsumset(IndexSet(tuple(elements), tuple(ambient)))


@dataclass(frozen=True)
class PartialPermutation:
    """Two-line array: ``domain[l] -> word[l]``, domain sorted ascending."""

    domain: tuple[int, ...]
    word: tuple[int, ...]

    def __post_init__(self):
        domain = tuple(int(d) for d in self.domain)
        word = tuple(int(w) for w in self.word)
        if len(domain) != len(word):
            raise ValueError(f"domain {domain} and word {word} differ in length")
        if any(a >= b for a, b in zip(domain, domain[1:])):
            raise ValueError(f"domain {domain} must be strictly increasing")
        if len(set(word)) != len(word):
            raise ValueError(f"word {word} repeats a letter")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "word", word)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "PartialPermutation":
        pairs = sorted(pairs)
        return cls(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(self.word))

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.domain, self.word))

    def sign(self) -> int:
        return word_sign(self.word)

    def __len__(self) -> int:
        return len(self.domain)

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.word))}|{','.join(map(str, self.domain))}]"

    @classmethod
    def parse(cls, text: str) -> "PartialPermutation":
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")) or text.count("|") != 1:
            raise ValueError(f"malformed partial permutation {text!r}")
        word, domain = text[1:-1].split("|")

        def ints(chunk: str) -> tuple[int, ...]:
            return tuple(int(t) for t in chunk.split(",")) if chunk.strip() else ()

        return cls(ints(domain), ints(word))


@dataclass(frozen=True)
class PartitionScheme:
    """The tuple of upper rows (image words) of a partitioned permutation."""

    words: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        words = tuple(tuple(int(a) for a in w) for w in self.words)
        letters = [a for w in words for a in w]
        if sorted(letters) != list(range(1, len(letters) + 1)):
            raise ValueError(f"words {words} do not partition 1..{len(letters)}")
        object.__setattr__(self, "words", words)

    @property
    def k(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def s(self) -> int:
        return len(self.words)

    def nonempty(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w for w in self.words if w)

    def __str__(self) -> str:
        return "*".join("(" + ",".join(map(str, w)) + ")" for w in self.words)


@dataclass(frozen=True)
class PartitionedPermutation:
    parts: tuple[PartialPermutation, ...]
    k: int

    def __post_init__(self):
        domains = [d for p in self.parts for d in p.domain]
        images = [w for p in self.parts for w in p.word]
        full = list(range(1, self.k + 1))
        if sorted(domains) != full or sorted(images) != full:
            raise ValueError(f"parts do not assemble to a permutation of 1..{self.k}")

    @classmethod
    def parse(cls, text: str) -> "PartitionedPermutation":
        parts = tuple(PartialPermutation.parse(chunk) for chunk in text.split("*"))
        return cls(parts, sum(len(p) for p in parts))

    def permutation(self) -> Permutation:
        images = [0] * self.k
        for part in self.parts:
            for d, w in part.pairs():
                images[d - 1] = w
        return Permutation(tuple(images))

    def domains(self) -> tuple[IndexSet, ...]:
        ambient = tuple(range(1, self.k + 1))
        return tuple(IndexSet(p.domain, ambient) for p in self.parts)

    def __str__(self) -> str:
        return "*".join(map(str, self.parts))


def scheme_of(t: PartitionedPermutation) -> PartitionScheme:
    return PartitionScheme(tuple(p.word for p in t.parts))


def complies(t: PartitionedPermutation, scheme: PartitionScheme) -> bool:
    return scheme_of(t) == scheme


def without(p: Permutation, part: PartialPermutation) -> Permutation:
    """``p`` with the edges of ``part`` erased, relabeled order-preservingly."""
    for d, w in part.pairs():
        if not 1 <= d <= p.n or p(d) != w:
            raise NotContainedError(f"edge {d}->{w} is not in permutation {p}")
    erased = set(part.domain)
    kept = [(a, v) for a, v in p.edges() if a not in erased]
    rank = _rank_map(v for _, v in kept)
    return Permutation(tuple(rank[v] for _, v in kept))


class SignSplit(NamedTuple):
    eps_domain: int
    eps_image: int
    part_sign: int
    rest_sign: int
    rest: Permutation

    @property
    def product(self) -> int:
        return self.eps_domain * self.eps_image * self.part_sign * self.rest_sign


def split_sign(p: Permutation, part: PartialPermutation) -> SignSplit:
    """Factor ``sign(p)`` along the sub-matching ``part``.

    ``sign(p) == eps(I,[n]) * eps(J,[n]) * sign(part) * sign(p minus part)``
    where ``I`` is the domain and ``J`` the image of ``part``.
    """
    rest = without(p, part)
    full = tuple(range(1, p.n + 1))
    return SignSplit(
        eps(part.domain, full),
        eps(part.word, full),
        part.sign(),
        sign(rest),
        rest,
    )


def enumerate_schemes(k: int, s: int) -> list[PartitionScheme]:
    """All ``s``-tuples of words partitioning ``[k]``.

    Ordered by the assignment vector of letters to copies, then by the words'
    orders, both lexicographically.  There are ``rising_factorial(s, k)`` of them.
    """
    if k < 0 or s < 1:
        raise ValueError(f"need k >= 0 and s >= 1, got k={k}, s={s}")
    out = []
    for assignment in itertools.product(range(s), repeat=k):
        blocks = [[a for a, c in zip(range(1, k + 1), assignment) if c == copy] for copy in range(s)]
        for words in itertools.product(*(itertools.permutations(b) for b in blocks)):
            out.append(PartitionScheme(tuple(words)))
    return out


def enumerate_distributions(t: Permutation, s: int) -> list[PartitionedPermutation]:
    """Every way to hand the edges of ``t`` to ``s`` ordered copies (``s**k`` of them)."""
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    out = []
    edges = t.edges()
    for assignment in itertools.product(range(s), repeat=t.n):
        parts = tuple(
            PartialPermutation.from_pairs(e for e, c in zip(edges, assignment) if c == copy)
            for copy in range(s)
        )
        out.append(PartitionedPermutation(parts, t.n))
    return out


def build_sigma(
    scheme: PartitionScheme, domains: Sequence[IndexSet | Iterable[int]]
) -> Permutation:
    """The permutation sending the sorted ``domains[l]`` onto ``scheme.words[l]``."""
    doms = [tuple(sorted(d.elements if isinstance(d, IndexSet) else d)) for d in domains]
    if len(doms) != len(scheme.words):
        raise ValueError(f"{len(doms)} domains for {len(scheme.words)} words")
    for d, w in zip(doms, scheme.words):
        if len(d) != len(w):
            raise ValueError(f"domain {d} and word {w} differ in size")
    k = scheme.k
    if sorted(a for d in doms for a in d) != list(range(1, k + 1)):
        raise ValueError(f"domains {doms} do not partition 1..{k}")
    images = [0] * k
    for d, w in zip(doms, scheme.words):
        for a, b in zip(d, w):
            images[a - 1] = b
    return Permutation(tuple(images))


def merge_words(w1: Sequence[int], w2: Sequence[int]) -> tuple[int, ...]:
    """Interleave two words so that ``w2`` sits where its letters sit in the joint image.

    The joint image ``J = letters(w1) | letters(w2)`` is sorted; ``w2`` occupies
    the positions its letters have in ``J``, ``w1`` fills the rest in order.
    """
    if set(w1) & set(w2):
        raise OverlapError(f"words {tuple(w1)} and {tuple(w2)} share letters")
    joint = sorted(set(w1) | set(w2))
    second = set(w2)
    it1, it2 = iter(w1), iter(w2)
    return tuple(next(it2) if j in second else next(it1) for j in joint)


def canonical_merge(t1: PartialPermutation, t2: PartialPermutation) -> PartialPermutation:
    """Merge two disjoint partial permutations into one on the union of their domains.

    ``t2``'s word is placed on the domain positions that match the positions of
    ``t2``'s image inside the joint image; ``t1``'s word fills the others.  By
    construction ``canonical_merge(t1, t2).sign() == t1.sign() * t2.sign()``.
    """
    if set(t1.domain) & set(t2.domain):
        raise OverlapError(f"domains {t1.domain} and {t2.domain} overlap")
    domain = tuple(sorted(t1.domain + t2.domain))
    return PartialPermutation(domain, merge_words(t1.word, t2.word))
