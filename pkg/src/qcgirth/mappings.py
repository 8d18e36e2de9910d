"""Complete mappings of Z/N: predicates, enumeration, and explicit constructions.

A complete mapping is a permutation p of Z/N with p(0) = 0 whose difference
sequence i -> p(i) - i mod N is itself a permutation.  Rows of a girth-6
shift matrix at lifting factor N = L are exactly such mappings, and a pair
of rows can coexist in a 4-row matrix only when each row is a complete
mapping of the other.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .zmod import Permutation, Residue

DEFAULT_WITNESS_CAP = 10**6


class CensusBudgetError(RuntimeError):
    """Enumeration ran out of node budget; carries the partial census."""

    def __init__(self, partial: MappingCensus):
        super().__init__(
            f"node budget exhausted after {partial.nodes} nodes "
            f"(partial count {partial.count} for modulus {partial.modulus})"
        )
        self.partial = partial


@dataclass(frozen=True)
class CompleteMapping:
    """A permutation fixing 0 whose difference sequence is a permutation."""

    permutation: Permutation

    def __post_init__(self) -> None:
        if not is_complete_mapping(self.permutation):
            raise ValueError(f"{self.permutation.images} is not a complete mapping")

    @property
    def modulus(self) -> int:
        return self.permutation.modulus

    @property
    def images(self) -> tuple[int, ...]:
        return self.permutation.images

    def __call__(self, i: int) -> int:
        return self.permutation(i)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> CompleteMapping:
        return cls(Permutation(tuple(images)))


@dataclass(frozen=True)
class MappingCensus:
    """Exact count of complete mappings of Z/N plus retained witnesses.

    samples holds witnesses in ascending lexicographic order of their image
    sequences; truncated marks that the witness cap cut retention short.
    """

    modulus: int
    count: int
    samples: tuple[CompleteMapping, ...]
    truncated: bool
    nodes: int

    @property
    def exhaustive(self) -> bool:
        return True  # partial censuses only ever travel inside CensusBudgetError


def difference_sequence(p: Permutation) -> tuple[Residue, ...]:
    """The sequence (p(i) - i mod N) for i = 0..N-1."""
    n = p.modulus
    return tuple(Residue(p.images[i] - i, n) for i in range(n))


def is_complete_mapping(p: Permutation) -> bool:
    """True iff p fixes 0 and its difference sequence is a permutation of Z/N."""
    if p.images[0] != 0:
        return False
    n = p.modulus
    return len({(p.images[i] - i) % n for i in range(n)}) == n


def _enumerate_branch(
    n: int, first_image: Optional[int], witness_cap: int, max_nodes: Optional[int]
) -> tuple[int, list[tuple[int, ...]], int, bool]:
    """Backtracking census over images fixed at position 0 (and optionally 1).

    Returns (count, witnesses, nodes, budget_hit).  Images are assigned in
    position order with candidates ascending, so witnesses come out in
    lexicographic order.
    """
    if n == 1:
        return 1, [(0,)], 1, False
    full = (1 << n) - 1
    count = 0
    nodes = 0
    witnesses: list[tuple[int, ...]] = []
    images = [0] * n
    budget_hit = False

    def rec(pos: int, used_images: int, used_diffs: int) -> bool:
        nonlocal count, nodes, budget_hit
        if pos == n:
            count += 1
            if len(witnesses) < witness_cap:
                witnesses.append(tuple(images))
            return True
        avail = full & ~used_images
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            dbit = 1 << ((v - pos) % n)
            if used_diffs & dbit:
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                budget_hit = True
                return False
            images[pos] = v
            if not rec(pos + 1, used_images | bit, used_diffs | dbit):
                return False
        return True

    # position 0 is pinned at image 0 with difference 0
    if first_image is None:
        rec(1, 1, 1)
    else:
        dbit = 1 << ((first_image - 1) % n)
        if first_image != 0 and not (dbit & 1):
            nodes += 1
            images[1] = first_image
            rec(2, 1 | (1 << first_image), 1 | dbit)
    return count, witnesses, nodes, budget_hit


def enumerate_complete_mappings(
    n: int,
    limit: Optional[int] = None,
    max_nodes: Optional[int] = None,
    workers: int = 1,
) -> MappingCensus:
    """Exact census of complete mappings of Z/N by backtracking.

    limit caps retained witnesses (default 10^6); the count stays exact
    either way.  max_nodes bounds backtracking steps and raises
    CensusBudgetError carrying the partial result when exceeded.  workers
    fans the search out over the image assigned at position 1; the merged
    census is identical for every worker count.
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    witness_cap = DEFAULT_WITNESS_CAP if limit is None else limit
    if workers <= 1 or n <= 2:
        count, images_list, nodes, budget_hit = _enumerate_branch(
            n, None, witness_cap, max_nodes
        )
    else:
        count, nodes, budget_hit = 0, 0, False
        images_list = []
        branch_args = [(n, first, witness_cap, max_nodes) for first in range(1, n)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for b_count, b_wit, b_nodes, b_hit in pool.map(
                _enumerate_branch, *zip(*branch_args)
            ):
                count += b_count
                nodes += b_nodes
                budget_hit = budget_hit or b_hit
                images_list.extend(b_wit)
        images_list = images_list[:witness_cap]
    samples = tuple(CompleteMapping.from_images(im) for im in images_list)
    census = MappingCensus(
        modulus=n,
        count=count,
        samples=samples,
        truncated=count > len(samples),
        nodes=nodes,
    )
    if budget_hit:
        raise CensusBudgetError(census)
    return census


def product_mapping(h: int, n: int) -> CompleteMapping:
    """The mapping i -> h*i mod N, complete whenever h and h-1 are units.

    Requires odd N >= 3 and 2 <= h <= N-1 with gcd(h, N) = gcd(h-1, N) = 1.
    h = 2 gives the classic array-code rows; h = N-1 reverses 1..N-1.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {n}")
    if not 2 <= h <= n - 1:
        raise ValueError(f"h must be in [2, {n - 1}], got {h}")
    g = math.gcd(h, n)
    if g != 1:
        raise ValueError(f"gcd(h, N) = gcd({h}, {n}) = {g} != 1")
    g = math.gcd(h - 1, n)
    if g != 1:
        raise ValueError(f"gcd(h-1, N) = gcd({h - 1}, {n}) = {g} != 1")
    return CompleteMapping.from_images(tuple((h * i) % n for i in range(n)))


def valid_product_multipliers(n: int, h_max: Optional[int] = None) -> list[int]:
    """All h in [2, min(h_max, N-1)] satisfying the product-mapping premises."""
    top = n - 1 if h_max is None else min(h_max, n - 1)
    return [
        h
        for h in range(2, top + 1)
        if math.gcd(h, n) == 1 and math.gcd(h - 1, n) == 1
    ]


def almost_complete_mapping(n: int) -> Permutation:
    """Lexicographically first permutation fixing 0 with N-1 distinct differences.

    Exists for every even N; exactly one difference value repeats, which is
    the best possible for even order and pins the lifted 4-cycle count at N.
    """
    if n < 2 or n % 2:
        raise ValueError(f"modulus must be even and >= 2, got {n}")
    full = (1 << n) - 1
    images = [0] * n

    def rec(pos: int, used_images: int, used_diffs: int, reused: bool) -> bool:
        if pos == n:
            return reused  # exactly N-1 distinct differences, not N
        avail = full & ~used_images
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            dbit = 1 << ((v - pos) % n)
            repeat = bool(used_diffs & dbit)
            if repeat and reused:
                continue
            images[pos] = v
            if rec(pos + 1, used_images | bit, used_diffs | dbit, reused or repeat):
                return True
        return False

    if not rec(1, 1, 1, False):
        raise RuntimeError(f"no almost-complete mapping found for N={n}")
    return Permutation(tuple(images))


RowLike = Sequence[Union[int, Residue]]


def _values(row: RowLike) -> list[int]:
    return [int(v) for v in row]


def is_complete_mapping_of(row_a: RowLike, row_b: RowLike) -> bool:
    """True iff the columnwise differences row_b - row_a mod N are all distinct.

    Both rows must be permutations of Z/N of the same length; this is the
    condition for two shift-matrix rows to create no 4-cycle between them
    at lifting factor N.
    """
    a, b = _values(row_a), _values(row_b)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    n = len(a)
    if sorted(a) != list(range(n)) or sorted(b) != list(range(n)):
        raise ValueError("rows must be permutations of 0..N-1")
    return len({(b[i] - a[i]) % n for i in range(n)}) == n


def compatible_pairs(census: MappingCensus) -> list[tuple[int, int]]:
    """Unordered index pairs of census witnesses that are complete mappings
    of each other, checked in both directions.

    Requires the census to retain every witness.
    """
    if census.truncated or len(census.samples) != census.count:
        raise ValueError("census lacks full witnesses; rerun without a limit")
    out = []
    rows = [m.images for m in census.samples]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if is_complete_mapping_of(rows[i], rows[j]) and is_complete_mapping_of(
                rows[j], rows[i]
            ):
                out.append((i, j))
    return out


def export_census(census: MappingCensus) -> str:
    """Structured text: modulus, count, then one witness image sequence per line."""
    lines = [
        "census 1",
        f"modulus {census.modulus}",
        f"count {census.count}",
        f"witnesses {len(census.samples)}",
    ]
    lines.extend(" ".join(str(v) for v in m.images) for m in census.samples)
    return "\n".join(lines) + "\n"
