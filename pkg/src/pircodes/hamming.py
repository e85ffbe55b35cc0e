"""Hamming codes, projective lines, and the 3-availability impossibility scan.

The impossibility check is encoder-free.  Any encoder that gives some data
bit three pairwise disjoint recovery sets induces a balanced 2-coloring of
the code that is constant on each "agreement" class (equal restriction to
one of the three sets), hence constant on the connected components of the
union of the three agreement relations.  Complementing every codeword
permutes those components, so if every balanced union of components is
closed under complementation, every candidate data bit takes equal values
on c and its complement; a full encoder would then decode complementary
codewords identically, contradicting injectivity.  Scanning all disjoint
triples of position sets therefore proves that no 3-availability encoder
of any kind exists.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .errors import UsageError
from .gf2 import BitMatrix, Code, LinearCode, mask_to_positions

__all__ = [
    "HammingCode",
    "Line",
    "ImpossibilityReport",
    "ClaimReport",
    "build_hamming",
    "lines_pg",
    "line_word_value",
    "check_no_3pir_any_encoder",
    "check_triple_geometry",
    "coset_triples",
]


@dataclass(frozen=True)
class HammingCode:
    """Order-r Hamming code; parity-check columns are 1..2^r-1 in integer order."""

    r: int
    parity_check: BitMatrix
    generator: BitMatrix

    @property
    def n(self) -> int:
        return (1 << self.r) - 1

    @property
    def k(self) -> int:
        return self.n - self.r

    def syndrome(self, value: int) -> int:
        h = self.parity_check
        out = 0
        for i, row in enumerate(h.rows):
            out |= ((row & value).bit_count() & 1) << (self.r - 1 - i)
        return out

    def is_codeword(self, value: int) -> bool:
        return self.syndrome(value) == 0

    def code(self) -> Code:
        return LinearCode(self.generator).span()


def build_hamming(r: int) -> HammingCode:
    """Construct the order-r Hamming code with a deterministic layout.

    Position i carries the column equal to the binary expansion of i; the
    generator is systematic on the non-power-of-two positions (row for data
    position p: 1 at p plus 1 at each parity position 2^b with bit b set
    in p), listed in ascending p.
    """
    if r < 2:
        raise UsageError("Hamming order must be >= 2")
    n = (1 << r) - 1
    h_rows = []
    for b in range(r):
        row = 0
        for i in range(1, n + 1):
            if (i >> (r - 1 - b)) & 1:
                row |= 1 << (n - i)
        h_rows.append(row)
    parity_check = BitMatrix(n, tuple(h_rows))
    g_rows = []
    for p in range(1, n + 1):
        if p & (p - 1) == 0:
            continue  # power of two: parity position
        row = 1 << (n - p)
        bit = 1
        while bit <= p:
            if p & bit:
                row |= 1 << (n - bit)
            bit <<= 1
        g_rows.append(row)
    generator = BitMatrix(n, tuple(g_rows))
    return HammingCode(r, parity_check, generator)


@dataclass(frozen=True)
class Line:
    """Three distinct nonzero points closed under XOR (a ^ b == c)."""

    points: tuple[int, int, int]

    def __post_init__(self) -> None:
        a, b, c = self.points
        if not (0 < a < b < c):
            raise UsageError("line points must be distinct, positive, ascending")
        if a ^ b != c:
            raise UsageError(f"{self.points} is not closed under addition")


def lines_pg(r: int) -> tuple[Line, ...]:
    """All (2^r-1)(2^r-2)/6 lines of the binary projective geometry of order r."""
    if r < 2:
        raise UsageError("need r >= 2")
    n = (1 << r) - 1
    out = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            c = a ^ b
            if c > b:
                out.append(Line((a, b, c)))
    return tuple(out)


def line_word_value(line: Line, n: int) -> int:
    """Characteristic vector of a line as an n-bit word value."""
    v = 0
    for p in line.points:
        v |= 1 << (n - p)
    return v


# ---------------------------------------------------------------------------
# Impossibility scan
# ---------------------------------------------------------------------------


@dataclass
class ImpossibilityReport:
    verdict: str  # "no_encoder" | "encoder_exists" | "inconclusive"
    r: int
    triples_checked: int
    failing_triples: int
    counterexample: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None
    max_components: int
    elapsed: float

    def to_jsonable(self) -> dict:
        return {
            "verdict": self.verdict,
            "order": self.r,
            "triples_checked": self.triples_checked,
            "failing_triples": self.failing_triples,
            "counterexample": [list(s) for s in self.counterexample]
            if self.counterexample
            else None,
            "statistics": {"max_components": self.max_components, "elapsed": self.elapsed},
        }


def _iter_disjoint_triples(n: int):
    """Unordered triples of disjoint nonempty subsets of [n], canonically
    labeled: scanning positions 1..n, the first used position opens set 1,
    the next new set is 2, then 3 (restricted-growth strings over 0..3,
    where 0 means unused)."""
    labels = [0] * n

    def rec(pos: int, used_max: int):
        if pos == n:
            m1 = m2 = m3 = 0
            for i, lab in enumerate(labels):
                if lab == 1:
                    m1 |= 1 << (n - 1 - i)
                elif lab == 2:
                    m2 |= 1 << (n - 1 - i)
                elif lab == 3:
                    m3 |= 1 << (n - 1 - i)
            yield (m1, m2, m3)
            return
        remaining = n - pos
        for lab in range(0, min(used_max + 1, 3) + 1):
            if 3 - max(used_max, lab) > remaining - 1:
                continue  # cannot still open the missing sets
            labels[pos] = lab
            yield from rec(pos + 1, max(used_max, lab))
        labels[pos] = 0

    yield from rec(0, 0)


def _components(values: list[int], masks: tuple[int, int, int]) -> list[int]:
    """Connected components (as index bitmasks) of the union of the three
    equal-restriction relations."""
    m = len(values)
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in masks:
        groups: dict[int, int] = {}
        for idx, v in enumerate(values):
            key = v & mask
            if key in groups:
                ra, rb = find(groups[key]), find(idx)
                if ra != rb:
                    parent[rb] = ra
            else:
                groups[key] = idx
    comps: dict[int, int] = {}
    for idx in range(m):
        comps.setdefault(find(idx), 0)
        comps[find(idx)] |= 1 << idx
    return list(comps.values())


def _split_balanced_union_exists(comps: list[int], partner: dict[int, int], half: int) -> bool:
    """Is there a union of components of total size `half` that is not closed
    under the complement involution on components?

    A non-closed union must split some swapped pair {A, B}: include exactly
    one of them plus any other components reaching the remaining size, so it
    exists iff some pair leaves a feasible subset sum.
    """
    sizes = [c.bit_count() for c in comps]
    index = {c: i for i, c in enumerate(comps)}
    seen = set()
    for i, comp in enumerate(comps):
        mate = partner[comp]
        jm = index[mate]
        if jm == i or (jm, i) in seen:
            continue
        seen.add((i, jm))
        need = half - sizes[i]
        if need < 0:
            continue
        reach = 1
        for u, s in enumerate(sizes):
            if u != i and u != jm:
                reach |= reach << s
        if (reach >> need) & 1:
            return True
    return False


def _scan_triples(values: list[int], n: int, triples, progress=None):
    """Scan triples for a balanced component union that splits a complement
    orbit; returns (checked, failing, first_failing_offset, first_triple,
    max_components)."""
    m = len(values)
    half = m // 2
    all_one = (1 << n) - 1
    idx_of = {v: i for i, v in enumerate(values)}
    complement_idx = [idx_of[v ^ all_one] for v in values]

    checked = 0
    failing = 0
    first_offset = None
    first_triple = None
    max_components = 0
    for offset, masks in triples:
        checked += 1
        comps = _components(values, masks)
        if len(comps) > max_components:
            max_components = len(comps)
        comp_of = {}
        for c in comps:
            mm = c
            while mm:
                low = mm & -mm
                comp_of[low.bit_length() - 1] = c
                mm ^= low
        partner = {}
        for c in comps:
            any_idx = (c & -c).bit_length() - 1
            partner[c] = comp_of[complement_idx[any_idx]]
        if _split_balanced_union_exists(comps, partner, half):
            failing += 1
            if first_offset is None:
                first_offset = offset
                first_triple = tuple(mask_to_positions(n, mk) for mk in masks)
        if progress is not None and checked % 500 == 0:
            progress(f"triples={checked} failing={failing}")
    return checked, failing, first_offset, first_triple, max_components


def _shard_worker(args):
    r, shard = args
    code = build_hamming(r).code()
    return _scan_triples(list(code.values), code.n, shard)


def check_no_3pir_any_encoder(
    r: int = 3, threads: int = 1, progress=None
) -> ImpossibilityReport:
    """Exhaustively scan all disjoint position-set triples of the order-r
    Hamming code for a balanced component union that is not closed under
    complementation.  If none exists, no encoder of any kind can give any
    data bit three disjoint recovery sets.

    Exhaustive regime: r <= 3 (the triple space grows as 4^n).  With
    threads > 1 the triple list is sharded round-robin across processes;
    the verdict is the conjunction over shards and the reported
    counterexample is the first in enumeration order.
    """
    if r not in (2, 3):
        raise UsageError("exhaustive triple scan is supported for r in {2, 3}")
    start = time.monotonic()
    ham = build_hamming(r)
    code = ham.code()
    values = list(code.values)
    n = code.n

    triples = list(enumerate(_iter_disjoint_triples(n)))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        shards = [triples[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_shard_worker, [(r, s) for s in shards]))
        checked = sum(p[0] for p in parts)
        failing = sum(p[1] for p in parts)
        max_components = max(p[4] for p in parts)
        firsts = [(p[2], p[3]) for p in parts if p[2] is not None]
        counterexample = min(firsts)[1] if firsts else None
    else:
        checked, failing, _, counterexample, max_components = _scan_triples(
            values, n, triples, progress
        )

    elapsed = time.monotonic() - start
    if failing == 0:
        verdict = "no_encoder"
    elif ham.k == 1:
        # One data bit: a split balanced union is itself an injective encoder.
        verdict = "encoder_exists"
    else:
        verdict = "inconclusive"
    return ImpossibilityReport(
        verdict, r, checked, failing, counterexample, max_components, elapsed
    )


# ---------------------------------------------------------------------------
# Structural claims about disjoint minimal recovery-set triples
# ---------------------------------------------------------------------------


@dataclass
class ClaimReport:
    r: int
    triple: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    line_closure: bool
    no_line_inside: bool
    coset_structure: bool
    sizes: tuple[int, int, int]
    expected_size: int

    @property
    def all_hold(self) -> bool:
        return self.line_closure and self.no_line_inside and self.coset_structure

    def to_jsonable(self) -> dict:
        return {
            "order": self.r,
            "triple": [list(s) for s in self.triple],
            "claims": {
                "line_closure": self.line_closure,
                "no_line_inside": self.no_line_inside,
                "coset_structure": self.coset_structure,
            },
            "sizes": list(self.sizes),
            "expected_size": self.expected_size,
        }


def check_triple_geometry(r: int, triple) -> ClaimReport:
    """Evaluate the geometric facts that hold for any disjoint triple of
    minimal recovery sets of one data bit: every line meeting two of the
    sets meets the third; no set contains a line; the unused points plus
    zero form a subspace whose three other cosets are exactly the sets,
    each of size 2^(r-2)."""
    if r < 2:
        raise UsageError("need r >= 2")
    n = (1 << r) - 1
    sets = [frozenset(s) for s in triple]
    if len(sets) != 3 or any(not s for s in sets):
        raise UsageError("triple must consist of three nonempty sets")
    for s in sets:
        if any(not 1 <= p <= n for p in s):
            raise UsageError(f"positions must lie in 1..{n}")
    if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
        raise UsageError("triple sets must be pairwise disjoint")

    lines = lines_pg(r)
    line_closure = True
    no_line_inside = True
    for line in lines:
        pts = set(line.points)
        hits = sum(1 for s in sets if pts & s)
        if hits == 2:
            line_closure = False
        if any(pts <= s for s in sets):
            no_line_inside = False

    union = sets[0] | sets[1] | sets[2]
    subgroup = {0} | (set(range(1, n + 1)) - union)
    closed = all((a ^ b) in subgroup for a in subgroup for b in subgroup)
    expected = 1 << (r - 2)
    coset_structure = closed and len(subgroup) == expected
    if coset_structure:
        for s in sets:
            rep = next(iter(s))
            if {rep ^ h for h in subgroup} != set(s):
                coset_structure = False
                break
    sizes = tuple(len(s) for s in sets)
    return ClaimReport(r, tuple(tuple(sorted(s)) for s in sets),
                       line_closure, no_line_inside, coset_structure,
                       sizes, expected)


def coset_triples(r: int) -> list[tuple[frozenset[int], frozenset[int], frozenset[int]]]:
    """All triples of nonzero cosets of index-4 subspaces of the r-space,
    expressed over the nonzero points 1..2^r-1."""
    if r < 2:
        raise UsageError("need r >= 2")
    n = (1 << r) - 1
    size = 1 << (r - 2)
    out = []
    for combo in combinations(range(1, n + 1), size - 1) if size > 1 else [()]:
        subgroup = {0, *combo}
        if len(subgroup) != size:
            continue
        if not all((a ^ b) in subgroup for a in subgroup for b in subgroup):
            continue
        rest = sorted(set(range(1, n + 1)) - subgroup)
        cosets = []
        seen: set[int] = set()
        for p in rest:
            if p in seen:
                continue
            coset = frozenset(p ^ h for h in subgroup)
            seen |= coset
            cosets.append(coset)
        assert len(cosets) == 3
        out.append(tuple(cosets))
    return out
