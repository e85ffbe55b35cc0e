"""Packing designs: validation, the (r,4,2) packing-number formula, and
pair-packing constructors (greedy lower bounds and exact backtracking).

Constructors are specialized to strength 2 with lambda = 1, the only case
the PIR constructions consume; `is_packing` validates general parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .budget import Budget, ensure_budget
from .errors import FileFormatError, UsageError

__all__ = [
    "PackingDesign",
    "ExactPackingResult",
    "is_packing",
    "packing_number_formula",
    "greedy_packing",
    "exact_packing",
    "all_pairs_design",
    "parse_packing",
    "dump_packing",
    "read_packing",
    "write_packing",
]

FOUND = "found"
IMPOSSIBLE = "impossible"
UNKNOWN = "unknown"

# Exceptions to the closed-form count, from the published determination of
# the (r,4,2) packing numbers.
_FORMULA_EXCEPTIONS = {9: 1, 10: 1, 17: 1, 8: 2, 11: 2, 19: 2}


@dataclass(frozen=True)
class PackingDesign:
    """Blocks of size `blocksize` over points 1..v, every strength-subset
    covered at most `lam` times."""

    v: int
    blocksize: int
    strength: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.strength <= self.blocksize <= self.v:
            raise UsageError("need strength <= blocksize <= v")
        if self.lam < 1:
            raise UsageError("lambda must be >= 1")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)


def _validate_blocks(d: PackingDesign) -> None:
    for block in d.blocks:
        if len(block) != d.blocksize:
            raise UsageError(f"block {block} has size {len(block)}, want {d.blocksize}")
        if len(set(block)) != len(block):
            raise UsageError(f"block {block} repeats a point")
        if any(not 1 <= p <= d.v for p in block):
            raise UsageError(f"block {block} leaves the point range 1..{d.v}")
        if tuple(sorted(block)) != block:
            raise UsageError(f"block {block} must be sorted ascending")


def is_packing(d: PackingDesign) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustive coverage count; on failure returns the first over-covered
    strength-subset (in lexicographic order)."""
    _validate_blocks(d)
    counts: dict[tuple[int, ...], int] = {}
    for block in d.blocks:
        for sub in combinations(block, d.strength):
            counts[sub] = counts.get(sub, 0) + 1
    bad = sorted(sub for sub, c in counts.items() if c > d.lam)
    if bad:
        return False, bad[0]
    return True, None


def packing_number_formula(r: int) -> int:
    """Largest number of 4-blocks on r points with pairwise intersections <= 1.

    Closed form: start from floor((r/4) * floor((r-1)/3)), subtract 1 when
    r = 7 or 10 mod 12, then apply the six sporadic exceptions.
    """
    if r < 4:
        raise UsageError("formula needs r >= 4")
    u = (r * ((r - 1) // 3)) // 4
    j = u - 1 if r % 12 in (7, 10) else u
    return j - _FORMULA_EXCEPTIONS.get(r, 0)


def _pair_index(v: int, p: int, q: int) -> int:
    # p < q, both 1-based; dense index into the C(v,2) pair bitmap.
    return (p - 1) * (2 * v - p) // 2 + (q - p - 1)


def _block_pairmask(v: int, block: tuple[int, ...]) -> int:
    mask = 0
    for p, q in combinations(block, 2):
        mask |= 1 << _pair_index(v, p, q)
    return mask


def greedy_packing(v: int, blocksize: int) -> PackingDesign:
    """Lexicographic greedy pair-packing: one pass over all blocks in lex
    order, keeping each block whose pairs are all uncovered.

    A single pass suffices because coverage only grows: a block rejected
    once can never become admissible later.
    """
    if not 2 <= blocksize <= v:
        raise UsageError("need 2 <= blocksize <= v")
    covered = 0
    blocks: list[tuple[int, ...]] = []
    for block in combinations(range(1, v + 1), blocksize):
        mask = _block_pairmask(v, block)
        if covered & mask:
            continue
        covered |= mask
        blocks.append(block)
    return PackingDesign(v, blocksize, 2, 1, tuple(blocks))


def all_pairs_design(r: int) -> PackingDesign:
    """The complete pair packing: every 2-subset of [r] as a block."""
    return greedy_packing(r, 2)


@dataclass(frozen=True)
class ExactPackingResult:
    status: str  # found | impossible | unknown
    design: PackingDesign | None
    nodes: int


def exact_packing(
    v: int,
    blocksize: int,
    target: int,
    budget: Budget | int | None = None,
) -> ExactPackingResult:
    """Decide whether a pair-packing with `target` blocks exists.

    Backtracking over blocks in lexicographic order with the first block
    pinned to {1..blocksize} (any packing can be relabeled that way), a
    point-degree counting bound, and, when the remaining blocks must cover
    every remaining pair, the forced rule that the next block starts at the
    lowest point that still has uncovered pairs.  "impossible" requires the
    search to have exhausted all branches within budget.
    """
    if not 2 <= blocksize <= v:
        raise UsageError("need 2 <= blocksize <= v")
    if target < 1:
        raise UsageError("target must be >= 1")
    budget = ensure_budget(budget)

    greedy = greedy_packing(v, blocksize)
    if greedy.num_blocks >= target:
        design = PackingDesign(v, blocksize, 2, 1, greedy.blocks[:target])
        return ExactPackingResult(FOUND, design, budget.used)

    cands = list(combinations(range(1, v + 1), blocksize))
    pairmasks = [_block_pairmask(v, b) for b in cands]
    # Blocks sharing a first point are contiguous in lex order.
    first_range: dict[int, tuple[int, int]] = {}
    for idx, b in enumerate(cands):
        p = b[0]
        lo, _ = first_range.get(p, (idx, idx))
        first_range[p] = (lo, idx + 1)

    ppb = blocksize * (blocksize - 1) // 2
    total_pairs = v * (v - 1) // 2
    deg = [v - 1] * (v + 1)  # uncovered-pair degree per point; index 0 unused
    chosen: list[int] = []
    covered = 0
    uncovered = total_pairs
    cut = False

    def degree_bound() -> int:
        cap = sum(deg[p] // (blocksize - 1) for p in range(1, v + 1))
        return cap // blocksize

    def place(idx: int, delta: int) -> None:
        nonlocal covered, uncovered
        block = cands[idx]
        for p in block:
            deg[p] += delta * -(blocksize - 1)
        if delta > 0:
            covered |= pairmasks[idx]
            uncovered -= ppb
        else:
            covered &= ~pairmasks[idx]
            uncovered += ppb

    def search(start: int, remaining: int) -> bool:
        nonlocal cut
        if remaining == 0:
            return True
        if degree_bound() < remaining:
            return False
        lo, hi = start, len(cands)
        slack = uncovered - remaining * ppb
        if slack < 0:
            return False
        active = [p for p in range(1, v + 1) if deg[p] > 0]
        if active and deg[active[0]] > slack:
            # Every remaining block's first point still has uncovered pairs,
            # so when point `a` must appear again the next block starts at it.
            a = active[0]
            if a in first_range:
                flo, fhi = first_range[a]
                lo, hi = max(lo, flo), fhi
            else:
                return False
        for idx in range(lo, hi):
            if pairmasks[idx] & covered:
                continue
            if not budget.spend():
                cut = True
                return False
            chosen.append(idx)
            place(idx, 1)
            if search(idx + 1, remaining - 1):
                return True
            place(idx, -1)
            chosen.pop()
            if cut:
                return False
        return False

    # Symmetry: relabel so the lexicographically least block is {1..blocksize}.
    place(0, 1)
    chosen.append(0)
    ok = search(1, target - 1)
    if ok:
        blocks = tuple(cands[i] for i in chosen)
        return ExactPackingResult(FOUND, PackingDesign(v, blocksize, 2, 1, blocks), budget.used)
    if cut:
        return ExactPackingResult(UNKNOWN, None, budget.used)
    return ExactPackingResult(IMPOSSIBLE, None, budget.used)


# ---------------------------------------------------------------------------
# Packing file: header "v blocksize lambda", then one block per line as
# ascending 1-based points.
# ---------------------------------------------------------------------------


def parse_packing(text: str) -> PackingDesign:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FileFormatError("packing file is empty")
    head = lines[0].split()
    if len(head) != 3:
        raise FileFormatError("header must be 'v blocksize lambda'")
    try:
        v, blocksize, lam = (int(x) for x in head)
        blocks = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
        return PackingDesign(v, blocksize, 2, lam, blocks)
    except (ValueError, UsageError) as exc:
        raise FileFormatError(str(exc)) from exc


def dump_packing(d: PackingDesign) -> str:
    out = [f"{d.v} {d.blocksize} {d.lam}"]
    out.extend(" ".join(str(p) for p in block) for block in d.blocks)
    return "\n".join(out) + "\n"


def read_packing(path: str) -> PackingDesign:
    with open(path, "r", encoding="ascii") as fh:
        return parse_packing(fh.read())


def write_packing(d: PackingDesign, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_packing(d))
