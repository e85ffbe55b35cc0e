"""Nonlinear-code search: canonical forms, isomorph-free generation, the
3-availability encoder-existence decision, and a budgeted hunt harness.

Canonical form.  A code is compared to its re-columned images through the
sorted sequence of codewords (whole words, lexicographic on the sequence);
the canonical form is the minimum over all column permutations.  The
minimum is computed by a depth-first search over column choices with two
sound bounds: a branch whose best possible completion (prefixes padded
with zeros) already compares >= the incumbent is cut, and a branch whose
worst possible completion (prefixes padded with ones) beats the incumbent
certifies a smaller form.  Restricting the search to columns grouped by
invariant labels would be faster but is not sound for this objective, so
refinement is used only to order branches.

Orderly generation.  Codes containing the zero word are grown one word at
a time in ascending order; a partial code is kept only if it equals its
own canonical form.  Removing the largest word of a canonical code leaves
a canonical code (insertion argument over sorted sequences), so every
canonical code is reached exactly once through canonical prefixes.

Checkpoint files are ASCII JSON-lines: a header record
{"format": "pircodes-checkpoint", "version": 1, "problem": {...}} followed
by progress records ({"type": "root_done"|"restart_done"|"code"|"examined",
...}).  Readers ignore record types they do not know, which lets the hunt
pipeline share a file with the underlying code stream.
"""

from __future__ import annotations

import json
import random
import time
import warnings
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterator, Sequence

from .budget import Budget, ensure_budget
from .errors import CheckpointError, UsageError
from .gf2 import Code
from .recovery import ExplicitEncoder, verify_pir

__all__ = [
    "ComponentPartition",
    "RecoverableTriple",
    "ExistsResult",
    "SearchStats",
    "HuntReport",
    "canonical_form",
    "is_canonical",
    "permute_code",
    "recoverable_functions",
    "encoder_exists_3pir",
    "brute_force_encoder_search",
    "search_codes",
    "pir_hunt",
    "open11_hunt",
]

CHECKPOINT_FORMAT = "pircodes-checkpoint"
CHECKPOINT_VERSION = 1

FOUND = "found"
NONE = "none"
UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# Canonical form under column permutations
# ---------------------------------------------------------------------------


def permute_code(code: Code, perm: Sequence[int]) -> Code:
    """Apply a column permutation; perm[i-1] is the new position of column i."""
    n = code.n
    if sorted(perm) != list(range(1, n + 1)):
        raise UsageError("perm must list positions 1..n exactly once")
    out = []
    for v in code.values:
        w = 0
        for i in range(1, n + 1):
            if (v >> (n - i)) & 1:
                w |= 1 << (n - perm[i - 1])
        out.append(w)
    return Code.from_values(n, out)


def _column_bits(values: Sequence[int], n: int) -> list[tuple[int, ...]]:
    return [
        tuple((v >> (n - 1 - j)) & 1 for v in values) for j in range(n)
    ]


def _min_form_search(values: tuple[int, ...], n: int, stop_below: bool):
    """Core DFS; returns (smaller_found, best_form).

    Prefixes are tracked per word (original index order) so columns extend
    them correctly; bounds compare their sorted padding against the
    incumbent.  With stop_below the search exits at the first form strictly
    below the identity form (used by is_canonical); otherwise it runs to
    the global minimum (used by canonical_form).
    """
    m = len(values)
    cols = _column_bits(values, n)
    best = list(values)
    found_smaller = False

    def rec(remaining: tuple[int, ...], pref: list[int], d: int) -> bool:
        nonlocal found_smaller, best
        branches = []
        for c in remaining:
            col = cols[c]
            new = [(pref[i] << 1) | col[i] for i in range(m)]
            branches.append((sorted(new), new, c))
        branches.sort(key=lambda b: b[0])
        d1 = d + 1
        shift = n - d1
        for srt, new, c in branches:
            # Zero-padded completions vs incumbent: >= means nothing in this
            # branch can be strictly smaller.
            cmp_lo = 0
            for i in range(m):
                lo = srt[i] << shift
                if lo != best[i]:
                    cmp_lo = -1 if lo < best[i] else 1
                    break
            if cmp_lo >= 0:
                continue
            if d1 == n:
                best = list(srt)
                found_smaller = True
                if stop_below:
                    return True
                continue
            if stop_below:
                # One-padded completions all below: a smaller form certainly
                # exists, no need to identify it.
                ones = (1 << shift) - 1
                below = False
                for i in range(m):
                    hi = (srt[i] << shift) | ones
                    if hi != best[i]:
                        below = hi < best[i]
                        break
                if below:
                    found_smaller = True
                    return True
            if rec(tuple(x for x in remaining if x != c), new, d1):
                return True
        return False

    rec(tuple(range(n)), [0] * m, 0)
    return found_smaller, tuple(best)


def canonical_form(code: Code) -> Code:
    """Minimum over all column permutations of the sorted word sequence."""
    _, best = _min_form_search(tuple(code.values), code.n, stop_below=False)
    return Code(code.n, best)


def is_canonical(code: Code) -> bool:
    """Is the code equal to its own canonical form?"""
    values = tuple(code.values)
    n = code.n
    if values and values[0] == 0 and len(values) > 1:
        # The second word of a canonical zero-containing code is forced.
        w = min(v.bit_count() for v in values[1:])
        if values[1] != (1 << w) - 1:
            return False
    smaller, _ = _min_form_search(values, n, stop_below=True)
    return not smaller


# ---------------------------------------------------------------------------
# Recoverable balanced functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of a code into classes linked by agreement on any of the
    three disjoint position sets."""

    triple: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    components: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RecoverableTriple:
    partition: ComponentPartition
    colorings: tuple[tuple[int, ...], ...]  # balanced unions, as codeword values
    truncated: bool


def _iter_triples_by_size(n: int, budget: Budget):
    """Disjoint triples of nonempty subsets of [n], ordered by total size and
    then lexicographically by the (min-sorted) position tuples.  Stops when
    the budget runs out (yields None as a sentinel)."""
    for total in range(3, n + 1):
        batch: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = []
        aborted = False
        for universe in combinations(range(1, n + 1), total):
            for labels in _surjective_labelings(total):
                if not budget.spend():
                    aborted = True
                    break
                sets: tuple[list[int], list[int], list[int]] = ([], [], [])
                for pos, lab in zip(universe, labels):
                    sets[lab - 1].append(pos)
                batch.append(tuple(tuple(s) for s in sets))
            if aborted:
                break
        batch.sort()
        yield from batch
        if aborted:
            yield None
            return


def _surjective_labelings(size: int):
    """Restricted-growth labelings of `size` items onto exactly {1, 2, 3}."""
    labels = [0] * size

    def rec(pos: int, used: int):
        if pos == size:
            if used == 3:
                yield tuple(labels)
            return
        if 3 - used > size - pos:
            return
        for lab in range(1, min(used + 1, 3) + 1):
            labels[pos] = lab
            yield from rec(pos + 1, max(used, lab))

    yield from rec(0, 0)


def _agreement_components(values: Sequence[int], n: int, triple) -> list[int]:
    """Connected components (index bitmasks) of the union of the three
    equal-restriction relations, by flood fill over restriction groups."""
    masks = []
    for positions in triple:
        mk = 0
        for p in positions:
            mk |= 1 << (n - p)
        masks.append(mk)
    groups: list[dict[int, int]] = []
    for mk in masks:
        g: dict[int, int] = {}
        for idx, v in enumerate(values):
            key = v & mk
            g[key] = g.get(key, 0) | (1 << idx)
        groups.append(g)
    m = len(values)
    unvisited = (1 << m) - 1
    comps = []
    while unvisited:
        seed = unvisited & -unvisited
        comp = 0
        frontier = seed
        while frontier:
            comp |= frontier
            new = 0
            f = frontier
            while f:
                low = f & -f
                idx = low.bit_length() - 1
                v = values[idx]
                for mk, g in zip(masks, groups):
                    new |= g[v & mk]
                f ^= low
            frontier = new & ~comp
        comps.append(comp)
        unvisited &= ~comp
    comps.sort(key=lambda c: (c & -c).bit_length())
    return comps


def _balanced_unions(comps: list[int], half: int, max_components: int):
    """(colorings, truncated): unions of components with exactly `half`
    codewords, normalized to exclude codeword index 0 and deduplicated."""
    sizes = [c.bit_count() for c in comps]
    total = sum(sizes)
    reach = 1
    for s in sizes:
        reach |= reach << s
    if not (reach >> half) & 1:
        return [], False
    if len(comps) > max_components:
        return [], True
    full = (1 << total) - 1
    out: set[int] = set()

    suffix = [0] * (len(comps) + 1)
    for i in range(len(comps) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]

    def rec(i: int, acc: int, size: int):
        if size == half:
            out.add(acc ^ full if acc & 1 else acc)
            return
        if i == len(comps) or size + suffix[i] < half:
            return
        if sizes[i] + size <= half:
            rec(i + 1, acc | comps[i], size + sizes[i])
        rec(i + 1, acc, size)

    rec(0, 0, 0)
    return sorted(out), False


def recoverable_functions(
    code: Code,
    budget: Budget | int | None = None,
    max_components: int = 20,
) -> Iterator[RecoverableTriple]:
    """Stream, per disjoint position-set triple, the component partition and
    every balanced component union: exactly the candidate data-bit functions
    that would have that triple as disjoint recovery sets."""
    k = code.dimension()
    if k is None or k < 1:
        raise UsageError("code size must be a power of two, at least 2")
    budget = ensure_budget(budget)
    values = code.values
    half = code.size // 2
    for triple in _iter_triples_by_size(code.n, budget):
        if triple is None:
            return
        if not budget.spend():
            return
        comps = _agreement_components(values, code.n, triple)
        colorings, truncated = _balanced_unions(comps, half, max_components)
        partition = ComponentPartition(
            triple,
            tuple(tuple(values[i] for i in _mask_indices(c)) for c in comps),
        )
        yield RecoverableTriple(
            partition,
            tuple(tuple(values[i] for i in _mask_indices(cm)) for cm in colorings),
            truncated,
        )


def _mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Encoder existence for t = 3
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExistsResult:
    status: str  # found | none | unknown
    encoder: ExplicitEncoder | None
    witnesses: tuple[tuple[tuple[int, ...], ...], ...] | None  # triple per data bit
    triples_seen: int
    candidates: int
    best_depth: int
    nodes: int


def encoder_exists_3pir(
    code: Code,
    budget: Budget | int | None = None,
    max_components: int = 20,
    progress: Callable[[str], None] | None = None,
) -> ExistsResult:
    """Decide whether any one-to-one encoder makes this code 3-available.

    Enumerates every recoverable balanced 2-coloring (deduplicated by the
    split it induces), then backtracks for k of them whose joint refinement
    separates all codewords.  Any valid choice must halve every refinement
    class at every step, which is checked eagerly.  "none" is only reported
    after complete enumeration and exhaustive backtracking.
    """
    k = code.dimension()
    if k is None or k < 1:
        raise UsageError("code size must be a power of two, at least 2")
    budget = ensure_budget(budget)
    values = code.values
    m = code.size
    half = m // 2
    full = (1 << m) - 1

    candidates: dict[int, tuple] = {}
    complete = True
    triples_seen = 0
    for triple in _iter_triples_by_size(code.n, budget):
        if triple is None:
            complete = False
            break
        if not budget.spend():
            complete = False
            break
        triples_seen += 1
        comps = _agreement_components(values, code.n, triple)
        colorings, truncated = _balanced_unions(comps, half, max_components)
        if truncated:
            complete = False
        for mask in colorings:
            if mask not in candidates:
                candidates[mask] = triple
        if progress is not None and triples_seen % 2000 == 0:
            progress(f"triples={triples_seen} candidates={len(candidates)}")

    masks = list(candidates.keys())
    chosen: list[int] = []
    best_depth = 0
    cut = False

    def refine(classes: list[int], s: int) -> list[int] | None:
        new: list[int] = []
        for c in classes:
            a = c & s
            if 2 * a.bit_count() != c.bit_count():
                return None
            new.append(a)
            new.append(c ^ a)
        return new

    def backtrack(start: int, classes: list[int], depth: int) -> bool:
        nonlocal best_depth, cut
        best_depth = max(best_depth, depth)
        if depth == k:
            return True
        for idx in range(start, len(masks)):
            if len(masks) - idx < k - depth:
                break
            if not budget.spend():
                cut = True
                return False
            refined = refine(classes, masks[idx])
            if refined is None:
                continue
            chosen.append(idx)
            if backtrack(idx + 1, refined, depth + 1):
                return True
            chosen.pop()
            if cut:
                return False
        return False

    ok = backtrack(0, [full], 0)
    if ok:
        table = [0] * m
        for idx in range(m):
            a = 0
            for i, mi in enumerate(chosen):
                if (masks[mi] >> idx) & 1:
                    a |= 1 << (k - 1 - i)
            table[a] = values[idx]
        encoder = ExplicitEncoder(k, code.n, tuple(table))
        witnesses = tuple(candidates[masks[mi]] for mi in chosen)
        report = verify_pir(
            encoder, 3, mu=1,
            witnesses={j + 1: [frozenset(s) for s in witnesses[j]] for j in range(k)},
        )
        if not report.verdict:
            raise AssertionError("constructed encoder failed re-validation")
        return ExistsResult(FOUND, encoder, witnesses, triples_seen,
                            len(masks), k, budget.used)
    status = NONE if complete and not cut else UNKNOWN
    return ExistsResult(status, None, None, triples_seen, len(masks),
                        best_depth, budget.used)


def brute_force_encoder_search(code: Code, t: int = 3) -> ExplicitEncoder | None:
    """Try all |C|! encoders onto the code; first one passing the exact
    availability check wins.  Only feasible for tiny codes."""
    k = code.dimension()
    if k is None or k < 1:
        raise UsageError("code size must be a power of two, at least 2")
    if code.size > 8:
        raise UsageError("brute force is capped at 8 codewords")
    for table in permutations(code.values):
        encoder = ExplicitEncoder(k, code.n, table)
        if verify_pir(encoder, t, mu=1).verdict:
            return encoder
    return None


# ---------------------------------------------------------------------------
# Code search (orderly exhaustive / seeded heuristic) with checkpoints
# ---------------------------------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    emitted: int = 0
    roots_done: int = 0
    complete: bool = False


class _Checkpoint:
    """JSON-lines checkpoint shared by search_codes and the hunt pipeline."""

    def __init__(self, path: str | None, problem: dict):
        self.path = path
        self.problem = problem
        self.roots_done: set[int] = set()
        self.restarts_done: set[int] = set()
        self.codes: list[tuple[int, ...]] = []
        self.examined: dict[tuple[int, ...], dict] = {}
        self._fh = None
        if path is None:
            return
        try:
            with open(path, "r", encoding="ascii") as fh:
                lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        except FileNotFoundError:
            lines = []
        except OSError as exc:
            raise CheckpointError(str(exc)) from exc
        if lines:
            try:
                head = json.loads(lines[0])
            except json.JSONDecodeError as exc:
                raise CheckpointError("corrupt checkpoint header") from exc
            if head.get("format") != CHECKPOINT_FORMAT:
                raise CheckpointError("not a checkpoint file")
            if head.get("version") != CHECKPOINT_VERSION:
                raise CheckpointError(
                    f"checkpoint version {head.get('version')} != {CHECKPOINT_VERSION}"
                )
            if head.get("problem") != problem:
                raise CheckpointError("checkpoint belongs to a different problem")
            for ln in lines[1:]:
                try:
                    rec = json.loads(ln)
                except json.JSONDecodeError:
                    continue  # torn final write: safe to ignore
                kind = rec.get("type")
                if kind == "root_done":
                    self.roots_done.add(rec["root"])
                elif kind == "restart_done":
                    self.restarts_done.add(rec["restart"])
                elif kind == "code":
                    self.codes.append(tuple(rec["values"]))
                elif kind == "examined":
                    self.examined[tuple(rec["values"])] = rec
        self._fh = open(path, "a", encoding="ascii")
        if not lines:
            self._write({"format": CHECKPOINT_FORMAT, "version": CHECKPOINT_VERSION,
                         "problem": problem})

    def _write(self, rec: dict) -> None:
        if self._fh is not None:
            self._fh.write(json.dumps(rec, sort_keys=True) + "\n")
            self._fh.flush()

    def record_code(self, values: tuple[int, ...]) -> None:
        self._write({"type": "code", "values": list(values)})

    def record_root(self, root: int) -> None:
        self._write({"type": "root_done", "root": root})

    def record_restart(self, restart: int) -> None:
        self._write({"type": "restart_done", "restart": restart})

    def record_examined(self, values: tuple[int, ...], outcome: dict) -> None:
        self._write({"type": "examined", "values": list(values), **outcome})

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def search_codes(
    n: int,
    size: int,
    dmin: int,
    mode: str = "exhaustive",
    seed: int = 1,
    budget: Budget | int | None = None,
    checkpoint: str | None = None,
    limit: int | None = None,
    restarts: int = 200,
    stats: SearchStats | None = None,
    progress: Callable[[str], None] | None = None,
) -> Iterator[Code]:
    """Stream codes of the given length, size, and minimum distance.

    Exhaustive mode emits exactly one canonical representative per
    column-permutation class of zero-containing codes (orderly generation).
    Heuristic mode runs seeded greedy restarts with swap improvement and
    emits every distinct code it reaches; identical seeds give identical
    streams.  A checkpoint file makes either mode resumable with the same
    overall result set.
    """
    if mode not in ("exhaustive", "heuristic"):
        raise UsageError(f"unknown mode {mode!r}")
    if not 1 <= size <= 1 << n:
        raise UsageError("size must be between 1 and 2^n")
    from .bounds import REFERENCE_A2

    if dmin == 3 and n in REFERENCE_A2 and size > REFERENCE_A2[n]:
        warnings.warn(
            f"requested size {size} exceeds the maximum {REFERENCE_A2[n]} for "
            f"length {n} at distance 3; the stream will be empty",
            stacklevel=2,
        )
    stats = stats if stats is not None else SearchStats()
    problem = {"n": n, "size": size, "dmin": dmin, "mode": mode,
               "seed": seed if mode == "heuristic" else None}
    ck = _Checkpoint(checkpoint, problem)
    emitted: set[tuple[int, ...]] = set()
    try:
        for values in ck.codes:
            if values not in emitted:
                emitted.add(values)
                stats.emitted += 1
                yield Code(n, values)
                if limit is not None and stats.emitted >= limit:
                    return
        if mode == "exhaustive":
            gen = _orderly_generation(n, size, dmin, ensure_budget(budget), ck,
                                      stats, progress)
        else:
            gen = _heuristic_generation(n, size, dmin, seed, restarts, ck,
                                        stats, progress)
        for code in gen:
            key = code.values
            if key in emitted:
                continue
            emitted.add(key)
            ck.record_code(key)
            stats.emitted += 1
            yield code
            if limit is not None and stats.emitted >= limit:
                return
    finally:
        ck.close()


def _orderly_generation(
    n: int,
    size: int,
    dmin: int,
    budget: Budget,
    ck: _Checkpoint,
    stats: SearchStats,
    progress: Callable[[str], None] | None,
) -> Iterator[Code]:
    out: list[Code] = []
    aborted = False

    def extend(current: list[int], cands: list[int]) -> Iterator[Code]:
        nonlocal aborted
        if len(current) == size:
            yield Code.from_values(n, current)
            return
        if len(current) + len(cands) < size:
            return
        for i, w in enumerate(cands):
            if aborted:
                return
            if not budget.spend():
                aborted = True
                return
            stats.nodes += 1
            current.append(w)
            if is_canonical(Code.from_values(n, current)):
                nxt = [u for u in cands[i + 1:]
                       if (u ^ w).bit_count() >= dmin]
                yield from extend(current, nxt)
            current.pop()

    if size == 1:
        if 0 not in ck.roots_done:
            yield Code.from_values(n, [0])
            ck.record_root(0)
            stats.roots_done += 1
        stats.complete = not aborted
        return
    roots = [w for w in range(1, 1 << n) if w.bit_count() >= dmin]
    for root in roots:
        if root in ck.roots_done:
            stats.roots_done += 1
            continue
        if aborted:
            break
        if not is_canonical(Code.from_values(n, [0, root])):
            ck.record_root(root)
            stats.roots_done += 1
            continue
        cands = [u for u in range(root + 1, 1 << n)
                 if u.bit_count() >= dmin and (u ^ root).bit_count() >= dmin]
        yield from extend([0, root], cands)
        if not aborted:
            ck.record_root(root)
            stats.roots_done += 1
            if progress is not None:
                progress(f"root={root} nodes={stats.nodes} emitted={stats.emitted}")
    stats.complete = not aborted


def _heuristic_generation(
    n: int,
    size: int,
    dmin: int,
    seed: int,
    restarts: int,
    ck: _Checkpoint,
    stats: SearchStats,
    progress: Callable[[str], None] | None,
) -> Iterator[Code]:
    universe = list(range(1 << n))
    for ridx in range(restarts):
        if ridx in ck.restarts_done:
            continue
        rng = random.Random(f"pircodes:{seed}:{ridx}")
        order = universe[:]
        rng.shuffle(order)
        chosen: list[int] = []
        for w in order:
            if all((w ^ c).bit_count() >= dmin for c in chosen):
                chosen.append(w)
        for _ in range(40):
            if len(chosen) >= size:
                break
            improved = False
            sample = universe[:]
            rng.shuffle(sample)
            for w in sample:
                conflicts = [c for c in chosen if (w ^ c).bit_count() < dmin]
                if not conflicts:
                    chosen.append(w)
                    improved = True
                elif len(conflicts) == 1 and conflicts[0] != w and rng.random() < 0.5:
                    chosen.remove(conflicts[0])
                    chosen.append(w)
                    improved = True
            if not improved and len(chosen) < size:
                # plateau: random kick, remove a few words
                for _ in range(min(3, len(chosen))):
                    chosen.pop(rng.randrange(len(chosen)))
        ck.record_restart(ridx)
        if len(chosen) >= size:
            yield Code.from_values(n, sorted(chosen)[:size])
        if progress is not None and (ridx + 1) % 20 == 0:
            progress(f"restart={ridx + 1} best={len(chosen)}")
    stats.complete = True


# ---------------------------------------------------------------------------
# Hunt pipeline
# ---------------------------------------------------------------------------


@dataclass
class HuntReport:
    n: int
    size: int
    dmin: int
    codes_examined: int
    encoders_found: int
    best_depth: int
    threshold: int
    logged_candidates: list[dict]
    found: list[dict]
    elapsed: float
    complete_per_code: bool

    def to_jsonable(self) -> dict:
        return {
            "problem": {"n": self.n, "size": self.size, "dmin": self.dmin},
            "codes_examined": self.codes_examined,
            "encoders_found": self.encoders_found,
            "best_depth": self.best_depth,
            "witness_threshold": self.threshold,
            "logged_candidates": self.logged_candidates,
            "found": self.found,
            "statistics": {"elapsed": self.elapsed,
                           "complete_per_code": self.complete_per_code},
        }


def pir_hunt(
    n: int,
    size: int,
    dmin: int = 3,
    seed: int = 1,
    max_codes: int = 5,
    per_code_budget: int | None = 200_000,
    witness_threshold: int = 2,
    checkpoint: str | None = None,
    restarts: int = 200,
    mode: str = "heuristic",
    progress: Callable[[str], None] | None = None,
) -> HuntReport:
    """Stream codes and test each for a 3-availability encoder.

    The harness gathers evidence only: it never claims nonexistence for the
    searched parameters, because the code space is not exhausted.  Codes
    whose encoder search reaches `witness_threshold` compatible data-bit
    functions are logged as candidates worth revisiting.
    """
    start = time.monotonic()
    problem = {"n": n, "size": size, "dmin": dmin, "mode": mode,
               "seed": seed if mode == "heuristic" else None}
    ck = _Checkpoint(checkpoint, problem)
    ck.close()  # reuse only the examined records here; search reopens it
    examined_cache = ck.examined

    report = HuntReport(n, size, dmin, 0, 0, 0, witness_threshold, [], [],
                        0.0, True)
    stats = SearchStats()
    stream = search_codes(n, size, dmin, mode=mode, seed=seed,
                          checkpoint=checkpoint, limit=max_codes,
                          restarts=restarts, stats=stats, progress=progress)
    record_ck = _Checkpoint(checkpoint, problem) if checkpoint else None
    try:
        for code in stream:
            key = code.values
            cached = examined_cache.get(key)
            if cached is not None:
                outcome = cached
            else:
                res = encoder_exists_3pir(code, budget=per_code_budget)
                outcome = {"status": res.status, "best_depth": res.best_depth,
                           "nodes": res.nodes}
                if res.status == FOUND:
                    outcome["encoder"] = list(res.encoder.codewords)
                if record_ck is not None:
                    record_ck.record_examined(key, outcome)
            report.codes_examined += 1
            report.best_depth = max(report.best_depth, outcome["best_depth"])
            if outcome["status"] == UNKNOWN:
                report.complete_per_code = False
            if outcome["status"] == FOUND:
                report.encoders_found += 1
                report.found.append({"values": list(key),
                                     "encoder": outcome.get("encoder")})
            if outcome["best_depth"] >= witness_threshold:
                report.logged_candidates.append(
                    {"values": list(key), "best_depth": outcome["best_depth"],
                     "status": outcome["status"]}
                )
            if progress is not None:
                progress(
                    f"examined={report.codes_examined} found={report.encoders_found}"
                )
    finally:
        if record_ck is not None:
            record_ck.close()
    report.elapsed = time.monotonic() - start
    return report


def open11_hunt(
    seed: int = 1,
    max_codes: int = 3,
    per_code_budget: int | None = 50_000,
    witness_threshold: int = 2,
    checkpoint: str | None = None,
    restarts: int = 400,
    progress: Callable[[str], None] | None = None,
) -> HuntReport:
    """Budgeted evidence-gathering for length-11, size-128, distance-3 codes."""
    return pir_hunt(11, 128, 3, seed=seed, max_codes=max_codes,
                    per_code_budget=per_code_budget,
                    witness_threshold=witness_threshold,
                    checkpoint=checkpoint, restarts=restarts,
                    progress=progress)
