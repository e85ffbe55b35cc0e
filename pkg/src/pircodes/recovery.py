"""Recovery-set semantics and exact availability verifiers.

An encoder maps k data bits one-to-one onto n-bit codewords, either through
a full-row-rank generator matrix or through an explicit table.  A position
set I is a recovery set for data bit j when the restriction of any codeword
to I determines that bit.  On top of that single notion this module builds:
minimal-set enumeration, disjoint families, query serving with width and
multiplicity accounting, and full PIR / batch verification with re-checkable
witness reports.

Verdicts are three-valued everywhere a budget is involved: a property is
only reported as proven (or refuted) when the underlying enumeration was
complete; otherwise the result is flagged "unknown".
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .budget import Budget, ensure_budget
from .errors import FileFormatError, UsageError
from .gf2 import BitMatrix, Code, LinearCode, mask_to_positions, positions_to_mask, solve_unit

__all__ = [
    "Encoder",
    "LinearEncoder",
    "ExplicitEncoder",
    "RecoveryFamily",
    "Query",
    "ServingPlan",
    "MinimalSetsResult",
    "FamilyResult",
    "ServeResult",
    "VerifyReport",
    "is_recovery_set",
    "minimal_recovery_sets",
    "find_disjoint_family",
    "serve_query",
    "verify_pir",
    "verify_batch",
    "check_family",
    "as_explicit",
    "read_encoder",
    "write_encoder",
    "parse_encoder",
    "dump_encoder",
]

FOUND = "found"
IMPOSSIBLE = "impossible"
UNKNOWN = "unknown"
SERVED = "served"
UNSERVABLE = "unservable"


class Encoder:
    """Shared surface of the two encoder variants (k, n, encode, code)."""

    k: int
    n: int

    def encode(self, data: int) -> int:
        raise NotImplementedError

    def associated_code(self) -> Code:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearEncoder(Encoder):
    generator: BitMatrix

    def __post_init__(self) -> None:
        if self.generator.rank() != self.generator.nrows:
            raise UsageError("linear encoder needs a full-row-rank generator")

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def n(self) -> int:
        return self.generator.cols

    def encode(self, data: int) -> int:
        return self.generator.encode(data)

    def associated_code(self) -> Code:
        return LinearCode(self.generator).span()


@dataclass(frozen=True)
class ExplicitEncoder(Encoder):
    """Bijective table from all 2^k data words onto distinct codewords.

    `codewords[a]` is the image of data word a (integers with data bit 1
    most significant).
    """

    k: int
    n: int
    codewords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1 or self.n < 1:
            raise UsageError("encoder needs k >= 1 and n >= 1")
        if len(self.codewords) != 1 << self.k:
            raise UsageError(f"table must list all {1 << self.k} data words")
        seen = set()
        for c in self.codewords:
            if not 0 <= c < (1 << self.n):
                raise UsageError("codeword does not fit the declared length")
            if c in seen:
                raise UsageError("encoder table must be one-to-one")
            seen.add(c)

    def encode(self, data: int) -> int:
        if not 0 <= data < (1 << self.k):
            raise UsageError(f"data word {data} does not fit in {self.k} bits")
        return self.codewords[data]

    def decode(self, codeword: int) -> int:
        try:
            return self._inverse()[codeword]
        except KeyError:
            raise UsageError("word is not in the associated code") from None

    def _inverse(self) -> dict[int, int]:
        inv = getattr(self, "_inv_cache", None)
        if inv is None:
            inv = {c: a for a, c in enumerate(self.codewords)}
            object.__setattr__(self, "_inv_cache", inv)
        return inv

    def associated_code(self) -> Code:
        return Code.from_values(self.n, self.codewords)


def as_explicit(encoder: Encoder) -> ExplicitEncoder:
    """Tabulate a linear encoder (identity on explicit ones)."""
    if isinstance(encoder, ExplicitEncoder):
        return encoder
    table = tuple(encoder.encode(a) for a in range(1 << encoder.k))
    return ExplicitEncoder(encoder.k, encoder.n, table)


@dataclass(frozen=True)
class RecoveryFamily:
    """Pairwise disjoint recovery sets for one data bit."""

    bit: int
    sets: tuple[frozenset[int], ...]

    @property
    def t(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class Query:
    """Requested data indices, repeats allowed."""

    requests: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.requests:
            raise UsageError("query must request at least one symbol")

    @property
    def t(self) -> int:
        return len(self.requests)


@dataclass(frozen=True)
class ServingPlan:
    """One position set per request, with width/multiplicity accounting."""

    sets: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max(len(s) for s in self.sets)

    @property
    def multiplicity(self) -> int:
        counts: dict[int, int] = {}
        for s in self.sets:
            for p in s:
                counts[p] = counts.get(p, 0) + 1
        return max(counts.values()) if counts else 0


def _check_indices(encoder: Encoder, j: int, positions: Iterable[int]) -> frozenset[int]:
    if not 1 <= j <= encoder.k:
        raise UsageError(f"data index {j} out of range 1..{encoder.k}")
    pos = frozenset(positions)
    if not pos:
        raise UsageError("recovery set must be nonempty")
    for p in pos:
        if not 1 <= p <= encoder.n:
            raise UsageError(f"position {p} out of range 1..{encoder.n}")
    return pos


def is_recovery_set(encoder: Encoder, j: int, positions: Iterable[int]) -> bool:
    """Does the restriction to these positions determine data bit j?"""
    pos = _check_indices(encoder, j, positions)
    if isinstance(encoder, LinearEncoder):
        return _linear_recovers(encoder.generator, j, positions_to_mask(encoder.n, pos))
    return _explicit_recovers(encoder, j, positions_to_mask(encoder.n, pos))


def _linear_recovers(g: BitMatrix, j: int, mask: int) -> bool:
    """e_j in the span of the columns selected by `mask` (basis reduction)."""
    k = g.nrows
    target = 1 << (k - j)
    basis: list[int] = []  # kept reduced, sorted by leading bit
    for p in mask_to_positions(g.cols, mask):
        v = g.column(p)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    v = target
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def _explicit_recovers(encoder: ExplicitEncoder, j: int, mask: int) -> bool:
    jbit = 1 << (encoder.k - j)
    seen: dict[int, int] = {}
    for a, c in enumerate(encoder.codewords):
        key = c & mask
        bit = 1 if a & jbit else 0
        prev = seen.get(key)
        if prev is None:
            seen[key] = bit
        elif prev != bit:
            return False
    return True


@dataclass(frozen=True)
class MinimalSetsResult:
    sets: tuple[frozenset[int], ...]
    complete: bool
    nodes: int


def minimal_recovery_sets(
    encoder: Encoder,
    j: int,
    max_width: int | None = None,
    budget: Budget | int | None = None,
) -> MinimalSetsResult:
    """All inclusion-minimal recovery sets of size <= max_width for bit j.

    Linear encoders enumerate the support coset of G.x = e_j; explicit
    encoders test subsets in (size, lex) order, pruning supersets of found
    sets.  The completeness flag drops when the node budget runs out.
    """
    _check_indices(encoder, j, [1])
    if max_width is None:
        max_width = encoder.n
    if max_width < 1:
        raise UsageError("max_width must be >= 1")
    budget = ensure_budget(budget)
    if isinstance(encoder, LinearEncoder):
        return _linear_minimal_sets(encoder, j, max_width, budget)
    return _explicit_minimal_sets(encoder, j, max_width, budget)


def _linear_minimal_sets(
    encoder: LinearEncoder, j: int, max_width: int, budget: Budget
) -> MinimalSetsResult:
    sol = solve_unit(encoder.generator, j)
    assert sol.solvable  # full row rank keeps every unit vector reachable
    supports: list[int] = []
    complete = True
    for mask in sol.all_solutions():
        if not budget.spend():
            complete = False
            break
        supports.append(mask)
    n = encoder.n
    supports.sort(key=lambda m: (m.bit_count(), mask_to_positions(n, m)))
    minimal: list[int] = []
    for m in supports:
        if m.bit_count() > max_width:
            continue
        if any((b & m) == b for b in minimal):
            continue
        minimal.append(m)
    sets = tuple(frozenset(mask_to_positions(n, m)) for m in minimal)
    return MinimalSetsResult(sets, complete, budget.used)


def _explicit_minimal_sets(
    encoder: ExplicitEncoder, j: int, max_width: int, budget: Budget
) -> MinimalSetsResult:
    n = encoder.n
    found_masks: list[int] = []
    sets: list[frozenset[int]] = []
    complete = True
    for size in range(1, max_width + 1):
        for combo in combinations(range(1, n + 1), size):
            mask = positions_to_mask(n, combo)
            if any((f & mask) == f for f in found_masks):
                continue
            if not budget.spend():
                return MinimalSetsResult(tuple(sets), False, budget.used)
            if _explicit_recovers(encoder, j, mask):
                found_masks.append(mask)
                sets.append(frozenset(combo))
    return MinimalSetsResult(tuple(sets), complete, budget.used)


@dataclass(frozen=True)
class FamilyResult:
    status: str  # found | impossible | unknown
    family: RecoveryFamily | None
    nodes: int


def check_family(encoder: Encoder, family: RecoveryFamily) -> None:
    """Re-validate a family: disjointness plus per-set recovery; raise if bad."""
    used: set[int] = set()
    for s in family.sets:
        if used & s:
            raise UsageError(f"recovery sets for bit {family.bit} overlap")
        used |= s
        if not is_recovery_set(encoder, family.bit, s):
            raise UsageError(
                f"set {sorted(s)} does not recover bit {family.bit}"
            )


def find_disjoint_family(
    encoder: Encoder,
    j: int,
    t: int,
    max_width: int | None = None,
    budget: Budget | int | None = None,
) -> FamilyResult:
    """Search for t pairwise disjoint recovery sets for bit j.

    "impossible" is only reported when the minimal-set enumeration was
    complete and the backtracking exhausted every branch within budget.
    """
    if t < 1:
        raise UsageError("t must be >= 1")
    budget = ensure_budget(budget)
    enum = minimal_recovery_sets(encoder, j, max_width, budget)
    masks = [positions_to_mask(encoder.n, s) for s in enum.sets]
    chosen: list[int] = []
    cut = False

    def backtrack(start: int, used: int) -> bool:
        nonlocal cut
        if len(chosen) == t:
            return True
        for idx in range(start, len(masks)):
            m = masks[idx]
            if m & used:
                continue
            if not budget.spend():
                cut = True
                return False
            chosen.append(idx)
            if backtrack(idx + 1, used | m):
                return True
            chosen.pop()
            if cut:
                return False
        return False

    if backtrack(0, 0):
        family = RecoveryFamily(j, tuple(enum.sets[i] for i in chosen))
        check_family(encoder, family)
        return FamilyResult(FOUND, family, budget.used)
    if enum.complete and not cut:
        return FamilyResult(IMPOSSIBLE, None, budget.used)
    return FamilyResult(UNKNOWN, None, budget.used)


@dataclass(frozen=True)
class ServeResult:
    status: str  # served | unservable | unknown
    plan: ServingPlan | None
    nodes: int


def serve_query(
    encoder: Encoder,
    query: Query,
    w: int | None = None,
    mu: int = 1,
    budget: Budget | int | None = None,
    _set_cache: dict | None = None,
) -> ServeResult:
    """Assign one recovery set per request, respecting width and multiplicity.

    Minimal sets suffice: any serving plan shrinks to one that uses only
    inclusion-minimal sets without raising width or multiplicity.
    """
    if mu < 1:
        raise UsageError("multiplicity cap must be >= 1")
    for i in query.requests:
        if not 1 <= i <= encoder.k:
            raise UsageError(f"requested index {i} out of range 1..{encoder.k}")
    budget = ensure_budget(budget)
    cache = _set_cache if _set_cache is not None else {}
    enum_complete = True
    per_request: list[list[int]] = []
    n = encoder.n
    for i in query.requests:
        if i not in cache:
            cache[i] = minimal_recovery_sets(encoder, i, w, budget)
        res: MinimalSetsResult = cache[i]
        enum_complete = enum_complete and res.complete
        per_request.append([positions_to_mask(n, s) for s in res.sets])

    usage = [0] * (n + 1)
    chosen: list[int] = []
    cut = False

    def feasible(mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if usage[n - low.bit_length() + 1] >= mu:
                return False
            m ^= low
        return True

    def apply(mask: int, delta: int) -> None:
        m = mask
        while m:
            low = m & -m
            usage[n - low.bit_length() + 1] += delta
            m ^= low

    def backtrack(r: int, min_idx: int) -> bool:
        nonlocal cut
        if r == len(query.requests):
            return True
        # Requests for the same bit are interchangeable: force nondecreasing
        # candidate indices across equal consecutive requests.
        start = min_idx if r > 0 and query.requests[r] == query.requests[r - 1] else 0
        for idx in range(start, len(per_request[r])):
            mask = per_request[r][idx]
            if not feasible(mask):
                continue
            if not budget.spend():
                cut = True
                return False
            apply(mask, 1)
            chosen.append(idx)
            if backtrack(r + 1, idx):
                return True
            chosen.pop()
            apply(mask, -1)
            if cut:
                return False
        return False

    if backtrack(0, 0):
        sets = tuple(
            frozenset(mask_to_positions(n, per_request[r][chosen[r]]))
            for r in range(len(query.requests))
        )
        return ServeResult(SERVED, ServingPlan(sets), budget.used)
    if enum_complete and not cut:
        return ServeResult(UNSERVABLE, None, budget.used)
    return ServeResult(UNKNOWN, None, budget.used)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    """Re-checkable verdict for a PIR or batch property."""

    property: str  # "pir" | "batch"
    t: int
    w: int | None
    mu: int
    verdict: bool
    complete: bool
    witnesses: list[dict]
    nodes: int
    elapsed: float
    failure: dict | None = None

    def to_jsonable(self) -> dict:
        return {
            "property": self.property,
            "parameters": {"t": self.t, "w": self.w, "mu": self.mu},
            "verdict": self.verdict,
            "complete": self.complete,
            "witnesses": self.witnesses,
            "statistics": {"nodes": self.nodes, "elapsed": self.elapsed},
            "failure": self.failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


def _witness_entry(bit: int, sets: Sequence[frozenset[int]]) -> dict:
    return {"bit": bit, "sets": [sorted(s) for s in sets]}


def verify_pir(
    encoder: Encoder,
    t: int,
    w: int | None = None,
    mu: int = 1,
    witnesses: Mapping[int, Sequence[Iterable[int]]] | None = None,
    budget: Budget | int | None = None,
) -> VerifyReport:
    """Check the constant query (j repeated t times) for every data bit j.

    When witnesses are supplied the check is membership + overlap accounting
    only; otherwise each bit is served by backtracking search.
    """
    if t < 1:
        raise UsageError("t must be >= 1")
    budget = ensure_budget(budget)
    start = time.monotonic()
    out: list[dict] = []
    complete = True
    for j in range(1, encoder.k + 1):
        if witnesses is not None and j in witnesses:
            sets = [frozenset(s) for s in witnesses[j]]
            ok, why = _check_witness_sets(encoder, j, sets, t, w, mu)
            if not ok:
                return VerifyReport(
                    "pir", t, w, mu, False, True, out,
                    budget.used, time.monotonic() - start,
                    failure={"bit": j, "reason": why},
                )
            out.append(_witness_entry(j, sets))
            continue
        res = serve_query(encoder, Query((j,) * t), w, mu, budget)
        if res.status == SERVED:
            out.append(_witness_entry(j, res.plan.sets))
        elif res.status == UNSERVABLE:
            return VerifyReport(
                "pir", t, w, mu, False, True, out,
                budget.used, time.monotonic() - start,
                failure={"bit": j, "reason": "no serving plan exists"},
            )
        else:
            complete = False
            return VerifyReport(
                "pir", t, w, mu, False, False, out,
                budget.used, time.monotonic() - start,
                failure={"bit": j, "reason": "budget exhausted"},
            )
    return VerifyReport(
        "pir", t, w, mu, True, complete, out, budget.used, time.monotonic() - start
    )


def _check_witness_sets(
    encoder: Encoder,
    j: int,
    sets: Sequence[frozenset[int]],
    t: int,
    w: int | None,
    mu: int,
) -> tuple[bool, str]:
    if len(sets) < t:
        return False, f"only {len(sets)} witness sets, need {t}"
    sets = sets[:t]
    counts: dict[int, int] = {}
    for s in sets:
        if w is not None and len(s) > w:
            return False, f"set {sorted(s)} exceeds width {w}"
        for p in s:
            counts[p] = counts.get(p, 0) + 1
            if counts[p] > mu:
                return False, f"position {p} used more than {mu} times"
        if not is_recovery_set(encoder, j, s):
            return False, f"set {sorted(s)} does not recover bit {j}"
    return True, ""


def verify_batch(
    encoder: Encoder,
    t: int,
    budget: Budget | int | None = None,
    collect_witnesses: bool = True,
) -> VerifyReport:
    """Serve every multiset of t requests with multiplicity 1, unbounded width."""
    if t < 1:
        raise UsageError("t must be >= 1")
    budget = ensure_budget(budget)
    start = time.monotonic()
    out: list[dict] = []
    cache: dict = {}
    for combo in combinations_with_replacement(range(1, encoder.k + 1), t):
        res = serve_query(encoder, Query(combo), None, 1, budget, _set_cache=cache)
        if res.status == SERVED:
            if collect_witnesses:
                out.append({"query": list(combo), "sets": [sorted(s) for s in res.plan.sets]})
        elif res.status == UNSERVABLE:
            return VerifyReport(
                "batch", t, None, 1, False, True, out,
                budget.used, time.monotonic() - start,
                failure={"query": list(combo), "reason": "no serving plan exists"},
            )
        else:
            return VerifyReport(
                "batch", t, None, 1, False, False, out,
                budget.used, time.monotonic() - start,
                failure={"query": list(combo), "reason": "budget exhausted"},
            )
    return VerifyReport(
        "batch", t, None, 1, True, True, out, budget.used, time.monotonic() - start
    )


# ---------------------------------------------------------------------------
# Explicit encoder file format: 2^k lines "dataword codeword", data ascending.
# ---------------------------------------------------------------------------


def parse_encoder(text: str) -> ExplicitEncoder:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FileFormatError(f"expected 'dataword codeword', got {line!r}")
        rows.append(parts)
    if not rows:
        raise FileFormatError("encoder file holds no entries")
    k = len(rows[0][0])
    n = len(rows[0][1])
    if len(rows) != 1 << k:
        raise FileFormatError(f"expected {1 << k} entries for k={k}, got {len(rows)}")
    table = [0] * (1 << k)
    for idx, (a_s, c_s) in enumerate(rows):
        if len(a_s) != k or len(c_s) != n or set(a_s + c_s) - {"0", "1"}:
            raise FileFormatError(f"malformed entry {a_s!r} {c_s!r}")
        a = int(a_s, 2)
        if a != idx:
            raise FileFormatError("data words must be ascending and complete")
        table[a] = int(c_s, 2)
    try:
        return ExplicitEncoder(k, n, tuple(table))
    except UsageError as exc:
        raise FileFormatError(str(exc)) from exc


def dump_encoder(encoder: ExplicitEncoder) -> str:
    k, n = encoder.k, encoder.n
    return "\n".join(
        f"{format(a, f'0{k}b')} {format(c, f'0{n}b')}"
        for a, c in enumerate(encoder.codewords)
    ) + "\n"


def read_encoder(path: str) -> ExplicitEncoder:
    with open(path, "r", encoding="ascii") as fh:
        return parse_encoder(fh.read())


def write_encoder(encoder: ExplicitEncoder, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dump_encoder(encoder))
