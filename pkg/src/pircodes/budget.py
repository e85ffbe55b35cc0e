"""Decision-node budgets shared by the backtracking searches.

A budget counts decision nodes, not wall time, so runs are reproducible.
Searches that stop because a budget ran out must report their result as
incomplete ("unknown") rather than as a proof.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Budget:
    """Mutable node counter; ``limit=None`` means unlimited."""

    limit: int | None = None
    used: int = 0

    def spend(self, amount: int = 1) -> bool:
        """Consume ``amount`` nodes; return False once the limit is exceeded."""
        self.used += amount
        return self.limit is None or self.used <= self.limit

    @property
    def exhausted(self) -> bool:
        return self.limit is not None and self.used > self.limit


def ensure_budget(budget: Budget | int | None) -> Budget:
    """Coerce an optional int or Budget into a Budget instance."""
    if budget is None:
        return Budget(None)
    if isinstance(budget, int):
        return Budget(budget)
    return budget
