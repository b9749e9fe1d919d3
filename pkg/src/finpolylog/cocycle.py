"""Additive 2-cocycle on GF(p), its extension group, and entropy mod p.

H(x) = sum_{k=1}^{p-1} x^k/k plays the role of an entropy function on
GF(p).  The symmetric function phi(x, y) = (x+y) H(x/(x+y)) is a
2-cocycle for the additive group, is not a coboundary, and defines a
central extension of the affine group of the line.  The same H computes
the entropy of rational probability distributions reduced mod p.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BadParams,
    BudgetExceeded,
    NoAdmissibleOrdering,
    ZeroInverse,
)

EXHAUSTIVE_COCYCLE_LIMIT = 101
DEFAULT_PERMUTATION_BUDGET = 5040


def h_table(p: int) -> np.ndarray:
    """Values of H(x) = sum_{k=1}^{p-1} x^k / k for x = 0..p-1."""
    inv = [0] + [pow(k, p - 2, p) for k in range(1, p)]
    xs = np.arange(p, dtype=np.int64)
    table = np.zeros(p, dtype=np.int64)
    xk = np.ones(p, dtype=np.int64)
    for k in range(1, p):
        xk = (xk * xs) % p
        table = (table + inv[k] * xk) % p
    return table


def H(x: int, p: int) -> int:
    return int(h_table(p)[x % p])


def phi_table(p: int, h=None) -> np.ndarray:
    """phi(x, y) = (x+y) H(x/(x+y)) when x+y != 0, else 0."""
    if h is None:
        h = h_table(p)
    table = np.zeros((p, p), dtype=np.int64)
    for x in range(p):
        for y in range(p):
            s = (x + y) % p
            if s == 0:
                continue
            table[x, y] = (s * int(h[(x * pow(s, p - 2, p)) % p])) % p
    return table


def phi(x: int, y: int, p: int) -> int:
    return int(phi_table(p)[x % p, y % p])


@dataclass
class CheckResult:
    """Outcome of an exhaustive or sampled appendix check."""

    holds: bool
    checked: int
    counterexample: tuple | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"holds": self.holds, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
        if self.detail:
            out["detail"] = self.detail
        return out


def check_cocycle(p: int, table: np.ndarray | None = None) -> CheckResult:
    """Exhaustive cocycle condition and symmetry over all of GF(p)^3."""
    if p > EXHAUSTIVE_COCYCLE_LIMIT:
        raise BudgetExceeded(f"exhaustive check capped at p <= {EXHAUSTIVE_COCYCLE_LIMIT}")
    t = phi_table(p) if table is None else table
    if not np.array_equal(t, t.T):
        bad = np.argwhere(t != t.T)[0]
        return CheckResult(False, p * p, (int(bad[0]), int(bad[1])), "symmetry")
    idx = np.arange(p, dtype=np.int64)
    x = idx[:, None, None]
    y = idx[None, :, None]
    z = idx[None, None, :]
    # cocycle: phi(x,y) + phi(x+y,z) == phi(y,z) + phi(x,y+z)
    left = (t[x % p, y % p] + t[(x + y) % p, z % p]) % p
    right = (t[y % p, z % p] + t[x % p, (y + z) % p]) % p
    diff = (left - right) % p
    if np.any(diff):
        bad = np.argwhere(diff)[0]
        return CheckResult(
            False, p**3, tuple(int(v) for v in bad), "cocycle condition"
        )
    return CheckResult(True, p**3)


def check_homogeneity(p: int) -> CheckResult:
    """phi(lam*x, lam*y) = lam*phi(x, y) for every lam != 0."""
    t = phi_table(p)
    idx = np.arange(p, dtype=np.int64)
    for lam in range(1, p):
        scaled = t[(lam * idx[:, None]) % p, (lam * idx[None, :]) % p]
        if np.any((scaled - lam * t) % p):
            bad = np.argwhere((scaled - lam * t) % p)[0]
            return CheckResult(
                False, p * p * (p - 1), (lam, int(bad[0]), int(bad[1]))
            )
    return CheckResult(True, p * p * (p - 1))


def check_equation_B(p: int) -> CheckResult:
    """H(x+y) = H(y) + (1-y)H(x/(1-y)) + yH(-x/y) for y not in {0,1}."""
    h = h_table(p)
    checked = 0
    for y in range(2, p):
        inv_1y = pow((1 - y) % p, p - 2, p)
        inv_y = pow(y, p - 2, p)
        for x in range(p):
            lhs = h[(x + y) % p]
            rhs = (
                h[y]
                + (1 - y) * h[(x * inv_1y) % p]
                + y * h[(-x * inv_y) % p]
            ) % p
            checked += 1
            if lhs != rhs:
                return CheckResult(False, checked, (x, y))
    return CheckResult(True, checked)


def check_equation_C(p: int) -> CheckResult:
    """x H(1/x) = -H(x) for x != 0."""
    h = h_table(p)
    for x in range(1, p):
        if (x * h[pow(x, p - 2, p)] + h[x]) % p:
            return CheckResult(False, x, (x,))
    return CheckResult(True, p - 1)


# ---------------------------------------------------------------------------
# coboundary analysis
# ---------------------------------------------------------------------------


def coboundary_solve(p: int, table: np.ndarray | None = None) -> dict:
    """Solve phi(x,y) = psi(x) + psi(y) - psi(x+y) for psi over GF(p).

    Returns a dict with "consistent" plus either a solution vector or an
    inconsistency certificate: a combination of equation rows (indexed by
    their (x, y) pairs) whose left side cancels while the right side does
    not.
    """
    t = phi_table(p) if table is None else table
    pairs = [(x, y) for x in range(p) for y in range(p)]
    nrows = len(pairs)
    a = np.zeros((nrows, p), dtype=np.int64)
    rhs = np.zeros(nrows, dtype=np.int64)
    for r, (x, y) in enumerate(pairs):
        a[r, x] += 1
        a[r, y] += 1
        a[r, (x + y) % p] -= 1
        a[r] %= p
        rhs[r] = t[x, y]
    # augmented with the identity to track row combinations
    comb = np.eye(nrows, dtype=np.int64)
    pivots = {}
    for r in range(nrows):
        row = a[r].copy()
        crow = comb[r].copy()
        rr = int(rhs[r])
        while True:
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                break
            c = int(nz[0])
            if c not in pivots:
                inv = pow(int(row[c]), p - 2, p)
                pivots[c] = ((row * inv) % p, (crow * inv) % p, (rr * inv) % p)
                break
            prow, pcomb, prhs = pivots[c]
            f = int(row[c])
            row = (row - f * prow) % p
            crow = (crow - f * pcomb) % p
            rr = (rr - f * prhs) % p
        if np.all(row == 0) and rr % p != 0:
            support = np.nonzero(crow)[0]
            return {
                "consistent": False,
                "certificate": {
                    "rows": [pairs[i] for i in support],
                    "multipliers": [int(crow[i]) for i in support],
                    "rhs_value": int(rr % p),
                },
            }
    # consistent: back-substitute a particular solution
    psi = np.zeros(p, dtype=np.int64)
    for c in sorted(pivots, reverse=True):
        prow, _pc, prhs = pivots[c]
        s = int(prhs)
        for c2 in range(c + 1, p):
            if prow[c2]:
                s = (s - int(prow[c2]) * int(psi[c2])) % p
        psi[c] = s % p
    return {"consistent": True, "psi": [int(v) for v in psi]}


def verify_certificate(p: int, certificate: dict, table: np.ndarray | None = None) -> bool:
    """Independently re-check an inconsistency certificate."""
    t = phi_table(p) if table is None else table
    lhs = np.zeros(p, dtype=np.int64)
    rhs = 0
    for (x, y), m in zip(certificate["rows"], certificate["multipliers"]):
        lhs[x] += m
        lhs[y] += m
        lhs[(x + y) % p] -= m
        rhs = (rhs + m * int(t[x, y])) % p
    return not np.any(lhs % p) and rhs % p != 0


# ---------------------------------------------------------------------------
# the extension group
# ---------------------------------------------------------------------------


def group_mul(g1, g2, p: int, table: np.ndarray | None = None):
    """(u1,b1,a1)*(u2,b2,a2) = (u1 + a1 u2 + phi(b1, a1 b2), b1 + a1 b2, a1 a2)."""
    t = phi_table(p) if table is None else table
    u1, b1, a1 = g1
    u2, b2, a2 = g2
    ab = (a1 * b2) % p
    return (
        (u1 + a1 * u2 + int(t[b1 % p, ab])) % p,
        (b1 + ab) % p,
        (a1 * a2) % p,
    )


def group_inverse(g, p: int, table: np.ndarray | None = None):
    u, b, a = g
    if a % p == 0:
        raise ZeroInverse("scaling component must be nonzero")
    ainv = pow(a, p - 2, p)
    return ((-ainv * u) % p, (-ainv * b) % p, ainv)


def _group_elements(p: int):
    return [
        (u, b, a) for u in range(p) for b in range(p) for a in range(1, p)
    ]


def group_check(
    p: int,
    exhaustive: bool | None = None,
    samples: int = 10**6,
    seed: int = 0,
    table: np.ndarray | None = None,
) -> CheckResult:
    """Associativity, identity, and inverse axioms for the extension group.

    Exhaustive by default for p <= 7 (all |G|^3 triples, vectorized);
    otherwise a fixed-seed sample of ``samples`` triples.
    """
    t = phi_table(p) if table is None else table
    if exhaustive is None:
        exhaustive = p <= 7
    elements = _group_elements(p)
    n = len(elements)
    ident = (0, 0, 1)
    for g in elements:
        if group_mul(g, ident, p, t) != g or group_mul(ident, g, p, t) != g:
            return CheckResult(False, 0, g, "identity axiom")
        gi = group_inverse(g, p, t)
        if group_mul(g, gi, p, t) != ident or group_mul(gi, g, p, t) != ident:
            return CheckResult(False, 0, g, "inverse axiom")

    arr = np.array(elements, dtype=np.int64)  # (n, 3)

    def mul_vec(u1, b1, a1, u2, b2, a2):
        ab = (a1 * b2) % p
        return (
            (u1 + a1 * u2 + t[b1, ab]) % p,
            (b1 + ab) % p,
            (a1 * a2) % p,
        )

    checked = 0
    if exhaustive:
        u2 = np.repeat(arr[:, 0], n)
        b2 = np.repeat(arr[:, 1], n)
        a2 = np.repeat(arr[:, 2], n)
        u3 = np.tile(arr[:, 0], n)
        b3 = np.tile(arr[:, 1], n)
        a3 = np.tile(arr[:, 2], n)
        ru, rb, ra = mul_vec(u2, b2, a2, u3, b3, a3)  # g2*g3 for all pairs
        for g1 in elements:
            u1 = np.int64(g1[0])
            b1 = np.int64(g1[1])
            a1 = np.int64(g1[2])
            lu, lb, la = mul_vec(u1, b1, a1, u2, b2, a2)
            xu, xb, xa = mul_vec(lu, lb, la, u3, b3, a3)  # (g1 g2) g3
            yu, yb, ya = mul_vec(u1, b1, a1, ru, rb, ra)  # g1 (g2 g3)
            bad = (xu != yu) | (xb != yb) | (xa != ya)
            checked += bad.size
            if np.any(bad):
                i = int(np.argwhere(bad)[0][0])
                return CheckResult(
                    False,
                    checked,
                    (g1, (int(u2[i]), int(b2[i]), int(a2[i])), (int(u3[i]), int(b3[i]), int(a3[i]))),
                    "associativity",
                )
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, n, size=(samples, 3))
        g1 = arr[idx[:, 0]]
        g2 = arr[idx[:, 1]]
        g3 = arr[idx[:, 2]]
        lu, lb, la = mul_vec(g1[:, 0], g1[:, 1], g1[:, 2], g2[:, 0], g2[:, 1], g2[:, 2])
        xu, xb, xa = mul_vec(lu, lb, la, g3[:, 0], g3[:, 1], g3[:, 2])
        ru, rb, ra = mul_vec(g2[:, 0], g2[:, 1], g2[:, 2], g3[:, 0], g3[:, 1], g3[:, 2])
        yu, yb, ya = mul_vec(g1[:, 0], g1[:, 1], g1[:, 2], ru, rb, ra)
        bad = (xu != yu) | (xb != yb) | (xa != ya)
        checked = samples
        if np.any(bad):
            i = int(np.argwhere(bad)[0][0])
            return CheckResult(
                False,
                checked,
                (tuple(int(v) for v in g1[i]), tuple(int(v) for v in g2[i]), tuple(int(v) for v in g3[i])),
                "associativity (sampled)",
            )
    return CheckResult(True, checked)


# ---------------------------------------------------------------------------
# entropy of rational distributions
# ---------------------------------------------------------------------------


def reduce_distribution(probs, p: int):
    """Validate and reduce a rational distribution mod p.

    Probabilities must be exact rationals with p-unit denominators and
    sum exactly 1.  Exact zeros are dropped.  Returns residues mod p.
    """
    fracs = [Fraction(q) for q in probs]
    if sum(fracs) != 1:
        raise BadParams("probabilities must sum to exactly 1")
    out = []
    for q in fracs:
        if q == 0:
            continue
        if q.denominator % p == 0:
            raise BadParams(f"denominator of {q} is divisible by {p}")
        out.append(
            (q.numerator * pow(q.denominator % p, p - 2, p)) % p
        )
    return out


def _entropy_of_residues(values, p: int, h) -> int | None:
    """Recursive splitting; None if a partial sum hits 1 mod p."""
    total = 0  # running sum of consumed probabilities mod p
    acc = 0
    weight = 1  # product of (1 - partial sums), the renormalization factor
    vals = list(values)
    while len(vals) > 1:
        q = vals[0]
        rem = (1 - total) % p
        # entropy of the two-valued split (q/rem, 1 - q/rem), scaled back
        acc = (acc + weight * int(h[(q * pow(rem, p - 2, p)) % p])) % p
        total = (total + q) % p
        new_rem = (1 - total) % p
        if len(vals) > 2 and new_rem == 0:
            return None
        weight = (weight * new_rem * pow(rem, p - 2, p)) % p if new_rem else 0
        vals = vals[1:]
    return acc % p


def entropy_mod_p(
    probs,
    p: int,
    permutation_budget: int = DEFAULT_PERMUTATION_BUDGET,
) -> int:
    """Entropy of a rational distribution reduced mod p.

    Splits off outcomes one at a time: H(p1..pk) = H(p1) + (1-p1) *
    H(renormalized tail).  The given order is tried first, then
    lexicographic permutations, until one avoids partial sums equal to 1
    mod p.  Raises NoAdmissibleOrdering when the budget is exhausted.
    """
    values = reduce_distribution(probs, p)
    h = h_table(p)
    if len(values) <= 1:
        return 0
    first = _entropy_of_residues(values, p, h)
    if first is not None:
        return first
    tried = 1
    for perm in itertools.permutations(sorted(values)):
        if tried >= permutation_budget:
            break
        tried += 1
        res = _entropy_of_residues(list(perm), p, h)
        if res is not None:
            return res
    raise NoAdmissibleOrdering(
        f"no ordering of {values} admits the entropy recursion mod {p}"
    )


def all_ordering_values(probs, p: int):
    """Entropy values over every admissible ordering (for small k)."""
    values = reduce_distribution(probs, p)
    h = h_table(p)
    out = set()
    for perm in itertools.permutations(values):
        res = _entropy_of_residues(list(perm), p, h)
        if res is not None:
            out.add(res)
    return out


def main_identity_check(coarse, refinement, p: int) -> CheckResult:
    """H(fine) = H(coarse) + sum_i coarse_i * H(group_i / coarse_i)."""
    coarse = [Fraction(q) for q in coarse]
    if len(refinement) != len(coarse):
        raise BadParams("refinement must have one group per coarse entry")
    fine = []
    for ci, group in zip(coarse, refinement):
        group = [Fraction(q) for q in group]
        if sum(group) != ci:
            raise BadParams("refinement group does not sum to its entry")
        fine.extend(group)
    lhs = entropy_mod_p(fine, p)
    rhs = entropy_mod_p(coarse, p)
    for ci, group in zip(coarse, refinement):
        if ci == 0:
            continue
        if ci.denominator % p == 0 or ci.numerator % p == 0:
            raise BadParams(f"coarse probability {ci} not invertible mod {p}")
        conditional = [Fraction(q) / ci for q in group]
        ci_mod = (ci.numerator * pow(ci.denominator % p, p - 2, p)) % p
        rhs = (rhs + ci_mod * entropy_mod_p(conditional, p)) % p
    return CheckResult(lhs == rhs % p, 1, None if lhs == rhs % p else (lhs, rhs % p))
