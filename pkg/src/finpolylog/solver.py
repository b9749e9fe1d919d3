"""Linear-algebra characterization of polynomial solutions.

Each catalog equation, read with an unknown polynomial P(T) = sum a_i T^i
of degree <= p-1 in place of the polylogarithm, becomes a linear system
over GF(p) in the coefficients a_0..a_{p-1}: substituting the equation's
arguments into P and clearing denominators yields one polynomial identity
whose monomial coefficients are linear forms in the a_i.  The kernel of
the stacked systems is the solution space of the corresponding presets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import BadParams, UnknownId
from .finlog import finite_polylog, tau
from .formal import FormalSum
from .poly import PrimeDomain, RatFunc, SparsePoly
from . import catalog as _catalog


def equation_columns(s: FormalSum, p: int, deg: int | None = None) -> list:
    """Columns of the linear system attached to a template equation.

    Column j (0 <= j <= deg, default deg = p-1) is the polynomial
    multiplying the unknown coefficient a_j after substituting
    P(T) = sum a_j T^j into every term of ``s`` and clearing all
    denominators globally (coefficients are raised to the p-th power,
    matching the twisted evaluation convention).
    """
    if deg is None:
        deg = p - 1
    dom = s.domain
    if dom.kind != "prime" or dom.p != p:
        raise BadParams("template must live over GF(p)")
    variables = s.variables

    prepared = []
    need = {}

    def add_need(key, fac, mult):
        cur = need.get(key)
        if cur is None:
            need[key] = [fac, mult]
        elif mult > cur[1]:
            cur[1] = mult

    for c, x in s.terms:
        cf = c.frobenius()
        used = {}
        for fac, mult in cf.factors:
            key = fac.serialize()
            used[key] = used.get(key, 0) + mult
            add_need(key, fac, used[key])
        if x.is_constant():
            v = 0 if x.is_zero() else int(x.constant_value()) % p
            prepared.append(("const", cf.num, v, used))
            continue
        for fac, mult in x.factors:
            key = fac.serialize()
            used[key] = used.get(key, 0) + mult * deg
            add_need(key, fac, used[key])
        prepared.append(("arg", cf.num, x, used))

    power_cache = {}

    def factor_power(key, e):
        if e == 0:
            return None
        fac = need[key][0]
        cache = power_cache.setdefault(key, {1: fac})
        if e not in cache:
            best = max(k for k in cache if k <= e)
            cur = cache[best]
            while best < e:
                cur = cur * fac
                best += 1
                cache[best] = cur
        return cache[e]

    cols = [SparsePoly.zero(variables, dom) for _ in range(deg + 1)]
    for kind, cfn, payload, used in prepared:
        cofactor = None
        for key, (fac, mult) in need.items():
            extra = mult - used.get(key, 0)
            fp = factor_power(key, extra)
            if fp is not None:
                cofactor = fp if cofactor is None else cofactor * fp
        base = cfn if cofactor is None else cfn * cofactor
        if kind == "const":
            v = payload
            vj = 1
            for j in range(deg + 1):
                if vj:
                    cols[j] = cols[j] + base.scale(vj)
                vj = (vj * v) % p
        else:
            x = payload
            n = x.num
            d = x.den
            n_pows = [SparsePoly.const(variables, dom, 1)]
            d_pows = [SparsePoly.const(variables, dom, 1)]
            for _ in range(deg):
                n_pows.append(n_pows[-1] * n)
                d_pows.append(d_pows[-1] * d)
            for j in range(deg + 1):
                cols[j] = cols[j] + base * (n_pows[j] * d_pows[deg - j])
    return cols


def columns_matrix(cols, p: int) -> np.ndarray:
    """Stack the column polynomials into a dense (monomials x ncols) matrix."""
    index = {}
    rows = []
    mat_entries = []
    for j, poly in enumerate(cols):
        for exps, coeff in poly.terms.items():
            if exps not in index:
                index[exps] = len(rows)
                rows.append(exps)
            mat_entries.append((index[exps], j, coeff % p))
    order = sorted(range(len(rows)), key=lambda i: (sum(rows[i]), rows[i]))
    rank_of = {old: new for new, old in enumerate(order)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, j, v in mat_entries:
        mat[rank_of[r], j] = v
    return mat


def substitute_into_columns(cols, vec, p: int) -> SparsePoly:
    """Residual polynomial for a concrete coefficient vector."""
    acc = None
    for j, q in enumerate(vec):
        q = int(q) % p
        if q == 0:
            continue
        piece = cols[j].scale(q)
        acc = piece if acc is None else acc + piece
    if acc is None:
        acc = SparsePoly.zero(cols[0].variables, cols[0].domain)
    return acc


def h_two_term_matrix(p: int, deg: int) -> np.ndarray:
    """Rows forcing h(T) = T P'(T) to satisfy h(x) = h(1-x)."""
    dom = PrimeDomain(p)
    x = SparsePoly.variable("x", ("x",), dom)
    one = SparsePoly.const(("x",), dom, 1)
    cols = []
    for j in range(deg + 1):
        cols.append((x**j - (one - x) ** j).scale(j))
    return columns_matrix(cols, p)


def constant_term_matrix(p: int, deg: int) -> np.ndarray:
    """Single row forcing P(0) = 0."""
    row = np.zeros((1, deg + 1), dtype=np.int64)
    row[0, 0] = 1
    return row


_SIDE_CONDITIONS = {
    "P0_zero": constant_term_matrix,
    "h_two_term": h_two_term_matrix,
}

PRESETS = {
    "FEIT": {
        "constraints": (("feit", {}),),
        "side": ("P0_zero",),
        "target": 1,
        "expected_dim": 1,
        "degree": "p-1",
    },
    "L1_TRIPLE": {
        "constraints": (
            ("two_term", {}),
            ("inversion", {"n": 1}),
            ("distribution", {"n": 1, "m": 2}),
        ),
        "side": (),
        "target": 1,
        "expected_dim": 1,
    },
    "THREE_TERM": {
        "constraints": (("three_term", {}),),
        "side": (),
        "target": 2,
        "expected_dim": None,
        "degree": "p",
    },
    "L2_PAIR": {
        "constraints": (
            ("three_term", {}),
            ("distribution", {"n": 2, "m": 2}),
        ),
        "side": (),
        "target": 2,
        "expected_dim": 1,
        "degree": "p-1",
    },
    "KS": {
        "constraints": (("kummer_spence", {}),),
        "side": (),
        "target": 2,
        "expected_dim": 1,
        "degree": "p-1",
    },
    "J": {
        "constraints": (("cathelineau_J", {}),),
        "side": (),
        "target": 2,
        "expected_dim": 1,
        "degree": "p-1",
    },
    "THM423": {
        "constraints": (
            ("distribution", {"n": 2, "m": 2}),
            ("three_term", {}),
        ),
        "side": ("h_two_term",),
        "target": 2,
        "expected_dim": 1,
        "degree": "p-1",
    },
}


def preset_degree(preset: str, p: int) -> int:
    return p if PRESETS[preset].get("degree") == "p" else p - 1


def _rref(mat: np.ndarray, p: int):
    """Reduced row echelon form over GF(p) with deterministic pivoting.

    Rows are consumed in their given order; the pivot of each new row is
    its first nonzero column.  Returns (pivot_cols, pivot_rows) where
    pivot_rows[i] is the normalized row with leading column pivot_cols[i].
    """
    ncols = mat.shape[1]
    pivots = {}
    for raw in mat:
        row = raw % p
        while True:
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                break
            c = int(nz[0])
            if c not in pivots:
                inv = pow(int(row[c]), p - 2, p)
                pivots[c] = (row * inv) % p
                break
            row = (row - int(row[c]) * pivots[c]) % p
        if len(pivots) == ncols:
            break
    cols_sorted = sorted(pivots)
    # back-substitute to full reduction
    for i, c in enumerate(cols_sorted):
        row = pivots[c]
        for c2 in cols_sorted[i + 1 :]:
            if row[c2]:
                row = (row - int(row[c2]) * pivots[c2]) % p
        pivots[c] = row
    return cols_sorted, [pivots[c] for c in cols_sorted]


def kernel_basis(mat: np.ndarray, p: int):
    """Deterministic basis of the right nullspace of ``mat`` over GF(p).

    Each basis vector has a 1 in its own free column and 0 in every other
    free column, ordered by ascending free column index.
    """
    ncols = mat.shape[1]
    pivot_cols, pivot_rows = _rref(mat, p)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = np.zeros(ncols, dtype=np.int64)
        vec[f] = 1
        for c, row in zip(pivot_cols, pivot_rows):
            vec[c] = (-int(row[f])) % p
        basis.append(vec)
    return basis


def in_span(basis, vec, p: int) -> bool:
    """Membership test against a kernel basis in free-column normal form."""
    vec = np.asarray(vec, dtype=np.int64) % p
    if not basis:
        return not np.any(vec)
    mat = np.stack(basis) % p
    cols, rows = _rref(mat, p)
    res = vec.copy()
    for c, row in zip(cols, rows):
        if res[c]:
            res = (res - int(res[c]) * row) % p
    return not np.any(res)


def polylog_vector(n: int, p: int, deg: int | None = None) -> np.ndarray:
    if deg is None:
        deg = p - 1
    poly = finite_polylog(n, p)
    vec = np.zeros(deg + 1, dtype=np.int64)
    for exps, coeff in poly.terms.items():
        vec[exps[0]] = coeff % p
    return vec


def tau_vector(i: int, p: int, deg: int | None = None) -> np.ndarray:
    """Coefficient vector of tau_i inside polynomials of degree <= deg."""
    if deg is None:
        deg = p - 1
    poly = tau(i, p)
    if poly.total_degree() > deg:
        raise BadParams(f"tau_{i} has degree {poly.total_degree()} > {deg}")
    vec = np.zeros(deg + 1, dtype=np.int64)
    for exps, coeff in poly.terms.items():
        vec[exps[0]] = coeff % p
    return vec


def tau_satisfies_three_term(i: int, p: int) -> bool:
    """Direct substitution of tau_i into T^p Q(1-1/T) - Q(T) + Q(1-T)."""
    dom = PrimeDomain(p)
    t = SparsePoly.variable("T", ("T",), dom)
    one = SparsePoly.const(("T",), dom, 1)
    q = tau(i, p)
    t_rf = RatFunc(t)
    one_rf = RatFunc(one)
    sub = q.substitute({"T": (t_rf - one_rf) / t_rf})
    shifted = q.substitute({"T": one_rf - t_rf})
    residual = t_rf**p * sub - RatFunc(q) + shifted
    return residual.num.is_zero()


def tau_family_rank(p: int) -> int:
    """Rank of {tau_i : 0 <= i <= (p-1)//3} inside polynomials of deg <= p."""
    bound = (p - 1) // 3
    mat = np.zeros((bound + 1, p + 1), dtype=np.int64)
    for i in range(bound + 1):
        poly = tau(i, p)
        for exps, coeff in poly.terms.items():
            mat[i, exps[0]] = coeff % p
    cols, _rows = _rref(mat, p)
    return len(cols)


@dataclass
class KernelReport:
    """Result of characterizing a preset's polynomial solution space."""

    preset: str
    p: int
    dimension: int
    basis: list = field(default_factory=list)
    rows: int = 0
    target_weight: int = 0
    contains_target: bool = False
    proportional_to_target: bool = False
    zero_constant_term: bool = False

    def as_dict(self) -> dict:
        return {
            "preset": self.preset,
            "p": self.p,
            "dimension": self.dimension,
            "rows": self.rows,
            "basis": [[int(v) for v in b] for b in self.basis],
            "target_weight": self.target_weight,
            "contains_target": self.contains_target,
            "proportional_to_target": self.proportional_to_target,
            "zero_constant_term": self.zero_constant_term,
        }


def preset_matrices(preset: str, p: int):
    if preset not in PRESETS:
        raise UnknownId(f"unknown preset {preset!r}")
    info = PRESETS[preset]
    deg = preset_degree(preset, p)
    mats = []
    for eq_id, params in info["constraints"]:
        s = _catalog.build(eq_id, p, **params)
        mats.append(columns_matrix(equation_columns(s, p, deg), p))
    for side in info["side"]:
        mats.append(_SIDE_CONDITIONS[side](p, deg))
    return mats


def characterize(preset: str, p: int) -> KernelReport:
    info = PRESETS[preset]
    deg = preset_degree(preset, p)
    mats = preset_matrices(preset, p)
    stacked = np.vstack(mats)
    basis = kernel_basis(stacked, p)
    target = polylog_vector(info["target"], p, deg)
    contains = in_span(basis, target, p)
    report = KernelReport(
        preset=preset,
        p=p,
        dimension=len(basis),
        basis=basis,
        rows=int(stacked.shape[0]),
        target_weight=info["target"],
        contains_target=contains,
        proportional_to_target=(len(basis) == 1 and contains),
        zero_constant_term=all(int(b[0]) % p == 0 for b in basis),
    )
    return report


def basis_residuals(preset: str, p: int, basis) -> bool:
    """Soundness: every basis vector strongly satisfies each constraint."""
    info = PRESETS[preset]
    deg = preset_degree(preset, p)
    for eq_id, params in info["constraints"]:
        s = _catalog.build(eq_id, p, **params)
        cols = equation_columns(s, p, deg)
        for vec in basis:
            if not substitute_into_columns(cols, vec, p).is_zero():
                return False
    return True


def kernels_equal(preset_a: str, preset_b: str, p: int) -> bool:
    """Whether two presets cut out the same subspace of GF(p)[T]_{<p}."""
    ba = characterize(preset_a, p).basis
    bb = characterize(preset_b, p).basis
    if len(ba) != len(bb):
        return False
    return all(in_span(bb, v, p) for v in ba) and all(
        in_span(ba, v, p) for v in bb
    )


def lemma417_sequence(p: int, a1: int = 1) -> dict:
    """Solve the descending recurrence for sequences satisfying the
    three combinatorial rules, and check the closed form a_k = a1/k.

    Rules: a_k = -(1/2) sum_{i>k} C(i,k) a_i for odd k; a_k = a_{k/2}/2
    for even k; and a_{p-k} = -a_k.
    """
    if p < 5:
        raise BadParams("p must be at least 5")
    a1 %= p
    inv2 = pow(2, p - 2, p)
    a = {1: a1, p - 1: (-a1) % p}
    for k in range(p - 2, 1, -1):
        if k % 2 == 1:
            acc = 0
            for i in range(k + 1, p):
                acc = (acc + comb(i, k) * a[i]) % p
            a[k] = (-inv2 * acc) % p
        elif k == 2:
            a[2] = (inv2 * a1) % p
        else:
            t = (p - k + 1) // 2
            a_t = (-a[p - t]) % p
            a_pk1 = (inv2 * a_t) % p
            a_k1 = (-a_pk1) % p
            acc = 0
            for i in range(k + 1, p):
                acc = (acc + comb(i, k - 1) * a[i]) % p
            # rule for odd index k-1: a_{k-1} = -(1/2)(k a_k + acc)
            a[k] = ((-2 * a_k1 - acc) * pow(k, p - 2, p)) % p
    seq = tuple(a[k] for k in range(1, p))
    closed = tuple((a1 * pow(k, p - 2, p)) % p for k in range(1, p))
    return {
        "p": p,
        "a1": a1,
        "sequence": seq,
        "matches_closed_form": seq == closed,
        "antisymmetric": all(a[p - k] == (-a[k]) % p for k in range(1, p)),
    }
