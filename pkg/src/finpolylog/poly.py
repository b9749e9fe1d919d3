"""Sparse multivariate polynomials and rational functions over exact domains.

Polynomials are stored as a map from exponent tuples to nonzero coefficients
over a fixed ordered variable universe.  Supported coefficient domains are
exact rationals, prime fields GF(p) (coefficients stored as ints in [0, p))
and extension fields GF(p^e) (coefficients stored as FieldElement).  Mixing
domains or variable universes raises DomainMismatch.

Rational functions keep their denominator as a multiset of monic factor
polynomials.  There is no full multivariate gcd; reduction removes factors
that divide the numerator exactly and normalizes the leading denominator
coefficient, which is enough because every construction in this package
builds denominators in factored form.  Equality is decided by
cross-multiplication.

Large products over GF(p) are routed through a vectorized kernel that packs
exponent tuples into integer keys and aggregates with numpy; this keeps the
big identity checks tractable in pure Python.
"""

from fractions import Fraction

import numpy as np

from .errors import (
    BadParams,
    DomainMismatch,
    InadmissiblePoint,
    SizeExceeded,
    ZeroDenominator,
    ZeroInverse,
)
from .fields import FieldDescriptor, FieldElement

DEFAULT_TERM_CAP = 10**7
_FAST_MUL_THRESHOLD = 4096
_FAST_CHUNK_PAIRS = 24_000_000


class RationalDomain:
    """Exact rational coefficients (Fraction)."""

    characteristic = 0
    kind = "rational"

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise DomainMismatch(f"cannot coerce {value!r} into rationals")

    def one(self):
        return Fraction(1)

    def inv(self, value):
        if value == 0:
            raise ZeroInverse("division by zero in rationals")
        return 1 / value

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeDomain:
    """GF(p) coefficients stored as plain ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.field = FieldDescriptor(p)

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, FieldElement):
            if value.field == self.field:
                return value.coords[0]
            raise DomainMismatch("element of a different field")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroInverse("denominator divisible by p")
            return (
                value.numerator
                * pow(value.denominator, self.p - 2, self.p)
            ) % self.p
        raise DomainMismatch(f"cannot coerce {value!r} into GF({self.p})")

    def one(self):
        return 1

    def inv(self, value):
        v = value % self.p
        if v == 0:
            raise ZeroInverse(f"division by zero in GF({self.p})")
        return pow(v, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeDomain) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionDomain:
    """GF(p^e), e > 1, coefficients stored as FieldElement."""

    kind = "extension"

    def __init__(self, field: FieldDescriptor):
        if field.e == 1:
            raise BadParams("use PrimeDomain for e = 1")
        self.field = field
        self.characteristic = field.p
        self.p = field.p

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field == self.field:
                return value
            if value.field.e == 1 and value.field.p == self.p:
                return self.field.element(value.coords[0])
            raise DomainMismatch("element of a different field")
        if isinstance(value, int):
            return self.field.element(value)
        raise DomainMismatch(f"cannot coerce {value!r} into {self.field!r}")

    def one(self):
        return self.field.one()

    def inv(self, value):
        return value.inverse()

    def __eq__(self, other):
        return isinstance(other, ExtensionDomain) and other.field == self.field

    def __hash__(self):
        return hash(("ext", self.field))

    def __repr__(self):
        return repr(self.field)


def _is_zero_coeff(c):
    if isinstance(c, FieldElement):
        return c.is_zero()
    return c == 0


def _gradlex_key(exps):
    return (sum(exps), exps)


class SparsePoly:
    """Immutable sparse polynomial over a fixed variable universe."""

    __slots__ = ("vars", "domain", "terms")

    def __init__(self, variables, domain, terms, *, copy=True):
        self.vars = tuple(variables)
        self.domain = domain
        if copy:
            coerced = {}
            for e, c in terms.items():
                c = domain.coerce(c)
                if not _is_zero_coeff(c):
                    coerced[e] = c
            terms = coerced
        if len(terms) > DEFAULT_TERM_CAP:
            raise SizeExceeded(
                f"polynomial with {len(terms)} terms exceeds cap"
            )
        self.terms = terms

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, variables, domain):
        return cls(variables, domain, {}, copy=False)

    @classmethod
    def const(cls, variables, domain, value):
        value = domain.coerce(value)
        if _is_zero_coeff(value):
            return cls.zero(variables, domain)
        zero_exp = (0,) * len(variables)
        return cls(variables, domain, {zero_exp: value}, copy=False)

    @classmethod
    def variable(cls, name, variables, domain):
        variables = tuple(variables)
        if name not in variables:
            raise BadParams(f"{name!r} is not in the variable universe")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, domain, {exp: domain.one()}, copy=False)

    # -- helpers -----------------------------------------------------

    def _compat(self, other):
        if not isinstance(other, SparsePoly):
            raise DomainMismatch("expected a SparsePoly")
        if other.domain != self.domain or other.vars != self.vars:
            raise DomainMismatch(
                "operands have different domains or variable universes"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        zero_exp = (0,) * len(self.vars)
        return len(self.terms) == 1 and zero_exp in self.terms

    def constant_value(self):
        if self.is_zero():
            return self.domain.coerce(0)
        zero_exp = (0,) * len(self.vars)
        if not self.is_constant():
            raise BadParams("polynomial is not constant")
        return self.terms[zero_exp]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degrees_by_var(self):
        degs = [0] * len(self.vars)
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei > degs[i]:
                    degs[i] = ei
        return tuple(degs)

    def leading_exponent(self):
        if not self.terms:
            raise BadParams("zero polynomial has no leading term")
        return max(self.terms, key=_gradlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_exponent()]

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = SparsePoly.const(self.vars, self.domain, other)
        self._compat(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            if e in out:
                s = out[e] + c
                if self.domain.kind == "prime":
                    s %= self.domain.p
                if _is_zero_coeff(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return SparsePoly(self.vars, self.domain, out, copy=False)

    __radd__ = __add__

    def __neg__(self):
        if self.domain.kind == "prime":
            p = self.domain.p
            out = {e: (p - c) % p for e, c in self.terms.items()}
        else:
            out = {e: -c for e, c in self.terms.items()}
        return SparsePoly(self.vars, self.domain, out, copy=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = SparsePoly.const(self.vars, self.domain, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        self._compat(other)
        if not self.terms or not other.terms:
            return SparsePoly.zero(self.vars, self.domain)
        pairs = len(self.terms) * len(other.terms)
        if self.domain.kind == "prime" and pairs > _FAST_MUL_THRESHOLD:
            return _mul_prime_fast(self, other)
        out = {}
        if self.domain.kind == "prime":
            p = self.domain.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    out[e] = (out.get(e, 0) + c1 * c2) % p
            out = {e: c for e, c in out.items() if c}
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    s = out.get(e)
                    out[e] = c1 * c2 if s is None else s + c1 * c2
            out = {e: c for e, c in out.items() if not _is_zero_coeff(c)}
        return SparsePoly(self.vars, self.domain, out, copy=False)

    __rmul__ = __mul__

    def scale(self, value):
        value = self.domain.coerce(value)
        if _is_zero_coeff(value):
            return SparsePoly.zero(self.vars, self.domain)
        if self.domain.kind == "prime":
            p = self.domain.p
            out = {e: (c * value) % p for e, c in self.terms.items()}
        else:
            out = {e: c * value for e, c in self.terms.items()}
        return SparsePoly(self.vars, self.domain, out, copy=False)

    def __pow__(self, n: int):
        if n < 0:
            raise BadParams("negative polynomial power")
        result = SparsePoly.const(self.vars, self.domain, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.vars == other.vars
            and self.domain == other.domain
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.vars, self.domain, frozenset(self.terms.items()))
        )

    # -- calculus and structure ----------------------------------------

    def derivative(self, var: str) -> "SparsePoly":
        if var not in self.vars:
            raise BadParams(f"unknown variable {var!r}")
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            if self.domain.kind == "prime":
                nc = (c * k) % self.domain.p
            else:
                nc = c * k
            if _is_zero_coeff(nc):
                continue
            ne = e[:i] + (k - 1,) + e[i + 1 :]
            out[ne] = nc
        return SparsePoly(self.vars, self.domain, out, copy=False)

    def coefficient_of(self, var: str, k: int) -> "SparsePoly":
        """Coefficient of var**k, a polynomial in the remaining variables
        (returned over the same universe with that variable absent)."""
        if var not in self.vars:
            raise BadParams(f"unknown variable {var!r}")
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return SparsePoly(self.vars, self.domain, out, copy=False)

    def frobenius(self) -> "SparsePoly":
        """p-th power, computed coefficient-wise: exponents scale by p and
        coefficients map through the Frobenius of the coefficient field."""
        if self.domain.kind == "rational":
            raise DomainMismatch("Frobenius requires positive characteristic")
        p = self.domain.characteristic
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x * p for x in e)
            if self.domain.kind == "prime":
                out[ne] = c  # Fermat: c^p = c in GF(p)
            else:
                out[ne] = c.frobenius()
        return SparsePoly(self.vars, self.domain, out, copy=False)

    def evaluate(self, point: dict):
        """Evaluate at a point given as {var: value}.  Values may be ints,
        Fractions (rational domain) or FieldElement (finite domains,
        including extension values over prime-domain polynomials)."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise BadParams(f"missing values for {missing}")
        if self.domain.kind == "rational":
            coerce = lambda v: v if isinstance(v, Fraction) else Fraction(v)
            zero, one = Fraction(0), Fraction(1)
            values = [coerce(point[v]) for v in self.vars]
        else:
            field = None
            for v in self.vars:
                val = point[v]
                if isinstance(val, FieldElement):
                    if field is None:
                        field = val.field
                    elif field != val.field:
                        raise DomainMismatch("mixed evaluation fields")
            if field is None:
                field = FieldDescriptor(self.domain.characteristic)
            if field.p != self.domain.characteristic:
                raise DomainMismatch("evaluation field has wrong characteristic")
            values = [
                point[v]
                if isinstance(point[v], FieldElement)
                else field.element(int(point[v]))
                for v in self.vars
            ]
            zero, one = field.zero(), field.one()
        # fast path: prime-domain polynomial at prime-field points
        if (
            self.domain.kind == "prime"
            and all(v.field.e == 1 for v in values)
        ):
            p = self.domain.p
            ints = [v.coords[0] for v in values]
            acc = 0
            powcache = [dict() for _ in ints]
            for e, c in self.terms.items():
                t = c
                for i, k in enumerate(e):
                    if k:
                        pc = powcache[i]
                        if k not in pc:
                            pc[k] = pow(ints[i], k, p)
                        t = (t * pc[k]) % p
                acc = (acc + t) % p
            return values[0].field.element(acc) if values else (
                FieldDescriptor(p).element(acc)
            )
        acc = zero
        powcache = [dict() for _ in values]
        for e, c in self.terms.items():
            t = one
            for i, k in enumerate(e):
                if k:
                    pc = powcache[i]
                    if k not in pc:
                        pc[k] = values[i] ** k
                    t = t * pc[k]
            if self.domain.kind == "extension" or isinstance(c, FieldElement):
                acc = acc + t * c
            elif self.domain.kind == "prime":
                acc = acc + t * c
            else:
                acc = acc + t * c
        return acc

    def substitute(self, assignments: dict) -> "RatFunc":
        """Substitute rational functions for variables; unassigned variables
        must exist in the target universe and map to themselves."""
        if not assignments:
            return RatFunc(self)
        sample = next(iter(assignments.values()))
        tvars, tdom = sample.num.vars, sample.num.domain
        for rf in assignments.values():
            if rf.num.vars != tvars or rf.num.domain != tdom:
                raise DomainMismatch("inconsistent substitution targets")
        if tdom != self.domain:
            raise DomainMismatch("substitution changes the coefficient domain")
        values = {}
        for v in self.vars:
            if v in assignments:
                values[v] = assignments[v]
            else:
                if v not in tvars:
                    raise DomainMismatch(
                        f"variable {v!r} missing from target universe"
                    )
                values[v] = RatFunc(SparsePoly.variable(v, tvars, tdom))
        acc = RatFunc(SparsePoly.zero(tvars, tdom))
        powcache = {v: {} for v in self.vars}
        for e, c in self.terms.items():
            term = RatFunc(SparsePoly.const(tvars, tdom, c))
            for v, k in zip(self.vars, e):
                if k:
                    pc = powcache[v]
                    if k not in pc:
                        pc[k] = values[v] ** k
                    term = term * pc[k]
            acc = acc + term
        return acc

    def extend(self, variables) -> "SparsePoly":
        """Re-express over a larger variable universe."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if v not in variables:
                raise BadParams(f"universe does not contain {v!r}")
            idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return SparsePoly(variables, self.domain, out, copy=False)

    def monic(self):
        """Return (unit, monic poly) with poly = self / unit."""
        if self.is_zero():
            raise BadParams("zero polynomial cannot be made monic")
        lead = self.leading_coefficient()
        inv = self.domain.inv(lead)
        return lead, self.scale(inv)

    def serialize(self) -> str:
        """Deterministic text form: graded-lex descending monomial order."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_gradlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e)
                if k
            )
            if isinstance(c, FieldElement):
                cs = (
                    str(c.coords[0])
                    if c.field.e == 1
                    else "(" + ",".join(map(str, c.coords)) + ")"
                )
            else:
                cs = str(c)
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.serialize()})"


def _mul_prime_fast(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Vectorized GF(p) multiplication: pack exponents into int64 keys,
    form outer products in chunks and aggregate with numpy."""
    p = f.domain.p
    nv = len(f.vars)
    degf = f.degrees_by_var()
    degg = g.degrees_by_var()
    radices = [a + b + 1 for a, b in zip(degf, degg)]
    total = 1
    for r in radices:
        total *= r
    if total >= (1 << 62):
        raise SizeExceeded("exponent packing overflow in fast multiply")
    strides = np.empty(nv, dtype=np.int64)
    acc = 1
    for i in range(nv):
        strides[i] = acc
        acc *= radices[i]

    def pack(poly):
        n = len(poly.terms)
        exps = np.empty((n, nv), dtype=np.int64)
        vals = np.empty(n, dtype=np.int64)
        for row, (e, c) in enumerate(poly.terms.items()):
            exps[row] = e
            vals[row] = c
        return exps @ strides, vals

    kf, vf = pack(f)
    kg, vg = pack(g)
    if len(kf) > len(kg):
        kf, vf, kg, vg = kg, vg, kf, vf
    chunk = max(1, _FAST_CHUNK_PAIRS // max(1, len(kg)))
    acc_keys = []
    acc_vals = []
    for start in range(0, len(kf), chunk):
        ks = kf[start : start + chunk]
        vs = vf[start : start + chunk]
        keys = (ks[:, None] + kg[None, :]).ravel()
        vals = ((vs[:, None] * vg[None, :]) % p).ravel()
        uk, inverse = np.unique(keys, return_inverse=True)
        sums = np.bincount(inverse, weights=vals.astype(np.float64))
        sv = np.asarray(np.rint(sums), dtype=np.int64) % p
        keep = sv != 0
        acc_keys.append(uk[keep])
        acc_vals.append(sv[keep])
    if not acc_keys:
        return SparsePoly.zero(f.vars, f.domain)
    keys = np.concatenate(acc_keys)
    vals = np.concatenate(acc_vals)
    uk, inverse = np.unique(keys, return_inverse=True)
    sums = np.bincount(inverse, weights=vals.astype(np.float64))
    sv = np.asarray(np.rint(sums), dtype=np.int64) % p
    keep = sv != 0
    uk, sv = uk[keep], sv[keep]
    if len(uk) > DEFAULT_TERM_CAP:
        raise SizeExceeded("fast multiply result exceeds term cap")
    # unpack
    out = {}
    rem = uk.copy()
    cols = []
    for i in range(nv):
        cols.append(rem % radices[i])
        rem //= radices[i]
    exps = np.stack(cols, axis=1) if nv else np.empty((len(uk), 0))
    for row in range(len(uk)):
        out[tuple(int(x) for x in exps[row])] = int(sv[row])
    return SparsePoly(f.vars, f.domain, out, copy=False)


def exact_divide(f: SparsePoly, g: SparsePoly):
    """Return f / g if g divides f exactly, else None (graded-lex division)."""
    f._compat(g)
    if g.is_zero():
        raise ZeroDenominator("division by the zero polynomial")
    if f.is_zero():
        return f
    glead = g.leading_exponent()
    gc_inv = f.domain.inv(g.terms[glead])
    rem = dict(f.terms)
    quo = {}
    p = f.domain.p if f.domain.kind == "prime" else None
    # bail out early if the division cannot terminate quickly
    steps = 0
    max_steps = 4 * len(f.terms) + 64
    while rem:
        steps += 1
        if steps > max_steps:
            return None
        rlead = max(rem, key=_gradlex_key)
        diff = tuple(a - b for a, b in zip(rlead, glead))
        if any(d < 0 for d in diff):
            return None
        if p is not None:
            qc = (rem[rlead] * gc_inv) % p
        else:
            qc = rem[rlead] * gc_inv
        quo[diff] = qc
        for ge, gcoef in g.terms.items():
            e = tuple(a + b for a, b in zip(diff, ge))
            if p is not None:
                nc = (rem.get(e, 0) - qc * gcoef) % p
            else:
                nc = rem.get(e, 0) - qc * gcoef
            if _is_zero_coeff(nc):
                rem.pop(e, None)
            else:
                rem[e] = nc
    return SparsePoly(f.vars, f.domain, quo, copy=False)


_REDUCE_NUM_CAP = 6000


class RatFunc:
    """Rational function num / prod(factor^mult) with monic tracked factors."""

    __slots__ = ("num", "factors", "_den")

    def __init__(self, num: SparsePoly, factors=(), *, reduce=True):
        norm = []
        for fac, mult in factors:
            if mult == 0:
                continue
            if mult < 0:
                raise BadParams("negative factor multiplicity")
            num._compat(fac)
            if fac.is_zero():
                raise ZeroDenominator("zero denominator factor")
            if fac.is_constant():
                c = fac.constant_value()
                num = num.scale(num.domain.inv(c) if mult == 1 else
                                _pow_coeff(num.domain, num.domain.inv(c), mult))
                continue
            lead, monic_fac = fac.monic()
            if not _is_coeff_one(lead):
                inv_l = num.domain.inv(lead)
                num = num.scale(_pow_coeff(num.domain, inv_l, mult))
            norm.append((monic_fac, mult))
        if reduce and norm and not num.is_zero() and len(num.terms) <= _REDUCE_NUM_CAP:
            reduced = []
            for fac, mult in norm:
                while mult > 0:
                    q = exact_divide(num, fac)
                    if q is None:
                        break
                    num = q
                    mult -= 1
                if mult:
                    reduced.append((fac, mult))
            norm = reduced
        if num.is_zero():
            norm = []
        # merge identical factors and order deterministically
        merged = {}
        for fac, mult in norm:
            key = fac.serialize()
            if key in merged:
                merged[key] = (fac, merged[key][1] + mult)
            else:
                merged[key] = (fac, mult)
        self.num = num
        self.factors = tuple(
            merged[k] for k in sorted(merged)
        )
        self._den = None

    # -- basic structure ---------------------------------------------

    @property
    def den(self) -> SparsePoly:
        if self._den is None:
            d = SparsePoly.const(self.num.vars, self.num.domain, 1)
            for fac, mult in self.factors:
                d = d * fac**mult
            self._den = d
        return self._den

    @classmethod
    def const(cls, variables, domain, value):
        return cls(SparsePoly.const(variables, domain, value))

    @classmethod
    def variable(cls, name, variables, domain):
        return cls(SparsePoly.variable(name, variables, domain))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.factors

    def is_constant(self) -> bool:
        return not self.factors and self.num.is_constant()

    def constant_value(self):
        if self.factors:
            raise BadParams("not a constant")
        return self.num.constant_value()

    def _compat(self, other):
        if not isinstance(other, RatFunc):
            raise DomainMismatch("expected a RatFunc")
        self.num._compat(other.num)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = RatFunc.const(self.num.vars, self.num.domain, other)
        self._compat(other)
        mine = {f.serialize(): (f, m) for f, m in self.factors}
        theirs = {f.serialize(): (f, m) for f, m in other.factors}
        union = {}
        for key, (f, m) in mine.items():
            union[key] = (f, max(m, theirs.get(key, (None, 0))[1]))
        for key, (f, m) in theirs.items():
            if key not in union:
                union[key] = (f, m)
        num1 = self.num
        num2 = other.num
        for key, (f, m) in union.items():
            extra1 = m - mine.get(key, (None, 0))[1]
            extra2 = m - theirs.get(key, (None, 0))[1]
            if extra1:
                num1 = num1 * f**extra1
            if extra2:
                num2 = num2 * f**extra2
        return RatFunc(num1 + num2, tuple(union.values()))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.factors, reduce=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = RatFunc.const(self.num.vars, self.num.domain, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return RatFunc(
                self.num.scale(other), self.factors, reduce=False
            )
        self._compat(other)
        return RatFunc(
            self.num * other.num, self.factors + other.factors
        )

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroInverse("inverse of the zero rational function")
        new_num = self.den
        if self.num.is_constant():
            return RatFunc(
                new_num.scale(self.num.domain.inv(self.num.constant_value()))
            )
        return RatFunc(new_num, ((self.num, 1),))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            inv = self.num.domain.inv(self.num.domain.coerce(other))
            return RatFunc(self.num.scale(inv), self.factors, reduce=False)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc.const(self.num.vars, self.num.domain, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = RatFunc.const(self.num.vars, self.num.domain, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.num.vars != other.num.vars or self.num.domain != other.num.domain:
            return False
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        raise TypeError("RatFunc is unhashable; use canonical_key()")

    # -- structure -------------------------------------------------------

    def canonical_key(self):
        """Deterministic key identifying the reduced num/den pair up to a
        scalar on the numerator side (numerator made monic)."""
        if self.num.is_zero():
            return ("0", "1")
        _, monic_num = self.num.monic()
        den_key = ";".join(
            f"{f.serialize()}^{m}" for f, m in self.factors
        )
        return (monic_num.serialize(), den_key)

    def frobenius(self) -> "RatFunc":
        return RatFunc(
            self.num.frobenius(),
            tuple((f.frobenius(), m) for f, m in self.factors),
            reduce=False,
        )

    def derivative(self, var: str) -> "RatFunc":
        """Quotient-rule derivative; denominator factors gain one power."""
        if not self.factors:
            return RatFunc(self.num.derivative(var))
        # d(num/D) = num'/D - num * D'/D^2 with D = prod f_i^m_i,
        # D'/D = sum m_i f_i'/f_i
        num_d = self.num.derivative(var)
        total = RatFunc(num_d, self.factors)
        for fac, mult in self.factors:
            fd = fac.derivative(var)
            if fd.is_zero():
                continue
            piece = RatFunc(
                self.num * fd.scale(mult),
                self.factors + ((fac, 1),),
            )
            total = total - piece
        return total

    def evaluate(self, point: dict):
        den_val = None
        for fac, mult in self.factors:
            v = fac.evaluate(point)
            if _is_zero_coeff(v):
                raise InadmissiblePoint("denominator vanishes at the point")
            term = v**mult if not isinstance(v, Fraction) else v**mult
            den_val = term if den_val is None else den_val * term
        num_val = self.num.evaluate(point)
        if den_val is None:
            return num_val
        if isinstance(num_val, Fraction):
            return num_val / den_val
        return num_val * den_val.inverse()

    def substitute(self, assignments: dict) -> "RatFunc":
        num = self.num.substitute(assignments)
        result = num
        for fac, mult in self.factors:
            fr = fac.substitute(assignments)
            if fr.is_zero():
                raise ZeroDenominator("substitution kills a denominator factor")
            result = result / fr**mult
        return result

    def serialize(self) -> str:
        num = self.num.serialize()
        if not self.factors:
            return num
        den = "*".join(
            f"({f.serialize()})^{m}" if m > 1 else f"({f.serialize()})"
            for f, m in self.factors
        )
        return f"({num}) / {den}"

    def __repr__(self):
        return f"RatFunc({self.serialize()})"


def _is_coeff_one(c):
    if isinstance(c, FieldElement):
        return c == 1
    return c == 1


def _pow_coeff(domain, c, n):
    out = domain.one()
    for _ in range(n):
        out = (out * c) % domain.p if domain.kind == "prime" else out * c
    return out
