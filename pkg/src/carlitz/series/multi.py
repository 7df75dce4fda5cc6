"""Truncated multivariate power series over exact rationals.

Variables come from a fixed alphabet ``t, x, y, p, q, u``. ``t`` is the
half-step variable (``x = t**2``); a series is written either in ``t`` or in
``x``, never both. Every variable has a weight used by the optional total
cap::

    t: 1   x: 2   y: 2   p: 0   q: 0   u: 0

so a total cap of ``2N`` keeps exactly the monomials of half-perimeter at
most ``N`` when ``x`` (or ``t**2``) marks columns and ``y`` marks rows.
Weight-0 variables are truncated only through their own per-variable cap.

A series is known exactly at every monomial inside its caps and unknown
outside; binary operations keep the tighter of the two truncations, so a
stored coefficient is never a guess.  Asking for a coefficient outside the
caps raises :class:`PrecisionError` rather than returning zero.

Exponent vectors are packed into one integer (20 bits per variable, in
alphabet order), which makes exponent addition a single integer addition.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .rational import ONE, ZERO, Rational, as_rational, rational_sqrt

VARIABLES = ("t", "x", "y", "p", "q", "u")
WEIGHTS = {"t": 1, "x": 2, "y": 2, "p": 0, "q": 0, "u": 0}

_BITS = 20
_MASK = (1 << _BITS) - 1
_MAX_EXP = 1 << (_BITS - 1)
_INDEX = {v: i for i, v in enumerate(VARIABLES)}
_SHIFT = {v: _BITS * i for i, v in enumerate(VARIABLES)}


class TruncationError(ArithmeticError):
    """An operation cannot be carried out exactly under the given truncation."""


class PrecisionError(TruncationError):
    """A coefficient outside the known region of a truncated series was requested."""


def _pack(exps: Mapping[str, int]) -> int:
    key = 0
    for v, e in exps.items():
        if e < 0 or e >= _MAX_EXP:
            raise ValueError(f"exponent {e} of {v} out of range")
        key |= e << _SHIFT[v]
    return key


def _unpack(key: int, variables: Iterable[str]) -> tuple[int, ...]:
    return tuple((key >> _SHIFT[v]) & _MASK for v in variables)


def _exp(key: int, var: str) -> int:
    return (key >> _SHIFT[var]) & _MASK


def _weight(key: int) -> int:
    w = 0
    for v in ("t", "x", "y"):
        e = (key >> _SHIFT[v]) & _MASK
        if e:
            w += WEIGHTS[v] * e
    return w


def _order_vars(names: Iterable[str]) -> tuple[str, ...]:
    names = set(names)
    unknown = names - set(VARIABLES)
    if unknown:
        raise ValueError(f"unknown series variable(s): {sorted(unknown)}")
    if "t" in names and "x" in names:
        raise TruncationError("a series cannot mix t and x (x = t**2)")
    return tuple(v for v in VARIABLES if v in names)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _merge_caps(a: Mapping[str, int], b: Mapping[str, int]) -> dict[str, int]:
    caps = dict(a)
    for v, c in b.items():
        caps[v] = min(caps[v], c) if v in caps else c
    return caps


class MultiSeries:
    """Immutable truncated power series; see the module docstring."""

    __slots__ = ("vars", "caps", "total", "_terms", "_graded")

    def __init__(self, variables, terms=None, *, caps=None, total=None, _packed=False):
        self.vars = _order_vars(variables)
        caps = {v: int(c) for v, c in (caps or {}).items() if c is not None}
        for v in caps:
            if v not in self.vars:
                raise ValueError(f"cap given for absent variable {v!r}")
            if caps[v] < 0:
                raise ValueError("caps must be nonnegative")
        self.caps = caps
        if total is not None and total < 0:
            raise ValueError("total cap must be nonnegative")
        self.total = total
        self._graded = None
        out: dict[int, Rational] = {}
        if terms:
            if _packed:
                items = terms.items()
            else:
                items = ((self._key(e), as_rational(c)) for e, c in terms.items())
            for key, c in items:
                if c and self._inside(key):
                    out[key] = c
        self._terms = out

    # construction helpers -------------------------------------------------

    def _key(self, exps) -> int:
        if isinstance(exps, Mapping):
            extra = set(exps) - set(self.vars)
            if extra:
                raise ValueError(f"exponents for variables not in the series: {sorted(extra)}")
            return _pack(exps)
        exps = tuple(exps)
        if len(exps) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} exponents, got {len(exps)}")
        return _pack(dict(zip(self.vars, exps)))

    def _inside(self, key: int) -> bool:
        if self.total is not None and _weight(key) > self.total:
            return False
        for v, c in self.caps.items():
            if _exp(key, v) > c:
                return False
        return True

    def _new(self, terms, variables=None, caps=None, total="same") -> MultiSeries:
        return MultiSeries(
            self.vars if variables is None else variables,
            terms,
            caps=self.caps if caps is None else caps,
            total=self.total if total == "same" else total,
            _packed=True,
        )

    @classmethod
    def constant(cls, value, variables=(), *, caps=None, total=None) -> MultiSeries:
        return cls(variables, {0: as_rational(value)}, caps=caps, total=total, _packed=True)

    @classmethod
    def gen(cls, name, variables=None, *, caps=None, total=None) -> MultiSeries:
        variables = (name,) if variables is None else variables
        return cls(variables, {_pack({name: 1}): ONE}, caps=caps, total=total, _packed=True)

    # basic accessors ------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Rational]:
        """Coefficients keyed by exponent tuples aligned with ``vars``."""
        return {_unpack(k, self.vars): c for k, c in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def precision(self) -> dict:
        return {"caps": dict(self.caps), "total": self.total}

    def constant_term(self) -> Rational:
        return self._terms.get(0, ZERO)

    def max_degree(self, var: str) -> int:
        """Largest exponent of ``var`` among stored terms (-1 for the zero series)."""
        if var not in self.vars:
            return 0 if self._terms else -1
        return max((_exp(k, var) for k in self._terms), default=-1)

    def valuation(self, var: str):
        """Smallest exponent of ``var`` among stored terms; None for the zero series."""
        if not self._terms:
            return None
        if var not in self.vars:
            return 0
        return min(_exp(k, var) for k in self._terms)

    def cap_of(self, var: str):
        """Highest exponent of ``var`` (alone) that is still known."""
        cap = self.caps.get(var)
        w = WEIGHTS[var]
        if self.total is not None and w:
            cap = _min_opt(cap, self.total // w)
        return cap

    def _check_known(self, key: int) -> None:
        if not self._inside(key):
            raise PrecisionError(
                f"monomial {dict(zip(self.vars, _unpack(key, self.vars)))} lies outside "
                f"the truncation {self.precision()}; raise the order"
            )

    def coefficient(self, exps):
        """Coefficient at ``exps``.

        ``exps`` is either a tuple aligned with :attr:`vars` or a mapping.
        A mapping that leaves some variables out returns the coefficient
        slice as a series in the remaining variables.
        """
        if isinstance(exps, Mapping) and set(exps) != set(self.vars):
            return self.slice(exps)
        key = self._key(exps)
        self._check_known(key)
        return self._terms.get(key, ZERO)

    def slice(self, exps: Mapping[str, int]) -> MultiSeries:
        """Coefficient of the monomial ``exps`` viewed as a series in the other variables."""
        key = self._key(exps)
        self._check_known(key)
        fixed = list(exps)
        rest = tuple(v for v in self.vars if v not in exps)
        mask = 0
        for v in fixed:
            mask |= _MASK << _SHIFT[v]
        out = {k - key: c for k, c in self._terms.items() if k & mask == key}
        total = None if self.total is None else self.total - _weight(key)
        caps = {v: c for v, c in self.caps.items() if v in rest}
        return MultiSeries(rest, out, caps=caps, total=total, _packed=True)

    # precision management -------------------------------------------------

    def truncate(self, *, total=None, caps=None) -> MultiSeries:
        """Return a copy with a (possibly) tighter truncation."""
        new_caps = _merge_caps(self.caps, caps or {})
        return self._new(self._terms, caps=new_caps, total=_min_opt(self.total, total))

    def with_vars(self, variables) -> MultiSeries:
        """Same series viewed in a larger variable set."""
        variables = _order_vars(set(variables) | set(self.vars))
        return self._new(self._terms, variables=variables)

    def _coerce(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            return other
        return MultiSeries.constant(other, self.vars)

    def _joint(self, other: MultiSeries):
        variables = _order_vars(set(self.vars) | set(other.vars))
        return variables, _merge_caps(self.caps, other.caps), _min_opt(self.total, other.total)

    # ring operations ------------------------------------------------------

    def __add__(self, other) -> MultiSeries:
        other = self._coerce(other)
        variables, caps, total = self._joint(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiSeries(variables, out, caps=caps, total=total, _packed=True)

    __radd__ = __add__

    def __neg__(self) -> MultiSeries:
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> MultiSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiSeries:
        return (-self) + other

    def _graded_terms(self):
        if self._graded is None:
            self._graded = sorted((_weight(k), k, c) for k, c in self._terms.items())
        return self._graded

    def __mul__(self, other) -> MultiSeries:
        if not isinstance(other, MultiSeries):
            c = as_rational(other)
            if not c:
                return self._new({})
            return self._new({k: c * v for k, v in self._terms.items()})
        variables, caps, total = self._joint(other)
        capped = [(_SHIFT[v], c) for v, c in caps.items()]
        a, b = self._graded_terms(), other._graded_terms()
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, Rational] = {}
        get = out.get
        for wa, ka, ca in a:
            if total is not None:
                room = total - wa
                if room < 0:
                    break
            else:
                room = None
            for wb, kb, cb in b:
                if room is not None and wb > room:
                    break
                k = ka + kb
                if capped:
                    bad = False
                    for s, c in capped:
                        if (k >> s) & _MASK > c:
                            bad = True
                            break
                    if bad:
                        continue
                out[k] = get(k, ZERO) + ca * cb
        out = {k: c for k, c in out.items() if c}
        return MultiSeries(variables, out, caps=caps, total=total, _packed=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiSeries:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = MultiSeries.constant(1, self.vars, caps=self.caps, total=self.total)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            return self * other.invert()
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (ONE / c)

    def __rtruediv__(self, other) -> MultiSeries:
        return self.invert() * as_rational(other)

    # equality -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            if isinstance(other, (int, Rational)) or hasattr(other, "denominator"):
                other = MultiSeries.constant(other, self.vars, caps=self.caps, total=self.total)
            else:
                return NotImplemented
        return (
            self._terms == other._terms
            and self.caps == other.caps
            and self.total == other.total
        )

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self._terms.items()))))

    def agrees_with(self, other: MultiSeries) -> bool:
        """Equal at every monomial known to both series."""
        _, caps, total = self._joint(other)
        a = self.truncate(caps={v: c for v, c in caps.items() if v in self.vars}, total=total)
        b = other.truncate(caps={v: c for v, c in caps.items() if v in other.vars}, total=total)
        return a._terms == b._terms

    # nilpotency and inversion ----------------------------------------------

    def _split_unit(self):
        """Write self = c0 * (1 + h); report whether Newton may ramp on the total cap."""
        c0 = self._terms.get(0, ZERO)
        if not c0:
            raise ZeroDivisionError("series has zero constant term")
        h = self * (ONE / c0) - 1
        ramp = self.total is not None
        for k in h._terms:
            if _weight(k) and self.total is not None:
                continue
            ramp = False
            if not any(_exp(k, v) for v in self.caps):
                raise TruncationError(
                    "inverse/root would be an infinite series in untruncated variables "
                    f"(monomial {dict(zip(self.vars, _unpack(k, self.vars)))})"
                )
        return c0, h, ramp

    def _newton(self, step, start: MultiSeries, ramp: bool) -> MultiSeries:
        """Solve for a fixed point of ``step`` seeded with ``start`` (correct mod weight 1)."""
        if ramp:
            levels = []
            prec = self.total
            while prec > 0:
                levels.append(prec)
                prec //= 2
            r = start
            for prec in reversed(levels):
                # r is exact below the previous level; relabel it as an approximation at prec
                r = step(r._new(r._terms, total=prec), self.truncate(total=prec))
            return r
        r = start
        for _ in range(200):
            nxt = step(r, self)
            if nxt._terms == r._terms:
                return nxt
            r = nxt
        raise TruncationError("Newton iteration did not stabilise")

    def invert(self) -> MultiSeries:
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0, h, ramp = self._split_unit()
        unit = self * (ONE / c0)

        def step(r, a):
            return r + r * (1 - a * r)

        one = MultiSeries.constant(1, self.vars, caps=self.caps, total=self.total)
        if not h._terms:
            return one * (ONE / c0)
        r = unit._newton(step, one, ramp)
        return r * (ONE / c0)

    def sqrt(self) -> MultiSeries:
        """Square root with positive constant term.

        The constant term must be the square of a nonzero rational; factor
        out even powers of a variable before calling when it vanishes.
        """
        c0 = self._terms.get(0, ZERO)
        if not c0:
            raise TruncationError("sqrt needs a nonzero constant term; factor out var**(2k) first")
        s0 = rational_sqrt(c0)
        _, h, ramp = self._split_unit()
        unit = self * (ONE / c0)
        one = MultiSeries.constant(1, self.vars, caps=self.caps, total=self.total)
        if not h._terms:
            return one * s0
        half = Rational(1, 2)

        def step(r, a):
            return r + r * (1 - a * r * r) * half

        r = unit._newton(step, one, ramp)
        return unit * r * s0

    # calculus and substitution ----------------------------------------------

    def derive(self, var: str) -> MultiSeries:
        """Formal partial derivative with respect to ``var``."""
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r} for series in {self.vars}")
        unit = 1 << _SHIFT[var]
        out = {}
        for k, c in self._terms.items():
            e = _exp(k, var)
            if e:
                out[k - unit] = c * e
        caps = dict(self.caps)
        if var in caps:
            caps[var] -= 1
            if caps[var] < 0:
                raise PrecisionError(f"no coefficient of d/d{var} is known at {var}-cap 0")
        total = self.total
        if total is not None and WEIGHTS[var]:
            total -= WEIGHTS[var]
            if total < 0:
                raise PrecisionError(f"no coefficient of d/d{var} is known at total cap {self.total}")
        return MultiSeries(self.vars, out, caps=caps, total=total, _packed=True)

    def _truncated_in(self, var: str) -> bool:
        return var in self.caps or (WEIGHTS[var] > 0 and self.total is not None)

    def substitute(self, var: str, value) -> MultiSeries:
        """Replace ``var`` by a rational constant or by another series.

        A nonzero constant, or a series with a nonzero constant term, may
        only replace a variable whose degree is not truncated (otherwise the
        result would need the unknown tail). Substituting a series of lower
        weight than ``var`` lowers the total cap accordingly.
        """
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r} for series in {self.vars}")
        rest = tuple(v for v in self.vars if v != var)
        if not isinstance(value, MultiSeries):
            c = as_rational(value)
            if c and self._truncated_in(var):
                raise TruncationError(
                    f"cannot set truncated variable {var!r} to nonzero {c}: the tail is unknown"
                )
            out: dict[int, Rational] = {}
            mask = ~(_MASK << _SHIFT[var])
            for k, coef in self._terms.items():
                e = _exp(k, var)
                if e and not c:
                    continue
                kk = k & mask
                s = out.get(kk, ZERO) + coef * (c ** e if e else ONE)
                out[kk] = s
            caps = {v: cp for v, cp in self.caps.items() if v != var}
            return MultiSeries(rest, {k: v for k, v in out.items() if v}, caps=caps,
                               total=self.total, _packed=True)

        s = value
        if var in s.vars and not any(_exp(k, var) for k in s._terms):
            # the value only declares var; it does not depend on it
            s = MultiSeries(tuple(v for v in s.vars if v != var), s._terms,
                            caps={v: c for v, c in s.caps.items() if v != var}, total=s.total,
                            _packed=True)
        total = self.total
        caps = {v: cp for v, cp in self.caps.items() if v != var}
        if self._truncated_in(var):
            if s.is_zero():
                d_s = None
            else:
                d_s = min(_weight(k) for k in s._terms)
                if d_s == 0:
                    raise TruncationError(
                        f"substituting a series with weight-0 terms for truncated {var!r} "
                        "would need infinitely many terms"
                    )
            if d_s is not None:
                w = WEIGHTS[var]
                if w and total is not None and d_s < w:
                    total = -(-(total + 1) * d_s // w) - 1
                if var in self.caps:
                    total = _min_opt(total, (self.caps[var] + 1) * d_s - 1)
        variables = _order_vars(set(rest) | set(s.vars))
        base = MultiSeries(variables, {}, caps=_merge_caps(caps, s.caps),
                           total=_min_opt(total, s.total), _packed=True)
        groups: dict[int, dict[int, Rational]] = {}
        mask = ~(_MASK << _SHIFT[var])
        for k, coef in self._terms.items():
            groups.setdefault(_exp(k, var), {})[k & mask] = coef
        result = base
        power = base + 1
        s = s.truncate(total=base.total) if base.total is not None else s
        for e in range(0, max(groups, default=-1) + 1):
            if e:
                power = power * s
            if e in groups:
                part = MultiSeries(variables, groups[e], caps=base.caps, total=base.total,
                                   _packed=True)
                result = result + part * power
        return result

    def shift(self, var: str, k: int) -> MultiSeries:
        """Multiply by ``var**k``; negative ``k`` divides exactly (or raises)."""
        if k == 0:
            return self
        variables = _order_vars(set(self.vars) | {var})
        unit = 1 << _SHIFT[var]
        if k < 0:
            val = self.valuation(var)
            if val is not None and val < -k:
                raise ArithmeticError(f"series is not divisible by {var}^{-k}")
        out = {key + k * unit: c for key, c in self._terms.items()}
        caps = dict(self.caps)
        if var in caps:
            caps[var] += k
            if caps[var] < 0:
                raise PrecisionError(f"division by {var}^{-k} exhausts the {var} precision")
        total = self.total
        if total is not None and WEIGHTS[var]:
            total += k * WEIGHTS[var]
            if total < 0:
                raise PrecisionError(f"division by {var}^{-k} exhausts the total precision")
        return MultiSeries(variables, out, caps=caps, total=total, _packed=True)

    def rename(self, old: str, new: str, scale: int = 1) -> MultiSeries:
        """Rename a variable, mapping ``old**(scale*e)`` to ``new**e``."""
        rest = [v for v in self.vars if v != old]
        variables = _order_vars(rest + [new])
        mask = ~(_MASK << _SHIFT[old])
        out = {}
        for k, c in self._terms.items():
            e = _exp(k, old)
            if e % scale:
                raise ValueError(f"exponent {e} of {old} is not a multiple of {scale}")
            out[(k & mask) | ((e // scale) << _SHIFT[new])] = c
        caps = {v: c for v, c in self.caps.items() if v != old}
        if old in self.caps:
            caps[new] = self.caps[old] // scale
        return MultiSeries(variables, out, caps=caps, total=self.total, _packed=True)

    def is_even_in(self, var: str) -> bool:
        return all(_exp(k, var) % 2 == 0 for k in self._terms)

    def to_x(self) -> MultiSeries:
        """Re-index a series that is even in ``t`` to ``x = t**2``."""
        if "t" not in self.vars:
            raise ValueError("series has no t variable")
        if not self.is_even_in("t"):
            raise ValueError("series has odd powers of t and cannot be written in x")
        return self.rename("t", "x", 2)

    def to_t(self) -> MultiSeries:
        """Inverse of :meth:`to_x`."""
        if "x" not in self.vars:
            raise ValueError("series has no x variable")
        rest = [v for v in self.vars if v != "x"]
        mask = ~(_MASK << _SHIFT["x"])
        out = {(k & mask) | ((2 * _exp(k, "x")) << _SHIFT["t"]): c for k, c in self._terms.items()}
        caps = {v: c for v, c in self.caps.items() if v != "x"}
        if "x" in self.caps:
            caps["t"] = 2 * self.caps["x"]
        return MultiSeries(rest + ["t"], out, caps=caps, total=self.total, _packed=True)

    def univariate(self, var: str | None = None) -> list[Rational]:
        """Dense coefficient list of a series in a single variable, up to its cap."""
        var = var or (self.vars[0] if len(self.vars) == 1 else None)
        if var is None or set(self.vars) - {var}:
            raise ValueError(f"series in {self.vars} is not univariate")
        cap = self.cap_of(var)
        if cap is None:
            cap = self.max_degree(var)
        out = [ZERO] * (cap + 1)
        for k, c in self._terms.items():
            out[_exp(k, var)] = c
        return out

    def map_coefficients(self, fn) -> MultiSeries:
        return self._new({k: fn(c) for k, c in self._terms.items()})

    # display and serialization ---------------------------------------------

    def __repr__(self) -> str:
        return f"MultiSeries({self.to_str()}; vars={self.vars}, {self.precision()})"

    def to_str(self, limit: int | None = 40) -> str:
        if not self._terms:
            return "0"
        parts = []
        items = sorted(self._terms.items(), key=lambda kc: (_weight(kc[0]), _unpack(kc[0], self.vars)))
        for n, (k, c) in enumerate(items):
            if limit is not None and n >= limit:
                parts.append("...")
                break
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, _unpack(k, self.vars)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        items = sorted(self._terms.items(), key=lambda kc: _unpack(kc[0], self.vars))
        return {
            "variables": list(self.vars),
            "caps": {"variables": dict(self.caps), "total": self.total,
                     "weights": {v: WEIGHTS[v] for v in self.vars}},
            "terms": [
                {"exps": list(_unpack(k, self.vars)), "num": str(c.numerator), "den": str(c.denominator)}
                for k, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MultiSeries:
        variables = tuple(data["variables"])
        caps = data.get("caps") or {}
        terms = {
            tuple(t["exps"]): Rational(int(t["num"]), int(t["den"])) for t in data["terms"]
        }
        return cls(variables, terms, caps=caps.get("variables"), total=caps.get("total"))


class SeriesRing:
    """A variable set plus truncation, for building many compatible series."""

    def __init__(self, variables, *, total=None, caps=None):
        self.vars = _order_vars(variables)
        self.total = total
        self.caps = dict(caps or {})

    def __call__(self, value) -> MultiSeries:
        if isinstance(value, MultiSeries):
            return value.with_vars(self.vars).truncate(total=self.total, caps=self.caps)
        return MultiSeries.constant(value, self.vars, caps=self.caps, total=self.total)

    def gen(self, name: str) -> MultiSeries:
        if name not in self.vars:
            raise ValueError(f"{name!r} is not a variable of this ring")
        return MultiSeries.gen(name, self.vars, caps=self.caps, total=self.total)

    def monomial(self, coef=1, **exps) -> MultiSeries:
        return MultiSeries(self.vars, {_pack(exps): as_rational(coef)}, caps=self.caps,
                           total=self.total, _packed=True)

    def from_terms(self, terms: Mapping) -> MultiSeries:
        return MultiSeries(self.vars, terms, caps=self.caps, total=self.total)

    def zero(self) -> MultiSeries:
        return self(0)

    def one(self) -> MultiSeries:
        return self(1)

    def __repr__(self):
        return f"SeriesRing({self.vars}, total={self.total}, caps={self.caps})"


def dual_derivative_at_one(a: MultiSeries, var: str, method: str = "derivative"):
    """Return ``(a|_{var=1}, d a/d var |_{var=1})``.

    ``method="derivative"`` differentiates the truncated polynomial and then
    evaluates; ``method="pairs"`` rewrites ``var = 1 + e`` and keeps only
    the ``e**0`` and ``e**1`` layers, i.e. arithmetic on value/derivative
    pairs under the product rule. Both need ``var`` untruncated.
    """
    if var not in a.vars:
        zero = a * 0
        return a, zero
    if method == "derivative":
        return a.substitute(var, 1), a.derive(var).substitute(var, 1)
    if method == "pairs":
        shifted = MultiSeries.gen(var, a.vars, caps=a.caps, total=a.total) + 1
        b = a.substitute(var, shifted).with_vars(a.vars).truncate(caps={var: 1})
        return b.slice({var: 0}), b.slice({var: 1})
    raise ValueError(f"unknown method {method!r}")
