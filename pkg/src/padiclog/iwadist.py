"""Truncated Iwasawa-algebra and distribution-algebra elements.

An IwaSeries is a truncation of an element of O[[X]] (X = gamma - 1, with the
cyclotomic value of gamma fixed to u = 1 + p) scaled by an explicit power of
p: the stored coefficients are integral and `denom_exp` records the power of
p in the denominator.  A growth tag r marks claimed membership in the
distribution algebra of order r; at finite truncation the analytic condition
is replaced by the coefficient-valuation proxy checked by `growth_check`.

Twisting is done in the (1+X)-power basis, where X -> u^j(1+X) - 1 acts
diagonally; the omega/Phi families, Pollack half-logarithms and their twisted
products are exact finite products of such polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from padiclog import _poly, linsolve
from padiclog.cycser import InsufficientDegree
from padiclog.padic import PadicElt, PrecisionLoss, PrimeCtx

INF = float("inf")


class NotDivisible(Exception):
    pass


class NoUnitWitness(Exception):
    pass


class ExtensionTooLarge(Exception):
    pass


def ucyc(ctx):
    """The fixed cyclotomic value of the chosen topological generator."""
    return 1 + ctx.p


class IwaSeries:
    """p^(-denom_exp) times an integral truncated power series over O."""

    __slots__ = ("ctx", "a", "b", "prec", "deg_cap", "denom_exp", "growth")

    def __init__(self, ctx, a, b=None, prec=None, deg_cap=None, denom_exp=0,
                 growth=Fraction(0)):
        if prec is None:
            prec = ctx.prec
        if deg_cap is None:
            deg_cap = len(a)
        m = ctx.p ** prec
        self.ctx = ctx
        self.a = [c % m for c in a[:deg_cap]] + [0] * max(0, deg_cap - len(a))
        if b is not None and any(b):
            self.b = [c % m for c in b[:deg_cap]] + [0] * max(0, deg_cap - len(b))
        else:
            self.b = None
        self.prec = prec
        self.deg_cap = deg_cap
        self.denom_exp = denom_exp
        self.growth = Fraction(growth)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx, deg_cap, prec=None):
        return cls(ctx, [0] * deg_cap, None, prec, deg_cap)

    @classmethod
    def const(cls, ctx, c, deg_cap, prec=None):
        if isinstance(c, PadicElt):
            prec = c.prec if prec is None else min(prec, c.prec)
            return cls(ctx, [c.a] + [0] * (deg_cap - 1),
                       [c.b] + [0] * (deg_cap - 1) if c.b else None, prec, deg_cap)
        return cls(ctx, [c] + [0] * (deg_cap - 1), None, prec, deg_cap)

    @classmethod
    def gen(cls, ctx, deg_cap, prec=None):
        return cls(ctx, [0, 1] + [0] * (deg_cap - 2), None, prec, deg_cap)

    @classmethod
    def from_coeffs(cls, ctx, coeffs, deg_cap=None, prec=None, denom_exp=0,
                    growth=Fraction(0)):
        """Build from a list of ints or PadicElts."""
        if deg_cap is None:
            deg_cap = len(coeffs)
        a, b = [], []
        pmin = prec if prec is not None else ctx.prec
        for c in coeffs:
            if isinstance(c, PadicElt):
                pmin = min(pmin, c.prec)
                a.append(c.a)
                b.append(c.b)
            else:
                a.append(c)
                b.append(0)
        return cls(ctx, a, b, pmin, deg_cap, denom_exp, growth)

    def modulus(self):
        return self.ctx.p ** self.prec

    def coeff(self, i):
        """Stored (integral) coefficient as a PadicElt; ignores denom_exp."""
        if i >= self.deg_cap:
            return PadicElt(self.ctx, 0, 0, self.prec)
        return PadicElt(self.ctx, self.a[i], self.b[i] if self.b else 0, self.prec)

    def has_ext(self):
        return self.b is not None

    def degree(self):
        for i in range(self.deg_cap - 1, -1, -1):
            if self.a[i] or (self.b and self.b[i]):
                return i
        return -1

    def is_zero(self):
        return self.degree() == -1

    # -- denominator bookkeeping ---------------------------------------------

    def rescale(self, extra):
        """Multiply stored coefficients by p^extra and bump denom_exp to match."""
        if extra == 0:
            return self
        pk = self.ctx.p ** extra
        prec = min(self.prec + extra, self.ctx.prec)
        return IwaSeries(self.ctx, [c * pk for c in self.a],
                         [c * pk for c in self.b] if self.b else None,
                         prec, self.deg_cap, self.denom_exp + extra, self.growth)

    def min_val(self):
        """Minimal valuation of the stored coefficients (INF for the zero series)."""
        best = INF
        for i in range(self.deg_cap):
            v = self.coeff(i).val()
            if v < best:
                best = v
                if best == 0:
                    break
        return best

    def normalize(self):
        """Strip provable common p-content from the stored coefficients."""
        if self.denom_exp == 0:
            return self
        v = self.min_val()
        s = min(self.denom_exp, int(v) if v is not INF else self.prec)
        if s <= 0:
            return self
        pk = self.ctx.p ** s
        return IwaSeries(self.ctx, [c // pk for c in self.a],
                         [c // pk for c in self.b] if self.b else None,
                         self.prec - s, self.deg_cap, self.denom_exp - s, self.growth)

    def _aligned(self, other):
        d = max(self.denom_exp, other.denom_exp)
        return self.rescale(d - self.denom_exp), other.rescale(d - other.denom_exp)

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, PadicElt)):
            other = IwaSeries.const(self.ctx, other, self.deg_cap, self.prec)
        x, y = self._aligned(other)
        prec = min(x.prec, y.prec)
        cap = min(x.deg_cap, y.deg_cap)
        m = x.ctx.p ** prec
        a = _poly.vec_add(x.a[:cap], y.a[:cap], m)
        b = None
        if x.b or y.b:
            b = _poly.vec_add(x.b[:cap] if x.b else [0] * cap,
                              y.b[:cap] if y.b else [0] * cap, m)
        return IwaSeries(x.ctx, a, b, prec, cap, x.denom_exp,
                         max(x.growth, y.growth))

    __radd__ = __add__

    def __neg__(self):
        m = self.modulus()
        return IwaSeries(self.ctx, _poly.vec_neg(self.a, m),
                         _poly.vec_neg(self.b, m) if self.b else None,
                         self.prec, self.deg_cap, self.denom_exp, self.growth)

    def __sub__(self, other):
        if isinstance(other, (int, PadicElt)):
            other = IwaSeries.const(self.ctx, other, self.deg_cap, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            m = self.modulus()
            return IwaSeries(self.ctx, _poly.vec_scale(self.a, other, m),
                             _poly.vec_scale(self.b, other, m) if self.b else None,
                             self.prec, self.deg_cap, self.denom_exp, self.growth)
        if isinstance(other, PadicElt):
            other = IwaSeries.const(self.ctx, other, self.deg_cap)
        prec = min(self.prec, other.prec)
        cap = min(self.deg_cap, other.deg_cap)
        m = self.ctx.p ** prec
        xa, ya = self.a, other.a
        a = _poly.vec_mul(xa, ya, m, cap)
        b = None
        if self.b or other.b:
            e = self.ctx.wsq()
            if e is None:
                raise ValueError("extension coefficients without an extension")
            b = _poly.vec_add(
                _poly.vec_mul(xa, other.b, m, cap) if other.b else [0] * cap,
                _poly.vec_mul(self.b, ya, m, cap) if self.b else [0] * cap, m)
            if self.b and other.b:
                bb = _poly.vec_mul(self.b, other.b, m, cap)
                a = _poly.vec_add(a, _poly.vec_scale(bb, e, m), m)
        a += [0] * (cap - len(a))
        return IwaSeries(self.ctx, a, b, prec, cap,
                         self.denom_exp + other.denom_exp, self.growth + other.growth)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = IwaSeries.const(self.ctx, 1, self.deg_cap, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, PadicElt)):
            other = IwaSeries.const(self.ctx, other, self.deg_cap, self.prec)
        x, y = self._aligned(other)
        prec = min(x.prec, y.prec)
        cap = min(x.deg_cap, y.deg_cap)
        m = x.ctx.p ** prec
        for i in range(cap):
            if (x.a[i] - y.a[i]) % m:
                return False
            xb = x.b[i] if x.b else 0
            yb = y.b[i] if y.b else 0
            if (xb - yb) % m:
                return False
        return True

    def divide_exact_p(self, k):
        """Divide the value by p^k.  Uses denom_exp first, then exact division."""
        if k <= self.denom_exp:
            return IwaSeries(self.ctx, self.a, self.b, self.prec, self.deg_cap,
                             self.denom_exp - k, self.growth)
        k = k - self.denom_exp
        pk = self.ctx.p ** k
        if any(c % pk for c in self.a) or (self.b and any(c % pk for c in self.b)):
            raise PrecisionLoss("series not divisible by p^%d at precision" % k)
        return IwaSeries(self.ctx, [c // pk for c in self.a],
                         [c // pk for c in self.b] if self.b else None,
                         self.prec - k, self.deg_cap, 0, self.growth)

    def with_growth(self, r):
        return IwaSeries(self.ctx, self.a, self.b, self.prec, self.deg_cap,
                         self.denom_exp, Fraction(r))

    def widen(self, new_cap):
        """Zero-pad to a larger window; exact for polynomial representatives."""
        if new_cap <= self.deg_cap:
            return self
        pad = [0] * (new_cap - self.deg_cap)
        return IwaSeries(self.ctx, self.a + pad, self.b + pad if self.b else None,
                         self.prec, new_cap, self.denom_exp, self.growth)

    def times_p(self, k):
        """Multiply the value by p^k (k may be negative)."""
        if k == 0:
            return self
        if k < 0:
            return IwaSeries(self.ctx, self.a, self.b, self.prec, self.deg_cap,
                             self.denom_exp - k, self.growth)
        if k <= self.denom_exp:
            return IwaSeries(self.ctx, self.a, self.b, self.prec, self.deg_cap,
                             self.denom_exp - k, self.growth)
        pk = self.ctx.p ** (k - self.denom_exp)
        m = self.modulus()
        return IwaSeries(self.ctx, _poly.vec_scale(self.a, pk, m),
                         _poly.vec_scale(self.b, pk, m) if self.b else None,
                         self.prec, self.deg_cap, 0, self.growth)

    def to_json(self):
        out = {"var": "X", "p": self.ctx.p, "deg_cap": self.deg_cap,
               "prec": self.prec, "growth": str(self.growth),
               "denom_exp": self.denom_exp,
               "coeffs": [str(c) for c in self.a]}
        if self.b:
            out["coeffs_w"] = [str(c) for c in self.b]
        return out

    def __repr__(self):
        return ("IwaSeries(p=%d, deg_cap=%d, prec=%d, denom=%d, growth=%s)"
                % (self.ctx.p, self.deg_cap, self.prec, self.denom_exp, self.growth))


def from_json(obj, ctx=None):
    if ctx is None:
        ctx = PrimeCtx(obj["p"], obj["prec"])
    a = [int(c) for c in obj["coeffs"]]
    b = [int(c) for c in obj["coeffs_w"]] if "coeffs_w" in obj else None
    return IwaSeries(ctx, a, b, obj.get("prec"), obj.get("deg_cap"),
                     obj.get("denom_exp", 0), Fraction(obj.get("growth", 0)))


# -- the omega / Phi / delta families ----------------------------------------


def omega(ctx, n, deg_cap, prec=None):
    """omega_n = (1+X)^(p^n) - 1."""
    if deg_cap <= ctx.p ** n:
        raise InsufficientDegree("deg_cap %d cannot hold omega_%d" % (deg_cap, n))
    np_ = prec if prec is not None else ctx.prec
    out = _poly.onepx_pow(ctx.p ** n, deg_cap, ctx.p, np_)
    out[0] = (out[0] - 1) % ctx.p ** np_
    return IwaSeries(ctx, out, None, np_, deg_cap)


def phi_cyc(ctx, n, deg_cap, prec=None):
    """Phi_n = omega_n / omega_(n-1) = sum_{j<p} (1+X)^(j p^(n-1)); Phi_0 = X."""
    if n == 0:
        return IwaSeries.gen(ctx, deg_cap, prec)
    deg = ctx.p ** n - ctx.p ** (n - 1)
    if deg_cap <= deg:
        raise InsufficientDegree("deg_cap %d cannot hold Phi_%d" % (deg_cap, n))
    np_ = prec if prec is not None else ctx.prec
    m = ctx.p ** np_
    out = [0] * deg_cap
    for j in range(ctx.p):
        row = _poly.onepx_pow(j * ctx.p ** (n - 1), deg_cap, ctx.p, np_)
        out = _poly.vec_add(out, row, m)
    return IwaSeries(ctx, out, None, np_, deg_cap)


def twist(f, j):
    """Tw^j: X -> u^j (1+X) - 1, diagonal in the (1+X)-power basis."""
    m = f.modulus()
    c = pow(ucyc(f.ctx), j, m)
    out = []
    for vec in (f.a, f.b):
        if vec is None:
            out.append(None)
            continue
        bs = _poly.to_onepx_basis(vec, m)
        ck = 1
        for k in range(len(bs)):
            bs[k] = (bs[k] * ck) % m
            ck = (ck * c) % m
        out.append(_poly.from_onepx_basis(bs, m, f.deg_cap))
    return IwaSeries(f.ctx, out[0], out[1], f.prec, f.deg_cap, f.denom_exp, f.growth)


def twisted_product(ctx, base, m_twists):
    """prod_{i<m} Tw^(-i)(base); the empty product is 1."""
    if m_twists == 0:
        return IwaSeries.const(ctx, 1, base.deg_cap, base.prec)
    out = None
    cur = base
    for i in range(m_twists):
        if i > 0:
            cur = twist(cur, -1)
        out = cur if out is None else out * cur
    return out


def omega_tw(ctx, n, m, deg_cap, prec=None):
    return twisted_product(ctx, omega(ctx, n, deg_cap, prec), m)


def phi_tw(ctx, n, m, deg_cap, prec=None):
    return twisted_product(ctx, phi_cyc(ctx, n, deg_cap, prec), m)


def delta(ctx, m, deg_cap, prec=None):
    return twisted_product(ctx, IwaSeries.gen(ctx, deg_cap, prec), m)


def halflog(ctx, sign, m, n_trunc, deg_cap, prec=None):
    """Truncated Pollack half-logarithm prod_{i<m} Tw^(-i) prod_{k even/odd <= n} Phi_k/p.

    The stored series is the integral product of the Phi's; the p-denominator
    is carried in denom_exp and the growth tag is m/2.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    ks = [k for k in range(1, n_trunc + 1) if (k % 2 == 0) == (sign == "+")]
    acc = IwaSeries.const(ctx, 1, deg_cap, prec)
    for k in ks:
        acc = acc * phi_cyc(ctx, k, deg_cap, prec)
    out = twisted_product(ctx, acc, m)
    out.denom_exp = m * len(ks)
    out.growth = Fraction(m, 2)
    return out


def log_tw(ctx, m, n_trunc, deg_cap, prec=None):
    """Truncation of prod_{i<m} Tw^(-i)(log_p) = delta_m * prod Phi_k / p^(mn)."""
    acc = IwaSeries.gen(ctx, deg_cap, prec)
    for k in range(1, n_trunc + 1):
        acc = acc * phi_cyc(ctx, k, deg_cap, prec)
    out = twisted_product(ctx, acc, m)
    out.denom_exp = m * n_trunc
    out.growth = Fraction(m)
    return out


def growth_check(f, r=None, c=0):
    """Coefficient-valuation proxy for membership in the order-r algebra.

    v_p(coeff_i) >= -r * ceil(log_p(i+1)) - c for every stored index i.
    """
    if r is None:
        r = f.growth
    r = Fraction(r)
    p = f.ctx.p
    bound_exp = 0
    reach = 1
    for i in range(f.deg_cap):
        if i + 1 > reach:
            bound_exp += 1
            reach *= p
        v = f.coeff(i).val()
        if v is INF:
            continue
        if v - f.denom_exp < -r * bound_exp - c:
            return False
    return True


# -- evaluation at character points ------------------------------------------


class CharPoint(NamedTuple):
    """Evaluation point X = zeta * u^j - 1 with zeta of exact order p^t."""

    t: int
    j: int

    def to_json(self):
        return {"t": self.t, "j": self.j}


MAX_CYC_DEGREE = 4000


class CycValue:
    """Element of ctx[z]/Phi_{p^t}(z) scaled by p^(-denom_exp)."""

    __slots__ = ("ctx", "t", "vec", "prec", "denom_exp")

    def __init__(self, ctx, t, vec, prec, denom_exp=0):
        self.ctx = ctx
        self.t = t
        self.vec = vec  # list of PadicElt, length phi(p^t) (length 1 when t = 0)
        self.prec = prec
        self.denom_exp = denom_exp

    def dim(self):
        p = self.ctx.p
        return 1 if self.t == 0 else (p - 1) * p ** (self.t - 1)

    def is_zero(self):
        """Zero at stored precision (of the integral part)."""
        return all(x.is_zero() for x in self.vec)

    def _reduce_pow(self, e):
        """z^e as a coefficient vector over the power basis."""
        p = self.ctx.p
        if self.t == 0:
            return {0: 1}
        pt = p ** self.t
        e %= pt
        d = self.dim()
        if e < d:
            return {e: 1}
        # z^(d + r) = -sum_{i<p-1} z^(i p^(t-1) + r)
        r = e - d
        return {i * p ** (self.t - 1) + r: -1 for i in range(p - 1)}

    def __mul__(self, other):
        assert self.t == other.t
        prec = min(self.prec, other.prec)
        d = self.dim()
        acc = [PadicElt(self.ctx, 0, 0, prec) for _ in range(d)]
        for i, x in enumerate(self.vec):
            if x.is_zero():
                continue
            for j, y in enumerate(other.vec):
                if y.is_zero():
                    continue
                xy = x * y
                for k, s in self._reduce_pow(i + j).items():
                    acc[k] = acc[k] + (xy if s == 1 else -xy)
        return CycValue(self.ctx, self.t, acc, prec,
                        self.denom_exp + other.denom_exp)

    def __add__(self, other):
        assert self.t == other.t
        d = max(self.denom_exp, other.denom_exp)
        xs = self.scale_to(d)
        ys = other.scale_to(d)
        return CycValue(self.ctx, self.t,
                        [x + y for x, y in zip(xs.vec, ys.vec)],
                        min(xs.prec, ys.prec), d)

    def scale_to(self, d):
        if d == self.denom_exp:
            return self
        pk = self.ctx.p ** (d - self.denom_exp)
        vec = [PadicElt(self.ctx, x.a * pk, x.b * pk,
                        min(x.prec + (d - self.denom_exp), self.ctx.prec))
               for x in self.vec]
        return CycValue(self.ctx, self.t, vec, min(self.prec + (d - self.denom_exp),
                                                   self.ctx.prec), d)

    def __eq__(self, other):
        x, y = self, other
        if x.denom_exp != y.denom_exp:
            d = max(x.denom_exp, y.denom_exp)
            x, y = x.scale_to(d), y.scale_to(d)
        return all(a == b for a, b in zip(x.vec, y.vec))

    def __repr__(self):
        return "CycValue(t=%d, dim=%d, denom=%d)" % (self.t, self.dim(), self.denom_exp)


def eval_at(f, pt):
    """Evaluate at X = zeta u^j - 1: sum b_k (zeta u^j)^k over the (1+X)-basis."""
    ctx = f.ctx
    p = ctx.p
    if pt.t < 0:
        raise ValueError("t must be >= 0")
    d = 1 if pt.t == 0 else (p - 1) * p ** (pt.t - 1)
    if d > MAX_CYC_DEGREE:
        raise ExtensionTooLarge("phi(p^t) = %d exceeds supported degree" % d)
    m = f.modulus()
    uj = pow(ucyc(ctx), pt.j, m)
    pt_order = p ** pt.t
    out_a = [0] * d
    out_b = [0] * d if f.b else None
    proto = CycValue(ctx, pt.t, [PadicElt(ctx, 0, 0, f.prec)] * d, f.prec)
    for vec, out in ((f.a, out_a), (f.b, out_b)):
        if vec is None:
            continue
        bs = _poly.to_onepx_basis(vec, m)
        ujk = 1
        for k, bk in enumerate(bs):
            if bk:
                c = (bk * ujk) % m
                for idx, s in proto._reduce_pow(k % pt_order).items():
                    out[idx] = (out[idx] + s * c) % m
            ujk = (ujk * uj) % m
    vecs = [PadicElt(ctx, out_a[i], out_b[i] if out_b else 0, f.prec)
            for i in range(d)]
    return CycValue(ctx, pt.t, vecs, f.prec, f.denom_exp)


# -- division and unit comparison ----------------------------------------------


def _coeff_list(f):
    return [f.coeff(i) for i in range(f.deg_cap)]


def poly_reduce(f, g):
    """Remainder of f modulo the polynomial g (unit leading coefficient)."""
    dg = g.degree()
    if dg < 0:
        raise ZeroDivisionError("reduction modulo zero")
    lead = g.coeff(dg)
    linv = lead.inv()
    fs = _coeff_list(f)
    gs = _coeff_list(g)
    for i in range(len(fs) - 1, dg - 1, -1):
        c = fs[i]
        if c.is_zero():
            continue
        q = c * linv
        for k in range(dg + 1):
            fs[i - dg + k] = fs[i - dg + k] - q * gs[k]
    out = IwaSeries.from_coeffs(f.ctx, fs[:dg], dg, denom_exp=f.denom_exp,
                                growth=f.growth)
    return out


def divide_exact(f, g, mode=None):
    """H with f = g*H at the stored truncation, or NotDivisible.

    Polynomial inputs (top coefficient visible and unit) are divided from the
    top; otherwise a unit low-order pivot allows bottom-up power-series
    division.
    """
    if g.is_zero():
        raise NotDivisible("division by zero at precision")
    dnum = f.denom_exp - g.denom_exp
    x = f.rescale(-dnum) if dnum < 0 else f
    denom_out = max(dnum, 0)
    dg = g.degree()
    lead_unit = g.coeff(dg).is_unit()
    cap = min(x.deg_cap, g.deg_cap)
    if mode is None:
        mode = "poly" if (lead_unit and x.degree() + 1 < cap) else "series"
    if mode == "poly" and lead_unit:
        q, r = _poly_divmod(x, g)
        if not r.is_zero():
            raise NotDivisible("nonzero remainder at precision")
        q.denom_exp = denom_out
        q.growth = max(Fraction(0), f.growth - g.growth)
        return q
    # series mode: find the lowest unit pivot
    ordg = None
    for i in range(g.deg_cap):
        if g.coeff(i).is_unit():
            ordg = i
            break
        if not g.coeff(i).is_zero():
            raise NotDivisible("low-order pivot is not a unit at precision")
    if ordg is None:
        raise NotDivisible("no unit pivot available")
    for i in range(ordg):
        if not x.coeff(i).is_zero():
            raise NotDivisible("X-order of numerator is smaller than divisor")
    piv = g.coeff(ordg).inv()
    n = cap - ordg
    fs = [x.coeff(i + ordg) for i in range(min(n, x.deg_cap - ordg))]
    gs = [g.coeff(i + ordg) for i in range(min(n, g.deg_cap - ordg))]
    out = []
    for i in range(n):
        acc = fs[i] if i < len(fs) else PadicElt(x.ctx, 0, 0, x.prec)
        for j in range(1, min(i, len(gs) - 1) + 1):
            acc = acc - gs[j] * out[i - j]
        out.append(acc * piv)
    h = IwaSeries.from_coeffs(x.ctx, out, n, denom_exp=denom_out,
                              growth=max(Fraction(0), f.growth - g.growth))
    return h


def _poly_divmod(f, g):
    dg = g.degree()
    lead = g.coeff(dg)
    linv = lead.inv()
    fs = _coeff_list(f)
    gs = _coeff_list(g)
    q = [PadicElt(f.ctx, 0, 0, f.prec)] * max(len(fs) - dg, 0)
    for i in range(len(fs) - 1, dg - 1, -1):
        c = fs[i]
        if c.is_zero():
            continue
        qc = c * linv
        q[i - dg] = qc
        for k in range(dg + 1):
            fs[i - dg + k] = fs[i - dg + k] - qc * gs[k]
    quot = IwaSeries.from_coeffs(f.ctx, q, f.deg_cap)
    rem = IwaSeries.from_coeffs(f.ctx, fs[:dg] if dg else [], max(dg, 1))
    return quot, rem


def is_unit(f):
    """Unit of the truncated Iwasawa algebra: integral with unit constant term."""
    g = f.normalize()
    return g.denom_exp == 0 and g.coeff(0).is_unit()


def solve_series_div(y, g, out_len=None):
    """q with g*q = y on the stored window, by exact linear solving.

    Handles divisors whose stored coefficients have mixed valuations (where
    pivot-based division would lose precision coefficient by coefficient);
    the minimal-valuation pivoting keeps the loss to the intrinsic amount,
    reported through the returned precision.  Divisor must be base-valued.
    """
    if g.has_ext():
        raise NotDivisible("divisor must be base-valued")
    ctx = y.ctx
    prec = min(y.prec, g.prec)
    m = ctx.p ** prec
    dg = g.degree()
    if dg < 0:
        raise NotDivisible("division by zero at precision")
    cap = y.deg_cap
    if out_len is None:
        out_len = cap
    dshift = y.denom_exp - g.denom_exp
    growth = max(Fraction(0), y.growth - g.growth)
    # fast path: exact polynomial division when the leading coefficient is a
    # unit and the remainder vanishes (covers images of polynomial inputs)
    if g.coeff(dg).is_unit() and y.degree() + 1 < cap:
        try:
            quot, rem = _poly_divmod(IwaSeries(ctx, y.a, y.b, prec, cap),
                                     IwaSeries(ctx, g.a, g.b, prec, g.deg_cap))
            if rem.is_zero():
                quot.denom_exp = max(dshift, 0)
                quot.growth = growth
                return quot.times_p(-dshift) if dshift < 0 else quot
        except Exception:
            pass
    dy = y.degree()
    widths = [out_len]
    if 0 <= dy < cap - 1 and dy - dg + 1 < out_len:
        # polynomial-sized system first: much smaller when the quotient is
        # an exact polynomial (images of bounded inputs)
        widths.insert(0, max(dy - dg + 1, 1))
    last_exc = None
    for width in widths:
        rows = [[(g.a[i - j] if 0 <= i - j <= dg and i - j < g.deg_cap else 0)
                 for j in range(width)] for i in range(cap)]
        out_vecs = []
        loss = 0
        try:
            for vec in (y.a, y.b):
                if vec is None:
                    out_vecs.append(None)
                    continue
                rhs = [vec[i] % m for i in range(cap)]
                sol = linsolve.solve_mod_ppow(rows, rhs, ctx.p, prec)
                if sol is None:
                    raise NotDivisible("no quotient at this precision")
                x, kernel, step_loss = sol
                loss = max(loss, step_loss)
                out_vecs.append(x)
        except NotDivisible as exc:
            last_exc = exc
            continue
        q = IwaSeries(ctx, out_vecs[0], out_vecs[1], prec - loss, width,
                      max(dshift, 0), growth)
        if dshift < 0:
            q = q.times_p(-dshift)
        return q
    raise last_exc


def _vp_int(n, p, cap):
    if n == 0:
        return cap
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def equal_up_to_unit_mod(f, g, n, m_twists=1, prec=None, extra_ideals=()):
    """Find a unit u with f = u*g modulo (p^prec, omega_{n, m_twists}, extras).

    Solved as an exact linear system over the quotient ring; the kernel is
    used to adjust the representative to a unit when possible.  Restricted to
    base-ring series.  extra_ideals lists further polynomial generators of
    the congruence ideal (e.g. the representation-window polynomial of a
    finite-level object, which does not divide twisted ideals).
    """
    if f.has_ext() or g.has_ext():
        raise NoUnitWitness("unit comparison requires base-ring series")
    ctx = f.ctx
    fn = f.normalize()
    gn = g.normalize()
    if fn.denom_exp != gn.denom_exp:
        raise NoUnitWitness("denominator exponents differ (%d vs %d)"
                            % (fn.denom_exp, gn.denom_exp))
    if prec is None:
        prec = min(fn.prec, gn.prec)
    ideal = omega_tw(ctx, n, m_twists, max(f.deg_cap, g.deg_cap), prec)
    d = ideal.degree()
    fr = poly_reduce(IwaSeries(ctx, fn.a, None, prec, fn.deg_cap), ideal)
    gr = poly_reduce(IwaSeries(ctx, gn.a, None, prec, gn.deg_cap), ideal)
    mm = ctx.p ** prec
    # columns: X^k * g mod ideal, unknowns u_0..u_(d-1)
    cols = []
    cur = gr
    for _ in range(d):
        cavec = cur.a[:d] + [0] * (d - len(cur.a[:d]))
        cols.append(cavec)
        shifted = IwaSeries(ctx, [0] + cavec, None, prec, d + 1)
        cur = poly_reduce(shifted, ideal)
    # columns for the extra ideal generators, reduced into the same window
    n_extra = 0
    for gen in extra_ideals:
        gr2 = poly_reduce(IwaSeries(ctx, gen.a, None, prec, gen.deg_cap), ideal)
        cur = gr2
        for _ in range(d):
            cavec = cur.a[:d] + [0] * (d - len(cur.a[:d]))
            cols.append(cavec)
            n_extra += 1
            shifted = IwaSeries(ctx, [0] + cavec, None, prec, d + 1)
            cur = poly_reduce(shifted, ideal)
    rows = [[cols[k][i] for k in range(len(cols))] for i in range(d)]
    rhs = fr.a[:d] + [0] * (d - len(fr.a[:d]))
    sol = linsolve.solve_mod_ppow(rows, rhs, ctx.p, prec)
    if sol is None:
        raise NoUnitWitness("no solution modulo the congruence ideal")
    x, kernel, _loss = sol
    if x[0] % ctx.p == 0:
        for gen in kernel:
            if (x[0] + gen[0]) % ctx.p != 0:
                x = [(a + b) % mm for a, b in zip(x, gen)]
                break
        else:
            raise NoUnitWitness("every solution has non-unit constant term")
    u = IwaSeries(ctx, x[:d], None, prec, d)
    # verification: f - u*g must vanish modulo the joint ideal
    wide = max(fn.deg_cap, gn.deg_cap + d)
    u_wide = IwaSeries(ctx, x[:d], None, prec, wide)
    diff = poly_reduce(IwaSeries(ctx, fn.a, None, prec, wide)
                       - u_wide * IwaSeries(ctx, gn.a, None, prec, wide), ideal)
    rem = diff.a[:d] + [0] * (d - len(diff.a[:d]))
    for j, c in enumerate(x[d:]):
        col = cols[d + j]
        for i in range(d):
            rem[i] = (rem[i] - c * col[i]) % mm
    if any(c % mm for c in rem):
        raise NoUnitWitness("verification failed")
    return u
