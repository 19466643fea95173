"""Exact arithmetic for intercusp equation systems.

Everything symbolic runs over Q(i): GaussianRational coefficients,
sparse multivariate polynomials (MultiPoly), dense univariate
polynomials (UniPoly) and 2x2 matrices over MultiPoly. Floating
point (ComplexF, an alias of the builtin complex) only appears in
root finding and residual checks, never inside exact pipelines.
"""

from __future__ import annotations

from fractions import Fraction

# double precision is enough here; tolerances downstream are >= 1e-12
ComplexF = complex


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        # Fraction keeps lowest terms and a positive denominator on its own
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def from_quad(cls, quad):
        """Build from [re_num, re_den, im_num, im_den] integer pairs."""
        a, b, c, d = quad
        return cls(Fraction(a, b), Fraction(c, d))

    def to_quad(self):
        return [self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator]

    @property
    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * other.re + self.im * other.im) / n,
                                (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self) -> ComplexF:
        return complex(self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return "%s*i" % self.im
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s*i" % (self.re, sign, abs(self.im))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError("cannot mix GaussianRational with %r" % type(x))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class MultiPoly:
    """Sparse multivariate polynomial over GaussianRational.

    Terms map a sorted tuple of (variable, exponent) pairs to a nonzero
    coefficient; the empty tuple is the constant term. The registry
    remembers variable names in order of first appearance, which later
    drives elimination order. Equality is structural on the terms alone.
    """

    __slots__ = ("terms", "registry")

    def __init__(self, terms=None, registry=()):
        t = {}
        if terms:
            for key, coeff in terms.items():
                if not isinstance(coeff, GaussianRational):
                    coeff = GaussianRational(coeff)
                if coeff.is_zero:
                    continue  # never store zeros
                t[key] = coeff
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "registry", tuple(registry))

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def const(cls, c):
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return cls({(): c} if not c.is_zero else {}, ())

    @classmethod
    def var(cls, name, coeff=1):
        c = coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff)
        return cls({((name, 1),): c}, (name,))

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def variables_present(self):
        seen = set()
        for key in self.terms:
            for v, _ in key:
                seen.add(v)
        return seen

    def constant_term(self):
        return self.terms.get((), ZERO)

    def is_constant(self):
        return all(key == () for key in self.terms)

    def degree_in(self, var):
        d = 0
        for key in self.terms:
            for v, e in key:
                if v == var and e > d:
                    d = e
        return d

    def total_degree(self):
        best = 0
        for key in self.terms:
            t = sum(e for _, e in key)
            if t > best:
                best = t
        return best

    def coefficients_in(self, var):
        """Split into {exponent of var: MultiPoly without var}."""
        buckets = {}
        reg = tuple(v for v in self.registry if v != var)
        for key, coeff in self.terms.items():
            e = 0
            rest = []
            for v, k in key:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            buckets.setdefault(e, {})[tuple(rest)] = \
                buckets.get(e, {}).get(tuple(rest), ZERO) + coeff
        return {e: MultiPoly(t, reg) for e, t in buckets.items()}

    def _merged_registry(self, other):
        reg = list(self.registry)
        have = set(reg)
        for v in other.registry:
            if v not in have:
                reg.append(v)
                have.add(v)
        return tuple(reg)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            s = terms.get(key, ZERO) + coeff
            if s.is_zero:
                terms.pop(key, None)
            else:
                terms[key] = s
        return MultiPoly(terms, self._merged_registry(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MultiPoly({k: -c for k, c in self.terms.items()}, self.registry)

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = _mul_keys(ka, kb)
                s = terms.get(key, ZERO) + ca * cb
                if s.is_zero:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return MultiPoly(terms, self._merged_registry(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of MultiPoly")
        out = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return MultiPoly.const(other)
        raise TypeError("cannot mix MultiPoly with %r" % type(other))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, var, replacement):
        """Exact substitution var -> replacement (a MultiPoly)."""
        if not isinstance(replacement, MultiPoly):
            replacement = MultiPoly.const(replacement)
        out = MultiPoly({}, self._merged_registry(replacement))
        powers = {0: MultiPoly.const(1)}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * replacement
            return powers[e]

        for key, coeff in self.terms.items():
            e = 0
            rest = []
            for v, k in key:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            piece = MultiPoly({tuple(rest): coeff}, self.registry)
            out = out + (piece * power(e) if e else piece)
        return out

    def eval_complex(self, assignment) -> ComplexF:
        total = 0j
        for key, coeff in self.terms.items():
            val = coeff.to_complex()
            for v, e in key:
                if v not in assignment:
                    raise KeyError("no value assigned for variable %r" % v)
                val *= assignment[v] ** e
            total += val
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            mono = "*".join("%s^%d" % (v, e) if e > 1 else v for v, e in key)
            c = self.terms[key]
            parts.append("(%r)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)


def _mul_keys(ka, kb):
    exps = dict(ka)
    for v, e in kb:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class UniPoly:
    """Dense univariate polynomial over GaussianRational, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        cs = [c if isinstance(c, GaussianRational) else GaussianRational(c)
              for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_multipoly(cls, p: MultiPoly, var: str) -> "UniPoly":
        extra = p.variables_present() - {var}
        if extra:
            raise ValueError("polynomial still contains %s" % sorted(extra))
        coeffs = [ZERO] * (p.degree_in(var) + 1)
        for key, coeff in p.terms.items():
            e = key[0][1] if key else 0
            coeffs[e] = coeffs[e] + coeff
        return cls(coeffs, var)

    @property
    def degree(self):
        return len(self.coeffs) - 1  # zero polynomial reports -1

    @property
    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] + c
        return UniPoly(a, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return UniPoly([], self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly([1], self.var)
        for _ in range(n):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return UniPoly([other], self.var)
        raise TypeError("cannot mix UniPoly with %r" % type(other))

    def __divmod__(self, other):
        """Exact field division with remainder."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        q = [ZERO] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and any(not c.is_zero for c in rem):
            while rem and rem[-1].is_zero:
                rem.pop()
            if len(rem) - 1 < d:
                break
            shift = len(rem) - 1 - d
            factor = rem[-1] / lead
            q[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - factor * c
            rem.pop()
        return UniPoly(q, self.var), UniPoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "UniPoly") -> bool:
        if self.is_zero:
            return other.is_zero
        return divmod(other, self)[1].is_zero

    def monic(self):
        if self.is_zero:
            return self
        lead = self.leading()
        return UniPoly([c / lead for c in self.coeffs], self.var)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, self._coerce(other)
        while not b.is_zero:
            a, b = b, a % b
            if not a.is_zero:
                a = a.monic()  # keeps coefficient growth in check
        return a.monic() if not a.is_zero else a

    def derivative(self):
        return UniPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))],
                       self.var)

    def squarefree(self):
        """Squarefree part, and the degree lost to repeated factors."""
        if self.degree <= 0:
            return self, 0
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self, 0
        reduced = (self // g).monic()
        return reduced, self.degree - reduced.degree

    def eval(self, x: ComplexF) -> ComplexF:
        total = 0j
        for c in reversed(self.coeffs):
            total = total * x + c.to_complex()
        return total

    def eval_exact(self, x: GaussianRational) -> GaussianRational:
        total = ZERO
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def integer_cleared(self):
        """Scale to primitive Gaussian-integer coefficients.

        Returns (scaled UniPoly, multiplier), a nonzero rational with
        scaled == self * multiplier, signed so the leading coefficient
        has positive real part (positive imaginary part if real is zero).
        """
        if self.is_zero:
            return self, Fraction(1)
        denoms = 1
        for c in self.coeffs:
            denoms = _lcm(denoms, c.re.denominator)
            denoms = _lcm(denoms, c.im.denominator)
        nums = 0
        for c in self.coeffs:
            nums = _gcd(nums, abs(c.re.numerator * denoms // c.re.denominator))
            nums = _gcd(nums, abs(c.im.numerator * denoms // c.im.denominator))
        mult = Fraction(denoms, nums if nums else 1)
        lead = self.coeffs[-1] * mult
        if lead.re < 0 or (lead.re == 0 and lead.im < 0):
            mult = -mult
        return UniPoly([c * mult for c in self.coeffs], self.var), mult

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c.is_zero:
                continue
            mono = self.var + ("^%d" % e if e > 1 else "") if e else ""
            parts.append("(%r)%s" % (c, mono))
        return " + ".join(parts)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


class Mat2:
    """2x2 matrix with MultiPoly entries."""

    __slots__ = ("e11", "e12", "e21", "e22")

    def __init__(self, e11, e12, e21, e22):
        for name, val in (("e11", e11), ("e12", e12), ("e21", e21), ("e22", e22)):
            if not isinstance(val, MultiPoly):
                val = MultiPoly.const(val)
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.e11 * other.e11 + self.e12 * other.e21,
                    self.e11 * other.e12 + self.e12 * other.e22,
                    self.e21 * other.e11 + self.e22 * other.e21,
                    self.e21 * other.e12 + self.e22 * other.e22)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.e11 == other.e11 and self.e12 == other.e12
                and self.e21 == other.e21 and self.e22 == other.e22)

    def __hash__(self):
        return hash((self.e11, self.e12, self.e21, self.e22))

    def substitute(self, var, replacement):
        return Mat2(self.e11.substitute(var, replacement),
                    self.e12.substitute(var, replacement),
                    self.e21.substitute(var, replacement),
                    self.e22.substitute(var, replacement))

    def __repr__(self):
        return "[%r, %r; %r, %r]" % (self.e11, self.e12, self.e21, self.e22)


# Operation-style aliases. The classes carry the logic; these names make
# call sites read like the surrounding math.

def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_neg(a: MultiPoly) -> MultiPoly:
    return -a


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return a * b


def substitute(p: MultiPoly, var: str, replacement: MultiPoly) -> MultiPoly:
    return p.substitute(var, replacement)


def eval_complex(p: MultiPoly, assignment) -> ComplexF:
    return p.eval_complex(assignment)


def poly_text(p: UniPoly, times: str = "") -> str:
    """Readable rendering, highest power first: "4x^2-3x+1".

    times goes between coefficient and variable ("*" gives "4*x^2").
    Complex or fractional coefficients are parenthesized.
    """
    if p.is_zero:
        return "0"
    parts = []
    for e in range(p.degree, -1, -1):
        c = p.coeffs[e]
        if c.is_zero:
            continue
        if c.im == 0 and c.re < 0:
            sign, c = "-", -c
        else:
            sign = "+"
        if c.im != 0 or (c.re.denominator != 1 and e > 0):
            body = "(%r)" % c
        elif c.re == 1 and e > 0:
            body = ""
        else:
            body = str(c.re)
        if e > 0:
            mono = p.var if e == 1 else "%s^%d" % (p.var, e)
            body = body + times + mono if body else mono
        parts.append(sign + body)
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text
