"""Truncated Newton-Puiseux series with exact rational coefficients.

A series in h variables is a finite map from exponent vectors (tuples of
Fractions, one per variable) to nonzero rational coefficients, together with
a precision bound T: terms whose total exponent sum exceeds T are unknown.
T = math.inf marks an exactly known (polynomial) series.

The i-th coordinate of every exponent lies in (1/n_i)Z where (n_1,...,n_h)
is the ramification vector; it is recomputed to the per-variable lcm of the
stored denominators on every construction, so representations stay primitive.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .core import (
    DimensionError,
    PuiseuxError,
    Vec,
    as_vec,
    mat_from,
    mat_vec,
    rat,
    rational_binomial,
    rational_power,
    total,
    vec_add,
)

INF = math.inf


class ParseError(PuiseuxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PrecisionError(PuiseuxError):
    pass


def _norm_prec(p):
    """Map any way of saying 'infinite' to the one INF object; fractions
    otherwise, so identity checks against INF stay valid internally."""
    if p == INF:
        return INF
    return rat(p)


def _min_prec(a, b):
    return a if a <= b else b


def _add_prec(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


class PuiseuxSeries:
    __slots__ = ("num_vars", "terms", "precision", "laurent", "ramification")

    def __init__(self, num_vars: int, terms, precision=INF, laurent: bool = False):
        if num_vars < 1:
            raise DimensionError("a series needs at least one variable")
        precision = _norm_prec(precision)
        if laurent and num_vars != 1:
            raise PuiseuxError("Laurent support is restricted to one variable")
        clean: dict[Vec, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exp, coef in items:
            exp = as_vec(exp, num_vars)
            coef = rat(coef)
            if coef == 0:
                continue
            if any(c < 0 for c in exp):
                if not laurent:
                    raise PuiseuxError(f"negative exponent {exp} in a non-Laurent series")
            if precision is not INF and total(exp) > precision:
                continue
            clean[exp] = clean.get(exp, Fraction(0)) + coef
            if clean[exp] == 0:
                del clean[exp]
        ram = []
        for i in range(num_vars):
            n = 1
            for exp in clean:
                n = math.lcm(n, exp[i].denominator)
            ram.append(n)
        self.num_vars = num_vars
        self.terms = clean
        self.precision = precision
        self.laurent = laurent
        self.ramification = tuple(ram)

    # -- constructors -------------------------------------------------------

    @classmethod
    def _build(cls, num_vars, terms, precision, laurent) -> "PuiseuxSeries":
        """Internal fast path: keys are canonical Fraction tuples already
        within precision; only zero coefficients still need dropping."""
        obj = object.__new__(cls)
        obj.num_vars = num_vars
        obj.terms = {e: c for e, c in terms.items() if c != 0}
        obj.precision = precision
        obj.laurent = laurent
        ram = [1] * num_vars
        for exp in obj.terms:
            for i, c in enumerate(exp):
                d = c.denominator
                if ram[i] % d:
                    ram[i] = math.lcm(ram[i], d)
        obj.ramification = tuple(ram)
        return obj

    @classmethod
    def zero(cls, num_vars: int, precision=INF) -> "PuiseuxSeries":
        return cls(num_vars, {}, precision)

    @classmethod
    def constant(cls, num_vars: int, value, precision=INF) -> "PuiseuxSeries":
        zero = tuple(Fraction(0) for _ in range(num_vars))
        return cls(num_vars, {zero: rat(value)}, precision)

    @classmethod
    def one(cls, num_vars: int, precision=INF) -> "PuiseuxSeries":
        return cls.constant(num_vars, 1, precision)

    @classmethod
    def monomial(cls, num_vars: int, exponent, coef=1, precision=INF, laurent=False) -> "PuiseuxSeries":
        return cls(num_vars, {as_vec(exponent, num_vars): rat(coef)}, precision, laurent)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[Vec]:
        return set(self.terms)

    def sorted_terms(self) -> list[tuple[Vec, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (total(kv[0]), kv[0]))

    def coefficient(self, exponent) -> Fraction:
        exp = as_vec(exponent, self.num_vars)
        if self.precision is not INF and total(exp) > self.precision:
            raise PrecisionError(
                f"coefficient at {exp} requested beyond precision {self.precision}"
            )
        return self.terms.get(exp, Fraction(0))

    def constant_term(self) -> Fraction:
        zero = tuple(Fraction(0) for _ in range(self.num_vars))
        return self.terms.get(zero, Fraction(0))

    def order_total(self):
        """Least total exponent sum in the support; +inf for the zero series."""
        if not self.terms:
            return INF
        return min(total(e) for e in self.terms)

    def _order_bound(self):
        # sound lower bound for the order, finite for truncated zero series
        return _min_prec(self.order_total(), self.precision)

    def min_exponent(self, order=None) -> Vec:
        """Least exponent, by total sum then lexicographically, or under a
        caller-supplied additive order."""
        if not self.terms:
            raise PuiseuxError("zero series has no minimal exponent")
        if order is not None:
            return order.min(self.terms)
        return min(self.terms, key=lambda e: (total(e), e))

    def dominating(self) -> tuple[Vec, Fraction]:
        e = self.min_exponent()
        return e, self.terms[e]

    # -- ring operations ----------------------------------------------------

    def _check_compat(self, other: "PuiseuxSeries") -> None:
        if self.num_vars != other.num_vars:
            raise DimensionError("series have different numbers of variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(self.num_vars, other)
        self._check_compat(other)
        prec = _min_prec(self.precision, other.precision)
        terms: dict[Vec, Fraction] = {}
        for src in (self.terms, other.terms):
            for e, c in src.items():
                if prec is not INF and total(e) > prec:
                    continue
                v = terms.get(e)
                terms[e] = c if v is None else v + c
        return PuiseuxSeries._build(
            self.num_vars, terms, prec, self.laurent or other.laurent
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(self.num_vars, other)
        return self + (-other)

    def scale(self, c) -> "PuiseuxSeries":
        c = rat(c)
        return PuiseuxSeries._build(
            self.num_vars,
            {e: c * v for e, v in self.terms.items()},
            self.precision,
            self.laurent,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compat(other)
        prec = _min_prec(
            _add_prec(self.precision, other._order_bound()),
            _add_prec(other.precision, self._order_bound()),
        )
        # convolve on the common integer grid: integer keys hash and add far
        # faster than Fraction tuples
        grid = [math.lcm(a, b) for a, b in zip(self.ramification, other.ramification)]
        lcm_all = math.lcm(*grid)
        weights = [lcm_all // n for n in grid]

        def to_grid(e):
            return tuple(
                c.numerator * (n // c.denominator) for c, n in zip(e, grid)
            )

        def grid_total(e):
            return sum(c * w for c, w in zip(e, weights))

        cutoff = None if prec is INF else math.floor(prec * lcm_all)
        a_items = [(to_grid(e), c) for e, c in self.terms.items()]
        b_items = sorted(
            ((grid_total(g), g, c) for e, c in other.terms.items() for g in (to_grid(e),)),
            key=lambda x: x[0],
        )
        raw: dict[tuple, Fraction] = {}
        for e1, c1 in a_items:
            t1 = grid_total(e1)
            for t2, e2, c2 in b_items:
                if cutoff is not None and t1 + t2 > cutoff:
                    break
                e = tuple(x + y for x, y in zip(e1, e2))
                v = raw.get(e)
                raw[e] = c1 * c2 if v is None else v + c1 * c2
        terms = {
            tuple(Fraction(x, n) for x, n in zip(e, grid)): c for e, c in raw.items()
        }
        return PuiseuxSeries._build(
            self.num_vars, terms, prec, self.laurent or other.laurent
        )

    __rmul__ = __mul__

    def shift(self, delta) -> "PuiseuxSeries":
        """Multiply by the monomial with exponent vector delta."""
        delta = as_vec(delta, self.num_vars)
        terms = {vec_add(e, delta): c for e, c in self.terms.items()}
        laurent = self.laurent or any(c < 0 for e in terms for c in e)
        if laurent and self.num_vars != 1:
            raise PuiseuxError("a shift below zero requires a one-variable Laurent series")
        return PuiseuxSeries._build(
            self.num_vars, terms, _add_prec(self.precision, total(delta)), laurent
        )

    def truncate(self, precision) -> "PuiseuxSeries":
        prec = _min_prec(self.precision, _norm_prec(precision))
        terms = self.terms
        if prec is not INF and prec != self.precision:
            terms = {e: c for e, c in terms.items() if total(e) <= prec}
        return PuiseuxSeries._build(self.num_vars, terms, prec, self.laurent)

    # -- powers and roots ---------------------------------------------------

    def unit_power(self, r, constant_power=None) -> "PuiseuxSeries":
        """self**r for an invertible series (nonzero constant term), via the
        generalized binomial expansion of (1 + u)^r with u = self/self_0 - 1.

        constant_power overrides self_0**r, which is needed when r is
        fractional and the constant term has no rational r-th power.
        """
        r = rat(r)
        c0 = self.constant_term()
        if c0 == 0:
            raise PuiseuxError("unit_power requires a nonzero constant term")
        if constant_power is None:
            constant_power = rational_power(c0, r)
        u = self.scale(1 / c0) - 1
        prec = self.precision
        kmax = r.numerator if r.denominator == 1 and r >= 0 else None
        if prec is INF and kmax is None and not u.is_zero():
            raise PrecisionError(
                "power of an exact non-constant series has infinite support; truncate first"
            )
        acc = PuiseuxSeries.one(self.num_vars, prec)
        power = PuiseuxSeries.one(self.num_vars, prec)
        k = 1
        while not u.is_zero():
            if kmax is not None and k > kmax:
                break
            if prec is not INF and k * u.order_total() > prec:
                break
            power = power * u
            acc = acc + power.scale(rational_binomial(r, k))
            k += 1
        return acc.scale(constant_power)

    def unit_root(self, m: int, root_of_constant) -> "PuiseuxSeries":
        """The unique m-th root whose constant term is root_of_constant."""
        if m <= 0:
            raise PuiseuxError("root index must be positive")
        root = rat(root_of_constant)
        c0 = self.constant_term()
        if c0 == 0:
            raise PuiseuxError("unit_root requires a nonzero constant term")
        if root**m != c0:
            raise PuiseuxError(
                f"claimed root {root} fails: {root}^{m} = {root ** m} != {c0}"
            )
        return self.unit_power(Fraction(1, m), constant_power=root)

    def inverse(self) -> "PuiseuxSeries":
        return self.unit_power(-1)

    def pow_int(self, n: int) -> "PuiseuxSeries":
        if n == 0:
            return PuiseuxSeries.one(self.num_vars)
        if n > 0:
            acc = self
            for _ in range(n - 1):
                acc = acc * self
            return acc
        # negative powers
        if self.constant_term() != 0:
            return self.unit_power(n)
        if self.is_zero():
            raise PuiseuxError("negative power of the zero series")
        if self.num_vars != 1:
            raise PuiseuxError(
                "negative power needs a nonzero constant term when h > 1"
            )
        lam, a = self.dominating()
        unit = self.shift((-lam[0],)).scale(1 / a)
        body = unit.unit_power(n).scale(a**n)
        return body.shift((n * lam[0],))

    # -- substitution -------------------------------------------------------

    def monomial_substitute(self, matrix) -> "PuiseuxSeries":
        """Replace each exponent e by matrix·e (column action).

        The matrix must be invertible with non-negative rational entries and
        every image exponent must be non-negative.  Precision becomes c*T
        where c is the least column sum of the matrix, the largest bound up
        to which the image is fully determined.
        """
        q = mat_from(matrix)
        if len(q) != self.num_vars or len(q[0]) != self.num_vars:
            raise DimensionError("substitution matrix has wrong shape")
        if any(c < 0 for row in q for c in row):
            raise PuiseuxError("substitution matrix must be non-negative")
        terms = {}
        for e, c in self.terms.items():
            img = mat_vec(q, e)
            if any(x < 0 for x in img):
                raise PuiseuxError(f"substitution sends {e} to negative exponent {img}")
            terms[img] = c
        if self.precision is INF:
            prec = INF
        else:
            col_sums = [sum(q[i][j] for i in range(len(q))) for j in range(len(q))]
            prec = min(col_sums) * self.precision
        return PuiseuxSeries(self.num_vars, terms, prec)

    # -- comparisons and formatting -----------------------------------------

    def agrees_with(self, other: "PuiseuxSeries") -> bool:
        """Exact equality of all coefficients up to the common precision."""
        self._check_compat(other)
        prec = _min_prec(self.precision, other.precision)
        for e in set(self.terms) | set(other.terms):
            if prec is not INF and total(e) > prec:
                continue
            if self.terms.get(e, 0) != other.terms.get(e, 0):
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, PuiseuxSeries)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
            and self.precision == other.precision
            and self.laurent == other.laurent
        )

    __hash__ = None

    def __repr__(self):
        return f"PuiseuxSeries({format_series(self)!r}, vars={self.num_vars})"

    def __str__(self):
        return format_series(self)

    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "ramification": list(self.ramification),
            "terms": [
                {"exp": [str(c) for c in e], "coef": str(v)}
                for e, v in self.sorted_terms()
            ],
            "precision": None if self.precision is INF else str(self.precision),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PuiseuxSeries":
        prec = INF if data.get("precision") is None else rat(data["precision"])
        terms = [(tuple(rat(c) for c in t["exp"]), rat(t["coef"])) for t in data["terms"]]
        laurent = any(c < 0 for e, _ in terms for c in e)
        return cls(data["vars"], terms, prec, laurent)


def default_names(num_vars: int, first: str = "x") -> list[str]:
    if num_vars == 1:
        return [first]
    return [f"{first}{i + 1}" for i in range(num_vars)]


def format_series(s: PuiseuxSeries, names: list[str] | None = None) -> str:
    names = names or default_names(s.num_vars)
    if len(names) != s.num_vars:
        raise DimensionError("one name per variable required")
    parts: list[str] = []
    for exp, coef in s.sorted_terms():
        factors = []
        for name, e in zip(names, exp):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^({e})")
        mag = abs(coef)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if coef < 0 else "+"
        parts.append((sign, body))
    if not parts:
        text = "0"
    else:
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    if s.precision is not INF:
        text += f" + O(total={s.precision})"
    return text


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z]+\d*)|(?P<op>[-+*/^()=])")

_BARE_VARS = {"x", "y", "t", "u", "v", "w"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            pos = m.end()
            if m.lastgroup != "ws":
                self.tokens.append((m.lastgroup, m.group(), m.start()))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse_rational(self) -> Fraction:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.next()
            sign = -1 if tok[1] == "-" else 1
        tok = self.expect("int")
        num = int(tok[1])
        if self.peek()[:2] == ("op", "/"):
            self.next()
            den = int(self.expect("int")[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse_factor(self) -> tuple[str, Fraction]:
        tok = self.expect("name")
        name = tok[1]
        exponent = Fraction(1)
        if self.peek()[:2] == ("op", "^"):
            self.next()
            self.expect("op", "(")
            exponent = self.parse_rational()
            self.expect("op", ")")
        return name, exponent


def parse(
    text: str,
    num_vars: int | None = None,
    precision=None,
    laurent: bool = False,
    default_precision=Fraction(10),
) -> PuiseuxSeries:
    """Parse the series grammar.

    Terms are separated by '+'/'-'; a term is an optional rational
    coefficient and '*'-joined factors var or var^(p/q).  Bare variable
    names (x, y, t, u, v, w) denote the single variable of a one-variable
    series; indexed names like x1, v2 select the variable by suffix.  A
    trailing '+ O(total=R)' fixes the precision; otherwise the `precision`
    argument or, failing that, `default_precision` applies.
    """
    p = _Parser(text)
    raw_terms: list[tuple[list[tuple[str, Fraction]], Fraction, int]] = []
    explicit_precision = None

    sign = Fraction(1)
    tok = p.peek()
    if tok[0] == "op" and tok[1] in "+-":
        p.next()
        sign = Fraction(-1) if tok[1] == "-" else Fraction(1)
    while True:
        tok = p.peek()
        if tok[0] == "name" and tok[1] == "O":
            p.next()
            p.expect("op", "(")
            key = p.expect("name")
            if key[1] != "total":
                raise ParseError("precision marker must be O(total=R)", key[2])
            p.expect("op", "=")
            explicit_precision = p.parse_rational()
            p.expect("op", ")")
            break
        start = tok[2]
        coef = sign
        factors: list[tuple[str, Fraction]] = []
        while True:
            tok = p.peek()
            if tok[0] == "int" or (tok[0] == "op" and tok[1] in "+-"):
                coef *= p.parse_rational()
            elif tok[0] == "name":
                factors.append(p.parse_factor())
            else:
                raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
            if p.peek()[:2] == ("op", "*"):
                p.next()
                continue
            break
        raw_terms.append((factors, coef, start))
        tok = p.peek()
        if tok[0] == "eof":
            break
        if tok[0] == "op" and tok[1] in "+-":
            p.next()
            sign = Fraction(-1) if tok[1] == "-" else Fraction(1)
            continue
        raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
    tok = p.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])

    # resolve variable names to coordinates
    names = {name for factors, _, _ in raw_terms for name, _ in factors}
    bare = {n for n in names if n.isalpha()}
    indexed = {n for n in names if not n.isalpha()}
    if bare and indexed:
        raise ParseError("cannot mix bare and indexed variable names", 0)
    if bare:
        unknown = bare - _BARE_VARS
        if unknown:
            raise ParseError(
                f"unknown symbol {sorted(unknown)[0]!r}; variables are x/y/t/u/v/w or "
                "indexed names, parameters need --param",
                0,
            )
        if len(bare) > 1:
            raise ParseError(f"several bare variables {sorted(bare)}; index them instead", 0)
        if num_vars is not None and num_vars != 1:
            raise ParseError("bare variable name in a multivariate series", 0)
        var_index = {next(iter(bare)): 0}
        h = 1
    else:
        var_index = {}
        for n in indexed:
            suffix = int(re.search(r"\d+$", n).group())
            if suffix < 1:
                raise ParseError(f"variable index in {n!r} must start at 1", 0)
            var_index[n] = suffix - 1
        h = max(var_index.values(), default=0) + 1
    if num_vars is not None:
        if h > num_vars:
            raise ParseError(f"variable index {h} exceeds declared {num_vars}", 0)
        h = num_vars
    h = max(h, 1)

    terms: list[tuple[Vec, Fraction]] = []
    for factors, coef, start in raw_terms:
        exp = [Fraction(0)] * h
        for name, e in factors:
            exp[var_index[name]] += e
        if any(c < 0 for c in exp) and not laurent:
            raise ParseError("negative exponent in a non-Laurent series", start)
        terms.append((tuple(exp), coef))

    if explicit_precision is not None:
        prec = explicit_precision
    elif precision is not None:
        prec = _norm_prec(precision)
    else:
        prec = _norm_prec(default_precision)
    return PuiseuxSeries(h, terms, prec, laurent)
