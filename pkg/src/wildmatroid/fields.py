"""Exact fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction


class Field:
    name = "field"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def parse(self, text: str):
        num, _, den = str(text).partition("/")
        return self(int(num)) / self(int(den or 1))

    def format(self, x) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "QQ"
    _zero = Fraction(0)
    _one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def format(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class Residue:
    """An element of GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return Residue(other, self.p)
        if isinstance(other, Fraction):
            return Residue(other.numerator, self.p) / Residue(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return Residue(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Residue(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Residue(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Residue(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o.value

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self._zero = Residue(0, p)
        self._one = Residue(1, p)

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            return Residue(x.value, self.p)
        if isinstance(x, Fraction):
            return Residue(x.numerator, self.p) / Residue(x.denominator, self.p)
        return Residue(int(x), self.p)

    def format(self, x) -> str:
        return f"{self(x).value}/1"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_by_name(name: str) -> Field:
    if name == "QQ":
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    raise ValueError(f"unknown field {name!r}")


def _rref(rows: list[list], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    m = [[field(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: list[list], field: Field = QQ) -> int:
    """Rank of a matrix given as a list of rows, by exact elimination."""
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]), field)[1])


def nullspace(rows: list[list], ncols: int, field: Field = QQ) -> list[list]:
    """A basis of {x : rows . x = 0}."""
    m, pivots = _rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row_i, pc in enumerate(pivots):
            v[pc] = -m[row_i][fc]
        basis.append(v)
    return basis
