"""Finite free commutative algebras presented by monomial power rules.

An algebra here is R[g_1..g_m] modulo one rule g_i^{e_i} = rhs_i per
generator, with every rhs supported on the monomial basis
{g^a : 0 <= a_i < e_i}.  Reduction to normal form repeatedly rewrites the
highest-indexed overflowing generator; admissibility (an acyclicity
condition on which generators appear in which right-hand sides) makes
that terminate.  Linear maps between such algebras are stored as sparse
columns of base-ring elements.
"""

from __future__ import annotations

import itertools

from .errors import (
    ContextMismatchError,
    DimensionMismatchError,
    InadmissiblePresentationError,
    NonUnitError,
    NotInvertibleError,
    ParentMismatchError,
    RankGuardError,
    RelationViolationError,
    UnsupportedParametersError,
)

MAX_RANK = 20000


class MonomialQuotientAlgebra:
    """Finite free R-algebra with one power rewrite rule per generator.

    Basis monomials are ordered lexicographically by exponent vector with
    generator 1 most significant; a tensor product of two algebras orders
    its basis with the left factor's exponents varying slowest.
    """

    def __init__(self, ring, gens, bounds, rules, tensor_factors=None):
        gens = tuple(gens)
        bounds = tuple(bounds)
        rules = tuple(dict(r) for r in rules)
        if not (len(gens) == len(bounds) == len(rules)):
            raise UnsupportedParametersError("generators, bounds and rules must align")
        for b in bounds:
            if not isinstance(b, int) or b < 2:
                raise UnsupportedParametersError(f"exponent bound {b!r} must be an integer >= 2")
        rank = 1
        for b in bounds:
            rank *= b
        if rank > MAX_RANK:
            raise RankGuardError(f"rank {rank} exceeds the bound {MAX_RANK}")
        self.ring = ring
        self.gens = gens
        self.bounds = bounds
        self.rules = rules
        self.rank = rank
        self.tensor_factors = tensor_factors
        self._reduce_cache: dict[tuple, dict] = {}
        # radix weights for basis indexing, generator 1 most significant
        weights = []
        w = 1
        for b in reversed(bounds):
            weights.append(w)
            w *= b
        self._weights = tuple(reversed(weights))
        self._check_rules()

    def _check_rules(self):
        m = len(self.gens)
        for i, rule in enumerate(self.rules):
            for exps, c in rule.items():
                if len(exps) != m:
                    raise InadmissiblePresentationError(
                        f"rule for {self.gens[i]} has a monomial of wrong arity"
                    )
                if any(e < 0 or e >= b for e, b in zip(exps, self.bounds)):
                    raise InadmissiblePresentationError(
                        f"rule for {self.gens[i]} is not supported on the monomial basis"
                    )
                if c.is_zero():
                    raise InadmissiblePresentationError("rules must not carry zero coefficients")
        # Termination: ignoring self-loops (which strictly drop the generator's
        # own exponent), the dependency digraph must be acyclic.
        edges = {
            i: {j for exps, _ in self.rules[i].items() for j, e in enumerate(exps) if e and j != i}
            for i in range(m)
        }
        state = [0] * m  # 0 unvisited, 1 on stack, 2 done

        def visit(i):
            state[i] = 1
            for j in edges[i]:
                if state[j] == 1:
                    raise InadmissiblePresentationError(
                        f"rewrite rules for {self.gens[i]} and {self.gens[j]} form a cycle"
                    )
                if state[j] == 0:
                    visit(j)
            state[i] = 2

        for i in range(m):
            if state[i] == 0:
                visit(i)

    # -- basis bookkeeping -------------------------------------------------

    def index(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self._weights))

    def exps_of(self, index: int):
        out = []
        for b, w in zip(self.bounds, self._weights):
            q, index = divmod(index, w)
            out.append(q)
        return tuple(out)

    def iter_basis(self):
        if not self.gens:
            yield ()
            return
        yield from itertools.product(*[range(b) for b in self.bounds])

    def monomial_str(self, exps) -> str:
        if self.tensor_factors is not None:
            left, right = self.tensor_factors
            k = len(left.gens)
            return f"{left.monomial_str(exps[:k])}⊗{right.monomial_str(exps[k:])}"
        parts = []
        for name, e in zip(self.gens, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- element constructors ---------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(0,) * len(self.gens): self.ring.one()})

    def scalar(self, c) -> "AlgebraElement":
        if c.is_zero():
            return self.zero()
        return AlgebraElement(self, {(0,) * len(self.gens): c})

    def gen(self, i: int) -> "AlgebraElement":
        exps = tuple(1 if j == i else 0 for j in range(len(self.gens)))
        return AlgebraElement(self, {exps: self.ring.one()})

    def monomial(self, exps, coeff=None) -> "AlgebraElement":
        coeff = self.ring.one() if coeff is None else coeff
        out = {}
        for e, c in self._reduce(tuple(exps)).items():
            _acc(out, e, coeff * c)
        return AlgebraElement(self, out)

    def element(self, coeffs: dict) -> "AlgebraElement":
        out = {}
        for exps, c in coeffs.items():
            exps = tuple(exps)
            if any(e < 0 or e >= b for e, b in zip(exps, self.bounds)) or len(exps) != len(self.gens):
                raise UnsupportedParametersError(f"{exps} is not a basis exponent vector")
            if not c.is_zero():
                _acc(out, exps, c)
        return AlgebraElement(self, out)

    def from_vec(self, vec: dict) -> "AlgebraElement":
        return AlgebraElement(self, {self.exps_of(i): c for i, c in vec.items() if not c.is_zero()})

    # -- normal form -------------------------------------------------------

    def _reduce(self, exps: tuple) -> dict:
        """Normal form of the pure monomial g^exps as {basis exps: coeff}."""
        cached = self._reduce_cache.get(exps)
        if cached is not None:
            return cached
        over = None
        for i in range(len(exps) - 1, -1, -1):
            if exps[i] >= self.bounds[i]:
                over = i
                break
        if over is None:
            result = {exps: self.ring.one()}
        else:
            rest = list(exps)
            rest[over] -= self.bounds[over]
            result = {}
            for rexps, rc in self.rules[over].items():
                combined = tuple(a + b for a, b in zip(rest, rexps))
                for sexps, sc in self._reduce(combined).items():
                    _acc(result, sexps, rc * sc)
        self._reduce_cache[exps] = result
        return result

    # -- structure ---------------------------------------------------------

    def tensor(self, other: "MonomialQuotientAlgebra") -> "MonomialQuotientAlgebra":
        if other.ring != self.ring:
            raise ContextMismatchError("tensor factors must share a base ring")
        m, n = len(self.gens), len(other.gens)
        zero_r = (0,) * n
        zero_l = (0,) * m
        rules = [
            {exps + zero_r: c for exps, c in rule.items()} for rule in self.rules
        ] + [
            {zero_l + exps: c for exps, c in rule.items()} for rule in other.rules
        ]
        return MonomialQuotientAlgebra(
            self.ring,
            self.gens + other.gens,
            self.bounds + other.bounds,
            rules,
            tensor_factors=(self, other),
        )

    def pure_tensor(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        """Image of a (x) b for elements of the two tensor factors."""
        if self.tensor_factors is None:
            raise ParentMismatchError("pure_tensor requires a tensor product algebra")
        left, right = self.tensor_factors
        if a.algebra != left or b.algebra != right:
            raise ParentMismatchError("pure_tensor arguments must come from the tensor factors")
        out = {}
        for ea, ca in a.coeffs.items():
            for eb, cb in b.coeffs.items():
                _acc(out, ea + eb, ca * cb)
        return AlgebraElement(self, out)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialQuotientAlgebra)
            and other.ring == self.ring
            and other.gens == self.gens
            and other.bounds == self.bounds
            and other.rules == self.rules
        )

    def __hash__(self):
        return hash((self.ring, self.gens, self.bounds))

    def __repr__(self):
        rel = ", ".join(
            f"{g}^{b}" for g, b in zip(self.gens, self.bounds)
        )
        return f"<algebra {self.ring.tag}[{', '.join(self.gens)}]/({rel}-rules), rank {self.rank}>"


def unit_algebra(ring) -> MonomialQuotientAlgebra:
    """The base ring viewed as a rank-1 algebra (no generators)."""
    return MonomialQuotientAlgebra(ring, (), (), ())


def _acc(out: dict, key, val):
    cur = out.get(key)
    if cur is None:
        if not val.is_zero():
            out[key] = val
    else:
        s = cur + val
        if s.is_zero():
            del out[key]
        else:
            out[key] = s


class AlgebraElement:
    """Sparse element: {exponent tuple: base-ring coefficient}."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: MonomialQuotientAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            raise ParentMismatchError(f"cannot combine element with {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ParentMismatchError("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            _acc(out, e, c)
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            _acc(out, e, -c)
        return AlgebraElement(self.algebra, out)

    def __mul__(self, other):
        A = self.algebra
        if isinstance(other, int):
            other = A.scalar(A.ring.from_int(other))
        elif isinstance(other, A.ring.element_cls):
            other = A.scalar(other)
        other = self._check(other)
        out = {}
        reduce = A._reduce
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                c = c1 * c2
                prod = tuple(a + b for a, b in zip(e1, e2))
                for em, cm in reduce(prod).items():
                    _acc(out, em, c * cm)
        return AlgebraElement(A, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise UnsupportedParametersError("negative powers: use invert_unit")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def coefficient(self, exps):
        return self.coeffs.get(tuple(exps), self.algebra.ring.zero())

    def constant_term(self):
        return self.coefficient((0,) * len(self.algebra.gens))

    def is_zero(self) -> bool:
        return not self.coeffs

    def vec(self) -> dict:
        index = self.algebra.index
        return {index(e): c for e, c in self.coeffs.items()}

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra == self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        A = self.algebra
        parts = []
        for exps in sorted(self.coeffs, key=A.index):
            c = self.coeffs[exps]
            mono = A.monomial_str(exps)
            cs = str(c)
            if mono == "1":
                parts.append(cs if _is_plain(cs) else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            elif _is_plain(cs):
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} in {self.algebra!r}>"


def _is_plain(coeff_str: str) -> bool:
    return "+" not in coeff_str and "/" not in coeff_str


def invert_unit(a: AlgebraElement) -> AlgebraElement:
    """Inverse of a unit, via geometric expansion of its augmentation part.

    Falls back to solving against the multiplication matrix when the
    non-constant part is not nilpotent (non-local algebras).
    """
    A = a.algebra
    c = a.constant_term()
    if c.is_unit():
        c_inv = c.invert()
        n = (a - A.scalar(c)) * c_inv
        if n.is_zero():
            return A.scalar(c_inv)
        acc = A.one()
        power = A.one()
        for k in range(1, A.rank + 2):
            power = power * n
            if power.is_zero():
                return acc * c_inv
            acc = acc + (power if k % 2 == 0 else -power)
        # geometric expansion did not terminate: fall through to linear solve
    mat = multiplication_matrix(a)
    try:
        inv = mat.inverse()
    except NotInvertibleError as exc:
        raise NonUnitError(f"element is not a unit: {exc}") from exc
    # the monomial 1 sits at basis index 0
    return A.from_vec(inv.cols[0])


def multiplication_matrix(a: AlgebraElement) -> "LinearMap":
    A = a.algebra
    cols = []
    for exps in A.iter_basis():
        cols.append((a * A.monomial(exps)).vec())
    return LinearMap(A.ring, A.rank, A.rank, cols)


def algebra_hom(source: MonomialQuotientAlgebra, target: MonomialQuotientAlgebra, images):
    """Linear map of the algebra homomorphism sending generator i to images[i].

    Raises RelationViolationError unless every defining relation of the
    source is preserved by the proposed generator images.
    """
    if source.ring != target.ring:
        raise ContextMismatchError("algebra_hom requires a shared base ring")
    images = list(images)
    if len(images) != len(source.gens):
        raise DimensionMismatchError(
            f"expected {len(source.gens)} generator images, got {len(images)}"
        )
    for im in images:
        if im.algebra != target:
            raise ParentMismatchError("generator images must lie in the target algebra")

    # power tables images[i]^k for 0 <= k <= bound_i
    powers = []
    for i, im in enumerate(images):
        row = [target.one()]
        for _ in range(source.bounds[i]):
            row.append(row[-1] * im)
        powers.append(row)

    def apply_to_monomial(exps) -> AlgebraElement:
        out = target.one()
        for i, e in enumerate(exps):
            if e:
                out = out * powers[i][e]
        return out

    def apply_to_element(elem: AlgebraElement) -> AlgebraElement:
        out = target.zero()
        for exps, c in elem.coeffs.items():
            out = out + apply_to_monomial(exps) * c
        return out

    for i, rule in enumerate(source.rules):
        lhs = powers[i][source.bounds[i]]
        rhs = apply_to_element(AlgebraElement(source, dict(rule)))
        if lhs != rhs:
            raise RelationViolationError(
                f"images do not preserve the relation {source.gens[i]}^{source.bounds[i]} = "
                f"{AlgebraElement(source, dict(rule))}; difference {lhs - rhs}"
            )

    cols = [apply_to_monomial(exps).vec() for exps in source.iter_basis()]
    return LinearMap(source.ring, source.rank, target.rank, cols)


class LinearMap:
    """R-linear map stored as sparse columns over the basis index."""

    __slots__ = ("ring", "source_dim", "target_dim", "cols")

    def __init__(self, ring, source_dim: int, target_dim: int, cols):
        cols = tuple({i: c for i, c in col.items() if not c.is_zero()} for col in cols)
        if len(cols) != source_dim:
            raise DimensionMismatchError(f"expected {source_dim} columns, got {len(cols)}")
        self.ring = ring
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.cols = cols

    @staticmethod
    def identity(ring, n: int) -> "LinearMap":
        return LinearMap(ring, n, n, [{i: ring.one()} for i in range(n)])

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, c in vec.items():
            for j, m in self.cols[i].items():
                _acc(out, j, c * m)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target_dim != self.source_dim or other.ring != self.ring:
            raise DimensionMismatchError("composition dimension mismatch")
        return LinearMap(self.ring, other.source_dim, self.target_dim,
                         [self.apply(col) for col in other.cols])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for i, c in b.items():
                _acc(col, i, c)
            cols.append(col)
        return LinearMap(self.ring, self.source_dim, self.target_dim, cols)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for i, c in b.items():
                _acc(col, i, -c)
            cols.append(col)
        return LinearMap(self.ring, self.source_dim, self.target_dim, cols)

    def _same_shape(self, other):
        if (
            not isinstance(other, LinearMap)
            or other.source_dim != self.source_dim
            or other.target_dim != self.target_dim
            or other.ring != self.ring
        ):
            raise DimensionMismatchError("linear maps have different shapes")

    def transpose(self) -> "LinearMap":
        cols: list[dict] = [{} for _ in range(self.target_dim)]
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                cols[i][j] = c
        return LinearMap(self.ring, self.target_dim, self.source_dim, cols)

    def kron(self, other: "LinearMap") -> "LinearMap":
        """Tensor product map, left factor most significant in both indexings."""
        if other.ring != self.ring:
            raise ContextMismatchError("kron requires a shared base ring")
        cols = []
        for ca in self.cols:
            for cb in other.cols:
                col = {}
                for i, a in ca.items():
                    for j, b in cb.items():
                        col[i * other.target_dim + j] = a * b
                cols.append(col)
        return LinearMap(
            self.ring,
            self.source_dim * other.source_dim,
            self.target_dim * other.target_dim,
            cols,
        )

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, self.ring.zero())

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def inverse(self) -> "LinearMap":
        """Gauss-Jordan inverse; pivots must be units of the base ring."""
        n = self.source_dim
        if self.target_dim != n:
            raise DimensionMismatchError("only square maps can be inverted")
        zero = self.ring.zero()
        rows = [[self.entry(i, j) for j in range(n)] for i in range(n)]
        aug = [[self.ring.one() if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next(
                (r for r in range(col, n) if rows[r][col].is_unit()),
                None,
            )
            if pivot is None:
                raise NotInvertibleError(
                    f"no unit pivot in column {col}; the map is not invertible over {self.ring.tag}"
                )
            rows[col], rows[pivot] = rows[pivot], rows[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = rows[col][col].invert()
            rows[col] = [v * inv for v in rows[col]]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r == col:
                    continue
                f = rows[r][col]
                if f.is_zero():
                    continue
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        cols = [{i: aug[i][j] for i in range(n) if not aug[i][j].is_zero()} for j in range(n)]
        return LinearMap(self.ring, n, n, cols)

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and other.ring == self.ring
            and other.source_dim == self.source_dim
            and other.target_dim == self.target_dim
            and other.cols == self.cols
        )

    def __repr__(self):
        return f"<LinearMap {self.source_dim} -> {self.target_dim} over {self.ring.tag}>"


def tensor_apply(f: LinearMap, g: LinearMap, vec: dict) -> dict:
    """Apply f (x) g to a sparse vector over the product index i*g.source + j."""
    out: dict = {}
    gs, gt = g.source_dim, g.target_dim
    for idx, c in vec.items():
        i, j = divmod(idx, gs)
        for fi, fc in f.cols[i].items():
            base = fi * gt
            cfc = c * fc
            for gj, gc in g.cols[j].items():
                _acc(out, base + gj, cfc * gc)
    return out


def null_space(m: LinearMap) -> list[dict]:
    """Kernel basis over a field, as sparse vectors."""
    if not m.ring.is_field:
        raise UnsupportedParametersError("null_space requires a field base ring")
    n = m.source_dim
    rows = []
    for i in range(m.target_dim):
        row = [m.entry(i, j) for j in range(n)]
        if any(not v.is_zero() for v in row):
            rows.append(row)
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, len(rows)) if not rows[k][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].invert()
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k == r:
                continue
            f = rows[k][col]
            if not f.is_zero():
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    basis = []
    one = m.ring.one()
    for free in range(n):
        if free in pivot_set:
            continue
        vec = {free: one}
        for k, col in enumerate(pivots):
            v = rows[k][free]
            if not v.is_zero():
                vec[col] = -v
        basis.append(vec)
    return basis
