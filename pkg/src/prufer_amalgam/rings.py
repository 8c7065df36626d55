"""Finite commutative rings as indexed operation tables.

Elements are opaque indices ``0..order-1``.  Every constructor fixes the
enumeration order deterministically (lexicographic over component indices),
so witnesses and cached lattices are reproducible across runs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence

import numpy as np

EXHAUSTIVE_AXIOM_CAP = 256
AXIOM_SAMPLE_COUNT = 10_000
AXIOM_SAMPLE_SEED = 0


class RingError(ValueError):
    """Base class for construction errors."""


class InvalidOrderError(RingError):
    pass


class ImproperIdealError(RingError):
    pass


class RingMismatchError(RingError):
    pass


class SizeCapError(RingError):
    pass


class HomomorphismError(RingError):
    """Raised when a candidate map violates a ring-homomorphism axiom."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.setflags(write=False)
    return a


def format_label(label: Any) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(format_label(x) for x in label) + ")"
    return str(label)


class FiniteRing:
    """A finite commutative ring with identity given by full operation tables.

    ``parts`` optionally records, for rings built from components (products,
    trivial extensions, amalgams), the component rings together with the
    index map sending each element to its component.
    """

    def __init__(
        self,
        add: np.ndarray,
        mul: np.ndarray,
        zero: int,
        one: int,
        label: str,
        labels: Sequence[Any] | None = None,
        neg: np.ndarray | None = None,
        parts: tuple = (),
    ):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        n = self.add.shape[0]
        if self.add.shape != (n, n) or self.mul.shape != (n, n):
            raise RingError("operation tables must be square and equal-sized")
        if n < 2:
            raise InvalidOrderError(f"a ring needs at least 2 elements, got {n}")
        self.zero = int(zero)
        self.one = int(one)
        if self.zero == self.one:
            raise InvalidOrderError("zero and one coincide")
        self.label = label
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if neg is None:
            rows, cols = np.nonzero(self.add == self.zero)
            neg = np.empty(n, dtype=np.int32)
            neg[rows] = cols
        self.neg = _frozen(neg)
        self.parts = parts

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, order={self.order})"

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.order).tobytes())
        h.update(self.add.tobytes())
        h.update(self.mul.tobytes())
        h.update(np.array([self.zero, self.one], dtype=np.int64).tobytes())
        return h.hexdigest()

    def elements(self) -> range:
        return range(self.order)

    def sub(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    def power(self, x: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = int(self.mul[r, x])
        return r

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under the unique map Z -> R."""
        r = self.zero
        step = self.one if k >= 0 else int(self.neg[self.one])
        for _ in range(abs(k)):
            r = int(self.add[r, step])
        return r

    @cached_property
    def characteristic(self) -> int:
        x, k = self.one, 1
        while x != self.zero:
            x = int(self.add[x, self.one])
            k += 1
        return k

    def fmt(self, x: int) -> str:
        return format_label(self.labels[x])

    def trace(self, x: int) -> str:
        """Trace form plus carrier index, e.g. ``(2,0) in Z/8 ⋈ (2) [#16]``."""
        return f"{self.fmt(x)} in {self.label} [#{int(x)}]"

    def index_of(self, label: Any) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise RingError(f"{label!r} is not an element of {self.label}") from None

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def principal_masks(self) -> np.ndarray:
        """Row ``x`` is the membership mask of the principal ideal (x)."""
        n = self.order
        masks = np.zeros((n, n), dtype=bool)
        masks[np.arange(n)[:, None], self.mul] = True
        masks.setflags(write=False)
        return masks


@dataclass(frozen=True)
class RingHom:
    """A ring homomorphism between finite rings, verified on construction.

    Use :func:`make_hom` (or the helpers below it) rather than instantiating
    directly; the constructor assumes ``table`` already passed verification.
    """

    source: FiniteRing
    target: FiniteRing
    table: np.ndarray = field(repr=False)
    name: str = "f"

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def image(self) -> frozenset[int]:
        return frozenset(int(v) for v in np.unique(self.table))

    def kernel(self) -> frozenset[int]:
        return frozenset(int(v) for v in np.nonzero(self.table == self.target.zero)[0])

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order


@dataclass(frozen=True)
class ModuleOverRing:
    """A finite module: an abelian group with a ring action table."""

    ring: FiniteRing
    add: np.ndarray = field(repr=False)
    action: np.ndarray = field(repr=False)
    zero: int
    labels: tuple = ()
    label: str = "M"

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def neg(self) -> np.ndarray:
        rows, cols = np.nonzero(self.add == self.zero)
        out = np.empty(self.order, dtype=np.int32)
        out[rows] = cols
        return out

    def check_axioms(self) -> list[str]:
        """Names of violated module axioms (empty when it is a module)."""
        R, n = self.ring, self.order
        act, add = self.action, self.add
        bad = []
        g = np.arange(n)
        if not np.array_equal(act[R.one], g):
            bad.append("unit action")
        # (r + s)e = re + se
        lhs = act[R.add][:, :, g]  # shape (|R|,|R|,n)
        rhs = add[act[:, None, :], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            bad.append("additive in ring")
        # r(e + e') = re + re'
        lhs = act[:, add]
        rhs = add[act[:, :, None], act[:, None, :]]
        if not np.array_equal(lhs, rhs):
            bad.append("additive in module")
        # (rs)e = r(se)
        lhs = act[R.mul]
        rhs = act[np.arange(R.order)[:, None, None], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            bad.append("associative action")
        return bad


def module_via_hom(f: RingHom, label: str | None = None) -> ModuleOverRing:
    """The target ring of ``f`` viewed as a module over the source."""
    S = f.target
    action = S.mul[f.table]
    return ModuleOverRing(
        ring=f.source,
        add=S.add,
        action=_frozen(action),
        zero=S.zero,
        labels=S.labels,
        label=label or S.label,
    )


def make_zmod(n: int) -> FiniteRing:
    if n < 2:
        raise InvalidOrderError(f"Z/nZ needs n >= 2, got {n}")
    x = np.arange(n)
    return FiniteRing(
        add=(x[:, None] + x[None, :]) % n,
        mul=(x[:, None] * x[None, :]) % n,
        zero=0,
        one=1 % n,
        label=f"Z/{n}",
        neg=(-x) % n,
    )


def _wrap(label: str) -> str:
    return f"({label})" if " " in label else label


def make_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    nR, nS = R.order, S.order
    idx = np.arange(nR * nS)
    a, b = idx // nS, idx % nS
    add = R.add[a[:, None], a[None, :]] * nS + S.add[b[:, None], b[None, :]]
    mul = R.mul[a[:, None], a[None, :]] * nS + S.mul[b[:, None], b[None, :]]
    labels = [(R.labels[i], S.labels[j]) for i in range(nR) for j in range(nS)]
    return FiniteRing(
        add,
        mul,
        zero=R.zero * nS + S.zero,
        one=R.one * nS + S.one,
        label=f"{_wrap(R.label)} × {_wrap(S.label)}",
        labels=labels,
        neg=R.neg[a] * nS + S.neg[b],
        parts=((R, a), (S, b)),
    )


def make_trivial_extension(A: FiniteRing, M: ModuleOverRing) -> FiniteRing:
    """Idealization A ⋉ M with (a,e)(a',e') = (aa', ae' + a'e)."""
    if M.ring is not A and M.ring.digest != A.digest:
        raise RingMismatchError(f"module is over {M.ring.label}, not {A.label}")
    nA, nM = A.order, M.order
    idx = np.arange(nA * nM)
    a, e = idx // nM, idx % nM
    add = A.add[a[:, None], a[None, :]] * nM + M.add[e[:, None], e[None, :]]
    ae2 = M.action[a[:, None], e[None, :]]
    a2e = M.action[a[None, :], e[:, None]]
    mul = A.mul[a[:, None], a[None, :]] * nM + M.add[ae2, a2e]
    labels = [(A.labels[i], M.labels[j] if M.labels else j) for i in range(nA) for j in range(nM)]
    return FiniteRing(
        add,
        mul,
        zero=A.zero * nM + M.zero,
        one=A.one * nM + M.zero,
        label=f"{_wrap(A.label)} ⋉ {_wrap(M.label)}",
        labels=labels,
        parts=((A, a),),
    )


def make_quotient(R: FiniteRing, ideal) -> tuple[FiniteRing, RingHom]:
    """Coset ring R/I with its canonical projection.

    Cosets are indexed in order of their least representative, and each coset
    is labelled by that representative in brackets.
    """
    members = np.zeros(R.order, dtype=bool)
    members[list(ideal.elements)] = True
    if members.all():
        raise ImproperIdealError(f"cannot quotient {R.label} by the unit ideal")
    coset_of = np.full(R.order, -1, dtype=np.int64)
    reps: list[int] = []
    ideal_idx = np.nonzero(members)[0]
    for x in range(R.order):
        if coset_of[x] >= 0:
            continue
        coset_of[R.add[x, ideal_idx]] = len(reps)
        reps.append(x)
    reps_arr = np.array(reps)
    add = coset_of[R.add[reps_arr[:, None], reps_arr[None, :]]]
    mul = coset_of[R.mul[reps_arr[:, None], reps_arr[None, :]]]
    gens = ",".join(R.fmt(g) for g in ideal.generators) or "0"
    Q = FiniteRing(
        add,
        mul,
        zero=int(coset_of[R.zero]),
        one=int(coset_of[R.one]),
        label=f"{_wrap(R.label)}/({gens})",
        labels=[f"[{R.fmt(r)}]" for r in reps],
    )
    return Q, RingHom(R, Q, _frozen(coset_of), name="π")


def find_hom_violation(
    source: FiniteRing, target: FiniteRing, table: np.ndarray, sample: int | None = None
) -> tuple | None:
    """First violated hom axiom as ``(axiom, x, y)`` or None.

    Exhaustive over all pairs unless ``sample`` is given, in which case that
    many pseudo-random pairs (seed ``AXIOM_SAMPLE_SEED``) are checked.
    """
    table = np.asarray(table)
    if table.shape != (source.order,):
        raise RingError("map table must assign an image to every source element")
    if table.min() < 0 or table.max() >= target.order:
        raise RingError("map table has images outside the target ring")
    if table[source.one] != target.one:
        return ("unital", source.one, None)
    if sample is None:
        xs, ys = np.meshgrid(np.arange(source.order), np.arange(source.order), indexing="ij")
        xs, ys = xs.ravel(), ys.ravel()
    else:
        rng = np.random.default_rng(AXIOM_SAMPLE_SEED)
        xs = rng.integers(0, source.order, sample)
        ys = rng.integers(0, source.order, sample)
    fx, fy = table[xs], table[ys]
    for name, op_s, op_t in (("additive", source.add, target.add), ("multiplicative", source.mul, target.mul)):
        bad = np.nonzero(table[op_s[xs, ys]] != op_t[fx, fy])[0]
        if bad.size:
            i = bad[0]
            return (name, int(xs[i]), int(ys[i]))
    return None


def make_hom(source: FiniteRing, target: FiniteRing, table: Iterable[int], name: str = "f") -> RingHom:
    """Verify ``table`` (image of every source index) and wrap it as a RingHom."""
    table = _frozen(np.fromiter(table, dtype=np.int64) if not isinstance(table, np.ndarray) else table)
    bad = find_hom_violation(source, target, table)
    if bad is not None:
        axiom, x, y = bad
        if axiom == "unital":
            msg = f"map({source.fmt(x)}) = {target.fmt(table[x])} is not the identity of {target.label}"
        else:
            op = "+" if axiom == "additive" else "·"
            msg = (
                f"{axiom} axiom fails at x={source.fmt(x)}, y={source.fmt(y)}: "
                f"map(x{op}y) != map(x){op}map(y)"
            )
        raise HomomorphismError(msg, bad)
    return RingHom(source, target, table, name)


def identity_hom(R: FiniteRing) -> RingHom:
    return make_hom(R, R, np.arange(R.order), name="id")


def canonical_hom(source: FiniteRing, target: FiniteRing) -> RingHom:
    """The map k·1 ↦ k·1, defined when the source is cyclic (Z/n)."""
    n = source.characteristic
    if n != source.order:
        raise RingError(f"{source.label} is not cyclic; no canonical map")
    table = np.empty(n, dtype=np.int64)
    # source element k·1 is the k-th additive multiple of one
    x_s, x_t = source.zero, target.zero
    for _ in range(n):
        table[x_s] = x_t
        x_s = int(source.add[x_s, source.one])
        x_t = int(target.add[x_t, target.one])
    return make_hom(source, target, table, name="can")


def projection_hom(R: FiniteRing, component: int) -> RingHom:
    if not R.parts or component >= len(R.parts):
        raise RingError(f"{R.label} has no component {component}")
    S, index_map = R.parts[component]
    return make_hom(R, S, index_map, name=f"p{component + 1}")


def table_hom(source: FiniteRing, target: FiniteRing, pairs: Sequence[tuple[int, int]]) -> RingHom:
    """Hom from explicit (x, f(x)) pairs; unlisted elements are an error."""
    table = np.full(source.order, -1, dtype=np.int64)
    for x, y in pairs:
        table[x] = y
    if (table < 0).any():
        missing = int(np.nonzero(table < 0)[0][0])
        raise RingError(f"map table has no image for {source.fmt(missing)}")
    return make_hom(source, target, table, name="table")


def compose(g: RingHom, f: RingHom) -> RingHom:
    if f.target.digest != g.source.digest:
        raise RingMismatchError("cannot compose: codomain/domain mismatch")
    return RingHom(f.source, g.target, _frozen(g.table[f.table]), name=f"{g.name}∘{f.name}")


def is_isomorphism(f: RingHom) -> bool:
    return f.source.order == f.target.order and f.is_surjective()


def zmod_isomorphism(R: FiniteRing) -> RingHom | None:
    """Isomorphism Z/|R| -> R if one exists (brute-force search over k ↦ k·u).

    Any ring map out of Z/n must send 1 to 1, so only the canonical candidate
    needs testing; the search still walks every unit to double check.
    """
    n = R.order
    Z = make_zmod(n)
    for u in R.elements():
        table = np.empty(n, dtype=np.int64)
        x = R.zero
        for k in range(n):
            table[k] = x
            x = int(R.add[x, u])
        if find_hom_violation(Z, R, table) is None and len(set(table.tolist())) == n:
            return RingHom(Z, R, _frozen(table), name="iso")
    return None


@dataclass
class AxiomReport:
    ring_label: str
    exhaustive: bool
    failures: dict[str, tuple] = field(default_factory=dict)
    checked: tuple[str, ...] = ()
    sample_seed: int | None = None
    sample_count: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


_AXIOMS = (
    "add_closed",
    "add_assoc",
    "add_comm",
    "add_identity",
    "add_inverse",
    "mul_assoc",
    "mul_comm",
    "mul_identity",
    "distributive",
    "nontrivial",
)


def verify_ring_axioms(R: FiniteRing) -> AxiomReport:
    """Check every commutative-ring axiom, recording one witness per failure.

    Exhaustive for order <= EXHAUSTIVE_AXIOM_CAP; above that, triples are
    sampled (AXIOM_SAMPLE_COUNT of them, seed AXIOM_SAMPLE_SEED).
    """
    n = R.order
    exhaustive = n <= EXHAUSTIVE_AXIOM_CAP
    rep = AxiomReport(R.label, exhaustive, checked=_AXIOMS)
    if not exhaustive:
        rep.sample_seed, rep.sample_count = AXIOM_SAMPLE_SEED, AXIOM_SAMPLE_COUNT
    A, M, Z, O = R.add, R.mul, R.zero, R.one
    g = np.arange(n)

    def first(mask: np.ndarray, *coords: np.ndarray) -> tuple:
        i = np.argwhere(mask)[0]
        if coords:
            return tuple(int(c[i[0]]) for c in coords)
        return tuple(int(v) for v in i)

    for tname, T in (("add", A), ("mul", M)):
        if T.min() < 0 or T.max() >= n:
            rep.failures["add_closed" if tname == "add" else "mul_closed"] = first((T < 0) | (T >= n))
            return rep
    if Z == O:
        rep.failures["nontrivial"] = (Z,)

    for name, T in (("add_comm", A), ("mul_comm", M)):
        bad = T != T.T
        if bad.any():
            rep.failures[name] = first(bad)
    if not np.array_equal(A[Z], g):
        rep.failures["add_identity"] = (int(np.nonzero(A[Z] != g)[0][0]),)
    if not np.array_equal(M[O], g):
        rep.failures["mul_identity"] = (int(np.nonzero(M[O] != g)[0][0]),)
    if not (A == Z).any(axis=1).all():
        rep.failures["add_inverse"] = (int(np.nonzero(~(A == Z).any(axis=1))[0][0]),)

    if exhaustive:
        x = g[:, None, None]
        y = g[None, :, None]
        z = g[None, None, :]
        for name, T in (("add_assoc", A), ("mul_assoc", M)):
            bad = T[T[x, y], z] != T[x, T[y, z]]
            if bad.any():
                rep.failures[name] = first(bad)
        bad = M[x, A[y, z]] != A[M[x, y], M[x, z]]
        if bad.any():
            rep.failures["distributive"] = first(bad)
    else:
        rng = np.random.default_rng(AXIOM_SAMPLE_SEED)
        x, y, z = (rng.integers(0, n, AXIOM_SAMPLE_COUNT) for _ in range(3))
        for name, T in (("add_assoc", A), ("mul_assoc", M)):
            bad = T[T[x, y], z] != T[x, T[y, z]]
            if bad.any():
                rep.failures[name] = first(bad, x, y, z)
        bad = M[x, A[y, z]] != A[M[x, y], M[x, z]]
        if bad.any():
            rep.failures["distributive"] = first(bad, x, y, z)
    return rep


def subring_from_elements(
    R: FiniteRing, elements: Sequence[int], one: int, label: str, labels: Callable[[int], Any] | None = None
) -> tuple[FiniteRing, np.ndarray]:
    """Ring on a subset of R closed under R's operations, with its own identity.

    Returns the new ring and the array mapping new indices to R indices.
    Used for factor rings Re, whose identity e differs from R's.
    """
    elems = np.array(sorted(set(int(e) for e in elements)))
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    add = pos[R.add[elems[:, None], elems[None, :]]]
    mul = pos[R.mul[elems[:, None], elems[None, :]]]
    if (add < 0).any() or (mul < 0).any():
        raise RingError("element subset is not closed under the ring operations")
    S = FiniteRing(
        add,
        mul,
        zero=int(pos[R.zero]),
        one=int(pos[one]),
        label=label,
        labels=[R.labels[e] if labels is None else labels(e) for e in elems],
    )
    return S, elems


def units_of(R: FiniteRing) -> np.ndarray:
    return np.nonzero((R.mul == R.one).any(axis=1))[0]
