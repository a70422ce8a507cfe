"""Macdonald q-difference operators and the polynomials they single out.

The generating operator D(u) is assembled over subsets K of the variable
block with the cleared cross-ratio (v_j - t v_i)/(v_j - v_i); its
determinantal form is an independent construction used as a cross-check.
P polynomials come out of a dominance-triangular solve against the
one-subset operator D_1, and the integral forms J certify their coefficients
in Z[q,t] by exact division.
"""

from __future__ import annotations

import itertools
import threading

from .algebra import (Frac, MPoly, VarUniverse, as_frac, frac_sum, mp_prod,
                      mp_sum, universe)
from .partitions import (Partition, dominance_downset, mi_weight,
                         partitions_in_box)


class QDiffOp:
    """Finite sum  sum_gamma c_gamma * T^gamma  of shift operators.

    ``block`` selects which variable family is shifted and ``shift_var``
    what multiplies it, so the same class covers T_{q,x} and the
    swapped-parameter T_{t,y} operators.
    """

    __slots__ = ("u", "block", "shift_var", "coeffs")

    def __init__(self, u: VarUniverse, coeffs: dict, block: str = "x",
                 shift_var: str = "q"):
        self.u = u
        self.block = block
        self.shift_var = shift_var
        self.coeffs = coeffs

    def nvars(self) -> int:
        return self.u.n_x if self.block == "x" else self.u.n_y

    def order(self) -> int:
        return max((mi_weight(g) for g in self.coeffs), default=0)

    def keys_canonical(self) -> list:
        return sorted(self.coeffs, key=lambda g: (mi_weight(g), tuple(-e for e in g)))

    def apply(self, f) -> Frac:
        """Exact image  sum_gamma c_gamma * f(shift^gamma v)."""
        f = as_frac(self.u, f)
        terms = []
        for gamma, c in self.coeffs.items():
            terms.append(c * f.qshift(gamma, self.block, self.shift_var))
        return frac_sum(self.u, terms)

    def map_coeffs(self, fn) -> "QDiffOp":
        return QDiffOp(self.u, {g: fn(c) for g, c in self.coeffs.items()},
                       self.block, self.shift_var)


def identity_op(u: VarUniverse, block: str = "x", shift_var: str = "q") -> QDiffOp:
    n = u.n_x if block == "x" else u.n_y
    return QDiffOp(u, {(0,) * n: Frac(u.one())}, block, shift_var)


def _block_var(u: VarUniverse, block: str, i: int) -> str:
    return ("x%d" if block == "x" else "y%d") % (i + 1)


def _cross_term(u: VarUniverse, block: str, swapped: bool, K, others):
    """Cleared cross-ratio prod_{i in K, j not in K} (v_j - P v_i)/(v_j - v_i).

    P is t for the plain operator, q for the swapped-parameter one.  The
    denominator comes back as a factor bag in the canonical orientation
    (v_min - v_max), so equal factors collide across subsets; the sign the
    reorientation produces is absorbed into the numerator.
    """
    pvar = "q" if swapped else "t"
    num = u.one()
    bag = {}
    sign = 1
    for i in K:
        for j in others:
            vi, vj = _block_var(u, block, i), _block_var(u, block, j)
            num = num * (u.gen(vj) - u.gen(vi).mono_mul(1, {pvar: 1}))
            lo, hi = (i, j) if i < j else (j, i)
            f = u.gen(_block_var(u, block, lo)) - u.gen(_block_var(u, block, hi))
            bag[f] = bag.get(f, 0) + 1
            if i < j:
                sign = -sign
    return num.scale(sign), bag


def macdonald_d(u: VarUniverse, block: str = "x", swapped: bool = False,
                with_u: bool = True) -> QDiffOp:
    """The generating operator D(u;q,t) = sum_r (-u)^r D_r over 2^n subsets.

    With ``swapped`` the parameter roles are exchanged: D(u;t,q), whose
    shifts multiply by t and whose prefactor is a power of q.  With
    ``with_u=False`` the specialization u=1 is built instead (no u variable
    needed in the universe).
    """
    n = u.n_x if block == "x" else u.n_y
    pref_var = "q" if swapped else "t"
    shift_var = "t" if swapped else "q"
    coeffs = {}
    for bits in itertools.product((0, 1), repeat=n):
        K = [i for i in range(n) if bits[i]]
        others = [j for j in range(n) if not bits[j]]
        k = len(K)
        num, bag = _cross_term(u, block, swapped, K, others)
        pref = {pref_var: k * (k - 1) // 2}
        if with_u:
            pref["u"] = k
        num = num.mono_mul((-1) ** k, pref)
        coeffs[bits] = Frac(num, bag)
    return QDiffOp(u, coeffs, block, shift_var)


def macdonald_d1(u: VarUniverse, block: str = "x", swapped: bool = False) -> QDiffOp:
    """The one-subset operator D_1 (coefficient of -u in D(u))."""
    n = u.n_x if block == "x" else u.n_y
    shift_var = "t" if swapped else "q"
    coeffs = {}
    for i in range(n):
        others = [j for j in range(n) if j != i]
        num, bag = _cross_term(u, block, swapped, [i], others)
        gamma = tuple(1 if j == i else 0 for j in range(n))
        coeffs[gamma] = Frac(num, bag)
    return QDiffOp(u, coeffs, block, shift_var)


def macdonald_d_det(u: VarUniverse) -> QDiffOp:
    """Determinantal form of D(u;q,t) on the x block.

    Expands (1/Delta(x)) sum_w eps(w) w(prod_i x_i^{n-i}(1 - u t^{n-i} T_{q,x_i}))
    directly; every coefficient is a fraction over the Vandermonde factors.
    Intended for small n as an independent cross-check of macdonald_d.
    """
    n = u.n_x
    if n > 4:
        raise ValueError("determinantal expansion is a desk-scale cross-check (n <= 4)")
    delta_bag = {}
    for i in range(n):
        for j in range(i + 1, n):
            f = u.x(i + 1) - u.x(j + 1)
            delta_bag[f] = delta_bag.get(f, 0) + 1
    nums = {}
    for w in itertools.permutations(range(n)):
        eps = _perm_sign(w)
        for bits in itertools.product((0, 1), repeat=n):
            K = [i for i in range(n) if bits[i]]
            gamma = [0] * n
            exps = {}
            tpow = 0
            for i in range(n):
                exps["x%d" % (w[i] + 1)] = exps.get("x%d" % (w[i] + 1), 0) + (n - 1 - i)
            for i in K:
                gamma[w[i]] = 1
                tpow += n - 1 - i
            exps["t"] = tpow
            exps["u"] = len(K)
            mono = u.mono(eps * (-1) ** len(K), exps)
            g = tuple(gamma)
            nums[g] = nums.get(g, u.zero()) + mono
    coeffs = {g: Frac(num, dict(delta_bag)) for g, num in nums.items()}
    return QDiffOp(u, coeffs, "x", "q")


def _perm_sign(w) -> int:
    s = 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                s = -s
    return s


def operators_agree(a: QDiffOp, b: QDiffOp) -> bool:
    """Coefficientwise semantic equality of two shift operators."""
    keys = set(a.coeffs) | set(b.coeffs)
    zero = Frac(a.u.zero())
    for g in keys:
        if not a.coeffs.get(g, zero).eq(b.coeffs.get(g, zero)):
            return False
    return True


# -- symmetric polynomials -----------------------------------------------------


def monomial_symmetric(u: VarUniverse, mu: Partition) -> MPoly:
    """The monomial symmetric polynomial m_mu in the x variables."""
    exps = mu.padded(u.n_x)
    monos = []
    for perm in set(itertools.permutations(exps)):
        monos.append(u.mono(1, {"x%d" % (i + 1): e
                                for i, e in enumerate(perm) if e}))
    return mp_sum(u, monos)


def expand_in_monomial_basis(p: MPoly) -> dict:
    """Write a symmetric x-polynomial as {partition: coefficient in q,t}.

    Reads off the coefficient of each dominant monomial x^mu; the caller
    guarantees symmetry (the solver certifies it upstream).
    """
    u = p.u
    out = {}
    for k, c in p.terms.items():
        vec = u.unpack(k)
        xv = vec[u._x0:u._x0 + u.n_x]
        if any(e < 0 for e in xv):
            raise ValueError("negative x exponent in a symmetric polynomial")
        if all(a >= b for a, b in zip(xv, xv[1:])):
            mu = Partition(xv)
            rest = list(vec)
            rest[u._x0:u._x0 + u.n_x] = [0] * u.n_x
            mono = MPoly(u, {u.pack(rest): c})
            out[mu] = out.get(mu, u.zero()) + mono
    out = {mu: c for mu, c in out.items() if not c.is_zero()}
    rebuilt = mp_sum(u, (c * monomial_symmetric(u, mu) for mu, c in out.items()))
    if rebuilt != p:
        raise ValueError("polynomial is not symmetric in x")
    return out


def x_transposition_rename(i: int, j: int) -> dict:
    return {"x%d" % i: "x%d" % j, "x%d" % j: "x%d" % i}


def is_symmetric_frac(v: Frac) -> bool:
    """Invariance of a fraction under all adjacent x transpositions."""
    u = v.u
    for i in range(1, u.n_x):
        swapped = v.convert(u, x_transposition_rename(i, i + 1))
        if not v.eq(swapped):
            return False
    return True


class SymPoly:
    """A symmetric polynomial carried both as a value and in the m basis."""

    __slots__ = ("n", "expansion", "value")

    def __init__(self, n: int, expansion: dict, value: Frac):
        self.n = n
        self.expansion = expansion
        self.value = value

    def as_mpoly(self) -> MPoly:
        return self.value.as_poly()

    def coeff(self, mu: Partition) -> Frac:
        return self.expansion.get(mu, Frac(self.value.u.zero()))


def d1_eigenvalue(u: VarUniverse, mu: Partition) -> MPoly:
    """sum_i q^{mu_i} t^{n-i} for the x block of the universe."""
    n = u.n_x
    return mp_sum(u, (u.mono(1, {"q": m, "t": n - i})
                      for i, m in enumerate(mu.padded(n), start=1)))


def eigenvalue_u(u: VarUniverse, lam: Partition) -> MPoly:
    """prod_i (1 - u q^{lam_i} t^{n-i}), the D(u) eigenvalue on P_lam."""
    n = u.n_x
    return mp_prod(u, (u.one() - u.mono(1, {"u": 1, "q": m, "t": n - i})
                       for i, m in enumerate(lam.padded(n), start=1)))


_p_cache: dict = {}
_p_lock = threading.Lock()


def macdonald_p(lam: Partition, n: int) -> SymPoly:
    """Monic Macdonald polynomial P_lam in n variables.

    Dominance-triangular solve of the D_1 eigenproblem in the monomial
    basis; coefficients are fractions in (q,t).  Memoized per (lam, n);
    the cached object is immutable and safe to share across threads.
    """
    lam = Partition(lam)
    key = (lam, n)
    with _p_lock:
        got = _p_cache.get(key)
    if got is not None:
        return got
    if lam.length() > n:
        raise ValueError("P_%r needs at least %d variables" % (lam, lam.length()))
    u = universe(n)
    d1 = macdonald_d1(u)
    down = dominance_downset(lam, n)
    columns = {}
    for mu in down:
        img = d1.apply(monomial_symmetric(u, mu)).as_poly()
        col = expand_in_monomial_basis(img)
        for nu in col:
            if not mu.dominates(nu):
                raise AssertionError("D_1 broke dominance triangularity")
        if col.get(mu) != d1_eigenvalue(u, mu):
            raise AssertionError("D_1 diagonal entry is not the eigenvalue")
        columns[mu] = col
    e_lam = d1_eigenvalue(u, lam)
    coeffs = {lam: Frac(u.one())}
    for pos in range(len(down) - 2, -1, -1):
        nu = down[pos]
        above = down[pos + 1:]
        s = frac_sum(u, [coeffs[mu] * columns[mu][nu]
                         for mu in above if mu in coeffs and nu in columns[mu]])
        bag = dict(s.bag)
        gap = e_lam - d1_eigenvalue(u, nu)
        bag[gap] = bag.get(gap, 0) + 1
        c = Frac(s.num, bag).shrink()
        if not c.is_zero():
            coeffs[nu] = c
    value = frac_sum(u, [c * monomial_symmetric(u, mu) for mu, c in coeffs.items()])
    out = SymPoly(n, coeffs, value)
    with _p_lock:
        _p_cache.setdefault(key, out)
    return out


def integral_form_scalar(u: VarUniverse, lam: Partition) -> MPoly:
    """c_lam = prod over cells of (1 - q^arm t^(leg+1))."""
    return mp_prod(u, (u.one() - u.mono(1, {"q": a, "t": l + 1})
                       for a, l in (lam.arm_leg(s) for s in lam.cells())))


_j_cache: dict = {}
_j_lock = threading.Lock()


def macdonald_j(lam: Partition, n: int) -> SymPoly:
    """Integral form J_lam = c_lam * P_lam with certified Z[q,t] coefficients.

    Raises NotDivisible if any monomial-basis coefficient fails the
    integrality certificate (which would mean an upstream bug).
    """
    lam = Partition(lam)
    key = (lam, n)
    with _j_lock:
        got = _j_cache.get(key)
    if got is not None:
        return got
    u = universe(n)
    p = macdonald_p(lam, n)
    c_lam = integral_form_scalar(u, lam)
    expansion = {}
    parts = []
    for mu, c in p.expansion.items():
        cj = (c * c_lam).as_poly()
        expansion[mu] = Frac(cj)
        parts.append(cj * monomial_symmetric(u, mu))
    value = Frac(mp_sum(u, parts))
    out = SymPoly(n, expansion, value)
    with _j_lock:
        _j_cache.setdefault(key, out)
    return out


# -- identity checks -----------------------------------------------------------


def eigen_diff(lam: Partition, n: int) -> Frac:
    """Difference D(u) P_lam - e_lam(u) P_lam; zero iff the eigen equation holds."""
    lam = Partition(lam)
    uu = universe(n, u=True)
    p = macdonald_p(lam, n).value.convert(uu)
    d = macdonald_d(uu)
    return d.apply(p) - p * eigenvalue_u(uu, lam)


def eigen_check(lam: Partition, n: int) -> bool:
    return eigen_diff(lam, n).is_zero()


def determinantal_agreement_check(n: int) -> bool:
    uu = universe(n, u=True)
    return operators_agree(macdonald_d(uu), macdonald_d_det(uu))


def _p_on_y_side(lam: Partition, m: int, target: VarUniverse) -> Frac:
    """P_lam(y; t, q): computed in x variables, then q<->t and x->y."""
    rename = {"q": "t", "t": "q"}
    rename.update({"x%d" % i: "y%d" % i for i in range(1, m + 1)})
    return macdonald_p(lam, m).value.convert(target, rename)


def cauchy_diff(n: int, m: int) -> Frac:
    """Difference of the two sides of the dual Cauchy product formula.

    prod (1+x_i y_j) against sum over partitions in the n x m box of
    P_lam(x;q,t) P_lam'(y;t,q).
    """
    u = universe(n, m)
    lhs = mp_prod(u, (u.one() + u.x(i) * u.y(j)
                      for i in range(1, n + 1) for j in range(1, m + 1)))
    terms = []
    for lam in partitions_in_box(n, m):
        px = macdonald_p(lam, n).value.convert(u)
        py = _p_on_y_side(lam.conjugate(), m, u)
        terms.append(px * py)
    return frac_sum(u, terms) - lhs


def cauchy_check(n: int, m: int) -> bool:
    return cauchy_diff(n, m).is_zero()


def lowering_diff(mu: Partition, m: int) -> Frac:
    """Difference for the row-lowering action of D_y(1;t,q)/(y1..ym).

    On P_mu(y;t,q) the operator strips a full column when mu has m rows and
    kills the polynomial otherwise.  The division by y1*..*ym is the one
    sanctioned transient Laurent shift on y exponents.
    """
    mu = Partition(mu)
    if mu.length() > m:
        raise ValueError("mu must have at most m rows")
    u = universe(1, m)
    p_y = _p_on_y_side(mu, m, u)
    d = macdonald_d(u, block="y", swapped=True, with_u=False)
    img = d.apply(p_y)
    lowered = Frac(
        img.num.laurent_shift({"y%d" % j: -1 for j in range(1, m + 1)}), img.bag)
    if mu.length() == m:
        stripped = Partition(p - 1 for p in mu)
        scalar = mp_prod(u, (u.one() - u.mono(1, {"q": m - i, "t": mu[i - 1]})
                             for i in range(1, m + 1)))
        rhs = _p_on_y_side(stripped, m, u) * scalar
    else:
        rhs = Frac(u.zero())
    return lowered - rhs


def lowering_check(mu: Partition, m: int) -> bool:
    return lowering_diff(mu, m).is_zero()
