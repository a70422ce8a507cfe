"""Row-type raising operators for Macdonald integral forms.

The operator of weight m is assembled as  B_m = sum_{|alpha|=m} b_alpha *
phi_alpha  from closed forms: the block operators phi_alpha (signed q-power
times the generalized q-binomial coefficient) and the block coefficients
b_alpha (a beta-sum of Pochhammer ratios).  Two independent oracles shadow
these closed forms: the elimination recurrence rebuilds phi level by level,
and an interpolation evaluation of the swapped Macdonald operator on the
Cauchy kernel rebuilds b.  Verification applies B_m to integral forms and
certifies the image polynomial by exact division before comparing.
"""

from __future__ import annotations

import threading
from math import comb

from .algebra import (Frac, MPoly, NotDivisible, VarUniverse, frac_sum,
                      mp_prod, qpoch_factors, universe)
from .macdonald import (QDiffOp, macdonald_d, macdonald_j, macdonald_p,
                        x_transposition_rename)
from .partitions import (Partition, box_below, mi_leq, mi_weight,
                         multi_indices_upto, weak_compositions)
from .qbinomial import _ratio_base, interp_assignment, qbinom_x


# -- the phi blocks -----------------------------------------------------------


def raising_block_entry(u: VarUniverse, alpha: tuple, beta: tuple) -> Frac:
    """Closed form of the block-operator coefficient at T^beta.

    (-1)^{|a|-|b|} q^{C(|a|-|b|+1, 2)} C[alpha, beta](x) for beta <= alpha.
    """
    d = mi_weight(alpha) - mi_weight(beta)
    c = qbinom_x(u, tuple(alpha), tuple(beta))
    return c * u.mono((-1) ** d, {"q": comb(d + 1, 2)})


def raising_block(u: VarUniverse, alpha: tuple) -> dict:
    """The block operator phi_alpha as a map beta -> coefficient."""
    return {tuple(beta): raising_block_entry(u, alpha, beta)
            for beta in box_below(alpha)}


def recurrence_weight(u: VarUniverse, m: int, alpha: tuple, beta: tuple) -> Frac:
    """Elimination weight q^{(|a|-|b|)(m-|b|)} C[alpha,beta](x)."""
    wa, wb = mi_weight(alpha), mi_weight(beta)
    return qbinom_x(u, tuple(alpha), tuple(beta)) * \
        u.mono(1, {"q": (wa - wb) * (m - wb)})


def raising_block_recurrence(u: VarUniverse, m: int, alpha: tuple) -> dict:
    """Oracle: rebuild phi_alpha by the level-by-level elimination recurrence.

    Starts from the bare shifts T^delta and, for l = 0..m-1, subtracts the
    weight-l blocks with their elimination weights.  Entirely independent of
    the closed form.
    """
    n = u.n_x
    if mi_weight(alpha) != m:
        raise ValueError("alpha must have weight m")
    ops = {tuple(d): {tuple(d): Frac(u.one())} for d in multi_indices_upto(m, n)}
    for level in range(m):
        nxt = {}
        for delta, coeffs in ops.items():
            if mi_weight(delta) <= level:
                continue
            acc = {b: [c] for b, c in coeffs.items()}
            for gamma in box_below(delta):
                if mi_weight(gamma) != level or gamma == delta:
                    continue
                psi = recurrence_weight(u, m, delta, gamma)
                for b, c in ops[gamma].items():
                    acc.setdefault(b, []).append(-(psi * c))
            nxt[delta] = {b: s for b, s in
                          ((b, frac_sum(u, parts)) for b, parts in acc.items())
                          if not s.is_zero()}
        ops = nxt
    return ops[tuple(alpha)]


# -- the m-independent ladder matrices ------------------------------------------


def ladder_g(u: VarUniverse, alpha: tuple, beta: tuple) -> Frac:
    """q^{-(|a|-|b|)|b|} C[alpha,beta](x), the m-stripped elimination weight."""
    wa, wb = mi_weight(alpha), mi_weight(beta)
    return qbinom_x(u, tuple(alpha), tuple(beta)) * \
        u.mono(1, {"q": -(wa - wb) * wb})


def _descending_chains(alpha: tuple, beta: tuple):
    """All strictly decreasing lattice paths alpha = g0 > g1 > ... > gr = beta."""
    if alpha == beta:
        yield (alpha,)
        return
    for mid in box_below(alpha):
        if mid != alpha and mi_leq(beta, mid):
            for rest in _descending_chains(mid, beta):
                yield (alpha,) + rest


def ladder_f_paths(u: VarUniverse, alpha: tuple, beta: tuple) -> Frac:
    """Path-sum definition of the inverse ladder matrix entry."""
    terms = []
    for chain in _descending_chains(tuple(alpha), tuple(beta)):
        r = len(chain) - 1
        prod = Frac(u.const((-1) ** r))
        for hi, lo in zip(chain, chain[1:]):
            prod = prod * ladder_g(u, hi, lo)
        terms.append(prod)
    return frac_sum(u, terms)


def ladder_f_closed(u: VarUniverse, alpha: tuple, beta: tuple) -> Frac:
    """Closed form (-1)^d q^{-C(d,2) - d|b|} C[alpha,beta](x), d = |a|-|b|."""
    d = mi_weight(alpha) - mi_weight(beta)
    return qbinom_x(u, tuple(alpha), tuple(beta)) * \
        u.mono((-1) ** d, {"q": -comb(d, 2) - d * mi_weight(beta)})


def ladder_inverse_check(alpha: tuple, beta: tuple) -> bool:
    """Path-sum f agrees with its closed form, and G * F~ = identity.

    For alpha > beta the convolution sum_{a>=g>=b} f~_{a,g} g_{g,b} must
    vanish; at alpha = beta both sides are 1.
    """
    n = len(alpha)
    u = universe(n)
    if not mi_leq(beta, alpha):
        raise ValueError("need beta <= alpha")
    if not ladder_f_paths(u, alpha, beta).eq(ladder_f_closed(u, alpha, beta)):
        return False
    conv = frac_sum(u, [ladder_f_closed(u, alpha, g) * ladder_g(u, g, beta)
                        for g in box_below(alpha) if mi_leq(beta, g)])
    if alpha == beta:
        return conv.eq(Frac(u.one()))
    return conv.is_zero()


# -- the b coefficients -----------------------------------------------------------


def _t_ratio_base(u: VarUniverse, c: int, i: int, j: int) -> MPoly:
    """The monomial t q^c x_i/x_j."""
    exps = {"t": 1, "q": c}
    if i != j:
        exps["x%d" % i] = 1
        exps["x%d" % j] = -1
    return u.mono(1, exps)


def block_coeff(u: VarUniverse, m: int, alpha: tuple) -> Frac:
    """Closed form of the coefficient b_alpha multiplying phi_alpha.

    q^{sum_i C(a_i,2)} x^alpha times a signed beta-sum of Pochhammer
    products; beta-terms whose numerator contains a vanishing factor are
    skipped outright.
    """
    n = u.n_x
    if mi_weight(alpha) != m:
        raise ValueError("alpha must have weight m")
    terms = []
    for beta in box_below(alpha):
        wb = mi_weight(beta)
        num_factors = []
        den_factors = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                aj, bj = alpha[j - 1], beta[j - 1]
                num_factors += qpoch_factors(_t_ratio_base(u, -bj + 1, i, j), bj)
                num_factors += qpoch_factors(_ratio_base(u, -aj + 1, i, j), aj - bj)
                den_factors += qpoch_factors(
                    _ratio_base(u, beta[i - 1] - bj + 1, i, j), bj)
                den_factors += qpoch_factors(
                    _ratio_base(u, alpha[i - 1] - aj + 1, i, j), aj - bj)
        if any(f.is_zero() for f in num_factors):
            continue
        num = mp_prod(u, num_factors)
        num = num.mono_mul((-1) ** (m - wb), {"q": comb(wb, 2)})
        terms.append(Frac.from_factors(num, den_factors))
    pref = {"q": sum(comb(a, 2) for a in alpha)}
    pref.update({"x%d" % i: a for i, a in enumerate(alpha, start=1) if a})
    return (frac_sum(u, terms) * u.mono(1, pref)).shrink()


def block_coeff_interp(u: VarUniverse, m: int, alpha: tuple) -> Frac:
    """Oracle: b_alpha from the interpolation-point evaluation.

    Applies the swapped Macdonald operator at u=1 to the Cauchy kernel
    prod (1+x_i y_j), substitutes y = p_alpha, divides by y1*...*ym at the
    point and by the vanishing double product.  Independent of the closed
    beta-sum.
    """
    n = u.n_x
    if mi_weight(alpha) != m:
        raise ValueError("alpha must have weight m")
    uxy = universe(n, m)
    kern = mp_prod(uxy, (uxy.one() + uxy.x(i) * uxy.y(j)
                         for i in range(1, n + 1) for j in range(1, m + 1)))
    img = macdonald_d(uxy, block="y", swapped=True, with_u=False).apply(kern)
    assign = interp_assignment(uxy, alpha)
    at_p = img.subs_monomials(assign)
    # 1/(y1...ym) at p_alpha: invert the product of the coordinates
    prod_coords = mp_prod(uxy, assign.values()) if assign else uxy.one()
    ((kmon, cmon),) = prod_coords.terms.items()
    inv = MPoly(uxy, {2 * uxy.one_key - kmon: cmon})
    vanish = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            vanish += qpoch_factors(
                _ratio_base(uxy, alpha[i - 1] - alpha[j - 1] + 1, i, j),
                alpha[j - 1])
    bag = dict(at_p.bag)
    for f in vanish:
        bag[f] = bag.get(f, 0) + 1
    return Frac(at_p.num * inv, bag).convert(u).shrink()


# -- assembly and verification ------------------------------------------------------


_b_cache: dict = {}
_b_lock = threading.Lock()


def row_raising_op(m: int, n: int) -> QDiffOp:
    """The raising operator B_m on n variables, in the shift basis T^gamma.

    Expands sum_alpha b_alpha phi_alpha and combines coefficients; memoized
    per (m, n) and safe to share across threads.
    """
    key = (m, n)
    with _b_lock:
        got = _b_cache.get(key)
    if got is not None:
        return got
    u = universe(n)
    acc: dict = {}
    for alpha in weak_compositions(m, n):
        b = block_coeff(u, m, alpha)
        for beta, phi in raising_block(u, alpha).items():
            acc.setdefault(beta, []).append(b * phi)
    coeffs = {}
    for beta, parts in acc.items():
        c = frac_sum(u, parts).shrink()
        if not c.is_zero():
            coeffs[beta] = c
    op = QDiffOp(u, coeffs)
    with _b_lock:
        _b_cache.setdefault(key, op)
    return op


def convert_op(op: QDiffOp, target: VarUniverse) -> QDiffOp:
    return QDiffOp(target, {g: c.convert(target) for g, c in op.coeffs.items()},
                   op.block, op.shift_var)


def raising_diff(m: int, lam, n: int) -> Frac:
    """B_m J_lam minus its contract: J_{(m,lam)} below full length, 0 at it.

    The image is certified polynomial by exact division before the
    comparison; if certification fails the raw fraction difference is
    returned (necessarily nonzero).
    """
    lam = Partition(lam)
    if lam and lam[0] > m:
        raise ValueError("the first row of lam may not exceed m")
    if lam.length() > n:
        raise ValueError("lam has more than n rows")
    b = row_raising_op(m, n)
    img = b.apply(macdonald_j(lam, n).as_mpoly())
    if lam.length() == n:
        return img
    target = macdonald_j(lam.prepend(m), n).as_mpoly()
    try:
        return Frac(img.as_poly() - target)
    except NotDivisible:
        return img - Frac(target)


def raising_check(m: int, lam, n: int) -> bool:
    return raising_diff(m, lam, n).is_zero()


def iterated_build_diff(lam, n: int) -> Frac:
    """B_{lam_1} ... B_{lam_n}.1 - J_lam, applying right to left.

    Every intermediate image is certified polynomial by exact division.
    """
    lam = Partition(lam)
    u = universe(n)
    v = u.one()
    for part in reversed(lam.padded(n)):
        v = row_raising_op(part, n).apply(v).as_poly()
    return Frac(v - macdonald_j(lam, n).as_mpoly())


def iterated_build_check(lam, n: int) -> bool:
    return iterated_build_diff(lam, n).is_zero()


def raising_on_kernel(m: int, n: int) -> Frac:
    """B_m acting in x on the Cauchy kernel prod (1+x_i y_j), as a fraction."""
    uxy = universe(n, m)
    kern = mp_prod(uxy, (uxy.one() + uxy.x(i) * uxy.y(j)
                         for i in range(1, n + 1) for j in range(1, m + 1)))
    return convert_op(row_raising_op(m, n), uxy).apply(kern)


def key_identity_diff(m: int, n: int) -> Frac:
    """Difference of B_x prod(1+x_i y_j) and (1/(y1..ym)) D_y(1;t,q) of it."""
    uxy = universe(n, m)
    kern = mp_prod(uxy, (uxy.one() + uxy.x(i) * uxy.y(j)
                         for i in range(1, n + 1) for j in range(1, m + 1)))
    lhs = convert_op(row_raising_op(m, n), uxy).apply(kern)
    img = macdonald_d(uxy, block="y", swapped=True, with_u=False).apply(kern)
    rhs = Frac(img.num.laurent_shift({"y%d" % j: -1 for j in range(1, m + 1)}),
               img.bag)
    return lhs - rhs


def key_identity_check(m: int, n: int) -> bool:
    return key_identity_diff(m, n).is_zero()


def degree_bound_check(m: int, n: int) -> bool:
    """Each y_j degree of the cleared B_x prod(1+x_i y_j) is at most n-1.

    The denominator stays y-free, so the bound is read off the numerator.
    Vacuous at m = 0 where no y variables occur.
    """
    phi = raising_on_kernel(m, n)
    for f, _ in phi.bag:
        for j in range(1, m + 1):
            if f.max_exp("y%d" % j) or f.min_exp("y%d" % j):
                raise AssertionError("kernel image denominator involves y")
    return all(phi.num.max_exp("y%d" % j) <= n - 1 for j in range(1, m + 1))


def equivariance_check(op: QDiffOp) -> bool:
    """Symmetric-group invariance: coeff(sg) with x permuted equals coeff(g)."""
    u = op.u
    n = u.n_x
    zero = Frac(u.zero())
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ren = x_transposition_rename(i, j)
            for gamma, c in op.coeffs.items():
                sg = list(gamma)
                sg[i - 1], sg[j - 1] = sg[j - 1], sg[i - 1]
                other = op.coeffs.get(tuple(sg), zero)
                if not other.convert(u, ren).eq(c):
                    return False
    return True


def order_bound_check(op: QDiffOp, m: int) -> bool:
    return all(mi_weight(g) <= m for g in op.coeffs)


def polynomial_image_check(m: int, n: int, f: MPoly) -> bool:
    """The raising operator maps this polynomial to a certified polynomial."""
    try:
        row_raising_op(m, n).apply(f).as_poly()
    except NotDivisible:
        return False
    return True


# -- the Hall-Littlewood specialization ----------------------------------------------


def limit_q0(fr: Frac) -> Frac:
    """Exact limit q -> 0 of a fraction regular there.

    Pulls the monomial q-content out of numerator and denominator (minimum
    exponent, no GCD) and evaluates; raises on a genuine pole.
    """
    u = fr.u
    if fr.num.is_zero():
        return Frac(u.zero())
    num, den = fr.num, fr.den
    a, b = num.min_exp("q"), den.min_exp("q")
    if a < b:
        raise ZeroDivisionError("pole at q = 0")
    if a > b:
        return Frac(u.zero())
    return Frac.over(_q_slice(num, a), _q_slice(den, b))


def _q_slice(p: MPoly, e: int) -> MPoly:
    """Terms of exact q-exponent e, with the q field cleared."""
    u = p.u
    out = {}
    for k, c in p.terms.items():
        if u.exp_of(k, "q") == e:
            out[k - (e << u._shift[u.pos("q")]) ] = c
    return MPoly(u, out)


_hl_cache: dict = {}
_hl_lock = threading.Lock()


def hall_littlewood_p(lam, n: int) -> MPoly:
    """P_lam(x; 0, t): the q -> 0 specialization, certified in Z[t]."""
    lam = Partition(lam)
    key = (lam, n)
    with _hl_lock:
        got = _hl_cache.get(key)
    if got is not None:
        return got
    out = limit_q0(macdonald_p(lam, n).value).as_poly()
    with _hl_lock:
        _hl_cache.setdefault(key, out)
    return out


def hall_littlewood_apply(m: int, f: MPoly) -> Frac:
    """(1-t) sum_i x_i^m prod_{j!=i} (x_i - t x_j)/(x_i - x_j) f|_{x_i=0}."""
    if m < 1:
        raise ValueError("the substitution operator needs m >= 1")
    u = f.u
    n = u.n_x
    terms = []
    for i in range(1, n + 1):
        fi = f.coeff_of({"x%d" % i: 0})
        if fi.is_zero():
            continue
        num = u.one()
        bag = {}
        sign = 1
        for j in range(1, n + 1):
            if j == i:
                continue
            num = num * (u.x(i) - u.x(j).mono_mul(1, {"t": 1}))
            lo, hi = min(i, j), max(i, j)
            fac = u.x(lo) - u.x(hi)
            bag[fac] = bag.get(fac, 0) + 1
            if j < i:
                sign = -sign
        num = num.mono_mul(sign, {"x%d" % i: m}) * (u.one() - u.gen("t")) * fi
        terms.append(Frac(num, bag))
    return frac_sum(u, terms)


def hall_littlewood_raising_scalar(m: int, lam, n: int):
    """Fit the proportionality scalar of the raised Hall-Littlewood image.

    Returns (image_poly, target_poly, scalar) for the length < n branch and
    (image, None, None) at full length where the image must vanish.
    """
    lam = Partition(lam)
    img = hall_littlewood_apply(m, hall_littlewood_p(lam, n))
    if lam.length() == n:
        return img, None, None
    target = hall_littlewood_p(lam.prepend(m), n)
    poly = img.as_poly()
    lead = {"x%d" % i: e for i, e in enumerate(lam.prepend(m).padded(n), start=1)}
    scalar = poly.coeff_of(lead)
    return Frac(poly), target, scalar


def hall_littlewood_raising_check(m: int, lam, n: int) -> bool:
    """The operator sends P_lam(0,t) to a nonzero Q(t) multiple of the raised P."""
    lam = Partition(lam)
    img, target, scalar = hall_littlewood_raising_scalar(m, lam, n)
    if target is None:
        return img.is_zero()
    return (not scalar.is_zero()) and img.eq(Frac(target * scalar))
