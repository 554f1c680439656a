"""Root systems and classical weight combinatorics for the supported types.

Supported simple types: A1, A2, A3, B2, G2.  This covers trivial diagram
automorphism groups (A1, B2, G2) and Gamma = Z/2 (A2, A3) while keeping all
tensor-square computations at desk scale.

Weights are stored as coordinate tuples in the simple-root basis; the
symmetrized invariant form is normalized so that (alpha, alpha) = 2 for every
short root.  All module weights used downstream lie in the root lattice, so
their pairings are integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

# Cartan matrices a[i][j] = 2(alpha_i, alpha_j)/(alpha_i, alpha_i) and
# symmetrizers d_i = (alpha_i, alpha_i)/2, short roots normalized to d = 1.
_TYPE_TABLE = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "B2": ([[2, -1], [-2, 2]], [2, 1]),
    "G2": ([[2, -3], [-1, 2]], [1, 3]),
}

# Nontrivial Dynkin-diagram automorphisms, as node permutations.
_GAMMA_TABLE = {
    "A2": [(1, 0)],
    "A3": [(2, 1, 0)],
}


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _neg(u):
    return tuple(-a for a in u)


@dataclass(frozen=True)
class GammaGroup:
    """Group of Dynkin-diagram automorphisms with the classical sign character."""

    perms: tuple          # nontrivial elements, as node permutations
    chi: dict             # perm -> +1/-1, the classical character

    @property
    def trivial(self):
        return not self.perms


class RootDatum:
    """Root system data for one simple type, in the simple-root basis."""

    def __init__(self, type_label):
        if type_label not in _TYPE_TABLE:
            raise ValueError(f"unsupported type {type_label!r}; expected one of {sorted(_TYPE_TABLE)}")
        cartan, d = _TYPE_TABLE[type_label]
        self.type_label = type_label
        self.rank = len(d)
        self.cartan = cartan
        self.d = d
        # symmetrized form on the simple roots: (alpha_i, alpha_j) = d_i a_ij
        self.form = [[d[i] * cartan[i][j] for j in range(self.rank)] for i in range(self.rank)]
        for i in range(self.rank):
            for j in range(self.rank):
                assert self.form[i][j] == self.form[j][i], "Cartan data is not symmetrizable"
        self.positive_roots = self._close_positive_roots()
        self.rho = tuple(
            Fraction(sum(r[i] for r in self.positive_roots), 2) for i in range(self.rank)
        )
        ainv_cols = self._cartan_inverse_columns()
        self.fundamental_weights = [tuple(col) for col in ainv_cols]
        heights = [sum(r) for r in self.positive_roots]
        top = max(range(len(heights)), key=lambda k: heights[k])
        assert heights.count(heights[top]) == 1, "highest root is not unique"
        self.max_root = self.positive_roots[top]
        assert self.is_dominant(self.max_root)
        perms = _GAMMA_TABLE.get(type_label, [])
        self.gamma = GammaGroup(tuple(perms), {})

    # -- basic geometry ----------------------------------------------------

    def pairing(self, mu, nu):
        """Symmetrized invariant form (mu, nu) in simple-root coordinates."""
        total = 0
        for i, a in enumerate(mu):
            if not a:
                continue
            for j, b in enumerate(nu):
                if b:
                    total += a * b * self.form[i][j]
        return total

    def coroot_pairing(self, mu, i):
        """<mu, alpha_i^vee> = 2(mu, alpha_i)/(alpha_i, alpha_i)."""
        return sum(self.cartan[i][j] * mu[j] for j in range(self.rank))

    def reflect(self, mu, i):
        c = self.coroot_pairing(mu, i)
        out = list(mu)
        out[i] -= c
        return tuple(out)

    def is_dominant(self, mu):
        return all(self.coroot_pairing(mu, i) >= 0 for i in range(self.rank))

    def to_dominant(self, mu):
        """Dominant Weyl conjugate of mu together with the sign of the chamber map."""
        mu = tuple(mu)
        sign = 1
        while True:
            for i in range(self.rank):
                if self.coroot_pairing(mu, i) < 0:
                    mu = self.reflect(mu, i)
                    sign = -sign
                    break
            else:
                return mu, sign

    def to_dominant_regular(self, mu):
        """Like to_dominant but returns (None, 0) if mu lies on a wall."""
        mu = tuple(mu)
        sign = 1
        while True:
            moved = False
            for i in range(self.rank):
                c = self.coroot_pairing(mu, i)
                if c == 0:
                    return None, 0
                if c < 0:
                    mu = self.reflect(mu, i)
                    sign = -sign
                    moved = True
                    break
            if not moved:
                return mu, sign

    def lowest_conjugate(self, mu):
        """The antidominant Weyl conjugate (w0 * dominant representative)."""
        mu = tuple(mu)
        while True:
            for i in range(self.rank):
                if self.coroot_pairing(mu, i) > 0:
                    mu = self.reflect(mu, i)
                    break
            else:
                return mu

    def all_roots(self):
        return list(self.positive_roots) + [_neg(r) for r in self.positive_roots]

    def _close_positive_roots(self):
        pos = {tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)}
        frontier = list(pos)
        is_root = lambda v: v in pos or _neg(v) in pos
        while frontier:
            new = []
            for beta in frontier:
                for i in range(self.rank):
                    alpha = tuple(1 if j == i else 0 for j in range(self.rank))
                    p = 0
                    down = _sub(beta, alpha)
                    while any(down) and is_root(down):
                        p += 1
                        down = _sub(down, alpha)
                    q = p - self.coroot_pairing(beta, i)
                    if q >= 1:
                        up = _add(beta, alpha)
                        if up not in pos:
                            pos.add(up)
                            new.append(up)
            frontier = new
        return sorted(pos, key=lambda r: (sum(r), r))

    def _cartan_inverse_columns(self):
        n = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
               for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return [[aug[i][n + k] for i in range(n)] for k in range(n)]

    # -- representation combinatorics ---------------------------------------

    def weyl_dim(self, lam):
        """Weyl dimension formula for a dominant weight lam."""
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        num = Fraction(1)
        for alpha in self.positive_roots:
            lp = self.pairing(_add(lam, self.rho), alpha)
            rp = self.pairing(self.rho, alpha)
            num *= Fraction(lp, rp)
        assert num.denominator == 1
        return int(num)

    def weights_with_mult(self, lam):
        """Weight multiplicities of the simple module V_lam (Freudenthal)."""
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        return dict(self._freudenthal(lam))

    @lru_cache(maxsize=None)
    def _freudenthal(self, lam):
        low = self.lowest_conjugate(lam)
        box = _sub(lam, low)
        # candidate weights lam - beta, 0 <= beta <= box, by increasing depth
        candidates = [()]
        for i in range(self.rank):
            candidates = [c + (b,) for c in candidates for b in range(box[i] + 1)]
        candidates = [_sub(lam, beta) for beta in candidates]
        candidates.sort(key=lambda mu: -sum(mu))
        c_top = self.pairing(_add(lam, self.rho), _add(lam, self.rho))
        mult = {lam: 1}
        for mu in candidates:
            if mu == lam:
                continue
            denom = c_top - self.pairing(_add(mu, self.rho), _add(mu, self.rho))
            if denom == 0:
                continue
            acc = 0
            top_height = sum(lam)
            for alpha in self.positive_roots:
                nu = _add(mu, alpha)
                # no weight of V_lam has height above ht(lam)
                while sum(nu) <= top_height:
                    m = mult.get(nu, 0)
                    if m:
                        acc += m * self.pairing(nu, alpha)
                    nu = _add(nu, alpha)
            m_mu = Fraction(2 * acc, denom)
            assert m_mu.denominator == 1
            if m_mu:
                mult[mu] = int(m_mu)
        return tuple(mult.items())

    def tensor_decompose(self, lam, mu):
        """Decomposition of V_lam (x) V_mu into simples (Klimyk's formula)."""
        lam, mu = tuple(lam), tuple(mu)
        if self.weyl_dim(lam) < self.weyl_dim(mu):
            lam, mu = mu, lam
        lam_rho = _add(lam, self.rho)
        out = {}
        for nu, m in self.weights_with_mult(mu).items():
            zeta = _add(lam_rho, nu)
            dom, sign = self.to_dominant_regular(zeta)
            if dom is None:
                continue
            eta = tuple(int(x) for x in _sub(dom, self.rho))
            out[eta] = out.get(eta, 0) + sign * m
        out = {eta: m for eta, m in out.items() if m}
        assert all(m > 0 for m in out.values()), "Klimyk produced a negative multiplicity"
        total = sum(m * self.weyl_dim(eta) for eta, m in out.items())
        assert total == self.weyl_dim(lam) * self.weyl_dim(mu), "dimension not conserved"
        return out

    def dual_coxeter_number(self):
        theta = self.max_root
        num = 2 * self.pairing(self.rho, theta)
        den = self.pairing(theta, theta)
        h = Fraction(num, den) + 1
        assert h.denominator == 1
        return int(h)

    def adjoint_occurrence_sets(self, d):
        """Dominant weights occurring in V^{(x) d'} for each d' <= d (V = adjoint)."""
        theta = self.max_root
        levels = [{tuple(0 for _ in range(self.rank))}]
        current = {tuple(0 for _ in range(self.rank)): 1}
        for _ in range(d):
            nxt = {}
            for lam, m in current.items():
                for eta, k in self.tensor_decompose(lam, theta).items():
                    nxt[eta] = nxt.get(eta, 0) + m * k
            current = nxt
            levels.append(set(current))
        return levels

    def peter_weyl_dim_plain(self, d):
        """Sum of (dim W)^2 over distinct simples in the adjoint filtration (Gamma trivial)."""
        seen = set()
        for level in self.adjoint_occurrence_sets(d):
            seen |= level
        return sum(self.weyl_dim(lam) ** 2 for lam in seen)


def build_root_datum(type_label):
    datum = RootDatum(type_label)
    # normalization check: short roots have squared length 2
    lengths = {datum.pairing(r, r) for r in datum.positive_roots}
    assert min(lengths) == 2, "short-root normalization violated"
    return datum


def gamma_apply(perm, weight):
    """Action of a diagram automorphism on a weight in simple-root coordinates."""
    out = [0] * len(weight)
    for i, v in enumerate(weight):
        out[perm[i]] = v
    return tuple(out)
