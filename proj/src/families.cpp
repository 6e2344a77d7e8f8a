#include "dop/families.hpp"

#include <cmath>

#include "dop/error.hpp"

namespace dop {

namespace {

Rational rat(long v) { return Rational(v); }
Rational rat(unsigned v) { return Rational(static_cast<long>(v)); }

Poly embed(const Poly& uni, unsigned dim, unsigned var) {
    Poly out(dim);
    for (const auto& [a, c] : uni.terms()) {
        MultiIndex e(dim, 0);
        e[var] = a[0];
        out.set_coeff(e, c);
    }
    return out;
}

// Terminating hypergeometric-style sum for Hahn; assumes n <= big_n so no
// denominator factor vanishes.
Poly hahn_series(unsigned n, const Rational& a, const Rational& b, unsigned big_n) {
    Poly sum = Poly::constant(1, Rational(1));
    Poly fall = Poly::constant(1, Rational(1));  // (-x)_j
    Poly x = Poly::monomial({1});
    Rational coef(1);
    for (unsigned j = 0; j < n; ++j) {
        Rational jj = rat(j);
        coef *= (jj - rat(n)) * (rat(n) + a + b + 1 + jj);
        coef /= (a + 1 + jj) * (jj - rat(big_n)) * (jj + 1);
        fall = fall * (Poly::constant(1, jj) - x);
        sum += coef * fall;
    }
    return sum;
}

RatMatrix block_gram(const MomentFunctional& l, const std::vector<Poly>& block) {
    RatMatrix h(block.size(), block.size());
    for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a; b < block.size(); ++b) {
            Rational v = l.inner(block[a], block[b]);
            h(a, b) = v;
            h(b, a) = v;
        }
    return h;
}

void fill_grams(OrthoBasis& basis, const PointSet& v, const WeightFn& w) {
    MomentFunctional l(v, w);
    basis.weights_positive = w.positive;
    for (unsigned k = 0; k < basis.blocks.size(); ++k) {
        basis.H.push_back(block_gram(l, basis.blocks[k]));
        basis.G.push_back(leading_coefficients(basis.blocks[k], basis.lam, k));
    }
}

}  // namespace

HahnParams::HahnParams(Rational a_, Rational b_, unsigned n_)
    : a(std::move(a_)), b(std::move(b_)), N(n_) {
    if (!(a > Rational(-1)) || !(b > Rational(-1)))
        throw InvalidArgument("Hahn parameters require a > -1 and b > -1");
    if (N < 1) throw InvalidArgument("Hahn support size N must be >= 1");
}

MeixnerParams::MeixnerParams(Rational b_, Rational c_) : b(std::move(b_)), c(std::move(c_)) {
    if (!(b > Rational(0))) throw InvalidArgument("Meixner requires b > 0");
    if (!(c > Rational(0)) || !(c < Rational(1)))
        throw InvalidArgument("Meixner requires 0 < c < 1");
}

TriangleHahnParams::TriangleHahnParams(Rational s1_, Rational s2_, Rational s3_, unsigned n_)
    : s1(std::move(s1_)), s2(std::move(s2_)), s3(std::move(s3_)), N(n_) {
    if (!(s1 > Rational(-1)) || !(s2 > Rational(-1)) || !(s3 > Rational(-1)))
        throw InvalidArgument("triangle Hahn requires every sigma > -1");
    if (N < 1) throw InvalidArgument("triangle support size N must be >= 1");
}

Poly hahn(unsigned n, const HahnParams& p) {
    if (n > p.N) throw DegreeOutOfRange("Hahn degree exceeds N");
    return hahn_series(n, p.a, p.b, p.N);
}

std::pair<Rational, Rational> hahn_recurrence(unsigned n, const HahnParams& p) {
    if (n + 1 > p.N) throw DegreeOutOfRange("Hahn recurrence needs n <= N-1");
    const Rational& a = p.a;
    const Rational& b = p.b;
    Rational nn = rat(n), bigN = rat(p.N);
    Rational an;
    if (n == 0) {
        // the (a+b+1) factor cancels, which matters when a+b = -1
        an = (a + 1) * bigN / (a + b + 2);
    } else {
        an = (nn + a + b + 1) * (nn + a + 1) * (bigN - nn) /
             ((2 * nn + a + b + 1) * (2 * nn + a + b + 2));
    }
    Rational cn;
    if (n > 0)
        cn = nn * (nn + b) * (nn + a + b + bigN + 1) /
             ((2 * nn + a + b) * (2 * nn + a + b + 1));
    return {an, cn};
}

Rational hahn_weight(unsigned x, const HahnParams& p) {
    if (x > p.N) throw DegreeOutOfRange("Hahn weight node exceeds N");
    return binom_shifted(x, p.a) * binom_shifted(p.N - x, p.b);
}

Rational hahn_norm(unsigned n, const HahnParams& p) {
    if (n > p.N) throw DegreeOutOfRange("Hahn degree exceeds N");
    const Rational& a = p.a;
    const Rational& b = p.b;
    // (n+a+b+1)_{N+1} / (2n+a+b+1): the t = n factor of the Pochhammer product
    // is exactly the denominator, so skip it (this keeps a+b = -1 finite).
    Rational prod(1);
    for (unsigned t = 0; t <= p.N; ++t) {
        if (t == n) continue;
        prod *= rat(n) + a + b + 1 + rat(t);
    }
    Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    return sign * Rational(factorial(n)) * pochhammer(b + 1, n) * prod /
           (Rational(factorial(p.N)) * pochhammer(-rat(p.N), n) * pochhammer(a + 1, n));
}

Poly meixner(unsigned n, const MeixnerParams& p) {
    Poly sum = Poly::constant(1, Rational(1));
    Poly fall = Poly::constant(1, Rational(1));  // (-x)_j
    Poly x = Poly::monomial({1});
    Rational z = 1 - 1 / p.c;
    Rational coef(1);
    for (unsigned j = 0; j < n; ++j) {
        Rational jj = rat(j);
        coef *= (jj - rat(n)) * z / ((p.b + jj) * (jj + 1));
        fall = fall * (Poly::constant(1, jj) - x);
        sum += coef * fall;
    }
    return sum;
}

Rational meixner_weight(unsigned x, const MeixnerParams& p) {
    return pochhammer(p.b, x) * pow(p.c, x) / Rational(factorial(x));
}

MeixnerNormCheck meixner_norm_check(unsigned m, unsigned n, const MeixnerParams& p,
                                    unsigned truncation) {
    Poly pm = meixner(m, p);
    Poly pn = meixner(n, p);
    Rational partial(0);
    for (unsigned x = 0; x <= truncation; ++x) {
        std::vector<Rational> pt{rat(x)};
        partial += meixner_weight(x, p) * pm.eval(pt) * pn.eval(pt);
    }
    MeixnerNormCheck out{};
    out.partial = partial.to_double();
    if (m == n) {
        Rational head = Rational(factorial(n)) / (pow(p.c, n) * pochhammer(p.b, n));
        out.target = head.to_double() /
                     std::pow((1 - p.c).to_double(), p.b.to_double());
    }
    out.gap = std::fabs(out.partial - out.target);
    return out;
}

DiscreteFamily hahn_family(const HahnParams& p) {
    DiscreteFamily f;
    for (unsigned x = 0; x <= p.N; ++x) {
        f.nodes.push_back(rat(x));
        f.weights.push_back(hahn_weight(x, p));
    }
    for (unsigned n = 0; n <= p.N; ++n) f.polys.push_back(hahn(n, p));
    for (unsigned n = 0; n + 1 <= p.N; ++n) {
        auto [an, cn] = hahn_recurrence(n, p);
        f.a.push_back(-an);
        f.b.push_back(an + cn);
        f.c.push_back(-cn);
    }
    return f;
}

DiscreteFamily meixner_family(const MeixnerParams& p, unsigned max_degree,
                              unsigned truncation) {
    if (truncation < max_degree)
        throw InsufficientNodes("truncated support smaller than the degree range");
    DiscreteFamily f;
    for (unsigned x = 0; x <= truncation; ++x) {
        f.nodes.push_back(rat(x));
        f.weights.push_back(meixner_weight(x, p));
    }
    for (unsigned n = 0; n <= max_degree; ++n) f.polys.push_back(meixner(n, p));
    Rational cm1 = p.c - 1;
    for (unsigned n = 0; n + 1 <= max_degree; ++n) {
        Rational nn = rat(n);
        f.a.push_back(p.c * (nn + p.b) / cm1);
        f.b.push_back(-(nn + (nn + p.b) * p.c) / cm1);
        f.c.push_back(nn / cm1);
    }
    return f;
}

FamilyBasis univariate_basis(const DiscreteFamily& f) {
    FamilyBasis out{OrthoBasis{}, PointSet(), WeightFn(f.weights)};
    std::vector<std::vector<Rational>> pts;
    for (const auto& x : f.nodes) pts.push_back({x});
    out.support = PointSet(1, std::move(pts));

    std::vector<MultiIndex> idx;
    for (unsigned k = 0; k <= f.max_degree(); ++k) idx.push_back({k});
    out.basis.lam = Staircase(MonomialOrder::grlex(1), std::move(idx));
    for (unsigned k = 0; k <= f.max_degree(); ++k) out.basis.blocks.push_back({f.polys[k]});
    fill_grams(out.basis, out.support, out.weight);
    return out;
}

FamilyBasis product_basis(const DiscreteFamily& fx, const DiscreteFamily& fy) {
    const unsigned n = fx.max_degree();
    const unsigned m = fy.max_degree();
    if (n < m) throw InvalidArgument("product basis requires deg(x family) >= deg(y family)");

    std::vector<std::vector<Rational>> pts;
    std::vector<Rational> w;
    for (std::size_t l = 0; l < fy.nodes.size(); ++l)
        for (std::size_t i = 0; i < fx.nodes.size(); ++i) {
            pts.push_back({fx.nodes[i], fy.nodes[l]});
            w.push_back(fx.weights[i] * fy.weights[l]);
        }

    FamilyBasis out{OrthoBasis{}, PointSet(2, std::move(pts)), WeightFn(std::move(w))};

    std::vector<MultiIndex> idx;
    for (unsigned j = 0; j <= n; ++j)
        for (unsigned l = 0; l <= m; ++l) idx.push_back({j, l});
    out.basis.lam = Staircase(MonomialOrder::grlex(2), std::move(idx));

    for (unsigned k = 0; k <= n + m; ++k) {
        std::vector<Poly> block;
        for (unsigned j = k > m ? k - m : 0; j <= std::min(k, n); ++j)
            block.push_back(embed(fx.polys[j], 2, 0) * embed(fy.polys[k - j], 2, 1));
        out.basis.blocks.push_back(std::move(block));
    }
    fill_grams(out.basis, out.support, out.weight);
    return out;
}

RatMatrix product_recurrence_blocks(const DiscreteFamily& fx, const DiscreteFamily& fy,
                                    unsigned k, unsigned i) {
    const unsigned n = fx.max_degree();
    const unsigned m = fy.max_degree();
    if (n < m) throw InvalidArgument("product basis requires deg(x family) >= deg(y family)");
    if (k >= n + m) throw DegreeOutOfRange("A blocks exist for k < n+m");
    if (i >= 2) throw DimensionMismatch("coordinate index out of range");

    auto lo = [&](unsigned kk) { return kk > m ? kk - m : 0u; };
    auto hi = [&](unsigned kk) { return std::min(kk, n); };
    RatMatrix out(hi(k) - lo(k) + 1, hi(k + 1) - lo(k + 1) + 1);
    for (unsigned j = lo(k); j <= hi(k); ++j) {
        if (i == 0 && j + 1 <= n) out(j - lo(k), j + 1 - lo(k + 1)) = fx.a[j];
        if (i == 1 && k - j + 1 <= m) out(j - lo(k), j - lo(k + 1)) = fy.a[k - j];
    }
    return out;
}

Poly triangle_hahn(unsigned n, unsigned m, const TriangleHahnParams& p) {
    if (n + m > p.N) throw DegreeOutOfRange("triangle Hahn requires n + m <= N");
    const Rational& s1 = p.s1;
    const Rational& s2 = p.s2;
    const Rational& s3 = p.s3;
    Rational bpar = s2 + s3 + 2 * rat(m) + 1;

    Poly qn = embed(hahn_series(n, s1, bpar, p.N - m), 2, 0);

    // sum_j [(-m)_j (m+s2+s3+1)_j / ((s2+1)_j j!)] (-y)_j (x-N+j)_{m-j}
    Poly x = Poly::monomial({1, 0});
    Poly y = Poly::monomial({0, 1});
    Poly t(2);
    Poly fall = Poly::constant(2, Rational(1));  // (-y)_j
    Rational coef(1);
    for (unsigned j = 0; j <= m; ++j) {
        Poly rise = Poly::constant(2, Rational(1));  // (x-N+j)_{m-j}
        for (unsigned s = 0; s + j < m; ++s)
            rise = rise * (x + Poly::constant(2, rat(j) + rat(s) - rat(p.N)));
        t += coef * (fall * rise);
        if (j < m) {
            Rational jj = rat(j);
            coef *= (jj - rat(m)) * (rat(m) + s2 + s3 + 1 + jj) / ((s2 + 1 + jj) * (jj + 1));
            fall = fall * (Poly::constant(2, jj) - y);
        }
    }

    Rational sign = (n + m) % 2 == 0 ? Rational(1) : Rational(-1);
    Rational pref = sign * pochhammer(s1 + 1, n) * pochhammer(s2 + 1, m) /
                    (pochhammer(s3 + 1, m) * pochhammer(bpar, n) * pochhammer(-rat(p.N), m));
    Poly out = qn * t;
    out *= pref;
    return out;
}

Rational triangle_hahn_weight(unsigned x, unsigned y, const TriangleHahnParams& p) {
    if (x + y > p.N) throw DegreeOutOfRange("triangle weight node outside the support");
    return binom_shifted(x, p.s1) * binom_shifted(y, p.s2) *
           binom_shifted(p.N - x - y, p.s3);
}

FamilyBasis triangle_basis(const TriangleHahnParams& p) {
    std::vector<std::vector<Rational>> pts;
    std::vector<Rational> w;
    for (unsigned x = 0; x <= p.N; ++x)
        for (unsigned y = 0; x + y <= p.N; ++y) {
            pts.push_back({rat(x), rat(y)});
            w.push_back(triangle_hahn_weight(x, y, p));
        }
    FamilyBasis out{OrthoBasis{}, PointSet(2, std::move(pts)), WeightFn(std::move(w))};

    std::vector<MultiIndex> idx;
    for (unsigned i = 0; i <= p.N; ++i)
        for (unsigned j = 0; i + j <= p.N; ++j) idx.push_back({i, j});
    out.basis.lam = Staircase(MonomialOrder::grevlex(2), std::move(idx));

    for (unsigned k = 0; k <= p.N; ++k) {
        std::vector<Poly> block;
        for (unsigned mm = 0; mm <= k; ++mm) block.push_back(triangle_hahn(k - mm, mm, p));
        out.basis.blocks.push_back(std::move(block));
    }
    fill_grams(out.basis, out.support, out.weight);
    return out;
}

}  // namespace dop
