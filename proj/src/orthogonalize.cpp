#include "dop/orthogonalize.hpp"

#include <cmath>
#include <utility>

#include "dop/error.hpp"

namespace dop {

WeightFn::WeightFn(std::vector<Rational> vals) : values(std::move(vals)) {
    positive = true;
    for (const auto& v : values) {
        if (v.is_zero()) throw InvalidArgument("weights must be nonzero");
        if (v.sign() < 0) positive = false;
    }
}

WeightFn WeightFn::uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("uniform weight needs at least one point");
    return WeightFn(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

MomentFunctional::MomentFunctional(PointSet v, WeightFn w)
    : v_(std::move(v)), w_(std::move(w)) {
    if (v_.size() != w_.size())
        throw ShapeMismatch("weight count must equal point count");
}

Rational MomentFunctional::moment(const MultiIndex& a) const {
    return apply(Poly::monomial(a));
}

Rational MomentFunctional::apply(const Poly& p) const {
    if (p.dim() != v_.dim) throw DimensionMismatch("polynomial dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < v_.size(); ++i) s += w_.values[i] * p.eval(v_.points[i]);
    return s;
}

Rational MomentFunctional::inner(const Poly& p, const Poly& q) const {
    if (p.dim() != v_.dim || q.dim() != v_.dim)
        throw DimensionMismatch("polynomial dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < v_.size(); ++i)
        s += w_.values[i] * p.eval(v_.points[i]) * q.eval(v_.points[i]);
    return s;
}

RatMatrix gram_matrix(const MomentFunctional& l, const Staircase& lam, unsigned k) {
    if (k > lam.top_degree()) throw DegreeOutOfRange("degree cap exceeds the staircase");
    const std::size_t n = lam.block_offset(k + 1);
    // evaluations of the first n staircase monomials at every point
    RatMatrix e(n, l.points().size());
    for (std::size_t s = 0; s < n; ++s) {
        Poly m = Poly::monomial(lam.indices()[s]);
        for (std::size_t i = 0; i < l.points().size(); ++i)
            e(s, i) = m.eval(l.points().points[i]);
    }
    RatMatrix g(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s; t < n; ++t) {
            Rational acc(0);
            for (std::size_t i = 0; i < l.points().size(); ++i)
                acc += l.weights().values[i] * e(s, i) * e(t, i);
            g(s, t) = acc;
            g(t, s) = acc;
        }
    }
    return g;
}

std::vector<bool> existence_check(const MomentFunctional& l, const Staircase& lam) {
    std::vector<bool> ok(lam.top_degree() + 1);
    for (unsigned k = 0; k <= lam.top_degree(); ++k) {
        RatMatrix m = gram_matrix(l, lam, k);
        ok[k] = rank(m) == m.rows();
    }
    return ok;
}

Poly canonical_scale(const Poly& p, const MonomialOrder& order) {
    if (p.is_zero()) throw ZeroPolynomial("cannot scale the zero polynomial");
    mpz_class den(1);
    for (const auto& [a, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    mpz_class content(0);
    for (const auto& [a, c] : p.terms()) {
        mpz_class num = c.num() * (den / c.den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
    }
    Rational scale{den, content};
    const MultiIndex* lead = nullptr;
    for (const auto& [a, c] : p.terms()) {
        if (!lead || order.less(*lead, a)) lead = &a;
    }
    if ((p.coeff(*lead) * scale).sign() < 0) scale = -scale;
    Poly q = p;
    q *= scale;
    return q;
}

RatMatrix leading_coefficients(const std::vector<Poly>& block, const Staircase& lam,
                               unsigned k) {
    RatMatrix g(block.size(), lam.r(k));
    for (std::size_t j = 0; j < block.size(); ++j)
        for (std::size_t t = 0; t < lam.r(k); ++t)
            g(j, t) = block[j].coeff(lam.index_at(k, t));
    return g;
}

namespace {

RatMatrix block_gram(const MomentFunctional& l, const std::vector<Poly>& block) {
    RatMatrix h(block.size(), block.size());
    for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = a; b < block.size(); ++b) {
            Rational v = l.inner(block[a], block[b]);
            h(a, b) = v;
            h(b, a) = v;
        }
    }
    return h;
}

// Full sequential Gram–Schmidt; valid because every norm L(q^2) is positive.
std::vector<std::vector<Poly>> construct_positive(const MomentFunctional& l,
                                                  const Staircase& lam, ScaleMode mode) {
    std::vector<Poly> built;
    std::vector<Rational> norms;
    std::vector<std::vector<Poly>> blocks(lam.top_degree() + 1);
    for (const auto& a : lam.indices()) {
        Poly p = Poly::monomial(a);
        Poly q = p;
        for (std::size_t s = 0; s < built.size(); ++s) {
            Rational c = l.inner(p, built[s]) / norms[s];
            if (!c.is_zero()) q -= c * built[s];
        }
        if (mode == ScaleMode::Canonical) q = canonical_scale(q, lam.order());
        norms.push_back(l.inner(q, q));
        built.push_back(q);
        blocks[degree(a)].push_back(std::move(q));
    }
    return blocks;
}

// Degree-block projections, safe for sign-changing weights as long as every
// Gram block stays nonsingular.
std::vector<std::vector<Poly>> construct_signed(const MomentFunctional& l,
                                                const Staircase& lam, ScaleMode mode,
                                                std::vector<RatMatrix>& grams) {
    std::vector<std::vector<Poly>> blocks(lam.top_degree() + 1);
    for (unsigned k = 0; k <= lam.top_degree(); ++k) {
        std::vector<Poly>& cur = blocks[k];
        for (std::size_t j = 0; j < lam.r(k); ++j) {
            Poly p = Poly::monomial(lam.index_at(k, j));
            for (unsigned kk = 0; kk < k; ++kk) {
                const std::vector<Poly>& prev = blocks[kk];
                // row = L(p * P_kk^T) H_kk^{-1}
                RatMatrix rhs(prev.size(), 1);
                for (std::size_t t = 0; t < prev.size(); ++t) rhs(t, 0) = l.inner(p, prev[t]);
                RatMatrix row = solve(grams[kk], rhs);  // H symmetric
                for (std::size_t t = 0; t < prev.size(); ++t) {
                    if (!row(t, 0).is_zero()) p -= row(t, 0) * prev[t];
                }
            }
            if (mode == ScaleMode::Canonical) p = canonical_scale(p, lam.order());
            cur.push_back(std::move(p));
        }
        RatMatrix h = block_gram(l, cur);
        if (rank(h) != h.rows()) throw ExistenceFailure(k);
        grams.push_back(std::move(h));
    }
    return blocks;
}

}  // namespace

OrthoBasis construct_orthogonal(const MomentFunctional& l, const Staircase& lam,
                                ScaleMode mode) {
    if (lam.dim() != l.points().dim)
        throw DimensionMismatch("staircase dimension does not match points");
    if (lam.size() != l.points().size())
        throw ShapeMismatch("staircase size must equal the number of points");

    OrthoBasis out;
    out.lam = lam;
    out.weights_positive = l.positive();
    if (l.positive()) {
        out.blocks = construct_positive(l, lam, mode);
        for (unsigned k = 0; k <= lam.top_degree(); ++k)
            out.H.push_back(block_gram(l, out.blocks[k]));
    } else {
        // construct_signed scales each block before taking its Gram, so out.H
        // already reflects the returned polynomials.
        out.blocks = construct_signed(l, lam, mode, out.H);
    }
    for (unsigned k = 0; k <= lam.top_degree(); ++k)
        out.G.push_back(leading_coefficients(out.blocks[k], lam, k));
    return out;
}

double FloatPoly::eval(const std::vector<double>& pt) const {
    double s = 0.0;
    for (const auto& [a, c] : coeffs) {
        double f = c;
        for (std::size_t j = 0; j < a.size(); ++j)
            for (unsigned e = 0; e < a[j]; ++e) f *= pt[j];
        s += f;
    }
    return s;
}

std::vector<std::vector<FloatPoly>> orthonormalize(const OrthoBasis& basis) {
    if (!basis.weights_positive)
        throw NotPositive("orthonormalization requires positive weights");
    std::vector<std::vector<FloatPoly>> out(basis.blocks.size());
    for (unsigned k = 0; k < basis.blocks.size(); ++k) {
        auto [s, d] = symmetric_factor(basis.H[k]);
        // y = S^{-1} P_k by forward substitution (S is unit lower triangular),
        // so that L(y y^T) = D.
        std::vector<Poly> y;
        for (std::size_t j = 0; j < basis.blocks[k].size(); ++j) {
            Poly p = basis.blocks[k][j];
            for (std::size_t t = 0; t < j; ++t) {
                if (!s(j, t).is_zero()) p -= s(j, t) * y[t];
            }
            y.push_back(std::move(p));
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (d[j].sign() <= 0)
                throw NotPositive("Gram block is not positive definite");
            double scale = 1.0 / std::sqrt(d[j].to_double());
            FloatPoly fp;
            fp.dim = y[j].dim();
            for (const auto& [a, c] : y[j].terms()) fp.coeffs[a] = c.to_double() * scale;
            out[k].push_back(std::move(fp));
        }
    }
    return out;
}

}  // namespace dop
