#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "dop/matrix.hpp"
#include "dop/staircase.hpp"

namespace dop {

// Weight values aligned with a point set; every value must be nonzero.
struct WeightFn {
    std::vector<Rational> values;
    bool positive = false;  // derived: all values > 0

    WeightFn() = default;
    explicit WeightFn(std::vector<Rational> vals);
    // 1/n at every point.
    static WeightFn uniform(std::size_t n);

    std::size_t size() const { return values.size(); }
};

// L(f) = sum over V of f(x) W(x).
class MomentFunctional {
public:
    MomentFunctional(PointSet v, WeightFn w);

    const PointSet& points() const { return v_; }
    const WeightFn& weights() const { return w_; }
    bool positive() const { return w_.positive; }

    Rational moment(const MultiIndex& a) const;
    Rational apply(const Poly& p) const;
    // L(p*q), evaluated pointwise (never forms the product polynomial).
    Rational inner(const Poly& p, const Poly& q) const;

private:
    PointSet v_;
    WeightFn w_;
};

// Degree blocks of orthogonal polynomials on V together with their Gram
// blocks H_k = L(P_k P_k^T) and leading-coefficient matrices G_k (rows =
// polynomials, columns = degree-k staircase monomials).
struct OrthoBasis {
    Staircase lam;
    std::vector<std::vector<Poly>> blocks;
    std::vector<RatMatrix> H;
    std::vector<RatMatrix> G;
    bool weights_positive = false;

    unsigned top_degree() const { return static_cast<unsigned>(blocks.size()) - 1; }
    std::size_t r(unsigned k) const { return blocks[k].size(); }
};

enum class ScaleMode { Canonical, Raw };

// Gram matrix of all staircase monomials of degree <= k.
RatMatrix gram_matrix(const MomentFunctional& l, const Staircase& lam, unsigned k);

// Entry k is true iff the degree-k moment matrix is nonsingular; an
// orthogonal basis exists iff every entry is true.
std::vector<bool> existence_check(const MomentFunctional& l, const Staircase& lam);

// Gram–Schmidt over the staircase monomials. Positive weights run the full
// sequential procedure (every accepted polynomial has positive norm, and the
// result reproduces known closed-form bases); sign-changing weights use
// degree-block projections via H_j^{-1} and fail with ExistenceFailure at the
// first singular Gram block.
OrthoBasis construct_orthogonal(const MomentFunctional& l, const Staircase& lam,
                                ScaleMode mode = ScaleMode::Canonical);

// Unique scaling to integer coefficients with content 1 and a positive
// coefficient on the order-largest monomial.
Poly canonical_scale(const Poly& p, const MonomialOrder& order);

struct FloatPoly {
    unsigned dim = 0;
    std::map<MultiIndex, double> coeffs;

    double eval(const std::vector<double>& pt) const;
};

// Exact block diagonalization of each H_k (LDL^T) followed by division by
// sqrt of the pivots; requires positive weights.
std::vector<std::vector<FloatPoly>> orthonormalize(const OrthoBasis& basis);

// Coefficient matrix of a degree-k block over the degree-k staircase monomials.
RatMatrix leading_coefficients(const std::vector<Poly>& block, const Staircase& lam,
                               unsigned k);

}  // namespace dop
