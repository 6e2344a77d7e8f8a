#pragma once

#include <utility>
#include <vector>

#include "dop/orthogonalize.hpp"
#include "dop/staircase.hpp"

namespace dop {

// Hahn polynomials Q_n(x; a, b, N), orthogonal on {0..N} under the
// hypergeometric distribution.
struct HahnParams {
    Rational a, b;
    unsigned N;

    HahnParams(Rational a_, Rational b_, unsigned n_);
};

// Meixner polynomials M_n(x; b, c), orthogonal on the nonnegative integers
// under the negative binomial distribution.
struct MeixnerParams {
    Rational b, c;

    MeixnerParams(Rational b_, Rational c_);
};

// Bivariate Hahn polynomials phi_{n,m} on the lattice triangle x+y <= N.
struct TriangleHahnParams {
    Rational s1, s2, s3;
    unsigned N;

    TriangleHahnParams(Rational s1_, Rational s2_, Rational s3_, unsigned n_);
};

Poly hahn(unsigned n, const HahnParams& p);  // univariate, exact
// (A_n, C_n) with -x Q_n = A_n Q_{n+1} - (A_n + C_n) Q_n + C_n Q_{n-1}.
std::pair<Rational, Rational> hahn_recurrence(unsigned n, const HahnParams& p);
Rational hahn_weight(unsigned x, const HahnParams& p);
// L(Q_n^2) under hahn_weight summed over {0..N}.
Rational hahn_norm(unsigned n, const HahnParams& p);

Poly meixner(unsigned n, const MeixnerParams& p);
Rational meixner_weight(unsigned x, const MeixnerParams& p);

struct MeixnerNormCheck {
    double partial = 0;  // truncated orthogonality sum
    double target = 0;   // closed-form norm (0 off-diagonal)
    double gap = 0;      // |partial - target|
};
MeixnerNormCheck meixner_norm_check(unsigned m, unsigned n, const MeixnerParams& p,
                                    unsigned truncation);

// A univariate discrete orthogonal family bundled with its support, weights,
// and standard-form recurrence x p_k = a_k p_{k+1} + b_k p_k + c_k p_{k-1}.
struct DiscreteFamily {
    std::vector<Rational> nodes;
    std::vector<Rational> weights;
    std::vector<Poly> polys;  // degrees 0..max_degree
    std::vector<Rational> a, b, c;  // coefficients for k = 0..max_degree-1

    unsigned max_degree() const { return static_cast<unsigned>(polys.size()) - 1; }
};

DiscreteFamily hahn_family(const HahnParams& p);
// Support truncated to {0..truncation}; requires truncation >= max_degree.
DiscreteFamily meixner_family(const MeixnerParams& p, unsigned max_degree,
                              unsigned truncation);

// A closed-form basis together with the point set and weight realizing its
// orthogonality (exactly for finite supports, approximately when truncated).
struct FamilyBasis {
    OrthoBasis basis;
    PointSet support;
    WeightFn weight;
};

FamilyBasis univariate_basis(const DiscreteFamily& f);

// Bivariate product basis P_{j,l}(x,y) = p_j(x) q_l(y) on the grid, grouped
// by total degree; requires fx.max_degree() >= fy.max_degree().
FamilyBasis product_basis(const DiscreteFamily& fx, const DiscreteFamily& fy);

// The banded degree-raising block A_{k,i} of the product basis, assembled
// from the univariate coefficients (i = 0 for x, 1 for y).
RatMatrix product_recurrence_blocks(const DiscreteFamily& fx, const DiscreteFamily& fy,
                                    unsigned k, unsigned i);

Poly triangle_hahn(unsigned n, unsigned m, const TriangleHahnParams& p);  // bivariate
Rational triangle_hahn_weight(unsigned x, unsigned y, const TriangleHahnParams& p);
FamilyBasis triangle_basis(const TriangleHahnParams& p);

}  // namespace dop
