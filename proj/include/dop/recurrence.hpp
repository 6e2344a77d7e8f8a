#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "dop/matrix.hpp"
#include "dop/orthogonalize.hpp"
#include "dop/staircase.hpp"

namespace dop {

// Matrix three-term relation data: x_i P_k = A_{k,i} P_{k+1} + B_{k,i} P_k +
// C_{k,i} P_{k-1} on V. A runs over k = 0..n-1; B and C are kept through the
// top degree n as well (the top relation has no A term), which is exactly
// what the full block Jacobi operators need.
struct Recurrence {
    unsigned dim = 0;
    std::vector<std::size_t> r;             // r_0..r_n
    std::vector<std::vector<RatMatrix>> A;  // A[k][i]: r_k x r_{k+1}, k <= n-1
    std::vector<std::vector<RatMatrix>> B;  // B[k][i]: r_k x r_k,     k <= n
    std::vector<std::vector<RatMatrix>> C;  // C[k][i]: r_k x r_{k-1}, 1 <= k <= n; C[0] empty

    unsigned top_degree() const { return static_cast<unsigned>(r.size()) - 1; }
};

Recurrence compute_recurrence(const OrthoBasis& basis, const MomentFunctional& l);

struct ThreeTermReport {
    bool ok = true;
    Rational max_residual;
    // (k, i, point index) of the first failing check
    std::optional<std::tuple<unsigned, unsigned, std::size_t>> first_failure;
};

// Pointwise check of the relation at every point of V, for every degree and
// coordinate; pointwise equality on V is equivalence mod the vanishing ideal.
ThreeTermReport verify_three_term(const Recurrence& rec, const OrthoBasis& basis,
                                  const PointSet& v);

struct RankEntry {
    unsigned k = 0;
    std::size_t rank_a = 0;     // rank of the stacked A_{k,1..d}
    std::size_t rank_c = 0;     // rank of the stacked C_{k+1,1..d}^T
    std::size_t expected = 0;   // r_{k+1}
    bool dims_ok = false;       // d * r_k >= r_{k+1}
    bool pass = false;
};

struct RankReport {
    std::vector<RankEntry> entries;
    bool ok = true;
};

RankReport rank_condition(const Recurrence& rec);

// Both sides of the Christoffel–Darboux identity at (x, y), anchored on
// coordinate i at degree k:
//   sum_{j<=k} P_j(x)^T H_j^{-1} P_j(y)
//     = [P_{k+1}(x)^T A_{k,i}^T H_k^{-1} P_k(y)
//        - P_k(x)^T H_k^{-1} A_{k,i} P_{k+1}(y)] / (x_i - y_i).
std::pair<Rational, Rational> christoffel_darboux(const OrthoBasis& basis,
                                                  const Recurrence& rec,
                                                  const std::vector<Rational>& x,
                                                  const std::vector<Rational>& y,
                                                  unsigned i, unsigned k);

struct JacobiOperator {
    unsigned coordinate = 0;
    RatMatrix matrix;  // |Λ| x |Λ| block tridiagonal
};

// Multiplication-by-x_i operators in the orthogonal basis: diagonal blocks
// B_{0..n,i}, superdiagonal A_{0..n-1,i}, subdiagonal C_{1..n,i}.
std::vector<JacobiOperator> jacobi_operators(const Recurrence& rec);

struct CommuteReport {
    bool ok = true;
    std::optional<std::pair<unsigned, unsigned>> first_failure;
};

CommuteReport commute_check(const std::vector<JacobiOperator>& js);

// Degree-raising reconstruction: P_0 = (1) and
//   P_{k+1} = sum_i D_{k,i}^T (x_i P_k - B_{k,i} P_k - C_{k,i} P_{k-1}),
// where [D_{k,1}^T ... D_{k,d}^T] = left_inverse(stack_i A_{k,i}). When a
// reference point set is supplied, each x_i P_k is reduced into the staircase
// span modulo its vanishing ideal first.
std::vector<std::vector<Poly>> favard_reconstruct(const Recurrence& rec,
                                                  const Staircase& lam,
                                                  const PointSet* reference = nullptr);

struct RecoveredMeasure {
    PointSet points;
    WeightFn weights;
    unsigned attempts = 0;
};

// Finds N = |Λ| points carrying a functional with L(P_0) = 1 and L(P_α) = 0
// for α ≠ 0: solves [P_α(x_j)] λ = e_0 exactly, retrying (deterministically
// under the seed) until the matrix is nonsingular and every λ_j ≠ 0. Points
// come from the candidate pool when given, else from the integer lattice
// {-N..N}^d.
RecoveredMeasure recover_measure(const std::vector<std::vector<Poly>>& blocks,
                                 const PointSet* candidates, std::uint64_t seed);

}  // namespace dop
