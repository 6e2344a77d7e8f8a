#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dop/matrix.hpp"
#include "dop/rational.hpp"

namespace dop {

// Exponent tuple; the dimension is the vector length.
using MultiIndex = std::vector<unsigned>;

inline unsigned degree(const MultiIndex& a) {
    unsigned s = 0;
    for (unsigned e : a) s += e;
    return s;
}

// Graded total order on multi-indices. precedence[0] is the most significant
// variable (0-based). Default precedences: within a degree, bivariate grevlex
// ranks x^2 < xy < y^2 and grlex ranks y^2 < xy < x^2.
struct MonomialOrder {
    enum class Kind { Grlex, Grevlex };

    Kind kind;
    std::vector<unsigned> precedence;

    static MonomialOrder grlex(unsigned d);    // precedence x1 > x2 > ... > xd
    static MonomialOrder grevlex(unsigned d);  // precedence xd > ... > x1

    static MonomialOrder make(Kind k, std::vector<unsigned> prec);

    unsigned dim() const { return static_cast<unsigned>(precedence.size()); }
    bool less(const MultiIndex& a, const MultiIndex& b) const;

    std::string kind_name() const {
        return kind == Kind::Grlex ? "grlex" : "grevlex";
    }
    bool default_precedence() const;
};

struct PointSet {
    unsigned dim = 0;
    std::vector<std::vector<Rational>> points;

    PointSet() = default;
    PointSet(unsigned d, std::vector<std::vector<Rational>> pts);

    std::size_t size() const { return points.size(); }
};

// Polynomial with exact coefficients; no explicit zero terms. The term map
// uses plain lexicographic key order, independent of any MonomialOrder.
class Poly {
public:
    Poly() : dim_(0) {}
    explicit Poly(unsigned dim) : dim_(dim) {}
    Poly(unsigned dim, std::map<MultiIndex, Rational> terms);

    static Poly constant(unsigned dim, const Rational& c);
    static Poly monomial(const MultiIndex& a, const Rational& c = Rational(1));

    unsigned dim() const { return dim_; }
    // -1 for the zero polynomial.
    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    Rational coeff(const MultiIndex& a) const;
    void set_coeff(const MultiIndex& a, const Rational& c);

    Rational eval(const std::vector<Rational>& pt) const;
    double eval_double(const std::vector<double>& pt) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Rational& s, Poly p) { return p *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    // Multiplication by x_i.
    Poly shifted(unsigned i) const;
    // Substitute x_j -> x_j + t_j (used by translation tests).
    Poly translated(const std::vector<Rational>& t) const;

private:
    unsigned dim_;
    std::map<MultiIndex, Rational> terms_;
};

// The lower set of exponents indexing a monomial basis of the functions on
// V, grouped by total degree and sorted ascending in the order that built it.
class Staircase {
public:
    Staircase() = default;
    Staircase(MonomialOrder order, std::vector<MultiIndex> indices);

    unsigned dim() const { return order_.dim(); }
    const MonomialOrder& order() const { return order_; }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }

    unsigned top_degree() const { return top_; }
    // r_k = number of staircase exponents of exact degree k.
    std::size_t r(unsigned k) const;
    // Position of the first degree-k index inside indices().
    std::size_t block_offset(unsigned k) const;
    MultiIndex index_at(unsigned k, std::size_t j) const;

    bool contains(const MultiIndex& a) const;
    std::optional<std::size_t> position(const MultiIndex& a) const;

    bool is_lower_set() const;

private:
    MonomialOrder order_;
    std::vector<MultiIndex> indices_;
    std::vector<std::size_t> offsets_;  // offsets_[k] = start of degree k
    unsigned top_ = 0;
    std::map<MultiIndex, std::size_t> pos_;
};

// All multi-indices of the given degree, ascending in the order.
std::vector<MultiIndex> monomials_of_degree(unsigned dim, unsigned deg,
                                            const MonomialOrder& order);

// Entry (j, i) = points[i] ^ monomials[j]: one row per monomial, one column
// per point.
RatMatrix eval_matrix(const PointSet& v, const std::vector<MultiIndex>& monomials);

// Greedy rank procedure: walk monomials in ascending order, keep those whose
// evaluation row enlarges the row space, stop when |accepted| = |V|.
Staircase compute_staircase(const PointSet& v, const MonomialOrder& order);

// Stair-shaped planar grid with nonincreasing column heights; returns the
// grid and its predicted staircase {(k, l): 0 <= l <= m, 0 <= k <= heights[l]}.
std::pair<PointSet, Staircase> stair_grid(const std::vector<Rational>& xs,
                                          const std::vector<Rational>& ys,
                                          const std::vector<unsigned>& heights,
                                          const MonomialOrder* order = nullptr);

// Unique staircase-supported polynomial agreeing with p at every point of V
// (reduction modulo the vanishing ideal, realized by interpolation).
Poly normal_form(const Poly& p, const PointSet& v, const Staircase& lam);

// L_{k,i}: row alpha of the degree-k block maps to column alpha + e_i of the
// degree-(k+1) block when that exponent is in the staircase, else zero row.
RatMatrix shift_matrix(const Staircase& lam, unsigned k, unsigned i);

}  // namespace dop
