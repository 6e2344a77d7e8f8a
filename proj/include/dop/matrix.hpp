#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dop/rational.hpp"

namespace dop {

// Dense row-major exact matrix. 0x0 and rx0 / 0xc shapes are legal.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        return a_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    RatMatrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    void set_block(std::size_t i0, std::size_t j0, const RatMatrix& b);
    RatMatrix block(std::size_t i0, std::size_t j0, std::size_t r,
                    std::size_t c) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& a);

RatMatrix vstack(const std::vector<RatMatrix>& parts);

// Exact rank via fraction-free (Bareiss) elimination on the
// denominator-cleared integer matrix. No tolerances anywhere.
std::size_t rank(const RatMatrix& m);

// X with m * x = b. Throws SingularMatrix.
RatMatrix solve(const RatMatrix& m, const RatMatrix& b);

RatMatrix inverse(const RatMatrix& m);

// m = s * diag(d) * s^T with s unit lower triangular. Throws
// PivotBreakdown(k) when column k needs a division by a vanished pivot.
std::pair<RatMatrix, std::vector<Rational>> symmetric_factor(const RatMatrix& m);

// Left inverse L (cols x rows) with L * a = I. Deterministic: the
// lexicographically first maximal independent row set, its inverse placed
// at the selected column positions, zero elsewhere. Throws RankDeficient.
RatMatrix left_inverse(const RatMatrix& a);

}  // namespace dop
