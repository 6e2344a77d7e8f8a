#include "dop/matrix.hpp"

#include <utility>

#include "dop/error.hpp"

namespace dop {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
        for (const auto& v : r) a_.push_back(v);
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

void RatMatrix::set_block(std::size_t i0, std::size_t j0, const RatMatrix& b) {
    if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_)
        throw DimensionMismatch("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            (*this)(i0 + i, j0 + j) = b(i, j);
}

RatMatrix RatMatrix::block(std::size_t i0, std::size_t j0, std::size_t r,
                           std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_)
        throw DimensionMismatch("block out of range");
    RatMatrix b(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix addition shape");
    RatMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix subtraction shape");
    RatMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(k, j).is_zero()) continue;
                c(i, j) += a(i, k) * b(k, j);
            }
        }
    return c;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

RatMatrix vstack(const std::vector<RatMatrix>& parts) {
    if (parts.empty()) return RatMatrix();
    std::size_t cols = parts[0].cols(), rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw DimensionMismatch("vstack column count");
        rows += p.rows();
    }
    RatMatrix m(rows, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
        m.set_block(at, 0, p);
        at += p.rows();
    }
    return m;
}

namespace {

using ZRow = std::vector<mpz_class>;

// Row-wise denominator clearing; scaling rows preserves rank and, for the
// augmented solve, the solution set.
std::vector<ZRow> cleared_rows(const RatMatrix& m) {
    std::vector<ZRow> z(m.rows(), ZRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j)
            z[i][j] = m(i, j).num() * (l / m(i, j).den());
    }
    return z;
}

// Fraction-free echelon (Bareiss one-step division). Entries stay exact
// minors of the input; division by the previous pivot is exact. Returns the
// pivot column of each pivot row, in order.
std::vector<std::size_t> bareiss_echelon(std::vector<ZRow>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t R = m.size(), C = m[0].size();
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && m[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) {
                mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto z = cleared_rows(m);
    return bareiss_echelon(z).size();
}

RatMatrix solve(const RatMatrix& m, const RatMatrix& b) {
    if (m.rows() != m.cols()) throw DimensionMismatch("solve needs square matrix");
    if (b.rows() != m.rows()) throw DimensionMismatch("solve rhs rows");
    const std::size_t n = m.rows(), w = b.cols();
    if (n == 0) return RatMatrix(0, w);

    RatMatrix aug(n, n + w);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, b);
    auto z = cleared_rows(aug);
    auto pivots = bareiss_echelon(z);
    // Singular iff some pivot landed past the coefficient block (or is missing).
    if (pivots.size() < n || pivots.back() >= n)
        throw SingularMatrix("singular system");

    RatMatrix x(n, w);
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t col = 0; col < w; ++col) {
            Rational acc(z[ii][n + col]);
            for (std::size_t j = ii + 1; j < n; ++j)
                acc -= Rational(z[ii][j]) * x(j, col);
            x(ii, col) = acc / Rational(z[ii][ii]);
        }
    }
    return x;
}

RatMatrix inverse(const RatMatrix& m) {
    return solve(m, RatMatrix::identity(m.rows()));
}

std::pair<RatMatrix, std::vector<Rational>> symmetric_factor(const RatMatrix& m) {
    if (!m.is_symmetric()) throw InvalidArgument("symmetric_factor needs symmetric input");
    const std::size_t n = m.rows();
    RatMatrix s = RatMatrix::identity(n);
    std::vector<Rational> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rational dk = m(k, k);
        for (std::size_t j = 0; j < k; ++j) dk -= s(k, j) * s(k, j) * d[j];
        d[k] = dk;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational num = m(i, k);
            for (std::size_t j = 0; j < k; ++j) num -= s(i, j) * s(k, j) * d[j];
            if (dk.is_zero()) {
                if (!num.is_zero()) throw PivotBreakdown(k);
                s(i, k) = Rational(0);
            } else {
                s(i, k) = num / dk;
            }
        }
    }
    return {std::move(s), std::move(d)};
}

RatMatrix left_inverse(const RatMatrix& a) {
    const std::size_t n = a.cols();
    std::vector<std::size_t> chosen;
    // Incremental rational echelon of the selected rows; a candidate row is
    // independent iff it reduces to nonzero.
    std::vector<std::vector<Rational>> ech;
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < a.rows() && chosen.size() < n; ++i) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = a(i, j);
        for (std::size_t e = 0; e < ech.size(); ++e) {
            if (row[piv[e]].is_zero()) continue;
            Rational f = row[piv[e]] / ech[e][piv[e]];
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * ech[e][j];
        }
        std::size_t lead = n;
        for (std::size_t j = 0; j < n; ++j)
            if (!row[j].is_zero()) { lead = j; break; }
        if (lead == n) continue;
        chosen.push_back(i);
        ech.push_back(std::move(row));
        piv.push_back(lead);
    }
    if (chosen.size() < n) throw RankDeficient(n, "matrix has rank below its column count");

    RatMatrix sub(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) sub(r, j) = a(chosen[r], j);
    RatMatrix inv = inverse(sub);
    RatMatrix l(n, a.rows());
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) l(j, chosen[r]) = inv(j, r);
    return l;
}

}  // namespace dop
