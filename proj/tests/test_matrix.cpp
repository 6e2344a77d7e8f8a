#include <doctest.h>

#include <random>

#include "dop/error.hpp"
#include "dop/matrix.hpp"

using namespace dop;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

RatMatrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = Rational(static_cast<long>(gen() % 11) - 5,
                               static_cast<long>(gen() % 4) + 1);
    return m;
}

// naive rational Gaussian elimination, used as an independent rank oracle
std::size_t rank_oracle(RatMatrix m) {
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
        std::size_t piv = rk;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rk, j), m(piv, j));
        for (std::size_t i = rk + 1; i < m.rows(); ++i) {
            if (m(i, col).is_zero()) continue;
            Rational f = m(i, col) / m(rk, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(rk, j);
        }
        ++rk;
    }
    return rk;
}

}  // namespace

TEST_CASE("rank") {
    CHECK(rank(RatMatrix(0, 0)) == 0);
    CHECK(rank(RatMatrix::identity(3)) == 3);
    CHECK(rank(RatMatrix{{R(1), R(2)}, {R(2), R(4)}}) == 1);
    CHECK(rank(RatMatrix(3, 2)) == 0);
}

TEST_CASE("rank equals transpose rank and matches an independent oracle") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 30; ++trial) {
        RatMatrix m = random_matrix(gen, 1 + gen() % 5, 1 + gen() % 5);
        std::size_t r = rank(m);
        CHECK(r == rank(m.transpose()));
        CHECK(r == rank_oracle(m));
    }
}

TEST_CASE("solve") {
    RatMatrix b{{R(3)}, {R(-5)}};
    CHECK(solve(RatMatrix::identity(2), b) == b);
    RatMatrix d{{R(2), R(0)}, {R(0), R(4)}};
    RatMatrix ones{{R(1)}, {R(1)}};
    CHECK(solve(d, ones) == RatMatrix{{R(1, 2)}, {R(1, 4)}});
    RatMatrix sing{{R(0), R(1)}, {R(0), R(0)}};
    CHECK_THROWS_AS(solve(sing, ones), SingularMatrix);

    // multi-column right-hand side, fractional entries
    RatMatrix m{{R(1, 2), R(1)}, {R(1), R(3)}};
    RatMatrix rhs{{R(1), R(0)}, {R(0), R(1)}};
    RatMatrix x = solve(m, rhs);
    CHECK(m * x == RatMatrix::identity(2));
}

TEST_CASE("inverse") {
    RatMatrix m{{R(2), R(1)}, {R(7), R(4)}};
    CHECK(m * inverse(m) == RatMatrix::identity(2));
    CHECK(inverse(m) * m == RatMatrix::identity(2));
    CHECK_THROWS_AS(inverse(RatMatrix{{R(1), R(2)}, {R(2), R(4)}}), SingularMatrix);
}

TEST_CASE("symmetric factorization") {
    auto [s0, d0] = symmetric_factor(RatMatrix::identity(4));
    CHECK(s0 == RatMatrix::identity(4));
    for (const auto& p : d0) CHECK(p == R(1));

    RatMatrix m{{R(1), R(1)}, {R(1), R(5)}};
    auto [s, d] = symmetric_factor(m);
    CHECK(s == RatMatrix{{R(1), R(0)}, {R(1), R(1)}});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == R(1));
    CHECK(d[1] == R(4));

    CHECK_THROWS_AS(symmetric_factor(RatMatrix{{R(0), R(1)}, {R(1), R(0)}}),
                    PivotBreakdown);
}

TEST_CASE("symmetric factorization recomposes exactly") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + gen() % 4;
        RatMatrix a = random_matrix(gen, n, n);
        RatMatrix m = a * a.transpose();  // symmetric, PSD; pivots may still vanish
        try {
            auto [s, d] = symmetric_factor(m);
            RatMatrix dd(n, n);
            for (std::size_t i = 0; i < n; ++i) dd(i, i) = d[i];
            CHECK(s * dd * s.transpose() == m);
        } catch (const PivotBreakdown&) {
            // acceptable: a leading principal minor vanished
        }
    }
}

TEST_CASE("left inverse") {
    CHECK(left_inverse(RatMatrix::identity(3)) == RatMatrix::identity(3));
    RatMatrix a{{R(1)}, {R(1)}};
    CHECK(left_inverse(a) == RatMatrix{{R(1), R(0)}});
    CHECK_THROWS_AS(left_inverse(RatMatrix(2, 2)), RankDeficient);

    // first independent rows rule: row 0 dependent-free scan picks rows {0, 2}
    RatMatrix b{{R(1), R(2)}, {R(2), R(4)}, {R(0), R(1)}};
    RatMatrix l = left_inverse(b);
    CHECK(l * b == RatMatrix::identity(2));
    CHECK(l(0, 1) == R(0));  // skipped dependent row gets a zero column
    CHECK(l(1, 1) == R(0));
}

TEST_CASE("left inverse is a left inverse on random tall matrices") {
    std::mt19937_64 gen(23);
    int done = 0;
    while (done < 15) {
        std::size_t c = 1 + gen() % 3;
        RatMatrix a = random_matrix(gen, c + gen() % 3, c);
        if (rank(a) != c) continue;
        CHECK(left_inverse(a) * a == RatMatrix::identity(c));
        ++done;
    }
}

TEST_CASE("block utilities") {
    RatMatrix m(3, 3);
    m.set_block(1, 1, RatMatrix{{R(5), R(6)}, {R(7), R(8)}});
    CHECK(m(1, 1) == R(5));
    CHECK(m(2, 2) == R(8));
    CHECK(m(0, 0) == R(0));
    CHECK(m.block(1, 1, 2, 2) == RatMatrix{{R(5), R(6)}, {R(7), R(8)}});

    RatMatrix top{{R(1), R(2)}};
    RatMatrix bot{{R(3), R(4)}, {R(5), R(6)}};
    CHECK(vstack({top, bot}) == RatMatrix{{R(1), R(2)}, {R(3), R(4)}, {R(5), R(6)}});

    CHECK(RatMatrix(2, 2).is_zero());
    CHECK(RatMatrix{{R(1), R(2)}, {R(2), R(3)}}.is_symmetric());
    CHECK_FALSE(RatMatrix{{R(1), R(2)}, {R(0), R(3)}}.is_symmetric());
}

TEST_CASE("arithmetic shape checks") {
    CHECK_THROWS_AS(RatMatrix(2, 2) + RatMatrix(2, 3), DimensionMismatch);
    CHECK_THROWS_AS(RatMatrix(2, 2) * RatMatrix(3, 2), DimensionMismatch);
    CHECK(R(2) * RatMatrix::identity(2) == RatMatrix{{R(2), R(0)}, {R(0), R(2)}});
}
