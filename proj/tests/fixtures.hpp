#pragma once

#include <utility>
#include <vector>

#include "dop/orthogonalize.hpp"
#include "dop/staircase.hpp"

// Shared eight-point stair configuration with uniform weight 1/8 and its
// known canonical orthogonal basis (used as a golden reference across suites).
namespace fixtures {

using namespace dop;

inline Rational R(long n, long d = 1) { return Rational(n, d); }

inline Poly make_poly(unsigned dim,
                      const std::vector<std::pair<MultiIndex, Rational>>& terms) {
    Poly p(dim);
    for (const auto& [a, c] : terms) p.set_coeff(a, c);
    return p;
}

inline PointSet golden_points() {
    return PointSet(2, {{R(-1), R(-1)},
                        {R(0), R(-1)},
                        {R(1), R(-1)},
                        {R(-1), R(0)},
                        {R(0), R(0)},
                        {R(1), R(0)},
                        {R(-1), R(1)},
                        {R(-1), R(2)}});
}

inline WeightFn golden_weights() { return WeightFn::uniform(8); }

inline std::vector<std::vector<Poly>> golden_basis_polys() {
    std::vector<std::vector<Poly>> b(4);
    b[0].push_back(make_poly(2, {{{0, 0}, R(1)}}));
    b[1].push_back(make_poly(2, {{{0, 0}, R(1)}, {{1, 0}, R(4)}}));
    b[1].push_back(make_poly(2, {{{0, 0}, R(3)}, {{1, 0}, R(12)}, {{0, 1}, R(22)}}));
    b[2].push_back(make_poly(2, {{{0, 0}, R(-26)},
                                 {{1, 0}, R(1)},
                                 {{2, 0}, R(35)},
                                 {{0, 1}, R(-4)}}));
    b[2].push_back(make_poly(2, {{{0, 0}, R(3)},
                                 {{1, 0}, R(3)},
                                 {{2, 0}, R(1)},
                                 {{0, 1}, R(6)},
                                 {{1, 1}, R(8)}}));
    b[2].push_back(make_poly(2, {{{0, 0}, R(-20)},
                                 {{1, 0}, R(31)},
                                 {{2, 0}, R(-1)},
                                 {{0, 1}, R(11)},
                                 {{1, 1}, R(60)},
                                 {{0, 2}, R(51)}}));
    b[3].push_back(make_poly(2, {{{0, 0}, R(-20)},
                                 {{1, 0}, R(3)},
                                 {{2, 0}, R(27)},
                                 {{0, 1}, R(-45)},
                                 {{1, 1}, R(4)},
                                 {{2, 1}, R(56)},
                                 {{0, 2}, R(-5)}}));
    b[3].push_back(make_poly(2, {{{1, 0}, R(-9)},
                                 {{2, 0}, R(9)},
                                 {{0, 1}, R(-50)},
                                 {{1, 1}, R(-12)},
                                 {{2, 1}, R(12)},
                                 {{0, 2}, R(-30)},
                                 {{0, 3}, R(20)}}));
    return b;
}

}  // namespace fixtures
