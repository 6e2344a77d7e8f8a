#include "dop/recurrence.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dop/error.hpp"

namespace dop {

namespace {

// vals[k][j][t] = P_k[j] evaluated at point t
std::vector<std::vector<std::vector<Rational>>> value_table(const OrthoBasis& basis,
                                                            const PointSet& v) {
    std::vector<std::vector<std::vector<Rational>>> vals(basis.blocks.size());
    for (std::size_t k = 0; k < basis.blocks.size(); ++k) {
        vals[k].resize(basis.blocks[k].size());
        for (std::size_t j = 0; j < basis.blocks[k].size(); ++j) {
            vals[k][j].resize(v.size());
            for (std::size_t t = 0; t < v.size(); ++t)
                vals[k][j][t] = basis.blocks[k][j].eval(v.points[t]);
        }
    }
    return vals;
}

// X = M H^{-1} for symmetric H.
RatMatrix div_right(const RatMatrix& m, const RatMatrix& h) {
    return solve(h, m.transpose()).transpose();
}

RatMatrix block_column(const std::vector<std::vector<Rational>>& vals, std::size_t t) {
    RatMatrix c(vals.size(), 1);
    for (std::size_t j = 0; j < vals.size(); ++j) c(j, 0) = vals[j][t];
    return c;
}

RatMatrix eval_block(const std::vector<Poly>& block, const std::vector<Rational>& pt) {
    RatMatrix c(block.size(), 1);
    for (std::size_t j = 0; j < block.size(); ++j) c(j, 0) = block[j].eval(pt);
    return c;
}

}  // namespace

Recurrence compute_recurrence(const OrthoBasis& basis, const MomentFunctional& l) {
    const PointSet& v = l.points();
    const unsigned d = v.dim;
    const unsigned n = basis.top_degree();
    auto vals = value_table(basis, v);

    // L(x_i P_k P_m^T) assembled from the value tables
    auto mixed = [&](unsigned i, unsigned k, unsigned m) {
        RatMatrix out(basis.r(k), basis.r(m));
        for (std::size_t a = 0; a < basis.r(k); ++a)
            for (std::size_t b = 0; b < basis.r(m); ++b) {
                Rational acc(0);
                for (std::size_t t = 0; t < v.size(); ++t)
                    acc += l.weights().values[t] * v.points[t][i] * vals[k][a][t] * vals[m][b][t];
                out(a, b) = acc;
            }
        return out;
    };

    Recurrence rec;
    rec.dim = d;
    for (unsigned k = 0; k <= n; ++k) rec.r.push_back(basis.r(k));
    rec.A.resize(n);
    rec.B.resize(n + 1);
    rec.C.resize(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        for (unsigned i = 0; i < d; ++i) {
            if (k < n) rec.A[k].push_back(div_right(mixed(i, k, k + 1), basis.H[k + 1]));
            rec.B[k].push_back(div_right(mixed(i, k, k), basis.H[k]));
            if (k > 0) rec.C[k].push_back(div_right(mixed(i, k, k - 1), basis.H[k - 1]));
        }
    }
    return rec;
}

ThreeTermReport verify_three_term(const Recurrence& rec, const OrthoBasis& basis,
                                  const PointSet& v) {
    const unsigned n = basis.top_degree();
    if (rec.dim != v.dim || basis.lam.dim() != v.dim)
        throw ShapeMismatch("dimension mismatch between recurrence, basis, points");
    if (rec.r.size() != basis.blocks.size())
        throw ShapeMismatch("recurrence and basis disagree on the number of degrees");
    for (unsigned k = 0; k <= n; ++k) {
        if (rec.r[k] != basis.r(k))
            throw ShapeMismatch("recurrence and basis disagree on a block size");
        for (unsigned i = 0; i < rec.dim; ++i) {
            if (k < n && (rec.A[k][i].rows() != rec.r[k] || rec.A[k][i].cols() != rec.r[k + 1]))
                throw ShapeMismatch("A block has wrong shape");
            if (rec.B[k][i].rows() != rec.r[k] || rec.B[k][i].cols() != rec.r[k])
                throw ShapeMismatch("B block has wrong shape");
            if (k > 0 && (rec.C[k][i].rows() != rec.r[k] || rec.C[k][i].cols() != rec.r[k - 1]))
                throw ShapeMismatch("C block has wrong shape");
        }
    }

    ThreeTermReport rep;
    auto vals = value_table(basis, v);
    for (unsigned k = 0; k <= n; ++k) {
        for (unsigned i = 0; i < rec.dim; ++i) {
            for (std::size_t t = 0; t < v.size(); ++t) {
                RatMatrix rhs(rec.r[k], 1);
                if (k < n) rhs = rhs + rec.A[k][i] * block_column(vals[k + 1], t);
                rhs = rhs + rec.B[k][i] * block_column(vals[k], t);
                if (k > 0) rhs = rhs + rec.C[k][i] * block_column(vals[k - 1], t);
                for (std::size_t j = 0; j < rec.r[k]; ++j) {
                    Rational res = v.points[t][i] * vals[k][j][t] - rhs(j, 0);
                    if (abs(res) > rep.max_residual) rep.max_residual = abs(res);
                    if (!res.is_zero() && rep.ok) {
                        rep.ok = false;
                        rep.first_failure = {k, i, t};
                    }
                }
            }
        }
    }
    return rep;
}

RankReport rank_condition(const Recurrence& rec) {
    RankReport rep;
    const unsigned n = rec.top_degree();
    for (unsigned k = 0; k + 1 <= n; ++k) {
        RankEntry e;
        e.k = k;
        e.expected = rec.r[k + 1];
        e.rank_a = rank(vstack(rec.A[k]));
        std::vector<RatMatrix> ct;
        for (unsigned i = 0; i < rec.dim; ++i) ct.push_back(rec.C[k + 1][i].transpose());
        e.rank_c = rank(vstack(ct));
        e.dims_ok = rec.dim * rec.r[k] >= rec.r[k + 1];
        e.pass = e.dims_ok && e.rank_a == e.expected && e.rank_c == e.expected;
        if (!e.pass) rep.ok = false;
        rep.entries.push_back(e);
    }
    return rep;
}

std::pair<Rational, Rational> christoffel_darboux(const OrthoBasis& basis,
                                                  const Recurrence& rec,
                                                  const std::vector<Rational>& x,
                                                  const std::vector<Rational>& y,
                                                  unsigned i, unsigned k) {
    if (i >= rec.dim) throw DimensionMismatch("coordinate index out of range");
    if (k + 1 > basis.top_degree()) throw DegreeOutOfRange("degree needs A_k, so k <= n-1");
    if (x[i] == y[i]) throw CoincidentCoordinate("anchor coordinates coincide");

    Rational lhs(0);
    for (unsigned j = 0; j <= k; ++j) {
        RatMatrix px = eval_block(basis.blocks[j], x);
        RatMatrix py = eval_block(basis.blocks[j], y);
        RatMatrix z = solve(basis.H[j], py);
        lhs += (px.transpose() * z)(0, 0);
    }

    RatMatrix pkx = eval_block(basis.blocks[k], x);
    RatMatrix pky = eval_block(basis.blocks[k], y);
    RatMatrix pk1x = eval_block(basis.blocks[k + 1], x);
    RatMatrix pk1y = eval_block(basis.blocks[k + 1], y);
    const RatMatrix& a = rec.A[k][i];
    Rational term1 = (pk1x.transpose() * a.transpose() * solve(basis.H[k], pky))(0, 0);
    Rational term2 = (pkx.transpose() * solve(basis.H[k], a * pk1y))(0, 0);
    Rational rhs = (term1 - term2) / (x[i] - y[i]);
    return {lhs, rhs};
}

std::vector<JacobiOperator> jacobi_operators(const Recurrence& rec) {
    const unsigned n = rec.top_degree();
    std::vector<std::size_t> offset(n + 2, 0);
    for (unsigned k = 0; k <= n; ++k) offset[k + 1] = offset[k] + rec.r[k];
    const std::size_t total = offset[n + 1];

    std::vector<JacobiOperator> js;
    for (unsigned i = 0; i < rec.dim; ++i) {
        RatMatrix j(total, total);
        for (unsigned k = 0; k <= n; ++k) {
            j.set_block(offset[k], offset[k], rec.B[k][i]);
            if (k < n) j.set_block(offset[k], offset[k + 1], rec.A[k][i]);
            if (k > 0) j.set_block(offset[k], offset[k - 1], rec.C[k][i]);
        }
        js.push_back({i, std::move(j)});
    }
    return js;
}

CommuteReport commute_check(const std::vector<JacobiOperator>& js) {
    CommuteReport rep;
    for (std::size_t a = 0; a < js.size(); ++a) {
        for (std::size_t b = a + 1; b < js.size(); ++b) {
            RatMatrix comm = js[a].matrix * js[b].matrix - js[b].matrix * js[a].matrix;
            if (!comm.is_zero()) {
                rep.ok = false;
                if (!rep.first_failure) rep.first_failure = {js[a].coordinate, js[b].coordinate};
            }
        }
    }
    return rep;
}

std::vector<std::vector<Poly>> favard_reconstruct(const Recurrence& rec,
                                                  const Staircase& lam,
                                                  const PointSet* reference) {
    const unsigned n = rec.top_degree();
    if (lam.dim() != rec.dim) throw ShapeMismatch("staircase dimension mismatch");
    if (lam.top_degree() != n) throw ShapeMismatch("staircase top degree mismatch");
    for (unsigned k = 0; k <= n; ++k) {
        if (lam.r(k) != rec.r[k]) throw ShapeMismatch("staircase block sizes mismatch");
    }
    if (reference && reference->size() != lam.size())
        throw ShapeMismatch("reference point set size must equal the staircase size");

    std::vector<std::vector<Poly>> blocks(n + 1);
    blocks[0].push_back(Poly::constant(rec.dim, Rational(1)));
    for (unsigned k = 0; k < n; ++k) {
        RatMatrix stacked = vstack(rec.A[k]);
        if (rank(stacked) != rec.r[k + 1]) throw RankDeficient(k);
        RatMatrix dt = left_inverse(stacked);  // r_{k+1} x (d*r_k)
        // g[i][t] = x_i P_k[t] - (B_{k,i} P_k)[t] - (C_{k,i} P_{k-1})[t]
        std::vector<std::vector<Poly>> g(rec.dim);
        for (unsigned i = 0; i < rec.dim; ++i) {
            for (std::size_t t = 0; t < rec.r[k]; ++t) {
                Poly term = blocks[k][t].shifted(i);
                if (reference) term = normal_form(term, *reference, lam);
                for (std::size_t s = 0; s < rec.r[k]; ++s) {
                    const Rational& c = rec.B[k][i](t, s);
                    if (!c.is_zero()) term -= c * blocks[k][s];
                }
                if (k > 0) {
                    for (std::size_t s = 0; s < rec.r[k - 1]; ++s) {
                        const Rational& c = rec.C[k][i](t, s);
                        if (!c.is_zero()) term -= c * blocks[k - 1][s];
                    }
                }
                g[i].push_back(std::move(term));
            }
        }
        for (std::size_t m = 0; m < rec.r[k + 1]; ++m) {
            Poly acc(rec.dim);
            for (unsigned i = 0; i < rec.dim; ++i)
                for (std::size_t t = 0; t < rec.r[k]; ++t) {
                    const Rational& c = dt(m, i * rec.r[k] + t);
                    if (!c.is_zero()) acc += c * g[i][t];
                }
            blocks[k + 1].push_back(std::move(acc));
        }
    }
    return blocks;
}

RecoveredMeasure recover_measure(const std::vector<std::vector<Poly>>& blocks,
                                 const PointSet* candidates, std::uint64_t seed) {
    std::vector<const Poly*> flat;
    for (const auto& b : blocks)
        for (const auto& p : b) flat.push_back(&p);
    const std::size_t n = flat.size();
    if (n == 0) throw InvalidArgument("no polynomials to realize");
    const unsigned d = flat[0]->dim();
    if (candidates && candidates->size() < n)
        throw InvalidArgument("candidate pool smaller than the required point count");

    std::mt19937_64 gen(seed);
    const unsigned budget = 64;
    const long box = static_cast<long>(n);

    for (unsigned attempt = 1; attempt <= budget; ++attempt) {
        std::vector<std::vector<Rational>> pts;
        if (candidates) {
            // seeded partial Fisher–Yates over pool indices
            std::vector<std::size_t> idx(candidates->size());
            for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t pick = j + static_cast<std::size_t>(gen() % (idx.size() - j));
                std::swap(idx[j], idx[pick]);
                pts.push_back(candidates->points[idx[j]]);
            }
        } else {
            std::set<std::vector<Rational>> seen;
            bool full = false;
            for (unsigned tries = 0; pts.size() < n; ++tries) {
                if (tries > 64 * n) {
                    full = true;
                    break;
                }
                std::vector<Rational> p(d);
                for (unsigned j = 0; j < d; ++j)
                    p[j] = Rational(static_cast<long>(gen() % (2 * box + 1)) - box);
                if (seen.insert(p).second) pts.push_back(std::move(p));
            }
            if (full) continue;
        }

        RatMatrix m(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t j = 0; j < n; ++j) m(a, j) = flat[a]->eval(pts[j]);
        if (rank(m) != n) continue;
        RatMatrix e0(n, 1);
        e0(0, 0) = Rational(1);
        RatMatrix lam = solve(m, e0);
        bool nonzero = true;
        for (std::size_t j = 0; j < n; ++j)
            if (lam(j, 0).is_zero()) {
                nonzero = false;
                break;
            }
        if (!nonzero) continue;
        std::vector<Rational> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = lam(j, 0);
        return {PointSet(d, std::move(pts)), WeightFn(std::move(w)), attempt};
    }
    throw ExhaustedAttempts(budget);
}

}  // namespace dop
