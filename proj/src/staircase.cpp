#include "dop/staircase.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "dop/error.hpp"

namespace dop {

namespace {

Rational pow_at(const std::vector<Rational>& pt, const MultiIndex& a) {
    Rational r(1);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] != 0) r *= pow(pt[j], a[j]);
    }
    return r;
}

Rational binom(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

// Incremental row-space membership test over the rationals.
class Echelon {
public:
    // Returns true (and keeps the row) iff it enlarges the row space.
    bool try_add(std::vector<Rational> r) {
        for (;;) {
            std::size_t p = first_nonzero(r);
            if (p == r.size()) return false;
            auto it = by_pivot_.find(p);
            if (it == by_pivot_.end()) {
                by_pivot_.emplace(p, rows_.size());
                rows_.push_back(std::move(r));
                return true;
            }
            const std::vector<Rational>& e = rows_[it->second];
            Rational f = r[p] / e[p];
            for (std::size_t j = p; j < r.size(); ++j) r[j] -= f * e[j];
        }
    }

    std::size_t rank() const { return rows_.size(); }

private:
    static std::size_t first_nonzero(const std::vector<Rational>& r) {
        std::size_t j = 0;
        while (j < r.size() && r[j].is_zero()) ++j;
        return j;
    }

    std::vector<std::vector<Rational>> rows_;
    std::unordered_map<std::size_t, std::size_t> by_pivot_;
};

}  // namespace

MonomialOrder MonomialOrder::grlex(unsigned d) {
    std::vector<unsigned> prec(d);
    for (unsigned j = 0; j < d; ++j) prec[j] = j;
    return make(Kind::Grlex, std::move(prec));
}

MonomialOrder MonomialOrder::grevlex(unsigned d) {
    std::vector<unsigned> prec(d);
    for (unsigned j = 0; j < d; ++j) prec[j] = d - 1 - j;
    return make(Kind::Grevlex, std::move(prec));
}

MonomialOrder MonomialOrder::make(Kind k, std::vector<unsigned> prec) {
    if (prec.empty()) throw InvalidArgument("monomial order needs dimension >= 1");
    std::vector<bool> seen(prec.size(), false);
    for (unsigned p : prec) {
        if (p >= prec.size() || seen[p])
            throw InvalidArgument("precedence must be a permutation of 0..d-1");
        seen[p] = true;
    }
    return MonomialOrder{k, std::move(prec)};
}

bool MonomialOrder::default_precedence() const {
    for (unsigned j = 0; j < dim(); ++j) {
        unsigned expect = kind == Kind::Grlex ? j : dim() - 1 - j;
        if (precedence[j] != expect) return false;
    }
    return true;
}

bool MonomialOrder::less(const MultiIndex& a, const MultiIndex& b) const {
    if (a.size() != precedence.size() || b.size() != precedence.size())
        throw DimensionMismatch("multi-index dimension does not match order");
    unsigned da = degree(a), db = degree(b);
    if (da != db) return da < db;
    if (kind == Kind::Grlex) {
        for (std::size_t t = 0; t < precedence.size(); ++t) {
            unsigned ea = a[precedence[t]], eb = b[precedence[t]];
            if (ea != eb) return ea < eb;
        }
        return false;
    }
    // grevlex: at the first difference from the least significant end, the
    // larger exponent marks the smaller monomial.
    for (std::size_t t = precedence.size(); t-- > 0;) {
        unsigned ea = a[precedence[t]], eb = b[precedence[t]];
        if (ea != eb) return ea > eb;
    }
    return false;
}

PointSet::PointSet(unsigned d, std::vector<std::vector<Rational>> pts)
    : dim(d), points(std::move(pts)) {
    if (d == 0) throw InvalidArgument("point set dimension must be >= 1");
    std::set<std::vector<Rational>> seen;
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("point has wrong dimension");
        if (!seen.insert(p).second) throw DuplicatePoint("points must be pairwise distinct");
    }
}

Poly::Poly(unsigned dim, std::map<MultiIndex, Rational> terms) : dim_(dim) {
    for (auto& [a, c] : terms) {
        if (a.size() != dim_) throw DimensionMismatch("term has wrong dimension");
        if (!c.is_zero()) terms_.emplace(a, c);
    }
}

Poly Poly::constant(unsigned dim, const Rational& c) {
    Poly p(dim);
    if (!c.is_zero()) p.terms_.emplace(MultiIndex(dim, 0), c);
    return p;
}

Poly Poly::monomial(const MultiIndex& a, const Rational& c) {
    Poly p(static_cast<unsigned>(a.size()));
    if (!c.is_zero()) p.terms_.emplace(a, c);
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, static_cast<int>(dop::degree(a)));
    return d;
}

Rational Poly::coeff(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::set_coeff(const MultiIndex& a, const Rational& c) {
    if (a.size() != dim_) throw DimensionMismatch("term has wrong dimension");
    if (c.is_zero())
        terms_.erase(a);
    else
        terms_[a] = c;
}

Rational Poly::eval(const std::vector<Rational>& pt) const {
    if (pt.size() != dim_) throw DimensionMismatch("point has wrong dimension");
    Rational s(0);
    for (const auto& [a, c] : terms_) s += c * pow_at(pt, a);
    return s;
}

double Poly::eval_double(const std::vector<double>& pt) const {
    if (pt.size() != dim_) throw DimensionMismatch("point has wrong dimension");
    double s = 0.0;
    for (const auto& [a, c] : terms_) {
        double f = c.to_double();
        for (std::size_t j = 0; j < a.size(); ++j)
            for (unsigned e = 0; e < a[j]; ++e) f *= pt[j];
        s += f;
    }
    return s;
}

Poly& Poly::operator+=(const Poly& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [a, c] : o.terms_) {
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            terms_.emplace(a, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [a, c] : o.terms_) {
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            terms_.emplace(a, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("polynomial dimensions differ");
    Poly r(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiIndex e(a.dim_);
            for (unsigned j = 0; j < a.dim_; ++j) e[j] = ea[j] + eb[j];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Rational c = ca * cb;
                if (!c.is_zero()) r.terms_.emplace(std::move(e), std::move(c));
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly Poly::shifted(unsigned i) const {
    if (i >= dim_) throw DimensionMismatch("variable index out of range");
    Poly r(dim_);
    for (const auto& [a, c] : terms_) {
        MultiIndex b = a;
        b[i] += 1;
        r.terms_.emplace(std::move(b), c);
    }
    return r;
}

Poly Poly::translated(const std::vector<Rational>& t) const {
    if (t.size() != dim_) throw DimensionMismatch("translation has wrong dimension");
    Poly result(dim_);
    for (const auto& [a, c] : terms_) {
        Poly term = Poly::constant(dim_, c);
        for (unsigned j = 0; j < dim_; ++j) {
            if (a[j] == 0) continue;
            // (x_j + t_j)^e expanded by the binomial theorem
            Poly u(dim_);
            for (unsigned s = 0; s <= a[j]; ++s) {
                MultiIndex e(dim_, 0);
                e[j] = s;
                Rational coef = binom(a[j], s) * pow(t[j], a[j] - s);
                if (!coef.is_zero()) u.set_coeff(e, coef);
            }
            term = term * u;
        }
        result += term;
    }
    return result;
}

Staircase::Staircase(MonomialOrder order, std::vector<MultiIndex> indices)
    : order_(std::move(order)), indices_(std::move(indices)) {
    for (const auto& a : indices_) {
        if (a.size() != order_.dim())
            throw DimensionMismatch("staircase index has wrong dimension");
    }
    std::sort(indices_.begin(), indices_.end(),
              [this](const MultiIndex& a, const MultiIndex& b) { return order_.less(a, b); });
    for (std::size_t j = 0; j < indices_.size(); ++j) {
        if (!pos_.emplace(indices_[j], j).second)
            throw InvalidArgument("staircase indices must be distinct");
    }
    top_ = 0;
    for (const auto& a : indices_) top_ = std::max(top_, degree(a));
    offsets_.assign(top_ + 2, indices_.size());
    unsigned prev = 0;
    offsets_[0] = 0;
    for (std::size_t j = 0; j < indices_.size(); ++j) {
        unsigned k = degree(indices_[j]);
        for (unsigned t = prev + 1; t <= k; ++t) offsets_[t] = j;
        prev = k;
    }
}

std::size_t Staircase::r(unsigned k) const {
    if (k > top_ || indices_.empty()) return 0;
    return offsets_[k + 1] - offsets_[k];
}

std::size_t Staircase::block_offset(unsigned k) const {
    if (k > top_ || indices_.empty()) return indices_.size();
    return offsets_[k];
}

MultiIndex Staircase::index_at(unsigned k, std::size_t j) const {
    if (j >= r(k)) throw ShapeMismatch("block position out of range");
    return indices_[offsets_[k] + j];
}

bool Staircase::contains(const MultiIndex& a) const { return pos_.count(a) != 0; }

std::optional<std::size_t> Staircase::position(const MultiIndex& a) const {
    auto it = pos_.find(a);
    if (it == pos_.end()) return std::nullopt;
    return it->second;
}

bool Staircase::is_lower_set() const {
    for (const auto& a : indices_) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            MultiIndex b = a;
            b[j] -= 1;
            if (!contains(b)) return false;
        }
    }
    return true;
}

std::vector<MultiIndex> monomials_of_degree(unsigned dim, unsigned deg,
                                            const MonomialOrder& order) {
    if (order.dim() != dim) throw DimensionMismatch("order dimension mismatch");
    std::vector<MultiIndex> out;
    MultiIndex cur(dim, 0);
    // enumerate all compositions of deg into dim parts
    auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
        if (pos + 1 == dim) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, deg);
    std::sort(out.begin(), out.end(),
              [&order](const MultiIndex& a, const MultiIndex& b) { return order.less(a, b); });
    return out;
}

RatMatrix eval_matrix(const PointSet& v, const std::vector<MultiIndex>& monomials) {
    RatMatrix e(monomials.size(), v.size());
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        if (monomials[j].size() != v.dim)
            throw DimensionMismatch("monomial dimension does not match points");
        for (std::size_t i = 0; i < v.size(); ++i) e(j, i) = pow_at(v.points[i], monomials[j]);
    }
    return e;
}

Staircase compute_staircase(const PointSet& v, const MonomialOrder& order) {
    if (order.dim() != v.dim) throw DimensionMismatch("order dimension does not match points");
    const std::size_t n = v.size();
    std::vector<MultiIndex> accepted;
    accepted.reserve(n);
    Echelon ech;
    for (unsigned k = 0; accepted.size() < n; ++k) {
        // a lower set of size n cannot reach past degree n-1
        if (k >= n) throw Error("staircase construction failed to close");
        for (const auto& a : monomials_of_degree(v.dim, k, order)) {
            std::vector<Rational> row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = pow_at(v.points[i], a);
            if (ech.try_add(std::move(row))) {
                accepted.push_back(a);
                if (accepted.size() == n) break;
            }
        }
    }
    return Staircase(order, std::move(accepted));
}

std::pair<PointSet, Staircase> stair_grid(const std::vector<Rational>& xs,
                                          const std::vector<Rational>& ys,
                                          const std::vector<unsigned>& heights,
                                          const MonomialOrder* order) {
    if (heights.empty()) throw InsufficientNodes("at least one row is required");
    for (std::size_t l = 1; l < heights.size(); ++l) {
        if (heights[l] > heights[l - 1])
            throw NotNonincreasing("row heights must be nonincreasing");
    }
    if (xs.size() < heights[0] + 1)
        throw InsufficientNodes("not enough x-nodes for the tallest row");
    if (ys.size() < heights.size()) throw InsufficientNodes("not enough y-nodes");

    std::vector<std::vector<Rational>> pts;
    std::vector<MultiIndex> lam;
    for (std::size_t l = 0; l < heights.size(); ++l) {
        for (unsigned k = 0; k <= heights[l]; ++k) {
            pts.push_back({xs[k], ys[l]});
            lam.push_back({k, static_cast<unsigned>(l)});
        }
    }
    MonomialOrder ord = order ? *order : MonomialOrder::grevlex(2);
    return {PointSet(2, std::move(pts)), Staircase(std::move(ord), std::move(lam))};
}

Poly normal_form(const Poly& p, const PointSet& v, const Staircase& lam) {
    if (p.dim() != v.dim || lam.dim() != v.dim)
        throw DimensionMismatch("dimension mismatch between polynomial, points, staircase");
    if (lam.size() != v.size())
        throw ShapeMismatch("staircase size must equal the number of points");
    RatMatrix e = eval_matrix(v, lam.indices());
    RatMatrix vals(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) vals(i, 0) = p.eval(v.points[i]);
    RatMatrix c = solve(e.transpose(), vals);
    Poly out(p.dim());
    for (std::size_t j = 0; j < lam.size(); ++j) {
        if (!c(j, 0).is_zero()) out.set_coeff(lam.indices()[j], c(j, 0));
    }
    return out;
}

RatMatrix shift_matrix(const Staircase& lam, unsigned k, unsigned i) {
    if (i >= lam.dim()) throw DimensionMismatch("variable index out of range");
    // the map lands in degree k+1, which must itself lie in the staircase
    if (k >= lam.top_degree()) throw DegreeOutOfRange("degree exceeds the staircase");
    RatMatrix m(lam.r(k), lam.r(k + 1));
    for (std::size_t j = 0; j < lam.r(k); ++j) {
        MultiIndex b = lam.index_at(k, j);
        b[i] += 1;
        if (auto pos = lam.position(b)) m(j, *pos - lam.block_offset(k + 1)) = Rational(1);
    }
    return m;
}

}  // namespace dop
