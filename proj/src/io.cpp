#include "dop/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dop/error.hpp"

namespace dop {

namespace {

std::string exponent_key(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a[i]);
    }
    s += ')';
    return s;
}

MultiIndex parse_exponent_key(const std::string& key, unsigned dim) {
    if (key.size() < 2 || key.front() != '(' || key.back() != ')')
        throw InvalidArgument("exponent key must look like \"(e1,...,ed)\": " + key);
    MultiIndex a;
    std::stringstream ss(key.substr(1, key.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        unsigned long e = 0;
        try {
            e = std::stoul(part, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad exponent in key " + key);
        }
        if (used != part.size()) throw InvalidArgument("bad exponent in key " + key);
        a.push_back(static_cast<unsigned>(e));
    }
    if (a.size() != dim)
        throw InvalidArgument("exponent key arity does not match the dimension: " + key);
    return a;
}

Json rational_array(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(rational_to_json(r));
    return out;
}

std::vector<Rational> rational_vector(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw InvalidArgument(std::string("missing field \"") + name + "\"");
    return *it;
}

}  // namespace

Json rational_to_json(const Rational& r) {
    if (r.is_integer() && r.num().fits_slong_p())
        return Json(static_cast<long long>(r.num().get_si()));
    return Json(r.str());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    throw InvalidArgument("rational value must be an integer or a \"p/q\" string");
}

Json matrix_to_json(const RatMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
    if (j.empty()) return RatMatrix(0, 0);
    std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (!j.front().is_array()) throw InvalidArgument("matrix rows must be arrays");
    RatMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw InvalidArgument("matrix rows must all have the same length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(row[c]);
    }
    return m;
}

Json points_to_json(const PointSet& v) {
    Json pts = Json::array();
    for (const auto& p : v.points) pts.push_back(rational_array(p));
    return Json{{"dimension", v.dim}, {"points", std::move(pts)}};
}

PointSet points_from_json(const Json& j) {
    unsigned dim = field(j, "dimension").get<unsigned>();
    std::vector<std::vector<Rational>> pts;
    for (const auto& p : field(j, "points")) pts.push_back(rational_vector(p, "point"));
    return PointSet(dim, std::move(pts));
}

Json staircase_to_json(const Staircase& lam) {
    Json idx = Json::array();
    for (const auto& a : lam.indices()) idx.push_back(a);
    return Json{{"order", lam.order().kind_name()},
                {"precedence", lam.order().precedence},
                {"indices", std::move(idx)}};
}

Staircase staircase_from_json(const Json& j) {
    std::string kind = field(j, "order").get<std::string>();
    MonomialOrder::Kind k;
    if (kind == "grlex")
        k = MonomialOrder::Kind::Grlex;
    else if (kind == "grevlex")
        k = MonomialOrder::Kind::Grevlex;
    else
        throw InvalidArgument("order must be \"grlex\" or \"grevlex\"");
    auto prec = field(j, "precedence").get<std::vector<unsigned>>();
    std::vector<MultiIndex> idx;
    for (const auto& a : field(j, "indices")) idx.push_back(a.get<MultiIndex>());
    return Staircase(MonomialOrder::make(k, std::move(prec)), std::move(idx));
}

Json weights_to_json(const WeightFn& w) {
    return Json{{"values", rational_array(w.values)}};
}

WeightFn weights_from_json(const Json& j, std::size_t n_points) {
    if (j.contains("uniform")) {
        if (!j["uniform"].is_boolean() || !j["uniform"].get<bool>())
            throw InvalidArgument("\"uniform\" must be true when present");
        return WeightFn::uniform(n_points);
    }
    WeightFn w(rational_vector(field(j, "values"), "weights"));
    if (w.size() != n_points)
        throw ShapeMismatch("weight count does not match the point count");
    return w;
}

Json poly_to_json(const Poly& p) {
    Json coeffs = Json::object();
    for (const auto& [a, c] : p.terms()) coeffs[exponent_key(a)] = rational_to_json(c);
    return Json{{"coeffs", std::move(coeffs)}};
}

Poly poly_from_json(const Json& j, unsigned dim) {
    Poly p(dim);
    for (const auto& [key, val] : field(j, "coeffs").items())
        p.set_coeff(parse_exponent_key(key, dim), rational_from_json(val));
    return p;
}

Json basis_to_json(const OrthoBasis& basis) {
    Json blocks = Json::array();
    for (const auto& block : basis.blocks) {
        Json b = Json::array();
        for (const auto& p : block) b.push_back(poly_to_json(p));
        blocks.push_back(std::move(b));
    }
    Json gram = Json::array();
    for (const auto& h : basis.H) gram.push_back(matrix_to_json(h));
    return Json{{"staircase", staircase_to_json(basis.lam)},
                {"blocks", std::move(blocks)},
                {"gram", std::move(gram)}};
}

OrthoBasis basis_from_json(const Json& j) {
    OrthoBasis basis;
    basis.lam = staircase_from_json(field(j, "staircase"));
    const unsigned dim = basis.lam.dim();
    const Json& blocks = field(j, "blocks");
    if (blocks.size() != basis.lam.top_degree() + 1)
        throw ShapeMismatch("block count does not match the staircase degree range");
    for (unsigned k = 0; k < blocks.size(); ++k) {
        std::vector<Poly> block;
        for (const auto& pj : blocks[k]) block.push_back(poly_from_json(pj, dim));
        if (block.size() != basis.lam.r(k))
            throw ShapeMismatch("block width does not match the staircase");
        basis.blocks.push_back(std::move(block));
    }
    const Json& gram = field(j, "gram");
    if (gram.size() != blocks.size())
        throw ShapeMismatch("gram list does not match the block count");
    for (const auto& h : gram) basis.H.push_back(matrix_from_json(h));
    for (unsigned k = 0; k < basis.blocks.size(); ++k)
        basis.G.push_back(leading_coefficients(basis.blocks[k], basis.lam, k));
    basis.weights_positive = true;
    return basis;
}

Json recurrence_to_json(const Recurrence& rec) {
    auto family = [](const std::vector<std::vector<RatMatrix>>& blocks) {
        Json out = Json::array();
        for (const auto& per_k : blocks) {
            Json row = Json::array();
            for (const auto& m : per_k) row.push_back(matrix_to_json(m));
            out.push_back(std::move(row));
        }
        return out;
    };
    Json r = Json::array();
    for (auto v : rec.r) r.push_back(v);
    return Json{{"d", rec.dim},
                {"r", std::move(r)},
                {"blocks",
                 Json{{"A", family(rec.A)}, {"B", family(rec.B)}, {"C", family(rec.C)}}}};
}

Recurrence recurrence_from_json(const Json& j) {
    Recurrence rec;
    rec.dim = field(j, "d").get<unsigned>();
    rec.r = field(j, "r").get<std::vector<std::size_t>>();
    if (rec.r.empty()) throw InvalidArgument("recurrence needs at least one block size");
    const Json& blocks = field(j, "blocks");
    auto family = [&](const char* name) {
        std::vector<std::vector<RatMatrix>> out;
        for (const auto& per_k : field(blocks, name)) {
            std::vector<RatMatrix> row;
            for (const auto& m : per_k) row.push_back(matrix_from_json(m));
            out.push_back(std::move(row));
        }
        return out;
    };
    rec.A = family("A");
    rec.B = family("B");
    rec.C = family("C");
    const std::size_t n = rec.r.size() - 1;
    if (rec.A.size() != n || rec.B.size() != n + 1 || rec.C.size() != n + 1)
        throw ShapeMismatch("recurrence block lists do not match the degree range");
    return rec;
}

Json measure_to_json(const RecoveredMeasure& m) {
    Json pts = Json::array();
    for (const auto& p : m.points.points) pts.push_back(rational_array(p));
    return Json{{"dimension", m.points.dim},
                {"points", std::move(pts)},
                {"weights", rational_array(m.weights.values)},
                {"attempts", m.attempts}};
}

Json float_basis_to_json(const std::vector<std::vector<FloatPoly>>& blocks) {
    Json out = Json::array();
    for (const auto& block : blocks) {
        Json b = Json::array();
        for (const auto& p : block) {
            Json coeffs = Json::object();
            for (const auto& [a, c] : p.coeffs) coeffs[exponent_key(a)] = c;
            b.push_back(Json{{"coeffs", std::move(coeffs)}});
        }
        out.push_back(std::move(b));
    }
    return out;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidArgument("invalid JSON in " + path + ": " + e.what());
    }
}

void save_json(const std::string& path, const Json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write " + tmp);
        out << j.dump(2) << '\n';
        if (!out.good()) throw Error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dop
