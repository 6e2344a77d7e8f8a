#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "dop/error.hpp"
#include "dop/families.hpp"
#include "dop/io.hpp"
#include "dop/orthogonalize.hpp"
#include "dop/recurrence.hpp"
#include "dop/staircase.hpp"

namespace {

using namespace dop;

struct RunConfig {
    std::string points_path;
    std::string weights_path;
    std::string basis_path;
    std::string recurrence_path;
    std::string staircase_path;
    std::string candidates_path;
    std::string spec_path;

    std::string out_path;
    std::string orthonormal_path;
    std::string measure_out;
    std::string recurrence_out;
    std::string points_out;
    std::string weights_out;

    std::string order_kind = "grevlex";
    std::string precedence;  // comma-separated permutation, empty = default
    std::string scale = "canonical";
    std::string checks = "three-term,rank,cd,jacobi,orthogonality";
    std::uint64_t seed = 0;
    unsigned truncation = 200;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

MonomialOrder resolve_order(unsigned dim, const RunConfig& cfg) {
    MonomialOrder::Kind kind = cfg.order_kind == "grlex" ? MonomialOrder::Kind::Grlex
                                                         : MonomialOrder::Kind::Grevlex;
    if (cfg.precedence.empty())
        return kind == MonomialOrder::Kind::Grlex ? MonomialOrder::grlex(dim)
                                                  : MonomialOrder::grevlex(dim);
    std::vector<unsigned> prec;
    for (const auto& tok : split_csv(cfg.precedence)) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad precedence entry: " + tok);
        }
        if (used != tok.size()) throw InvalidArgument("bad precedence entry: " + tok);
        prec.push_back(static_cast<unsigned>(v));
    }
    return MonomialOrder::make(kind, std::move(prec));
}

std::set<std::string> resolve_checks(const RunConfig& cfg) {
    static const std::set<std::string> known{"three-term", "rank", "cd", "jacobi",
                                             "orthogonality"};
    std::set<std::string> out;
    for (const auto& tok : split_csv(cfg.checks)) {
        if (!known.count(tok)) throw InvalidArgument("unknown check: " + tok);
        out.insert(tok);
    }
    return out;
}

int cmd_staircase(const RunConfig& cfg) {
    PointSet v = points_from_json(load_json(cfg.points_path));
    Staircase lam = compute_staircase(v, resolve_order(v.dim, cfg));
    save_json(cfg.out_path, staircase_to_json(lam));
    std::cout << "r =";
    for (unsigned k = 0; k <= lam.top_degree(); ++k) std::cout << ' ' << lam.r(k);
    std::cout << "  total = " << lam.size() << '\n';
    return 0;
}

int cmd_construct(const RunConfig& cfg) {
    PointSet v = points_from_json(load_json(cfg.points_path));
    WeightFn w = weights_from_json(load_json(cfg.weights_path), v.size());
    MonomialOrder ord = resolve_order(v.dim, cfg);
    MomentFunctional l(std::move(v), std::move(w));
    Staircase lam = compute_staircase(l.points(), ord);
    ScaleMode mode = cfg.scale == "raw" ? ScaleMode::Raw : ScaleMode::Canonical;
    OrthoBasis basis = construct_orthogonal(l, lam, mode);
    save_json(cfg.out_path, basis_to_json(basis));
    if (!cfg.orthonormal_path.empty())
        save_json(cfg.orthonormal_path, float_basis_to_json(orthonormalize(basis)));
    std::cout << "blocks =";
    for (unsigned k = 0; k <= basis.top_degree(); ++k) std::cout << ' ' << basis.r(k);
    std::cout << '\n';
    return 0;
}

int cmd_recurrence(const RunConfig& cfg) {
    OrthoBasis basis = basis_from_json(load_json(cfg.basis_path));
    PointSet v = points_from_json(load_json(cfg.points_path));
    WeightFn w = weights_from_json(load_json(cfg.weights_path), v.size());
    MomentFunctional l(std::move(v), std::move(w));
    basis.weights_positive = l.positive();
    Recurrence rec = compute_recurrence(basis, l);
    save_json(cfg.out_path, recurrence_to_json(rec));
    std::cout << "recurrence blocks through degree " << rec.top_degree() << '\n';
    return 0;
}

Json locate_three_term(const ThreeTermReport& rep) {
    if (!rep.first_failure) return nullptr;
    auto [k, i, t] = *rep.first_failure;
    return Json{{"k", k}, {"i", i}, {"point", t}};
}

Json check_orthogonality(const OrthoBasis& basis, const MomentFunctional& l, bool& ok) {
    ok = true;
    Json detail = nullptr;
    for (unsigned k = 0; k <= basis.top_degree() && ok; ++k)
        for (unsigned m = k; m <= basis.top_degree() && ok; ++m)
            for (std::size_t a = 0; a < basis.r(k) && ok; ++a)
                for (std::size_t b = 0; b < basis.r(m) && ok; ++b) {
                    Rational val = l.inner(basis.blocks[k][a], basis.blocks[m][b]);
                    Rational want = k == m ? basis.H[k](a, b) : Rational(0);
                    if (val != want) {
                        ok = false;
                        detail = Json{{"block_a", k}, {"index_a", a}, {"block_b", m},
                                      {"index_b", b}, {"value", val.str()}};
                    }
                }
    // block orthogonality also demands invertible Gram blocks
    for (unsigned k = 0; k <= basis.top_degree() && ok; ++k)
        if (rank(basis.H[k]) != basis.r(k)) {
            ok = false;
            detail = Json{{"singular_block", k}};
        }
    return Json{{"pass", ok}, {"first_failure", std::move(detail)}};
}

Json check_cd(const OrthoBasis& basis, const Recurrence& rec, const PointSet& v,
              bool& ok) {
    ok = true;
    Json detail = nullptr;
    for (unsigned k = 0; k + 1 <= basis.top_degree() && ok; ++k)
        for (unsigned i = 0; i < v.dim && ok; ++i)
            for (std::size_t s = 0; s < v.size() && ok; ++s)
                for (std::size_t t = 0; t < v.size() && ok; ++t) {
                    if (v.points[s][i] == v.points[t][i]) continue;
                    auto [lhs, rhs] =
                        christoffel_darboux(basis, rec, v.points[s], v.points[t], i, k);
                    if (lhs != rhs) {
                        ok = false;
                        detail = Json{{"k", k}, {"i", i}, {"x", s}, {"y", t}};
                    }
                }
    return Json{{"pass", ok}, {"first_failure", std::move(detail)}};
}

int cmd_verify(const RunConfig& cfg) {
    OrthoBasis basis = basis_from_json(load_json(cfg.basis_path));
    PointSet v = points_from_json(load_json(cfg.points_path));
    WeightFn w = weights_from_json(load_json(cfg.weights_path), v.size());
    MomentFunctional l(v, w);
    basis.weights_positive = l.positive();
    std::set<std::string> checks = resolve_checks(cfg);

    Json report = Json::object();
    bool all_ok = true;
    bool need_rec = checks.count("three-term") || checks.count("rank") ||
                    checks.count("cd") || checks.count("jacobi");
    Recurrence rec;
    if (need_rec) rec = compute_recurrence(basis, l);

    if (checks.count("orthogonality")) {
        bool ok = false;
        report["orthogonality"] = check_orthogonality(basis, l, ok);
        all_ok = all_ok && ok;
        std::cout << "orthogonality: " << (ok ? "pass" : "FAIL") << '\n';
    }
    if (checks.count("three-term")) {
        ThreeTermReport rep = verify_three_term(rec, basis, v);
        report["three-term"] = Json{{"pass", rep.ok},
                                    {"max_residual", rep.max_residual.str()},
                                    {"first_failure", locate_three_term(rep)}};
        all_ok = all_ok && rep.ok;
        std::cout << "three-term: " << (rep.ok ? "pass" : "FAIL")
                  << " (max residual " << rep.max_residual << ")\n";
    }
    if (checks.count("rank")) {
        RankReport rep = rank_condition(rec);
        Json entries = Json::array();
        for (const auto& e : rep.entries)
            entries.push_back(Json{{"k", e.k},
                                   {"rank_a", e.rank_a},
                                   {"rank_c", e.rank_c},
                                   {"expected", e.expected},
                                   {"dims_ok", e.dims_ok},
                                   {"pass", e.pass}});
        report["rank"] = Json{{"pass", rep.ok}, {"entries", std::move(entries)}};
        all_ok = all_ok && rep.ok;
        std::cout << "rank: " << (rep.ok ? "pass" : "FAIL") << '\n';
    }
    if (checks.count("cd")) {
        bool ok = false;
        report["cd"] = check_cd(basis, rec, v, ok);
        all_ok = all_ok && ok;
        std::cout << "cd: " << (ok ? "pass" : "FAIL") << '\n';
    }
    if (checks.count("jacobi")) {
        CommuteReport rep = commute_check(jacobi_operators(rec));
        Json detail = nullptr;
        if (rep.first_failure)
            detail = Json{{"i", rep.first_failure->first}, {"j", rep.first_failure->second}};
        report["jacobi"] = Json{{"pass", rep.ok}, {"first_failure", std::move(detail)}};
        all_ok = all_ok && rep.ok;
        std::cout << "jacobi: " << (rep.ok ? "pass" : "FAIL") << '\n';
    }

    Json full = Json{{"pass", all_ok}, {"checks", std::move(report)}};
    if (!cfg.out_path.empty()) save_json(cfg.out_path, full);
    std::cout << (all_ok ? "all checks passed" : "verification failed") << '\n';
    return all_ok ? 0 : 1;
}

int cmd_favard(const RunConfig& cfg) {
    Recurrence rec = recurrence_from_json(load_json(cfg.recurrence_path));
    Staircase lam = staircase_from_json(load_json(cfg.staircase_path));
    PointSet cands;
    bool have_cands = !cfg.candidates_path.empty();
    if (have_cands) cands = points_from_json(load_json(cfg.candidates_path));

    std::vector<std::vector<Poly>> raw = favard_reconstruct(rec, lam, nullptr);
    RecoveredMeasure m = recover_measure(raw, have_cands ? &cands : nullptr, cfg.seed);

    // realize the basis on the recovered support: reduce each polynomial
    // modulo the vanishing ideal of the recovered points
    Staircase lam2 = compute_staircase(m.points, lam.order());
    OrthoBasis basis;
    basis.lam = lam2;
    MomentFunctional l(m.points, m.weights);
    basis.weights_positive = l.positive();
    for (unsigned k = 0; k < raw.size(); ++k) {
        std::vector<Poly> block;
        for (const auto& p : raw[k]) block.push_back(normal_form(p, m.points, lam2));
        RatMatrix h(block.size(), block.size());
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = a; b < block.size(); ++b) {
                Rational val = l.inner(block[a], block[b]);
                h(a, b) = val;
                h(b, a) = val;
            }
        basis.blocks.push_back(std::move(block));
        basis.H.push_back(std::move(h));
        basis.G.push_back(leading_coefficients(basis.blocks[k], lam2, k));
    }

    save_json(cfg.out_path, basis_to_json(basis));
    if (!cfg.measure_out.empty()) save_json(cfg.measure_out, measure_to_json(m));
    std::cout << "recovered " << m.points.size() << " points after " << m.attempts
              << " attempt(s)\n";

    // the functional matches the low moments by construction; the command only
    // succeeds when it actually realizes the orthogonality it promises
    bool ok = false;
    check_orthogonality(basis, l, ok);
    std::cout << "orthogonality on recovered measure: " << (ok ? "pass" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

DiscreteFamily family_from_spec(const Json& spec, unsigned default_truncation) {
    std::string fam = spec.at("family").get<std::string>();
    if (fam == "hahn") {
        HahnParams p(rational_from_json(spec.at("a")), rational_from_json(spec.at("b")),
                     spec.at("N").get<unsigned>());
        return hahn_family(p);
    }
    if (fam == "meixner") {
        MeixnerParams p(rational_from_json(spec.at("b")), rational_from_json(spec.at("c")));
        unsigned maxdeg = spec.at("max_degree").get<unsigned>();
        unsigned trunc = spec.contains("truncation") ? spec.at("truncation").get<unsigned>()
                                                     : default_truncation;
        return meixner_family(p, maxdeg, trunc);
    }
    throw InvalidArgument("family must be \"hahn\" or \"meixner\" here: " + fam);
}

int cmd_family(const RunConfig& cfg) {
    Json spec = load_json(cfg.spec_path);
    if (!spec.contains("family")) throw InvalidArgument("missing field \"family\"");
    std::string fam = spec.at("family").get<std::string>();

    FamilyBasis fb;
    if (fam == "triangle") {
        const Json& sig = spec.at("sigma");
        if (!sig.is_array() || sig.size() != 3)
            throw InvalidArgument("\"sigma\" must be an array of three rationals");
        TriangleHahnParams p(rational_from_json(sig[0]), rational_from_json(sig[1]),
                             rational_from_json(sig[2]), spec.at("N").get<unsigned>());
        fb = triangle_basis(p);
    } else if (fam == "product") {
        DiscreteFamily fx = family_from_spec(spec.at("x"), cfg.truncation);
        DiscreteFamily fy = family_from_spec(spec.at("y"), cfg.truncation);
        fb = product_basis(fx, fy);
    } else {
        fb = univariate_basis(family_from_spec(spec, cfg.truncation));
    }

    save_json(cfg.out_path, basis_to_json(fb.basis));
    if (!cfg.points_out.empty()) save_json(cfg.points_out, points_to_json(fb.support));
    if (!cfg.weights_out.empty()) save_json(cfg.weights_out, weights_to_json(fb.weight));
    if (!cfg.recurrence_out.empty()) {
        MomentFunctional l(fb.support, fb.weight);
        save_json(cfg.recurrence_out, recurrence_to_json(compute_recurrence(fb.basis, l)));
    }
    std::cout << fam << ": " << fb.support.size() << " support points, blocks =";
    for (unsigned k = 0; k <= fb.basis.top_degree(); ++k) std::cout << ' ' << fb.basis.r(k);
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete orthogonal polynomial bases, recurrences, and reconstruction"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_order = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order_kind, "monomial order")
            ->check(CLI::IsMember({"grlex", "grevlex"}));
        sub->add_option("--precedence", cfg.precedence,
                        "variable precedence as a comma-separated permutation of 0..d-1");
    };

    CLI::App* st = app.add_subcommand("staircase", "exponent staircase of a point set");
    st->add_option("points", cfg.points_path, "point-set JSON")->required();
    add_order(st);
    st->add_option("--out", cfg.out_path, "staircase JSON output")->required();

    CLI::App* co = app.add_subcommand("construct", "orthogonal basis on weighted points");
    co->add_option("points", cfg.points_path, "point-set JSON")->required();
    co->add_option("weights", cfg.weights_path, "weights JSON")->required();
    add_order(co);
    co->add_option("--scale", cfg.scale, "coefficient scaling")
        ->check(CLI::IsMember({"canonical", "raw"}));
    co->add_option("--out", cfg.out_path, "basis JSON output")->required();
    co->add_option("--orthonormal", cfg.orthonormal_path,
                   "also write a floating-point orthonormal basis here");

    CLI::App* re = app.add_subcommand("recurrence", "three-term blocks of a basis");
    re->add_option("basis", cfg.basis_path, "basis JSON")->required();
    re->add_option("points", cfg.points_path, "point-set JSON")->required();
    re->add_option("weights", cfg.weights_path, "weights JSON")->required();
    re->add_option("--out", cfg.out_path, "recurrence JSON output")->required();

    CLI::App* ve = app.add_subcommand("verify", "check a basis against its measure");
    ve->add_option("basis", cfg.basis_path, "basis JSON")->required();
    ve->add_option("points", cfg.points_path, "point-set JSON")->required();
    ve->add_option("weights", cfg.weights_path, "weights JSON")->required();
    ve->add_option("--checks", cfg.checks,
                   "comma-separated subset of three-term,rank,cd,jacobi,orthogonality");
    ve->add_option("--out", cfg.out_path, "report JSON output");

    CLI::App* fa = app.add_subcommand("favard", "rebuild a basis and measure from blocks");
    fa->add_option("recurrence", cfg.recurrence_path, "recurrence JSON")->required();
    fa->add_option("staircase", cfg.staircase_path, "staircase JSON")->required();
    fa->add_option("candidates", cfg.candidates_path, "optional candidate point-set JSON");
    fa->add_option("--seed", cfg.seed, "support search seed");
    fa->add_option("--out", cfg.out_path, "basis JSON output")->required();
    fa->add_option("--measure-out", cfg.measure_out, "recovered measure JSON output");

    CLI::App* fm = app.add_subcommand("family", "closed-form basis from a family spec");
    fm->add_option("spec", cfg.spec_path, "family spec JSON")->required();
    fm->add_option("--truncation", cfg.truncation, "support truncation for infinite families");
    fm->add_option("--out", cfg.out_path, "basis JSON output")->required();
    fm->add_option("--recurrence-out", cfg.recurrence_out, "recurrence JSON output");
    fm->add_option("--points-out", cfg.points_out, "support point-set JSON output");
    fm->add_option("--weights-out", cfg.weights_out, "weights JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (st->parsed()) return cmd_staircase(cfg);
        if (co->parsed()) return cmd_construct(cfg);
        if (re->parsed()) return cmd_recurrence(cfg);
        if (ve->parsed()) return cmd_verify(cfg);
        if (fa->parsed()) return cmd_favard(cfg);
        if (fm->parsed()) return cmd_family(cfg);
    } catch (const ExistenceFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const RankDeficient& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ExhaustedAttempts& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
