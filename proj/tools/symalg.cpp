// symalg command-line driver.  Exit status: 0 when every identity holds, 1 when
// one fails, 2 on bad input or an exceeded resource cap.

#include "symalg/symalg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace symalg;

namespace {

struct Output {
    std::string format = "json";
    std::string out;

    void emit(const json& j, const std::string& text) const {
        const std::string body = format == "text" ? text : j.dump(2) + "\n";
        if (out.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream f(out, std::ios::binary);
        if (!f) throw InputError("cannot write '" + out + "'");
        f << body;
    }
};

int status(bool ok) { return ok ? 0 : 1; }

std::string witnesses_text(const std::vector<Witness>& ws) {
    std::ostringstream os;
    for (auto& w : ws) {
        os << (w.ok() ? "PASS " : "FAIL ") << w.identity << " (" << w.checked << " checked";
        if (!w.ok()) os << ", " << w.failed << " failed";
        os << ")\n";
        if (!w.ok()) os << "  counterexample: " << w.counterexample.dump() << "\n";
    }
    return os.str();
}

json witnesses_json(const std::vector<Witness>& ws) {
    json checks = json::array();
    bool ok = true;
    for (auto& w : ws) {
        checks.push_back(w.to_json());
        ok = ok && w.ok();
    }
    return {{"checks", checks}, {"ok", ok}};
}

bool all_ok(const std::vector<Witness>& ws) {
    for (auto& w : ws)
        if (!w.ok()) return false;
    return true;
}

// theta(rho_k(b)) = chi_k(b|M) on the basis and on random elements.
Witness rho_chi_check(const GoodTriple& t, std::size_t samples, Rng& rng) {
    Witness w{"theta(rho_k(b)) = chi_k(b|M)"};
    const MultTableAlgebra& b = t.algebra();
    std::vector<Scalar> xs;
    for (std::size_t i = 0; i < b.rank(); ++i) xs.push_back(b.basis(i));
    for (std::size_t s = 0; s < samples; ++s) xs.push_back(random_element(b, rng));
    const std::size_t n = t.module_rank();
    for (auto& x : xs) {
        const CharPolynomial chi = char_coeffs(x, t);
        for (std::size_t k = 0; k <= n; ++k) {
            const Scalar lhs = theta(elem_sym(x, k, n), t);
            w.record(lhs == chi[k], [&] {
                return json{{"b", scalar_to_json(x)}, {"k", k}, {"theta", to_string(lhs)}, {"chi_k", to_string(chi[k])}};
            });
        }
    }
    return w;
}

std::string report_text(const json& r) {
    std::ostringstream os;
    for (auto& c : r.at("checks")) {
        os << (c.at("ok").get<bool>() ? "PASS " : "FAIL ") << c.at("suite").get<std::string>() << " / "
           << c.at("check").get<std::string>() << " (" << c.at("checked").get<std::size_t>() << " checked)\n";
        if (c.contains("counterexample")) os << "  counterexample: " << c.at("counterexample").dump() << "\n";
    }
    os << r.at("summary").at("checks").get<std::size_t>() << " checks, " << r.at("summary").at("failed").get<std::size_t>()
       << " failed, seed " << r.at("seed").get<std::uint64_t>() << "\n";
    return os.str();
}

// ---- golden files ------------------------------------------------------------

void write_file(const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot write '" + p.string() + "'");
    f << body;
}

std::vector<std::string> emit_goldens(const std::string& which, const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<std::string> written;
    auto put = [&](const std::string& name, const json& j) {
        write_file(dir / name, j.dump(2) + "\n");
        written.push_back((dir / name).string());
    };
    if (which == "wk" || which == "all") {
        const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}};
        for (auto [m, n] : shapes)
            put("wk_" + std::to_string(m) + "_" + std::to_string(n) + ".json", wk_table_json(m, n, compute_wk(m, n)));
    }
    if (which == "elementary" || which == "all") {
        const BaseRing zz = BaseRing::integers();
        const std::vector<std::pair<std::string, MultTableAlgebra>> algebras{
            {"zz_i", monic_quotient(zz, {from_int(zz, 1), zero(zz)}, "i")},
            {"zz_cubic", monic_quotient(zz, {from_int(zz, -1), from_int(zz, -1), zero(zz)}, "t")},
        };
        for (auto& [name, b] : algebras) {
            json table = json::array();
            for (std::size_t n = 1; n <= 3; ++n) {
                const OrbitBasis ob = invariant_basis(b, n);
                for (std::size_t i = 0; i < ob.sums.size(); ++i) {
                    json rep = json::array();
                    for (auto v : ob.reps[i]) rep.push_back(b.labels()[v]);
                    const ElementaryExpr e = express_in_elementary(ob.sums[i]);
                    table.push_back({{"n", n}, {"orbit", rep}, {"variables", e.expr.ring().variables()},
                                     {"expression", poly_terms_json(e.expr)}});
                }
            }
            put("elementary_" + name + ".json", {{"algebra", algebra_to_json(b)}, {"expressions", table}});
        }
    }
    if (which == "counts" || which == "all") {
        json rows = json::array();
        for (std::size_t r = 1; r <= 3; ++r)
            for (std::size_t n = 0; n <= 4; ++n) {
                const MultTableAlgebra b = split_algebra(BaseRing::integers(), numbered("e", r));
                rows.push_back({{"rank", r}, {"n", n}, {"count", invariant_basis(b, n).sums.size()}});
            }
        put("invariant_basis_counts.json", {{"rows", rows}});
    }
    if (written.empty()) throw InputError("unknown golden family '" + which + "'");
    return written;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symalg: exact symmetric tensors, norms, divided powers, multivalued morphisms and Cech complexes"};
    app.require_subcommand(1);
    Output output;
    std::uint64_t seed = 42;
    app.add_option("--out", output.out, "write the result to this file");
    app.add_option("--format", output.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "random seed");

    int code = 0;

    // wk
    std::size_t wk_m = 1, wk_n = 1;
    auto* wk = app.add_subcommand("wk", "universal polynomials w_k for det(x + X (x) Y)");
    wk->add_option("m", wk_m, "size of X")->required();
    wk->add_option("n", wk_n, "size of Y")->required();
    wk->callback([&] {
        const auto w = compute_wk(wk_m, wk_n);
        std::ostringstream os;
        for (std::size_t k = 0; k < w.size(); ++k) os << "w_" << k << " = " << to_string(w[k].expr) << "\n";
        output.emit(wk_table_json(wk_m, wk_n, w), os.str());
    });

    // rho
    std::string rho_input;
    auto* rho = app.add_subcommand("rho", "elementary or typed symmetric tensor");
    rho->add_option("--input", rho_input, "{algebra, n, k, element} or {algebra, n, type, elements}")->required();
    rho->callback([&] {
        const json j = load_json_file(rho_input);
        const MultTableAlgebra b = algebra_from_json(detail::req(j, "algebra"));
        const std::size_t n = detail::as_size(detail::req(j, "n"), "n");
        TensorElement t(b, n);
        if (j.contains("type")) {
            std::vector<std::size_t> a;
            for (auto& x : j.at("type")) a.push_back(detail::as_size(x, "type"));
            std::vector<Scalar> bs;
            for (auto& x : detail::req(j, "elements")) bs.push_back(scalar_from_json(b.ring(), x));
            t = typed_sym(a, bs, n);
        } else {
            t = elem_sym(scalar_from_json(b.ring(), detail::req(j, "element")), detail::as_size(detail::req(j, "k"), "k"), n);
        }
        std::ostringstream os;
        for (auto& [k, v] : t.terms()) os << to_string(v) << "  " << tuple_label(b, k) << "\n";
        output.emit(tensor_to_json(t), os.str());
    });

    // express
    std::string ex_input;
    bool rho1_only = false;
    auto* ex = app.add_subcommand("express", "write an invariant tensor in elementary symmetric tensors");
    ex->add_option("--input", ex_input, "tensor JSON")->required();
    ex->add_flag("--rho1-only", rho1_only, "use only rho_1 (needs n! invertible)");
    ex->callback([&] {
        const fs::path p(ex_input);
        const TensorElement t = tensor_from_json(load_json_file(p), p.parent_path());
        const ElementaryExpr e = express_in_elementary(t, rho1_only);
        if (evaluate(e) != t) throw Error("express round trip failed");
        output.emit(elementary_json(e), to_string(e.expr) + "\n");
    });

    // norm check
    std::string norm_identity, norm_input;
    std::size_t norm_samples = 10;
    auto* norm = app.add_subcommand("norm", "norm-map identities");
    auto* norm_check = norm->add_subcommand("check", "check one identity on the given input");
    norm->require_subcommand(1);
    norm_check->add_option("--identity", norm_identity, "identity to check")
        ->required()
        ->check(CLI::IsMember({"rho-chi", "base-change", "ses", "tower", "tensor", "local"}));
    norm_check->add_option("--input", norm_input, "JSON input for the identity")->required();
    norm_check->add_option("--samples", norm_samples, "random samples on top of the basis inputs");
    norm_check->add_option("--seed", seed, "random seed");
    norm_check->callback([&] {
        const json j = load_json_file(norm_input);
        Rng rng(seed);
        Witness w;
        if (norm_identity == "rho-chi") {
            w = rho_chi_check(triple_from_json(detail::req(j, "triple")), norm_samples, rng);
        } else if (norm_identity == "base-change") {
            w = check_base_change(triple_from_json(detail::req(j, "triple")), hom_from_json(detail::req(j, "hom")), norm_samples, rng);
        } else if (norm_identity == "ses") {
            w = check_ses(flag_from_json(detail::req(j, "flag")), norm_samples, rng);
        } else if (norm_identity == "tower") {
            w = check_tower(algebra_from_json(detail::req(j, "B")), algebra_from_json(detail::req(j, "C")), norm_samples, rng);
        } else if (norm_identity == "tensor") {
            w = check_tensor(algebra_from_json(detail::req(j, "B")), algebra_from_json(detail::req(j, "Btilde")),
                             ring_from_json(detail::req(j, "R")), norm_samples, rng);
        } else {
            const MultTableAlgebra k = algebra_from_json(detail::req(j, "residue"));
            std::vector<Scalar> pi;
            for (auto& x : detail::req(j, "pi")) pi.push_back(scalar_from_json(k.ring(), x));
            w = check_local_factorization(LocalData{flag_from_json(detail::req(j, "flag")), k, pi}, norm_samples, rng);
        }
        json r = witnesses_json({w});
        r["seed"] = seed;
        r["input_hash"] = detail::fnv1a_hex(detail::read_file(norm_input));
        output.emit(r, witnesses_text({w}));
        code = status(w.ok());
    });

    // divided
    std::string dv_op, dv_input;
    auto* dv = app.add_subcommand("divided", "divided powers");
    dv->add_option("--op", dv_op, "operation")->required()->check(CLI::IsMember({"gamma", "star", "compare", "theta"}));
    dv->add_option("--input", dv_input, "JSON input")->required();
    dv->callback([&] {
        const json j = load_json_file(dv_input);
        if (dv_op == "gamma") {
            const BaseRing base = j.contains("base") ? ring_from_json(j.at("base")) : BaseRing::integers();
            const auto labels = detail::as_labels(detail::req(j, "labels"), "labels");
            Coords m;
            for (auto& x : detail::req(j, "coords")) m.push_back(scalar_from_json(base, x));
            const DividedElement u = gamma_of(base, labels, m, detail::as_size(detail::req(j, "degree"), "degree"));
            output.emit(divided_to_json(u), divided_to_json(u).dump() + "\n");
        } else if (dv_op == "star") {
            const DividedElement u = star_mul(divided_from_json(detail::req(j, "u")), divided_from_json(detail::req(j, "v")));
            output.emit(divided_to_json(u), divided_to_json(u).dump() + "\n");
        } else if (dv_op == "compare") {
            const DividedElement u = divided_from_json(detail::req(j, "u"));
            const TensorElement t = j.contains("algebra") ? gamma_compare_tensor(u, algebra_from_json(j.at("algebra")))
                                                          : gamma_compare(u).tensor();
            output.emit(tensor_to_json(t), tensor_to_json(t).dump() + "\n");
        } else {
            const GoodTriple t = triple_from_json(detail::req(j, "triple"));
            const Scalar v = theta_div(divided_from_json(detail::req(j, "u")), t);
            output.emit(json{{"theta", scalar_to_json(v)}}, to_string(v) + "\n");
        }
    });

    // multi laws
    LawBounds mv_bounds{2, 2}, mv_random_bounds{4, 3};
    std::size_t mv_random = 0;
    auto* multi = app.add_subcommand("multi", "multivalued morphisms");
    multi->require_subcommand(1);
    auto* laws = multi->add_subcommand("laws", "check the category identities");
    laws->add_option("--max-size", mv_bounds.max_size, "largest set in the exhaustive check")->check(CLI::Range(1, 3));
    laws->add_option("--max-degree", mv_bounds.max_degree, "largest multiset size in the exhaustive check")->check(CLI::Range(0, 3));
    laws->add_option("--random", mv_random, "additional random instances");
    laws->add_option("--random-max-size", mv_random_bounds.max_size, "largest set in random instances")->check(CLI::Range(1, 6));
    laws->add_option("--random-max-degree", mv_random_bounds.max_degree, "largest multiset in random instances")->check(CLI::Range(0, 6));
    laws->add_option("--seed", seed, "random seed");
    laws->callback([&] {
        Rng rng(seed);
        auto ws = verify_category_laws(mv_bounds, mv_random, mv_random_bounds, rng);
        ws.push_back(check_degree_multiplicativity(mv_bounds));
        ws.push_back(check_correspondences(mv_bounds));
        ws.push_back(check_transfer_functoriality(mv_bounds));
        json r = witnesses_json(ws);
        r["seed"] = seed;
        output.emit(r, witnesses_text(ws));
        code = status(all_ok(ws));
    });

    // cech
    std::string cover_path, cech_check = "finitistic";
    std::optional<std::size_t> cech_depth;
    auto* cech = app.add_subcommand("cech", "Cech complexes of a finite cover");
    cech->add_option("--cover", cover_path, "cover JSON")->required();
    cech->add_option("--check", cech_check, "what to compute")
        ->check(CLI::IsMember({"finitistic", "unifibrant", "homology", "euler", "homotopy"}));
    cech->add_option("--depth", cech_depth, "use the full complex down to this depth instead of the reduced one");
    cech->callback([&] {
        const Cover c = cover_from_json(load_json_file(cover_path));
        json r{{"cover", cover_json(c)}};
        std::ostringstream os;
        bool ok = true;
        if (cech_check == "homology") {
            const ChainComplex cc = cech_depth ? full_cech(c, *cech_depth) : reduced_cech(c);
            const auto h = homology(cc);
            r["homology"] = homology_json(cc, h);
            ok = std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.is_zero(); });
            r["exact"] = ok;
            for (int k = cc.lo(); k <= cc.hi(); ++k) os << "H^" << k << " = " << h[static_cast<std::size_t>(k - cc.lo())].str() << "\n";
        } else if (cech_check == "finitistic") {
            const FinitisticReport f = is_finitistic(c);
            const UnifibrancyReport u = is_unifibrant(c);
            r["finitistic"] = f.holds();
            r["unifibrant"] = u.holds();
            json pts = json::object();
            for (std::size_t x = 0; x < c.base().size(); ++x) pts[c.base().label(x)] = f.exact_at(x);
            r["points"] = pts;
            ok = f.holds();
            os << "finitistic: " << (f.holds() ? "yes" : "no") << " (unifibrant: " << (u.holds() ? "yes" : "no") << ")\n";
        } else if (cech_check == "unifibrant") {
            const UnifibrancyReport u = is_unifibrant(c);
            json pts = json::object();
            for (std::size_t x = 0; x < c.base().size(); ++x) pts[c.base().label(x)] = u.holds_at(x);
            r["unifibrant"] = u.holds();
            r["points"] = pts;
            ok = u.holds();
            os << "unifibrant: " << (u.holds() ? "yes" : "no") << "\n";
        } else if (cech_check == "euler") {
            json pts = json::object();
            for (std::size_t x = 0; x < c.base().size(); ++x) {
                const Integer e = euler_char(c, x);
                pts[c.base().label(x)] = e.str();
                ok = ok && e == alternating_rank_sum(reduced_cech(c, {}, {x}));
                os << c.base().label(x) << ": " << e.str() << "\n";
            }
            r["euler"] = pts;
        } else {
            json pts = json::object();
            for (std::size_t x = 0; x < c.base().size(); ++x) {
                if (!is_unifibrant(c).holds_at(x)) {
                    ok = false;
                    pts[c.base().label(x)] = {{"error", "not unifibrant here"}};
                    os << c.base().label(x) << ": not unifibrant\n";
                    continue;
                }
                const Homotopy h = homotopy_witness(c, x);
                const bool good = !h.failing_degree().has_value();
                ok = ok && good;
                pts[c.base().label(x)] = {{"piece", h.piece}, {"hd+dh=id", good}};
                os << c.base().label(x) << ": piece " << h.piece << (good ? " ok" : " FAILS") << "\n";
            }
            r["homotopy"] = pts;
        }
        r["ok"] = ok;
        output.emit(r, os.str());
        code = status(ok);
    });

    // suite
    SuiteConfig cfg;
    auto* suite = app.add_subcommand("suite", "run identity suites and write a report");
    suite->add_option("--suite", cfg.suites, "suite to run (repeatable; default all)");
    suite->add_option("--seed", seed, "random seed");
    suite->add_option("--golden-dir", cfg.golden_dir, "compare w_k tables against this directory");
    suite->add_option("--theta-samples", cfg.theta_samples, "theta(rho_k) = chi_k instances");
    suite->add_option("--family-samples", cfg.family_samples, "samples per norm family");
    suite->add_option("--wk-pairs", cfg.wk_pairs, "matrix pairs per w_k shape");
    suite->add_option("--multi-random", cfg.multi_random, "random multivalued instances");
    suite->add_option("--exact-covers", cfg.exact_covers, "random covers for full exactness");
    suite->add_flag("--timings", cfg.timings, "include per-suite wall-clock seconds (breaks byte determinism)");
    suite->callback([&] {
        cfg.seed = seed;
        try {
            cfg.validate();
        } catch (const ResourceLimit&) {
            throw;
        } catch (const InputError& e) {
            throw CLI::ValidationError("--suite", e.what());
        }
        const Report r = run_suite(cfg);
        output.emit(r.json, report_text(r.json));
        code = status(r.ok());
    });

    // goldens
    std::string golden_which = "all", golden_dir = "golden";
    auto* goldens = app.add_subcommand("goldens", "write canonical golden files");
    goldens->add_option("--which", golden_which, "family")->check(CLI::IsMember({"wk", "elementary", "counts", "all"}));
    goldens->add_option("--dir", golden_dir, "output directory");
    goldens->callback([&] {
        const auto files = emit_goldens(golden_which, golden_dir);
        std::ostringstream os;
        for (auto& f : files) os << f << "\n";
        output.emit(json{{"written", files}}, os.str());
    });

    // algebra validate
    std::string alg_input;
    auto* alg = app.add_subcommand("algebra", "structure-constant algebras");
    alg->require_subcommand(1);
    auto* validate = alg->add_subcommand("validate", "check commutativity, associativity and the unit");
    validate->add_option("--input", alg_input, "algebra JSON")->required();
    validate->callback([&] {
        try {
            const MultTableAlgebra b = algebra_from_json(load_json_file(alg_input));
            output.emit(json{{"valid", true}, {"rank", b.rank()}, {"labels", b.labels()}}, "valid\n");
        } catch (const AxiomViolation& e) {
            output.emit(json{{"valid", false}, {"error", e.what()}}, std::string("invalid: ") + e.what() + "\n");
            code = 1;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
