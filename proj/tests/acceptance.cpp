// Acceptance runner: one PASS/FAIL line per criterion.
//
// Each suite runs on its own, sequentially, so the measured time is the
// suite's own wall clock.  A criterion passes when its required checks are
// present, ran at least the stated number of instances, all succeeded, and
// the suite finished inside its time limit.

#include "symalg/suite.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace symalg;

namespace {

struct Requirement {
    std::string check;
    std::size_t min_checked = 1;
};

struct Criterion {
    int id;
    std::string title;
    std::string suite;
    double limit_seconds;
    std::vector<Requirement> required;
    bool whole_suite = false;  // every check of the suite must pass, not only the required ones
    std::string prefix;        // when set, every check with this prefix must pass
};

struct SuiteRun {
    nlohmann::json checks = nlohmann::json::array();
    double seconds = 0;
};

SuiteRun run_one(const std::string& name) {
    SuiteConfig cfg;
    cfg.suites = {name};
    cfg.golden_dir = SYMALG_GOLDEN_DIR;
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run_suite(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    return {r.json.at("checks"), std::chrono::duration<double>(t1 - t0).count()};
}

std::string evaluate(const Criterion& c, const SuiteRun& run) {
    std::map<std::string, const nlohmann::json*> by_name;
    for (auto& ch : run.checks) by_name[ch.at("check").get<std::string>()] = &ch;
    auto failed = [](const nlohmann::json& ch) {
        std::string s = "'" + ch.at("check").get<std::string>() + "' failed";
        if (ch.contains("counterexample")) s += ": " + ch.at("counterexample").dump().substr(0, 300);
        return s;
    };
    for (auto& req : c.required) {
        auto it = by_name.find(req.check);
        if (it == by_name.end()) return "missing check '" + req.check + "'";
        const auto& ch = *it->second;
        if (!ch.at("ok").get<bool>()) return failed(ch);
        const auto n = ch.at("checked").get<std::size_t>();
        if (n < req.min_checked)
            return "'" + req.check + "' ran " + std::to_string(n) + " instances, need " + std::to_string(req.min_checked);
    }
    for (auto& ch : run.checks) {
        const auto name = ch.at("check").get<std::string>();
        const bool covered = c.whole_suite || (!c.prefix.empty() && name.rfind(c.prefix, 0) == 0);
        if (covered && !ch.at("ok").get<bool>()) return failed(ch);
    }
    if (run.seconds > c.limit_seconds) return "took " + std::to_string(run.seconds) + " s";
    return "";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "example identities", "tensor", 1,
         {{"rho product identities at n = 3", 2}, {"elementary 3-tensors term by term", 3}}},
        {2, "norm and characteristic coefficients", "norm", 30,
         {{"theta(rho_k(b)) = chi_k(b|M)", 200},
          {"base change: reduction mod 5", 30},
          {"base change: evaluation t -> 2", 30},
          {"base change: adjoining a variable", 30},
          {"flag multiplicativity", 30},
          {"tower transitivity", 30},
          {"tower block matrices", 30},
          {"tensor identity", 30}},
         true},
        {3, "w_k tables", "symfun", 60,
         {{"w_k golden (1,2)"}, {"w_k golden (2,1)"}, {"w_k golden (2,2)"}, {"w_k golden (2,3)"}, {"w_k golden (3,2)"},
          {"w_k on matrices (1,2)", 50}, {"w_k on matrices (2,1)", 50}, {"w_k on matrices (2,2)", 50},
          {"w_k on matrices (2,3)", 50}, {"w_k on matrices (3,2)", 50}},
         false, "w_k"},
        {4, "generation and counterexample", "tensor", 10,
         {{"dim S_3(F_4|F_2) = 4"},
          {"single elementary families generate proper subalgebras", 3},
          {"express_in_elementary round trip"},
          {"orbit basis is a partition of the tuples"}}},
        {5, "divided powers", "divided", 10,
         {{"gamma_0(x) = 1", 100},
          {"gamma_d(ax) = a^d gamma_d(x)", 100},
          {"gamma_d(x+y) expands", 100},
          {"gamma_d(x) * gamma_e(x) = C(d+e,d) gamma_{d+e}(x)", 100},
          {"gamma_compare is a basis bijection"},
          {"theta_div(gamma_n(b)) = det(b|M)", 50},
          {"law/determinant"}},
         true},
        {6, "multivalued category", "multi", 60,
         {{"commutativity of addition"}, {"associativity of addition"}, {"associativity of composition"},
          {"left distributivity"}, {"right distributivity"}, {"symmetry of multiplication"},
          {"associativity of multiplication"}, {"distributivity of addition and multiplication"},
          {"functoriality of multiplication"}, {"degree multiplicativity"}, {"correspondences"},
          {"transfer functoriality"}},
         true},
        {7, "Cech complexes", "cech", 120,
         {{"finitistic iff unifibrant"}, {"homotopy hd+dh=id"}, {"euler characteristic"},
          {"full complex exact", 50}, {"total complex d^2 = 0", 100},
          {"transitive kernel over ZZ"}},
         true},
    };

    std::map<std::string, SuiteRun> runs;
    bool all = true;
    for (auto& c : criteria) {
        if (!runs.count(c.suite)) runs[c.suite] = run_one(c.suite);
        const SuiteRun& run = runs.at(c.suite);
        const std::string why = evaluate(c, run);
        all = all && why.empty();
        std::printf("%s  %d  %-40s %8.2f s  (limit %g s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    run.seconds, c.limit_seconds, why.empty() ? "" : "  ", why.c_str());
        std::fflush(stdout);
    }

    {
        SuiteConfig cfg;
        cfg.seed = 42;
        const auto t0 = std::chrono::steady_clock::now();
        const std::string a = run_suite(cfg).json.dump(2);
        const std::string b = run_suite(cfg).json.dump(2);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool same = a == b;
        all = all && same;
        std::printf("%s  8  %-40s %8.2f s%s\n", same ? "PASS" : "FAIL", "report byte determinism (seed 42, twice)", secs,
                    same ? "" : "  reports differ");
    }
    return all ? 0 : 1;
}
