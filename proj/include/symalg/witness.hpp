#pragma once
/// \file witness.hpp
/// Outcome of a sampled identity check.  The first failing sample is kept as
/// a JSON counterexample; later failures only bump the count.

#include "tensor.hpp"

#include <json.hpp>

#include <string>

namespace symalg {

struct Witness {
    Witness() = default;
    explicit Witness(std::string id) : identity(std::move(id)) {}

    std::string identity;
    std::size_t checked = 0;
    std::size_t failed = 0;
    nlohmann::json counterexample;

    bool ok() const { return failed == 0; }
    explicit operator bool() const { return ok(); }

    // Returns pass so callers can chain.
    template <class Describe>
    bool record(bool pass, Describe&& describe) {
        ++checked;
        if (!pass) {
            if (failed == 0) counterexample = describe();
            ++failed;
        }
        return pass;
    }

    void merge(const Witness& o) {
        checked += o.checked;
        if (o.failed && failed == 0) counterexample = o.counterexample;
        failed += o.failed;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"identity", identity}, {"ok", ok()}, {"checked", checked}, {"failed", failed}};
        if (!ok()) j["counterexample"] = counterexample;
        return j;
    }
};

inline nlohmann::json tensor_json(const TensorElement& t) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [k, v] : t.terms()) {
        nlohmann::json labels = nlohmann::json::array();
        for (auto i : k) labels.push_back(t.algebra().labels()[i]);
        terms.push_back({{"tuple", labels}, {"coeff", to_string(v)}});
    }
    return {{"algebra", t.algebra().ring().describe()}, {"degree", t.n()}, {"terms", terms}};
}

inline nlohmann::json scalar_json(const Scalar& x) { return to_string(x); }

}  // namespace symalg
