#pragma once
/// \file sampling.hpp
/// Seeded random algebras, elements and invariant tensors for the identity checks.

#include "tensor.hpp"

namespace symalg {

inline Scalar random_scalar(const BaseRing& r, Rng& rng, long lo = -3, long hi = 3) {
    return from_int(r, rng.range(lo, hi));
}

inline Scalar random_element(const MultTableAlgebra& alg, Rng& rng, long lo = -3, long hi = 3) {
    Coords c;
    for (std::size_t i = 0; i < alg.rank(); ++i) c.push_back(random_scalar(alg.base(), rng, lo, hi));
    return alg.element(std::move(c));
}

// Random combination of S_n orbit sums; each orbit is skipped with probability 1/2.
inline TensorElement random_invariant(const MultTableAlgebra& alg, std::size_t n, Rng& rng, long lo = -3, long hi = 3) {
    TensorElement t(alg, n);
    for (auto& rep : sorted_tuples(alg.rank(), n)) {
        if (rng.coin()) continue;
        Scalar c = random_scalar(alg.base(), rng, lo, hi);
        if (!c.is_zero()) t = t + c * orbit_sum(alg, rep);
    }
    return t;
}

// base[x]/(f) with f monic of degree `rank` and random lower coefficients.
inline MultTableAlgebra random_monic_quotient(const BaseRing& base, std::size_t rank, Rng& rng, const std::string& var = "x") {
    std::vector<Scalar> f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(random_scalar(base, rng));
    return monic_quotient(base, f, var);
}

}  // namespace symalg
