#pragma once

#include "rings.hpp"

#include <map>
#include <string>

namespace symalg {

// Variables of r and of every polynomial ring nested inside it, outermost last.
inline void collect_variables(const BaseRing& r, std::vector<std::string>& out) {
    if (r.kind() == RingKind::Poly) {
        collect_variables(r.coefficients(), out);
        for (auto& v : r.variables()) out.push_back(v);
    } else if (r.kind() == RingKind::Extension) {
        collect_variables(r.table().base, out);
    }
}

// A ring map determined by images of variables and the canonical map on the
// prime ring (ZZ -> anything, QQ -> QQ-algebras, GF(p) -> char p rings).
class RingHom {
public:
    RingHom(BaseRing source, BaseRing target, std::map<std::string, Scalar> images)
        : src_(std::move(source)), tgt_(std::move(target)) {
        switch (src_.prime_ring().kind()) {
            case RingKind::Rationals:
                if (tgt_.prime_ring().kind() != RingKind::Rationals)
                    throw InputError("no ring map " + src_.describe() + " -> " + tgt_.describe());
                break;
            case RingKind::PrimeField:
                if (tgt_.characteristic() != src_.prime_ring().modulus())
                    throw InputError("no ring map " + src_.describe() + " -> " + tgt_.describe());
                break;
            default: break;
        }
        if (src_.kind() == RingKind::Extension) throw InputError("homomorphisms out of extension rings are not supported");
        std::vector<std::string> vars;
        collect_variables(src_, vars);
        for (auto& v : vars) {
            auto it = images.find(v);
            if (it == images.end()) throw InputError("variable image missing for '" + v + "'");
            images_[v] = embed(it->second, tgt_);
        }
        for (auto& [k, _] : images)
            if (!images_.count(k)) throw InputError("image given for unknown variable '" + k + "'");
    }

    // Identity on variables shared by name with the target.
    static RingHom canonical(const BaseRing& source, const BaseRing& target) {
        std::vector<std::string> vars;
        collect_variables(source, vars);
        std::map<std::string, Scalar> images;
        for (auto& v : vars)
            if (target.has_variable(v)) images[v] = variable(target, v);
        return RingHom(source, target, std::move(images));
    }

    const BaseRing& source() const { return src_; }
    const BaseRing& target() const { return tgt_; }
    const std::map<std::string, Scalar>& images() const { return images_; }

    Scalar operator()(const Scalar& x) const {
        if (x.ring() != src_)
            throw RingMismatch("hom from " + src_.describe() + " applied to element of " + x.ring().describe());
        return apply(x);
    }

private:
    Scalar apply(const Scalar& x) const {
        switch (x.kind()) {
            case RingKind::Integers:
            case RingKind::PrimeField: return from_int(tgt_, x.integer());
            case RingKind::Rationals: return from_rational(tgt_, x.rational());
            case RingKind::Poly: {
                const auto& vs = x.ring().variables();
                std::vector<Scalar> img;
                for (auto& v : vs) img.push_back(images_.at(v));
                Scalar acc = zero(tgt_);
                for (auto& t : x.terms()) {
                    Scalar m = apply(t.coeff);
                    for (std::size_t i = 0; i < vs.size(); ++i)
                        if (t.exps[i]) m *= pow(img[i], t.exps[i]);
                    acc += m;
                }
                return acc;
            }
            case RingKind::Extension: break;
        }
        throw InputError("homomorphisms out of extension rings are not supported");
    }

    BaseRing src_, tgt_;
    std::map<std::string, Scalar> images_;
};

inline Scalar base_change(const Scalar& x, const RingHom& h) { return h(x); }

}  // namespace symalg
