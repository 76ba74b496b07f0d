#pragma once
/// \file elementary.hpp
/// Rewriting symmetric tensors as polynomials in the elementary symmetric
/// tensors rho_k(e) of basis elements e.
///
/// Work happens on formal typed symmetric tensors rho_a(e_1, ..., e_r) with
/// distinct basis arguments, stored as a count vector over the basis (count
/// of e_i = a_i, weight = total count, remaining slots hold 1).  Products of
/// such keys are expanded by overlap patterns; the pattern without overlaps
/// is the leading term, all others have strictly smaller weight.

#include "linalg.hpp"
#include "tensor.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace symalg {

using TypedKey = std::vector<std::uint32_t>;
using TypedCombo = std::map<TypedKey, Scalar>;

struct ElementaryExpr {
    MultTableAlgebra algebra;
    std::size_t n = 0;
    Scalar expr;  // in A[R[1][e_1], ..., R[n][e_r]], ordered by (k, label)
};

inline std::string rho_symbol(std::size_t k, const std::string& label) {
    return "R[" + std::to_string(k) + "][" + label + "]";
}

inline BaseRing elementary_symbol_ring(const MultTableAlgebra& alg, std::size_t n) {
    std::vector<std::string> vars;
    for (std::size_t k = 1; k <= n; ++k)
        for (auto& l : alg.labels()) vars.push_back(rho_symbol(k, l));
    return BaseRing::poly(alg.base(), vars);
}

class ElementaryRewriter {
public:
    ElementaryRewriter(MultTableAlgebra alg, std::size_t n)
        : alg_(std::move(alg)), n_(n), ring_(elementary_symbol_ring(alg_, n_)) {
        const std::size_t r = alg_.rank();
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) products_.push_back((alg_.basis(i) * alg_.basis(j)).coords());
    }

    const BaseRing& ring() const { return ring_; }
    std::size_t n() const { return n_; }
    const MultTableAlgebra& algebra() const { return alg_; }

    Scalar symbol(std::size_t k, std::size_t label) const {
        return variable(ring_, rho_symbol(k, alg_.labels()[label]));
    }

    // rho_type(args) with arbitrary algebra elements as arguments, normalized
    // to keys by multilinear expansion of each argument and merging equal
    // basis arguments (multinomial coefficient).
    TypedCombo normalize(const std::vector<std::pair<Coords, std::uint32_t>>& args) const {
        const std::size_t r = alg_.rank();
        TypedCombo out;
        TypedKey key(r, 0);
        // per-label list of pieces m_kl, for the multinomial merge factor
        std::vector<std::vector<std::uint32_t>> pieces(r);
        std::function<void(std::size_t, std::size_t, std::uint32_t, const Scalar&)> rec =
            [&](std::size_t k, std::size_t l, std::uint32_t left, const Scalar& c) {
                if (k == args.size()) {
                    Integer mult = 1;
                    for (std::size_t e = 0; e < r; ++e) {
                        long tot = 0;
                        for (auto p : pieces[e]) {
                            tot += p;
                            mult *= binomial(tot, p);
                        }
                    }
                    Scalar v = c * from_int(alg_.base(), mult);
                    if (v.is_zero()) return;
                    auto it = out.find(key);
                    if (it == out.end())
                        out.emplace(key, v);
                    else
                        it->second += v;
                    return;
                }
                const Coords& x = args[k].first;
                if (l == r - 1 || left == 0) {
                    // the rest of the count goes to label l (or nothing is left)
                    if (left > 0 && x[l].is_zero()) return;
                    key[l] += left;
                    if (left) pieces[l].push_back(left);
                    std::uint32_t next = k + 1 < args.size() ? args[k + 1].second : 0;
                    rec(k + 1, 0, next, left ? c * symalg::pow(x[l], left) : c);
                    if (left) pieces[l].pop_back();
                    key[l] -= left;
                    return;
                }
                for (std::uint32_t m = 0; m <= left; ++m) {
                    if (m > 0 && x[l].is_zero()) break;
                    key[l] += m;
                    if (m) pieces[l].push_back(m);
                    rec(k, l + 1, left - m, m ? c * symalg::pow(x[l], m) : c);
                    if (m) pieces[l].pop_back();
                    key[l] -= m;
                }
            };
        if (args.empty()) {
            out.emplace(key, one(alg_.base()));
            return out;
        }
        rec(0, 0, args[0].second, one(alg_.base()));
        for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    // Product of two keys as a combination of keys.
    TypedCombo multiply(const TypedKey& a, const TypedKey& b) const {
        std::vector<std::size_t> sa, sb;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i]) sa.push_back(i);
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) sb.push_back(j);
        std::size_t wa = weight(a), wb = weight(b);
        const std::size_t p = sa.size(), q = sb.size();
        std::vector<std::uint32_t> ov(p * q, 0), row(p, 0), col(q, 0);
        TypedCombo out;
        std::function<void(std::size_t)> rec = [&](std::size_t cell) {
            if (cell == p * q) {
                std::size_t overlap = 0;
                for (auto v : ov) overlap += v;
                if (wa + wb - overlap > n_) return;
                std::vector<std::pair<Coords, std::uint32_t>> args;
                for (std::size_t i = 0; i < p; ++i)
                    if (a[sa[i]] > row[i]) args.emplace_back(alg_.basis(sa[i]).coords(), a[sa[i]] - row[i]);
                for (std::size_t j = 0; j < q; ++j)
                    if (b[sb[j]] > col[j]) args.emplace_back(alg_.basis(sb[j]).coords(), b[sb[j]] - col[j]);
                for (std::size_t i = 0; i < p; ++i)
                    for (std::size_t j = 0; j < q; ++j)
                        if (ov[i * q + j]) args.emplace_back(products_[sa[i] * alg_.rank() + sb[j]], ov[i * q + j]);
                for (auto& [k, v] : normalize(args)) add(out, k, v);
                return;
            }
            const std::size_t i = cell / q, j = cell % q;
            const std::uint32_t cap = std::min(a[sa[i]] - row[i], b[sb[j]] - col[j]);
            for (std::uint32_t v = 0; v <= cap; ++v) {
                ov[cell] = v;
                row[i] += v;
                col[j] += v;
                rec(cell + 1);
                row[i] -= v;
                col[j] -= v;
            }
            ov[cell] = 0;
        };
        rec(0);
        return out;
    }

    // Expression in R-symbols for a key, by induction on the weight.
    const Scalar& express(const TypedKey& key) {
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Scalar result = zero(ring_);
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i]) support.push_back(i);
        if (support.empty()) {
            result = one(ring_);
        } else if (support.size() == 1) {
            result = symbol(key[support[0]], support[0]);
        } else {
            // rho_{a_1}(e_1) ... rho_{a_r}(e_r) = rho_a(e) + lower weight
            TypedCombo prod = single(support[0], key[support[0]]);
            Scalar lead = symbol(key[support[0]], support[0]);
            for (std::size_t s = 1; s < support.size(); ++s) {
                prod = multiply_combo(prod, single(support[s], key[support[s]]));
                lead *= symbol(key[support[s]], support[s]);
            }
            result = lead;
            for (auto& [k, v] : prod) {
                if (k == key) {
                    if (!v.is_one()) throw Error("leading coefficient of the typed product is not 1");
                    continue;
                }
                if (weight(k) >= weight(key)) throw Error("typed product produced a term of non-lower weight");
                result -= embed(v, ring_) * express(k);
            }
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

    // Same, but only R[1][e] symbols (needs the relevant factorials invertible).
    const Scalar& express_rho1(const TypedKey& key) {
        auto it = memo1_.find(key);
        if (it != memo1_.end()) return it->second;
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i]) support.push_back(i);
        Scalar result = zero(ring_);
        if (support.empty()) {
            result = one(ring_);
        } else if (support.size() == 1) {
            // rho_1(e)^k = k! rho_k(e) + lower weight
            const std::size_t e = support[0], k = key[e];
            TypedCombo prod = single(e, 1);
            for (std::size_t i = 1; i < k; ++i) prod = multiply_combo(prod, single(e, 1));
            Scalar acc = symalg::pow(symbol(1, e), k);
            Scalar lead;
            for (auto& [kk, v] : prod) {
                if (kk == key) {
                    lead = v;
                    continue;
                }
                if (weight(kk) >= k) throw Error("power of rho_1 produced a term of non-lower weight");
                acc -= embed(v, ring_) * express_rho1(kk);
            }
            Scalar kf = from_int(alg_.base(), factorial(static_cast<long>(k)));
            if (lead != kf) throw Error("unexpected leading coefficient in rho_1 power");
            if (!is_unit(kf))
                throw Error(std::to_string(k) + "! is not invertible in " + alg_.base().describe());
            result = embed(inverse(kf), ring_) * acc;
        } else {
            TypedCombo prod = single(support[0], key[support[0]]);
            Scalar lead = express_rho1(single_key(support[0], key[support[0]]));
            for (std::size_t s = 1; s < support.size(); ++s) {
                prod = multiply_combo(prod, single(support[s], key[support[s]]));
                lead *= express_rho1(single_key(support[s], key[support[s]]));
            }
            result = lead;
            for (auto& [k, v] : prod) {
                if (k == key) continue;
                result -= embed(v, ring_) * express_rho1(k);
            }
        }
        return memo1_.emplace(key, std::move(result)).first->second;
    }

    // rho_key as an actual tensor.
    TensorElement key_tensor(const TypedKey& key) const {
        std::vector<std::size_t> a;
        std::vector<Scalar> bs;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i]) {
                a.push_back(key[i]);
                bs.push_back(alg_.basis(i));
            }
        return typed_sym(a, bs, n_, alg_);
    }

    static std::size_t weight(const TypedKey& k) {
        std::size_t w = 0;
        for (auto x : k) w += x;
        return w;
    }

private:
    TypedKey single_key(std::size_t e, std::uint32_t k) const {
        TypedKey key(alg_.rank(), 0);
        key[e] = k;
        return key;
    }
    TypedCombo single(std::size_t e, std::uint32_t k) const {
        return TypedCombo{{single_key(e, k), one(alg_.base())}};
    }
    static void add(TypedCombo& c, const TypedKey& k, const Scalar& v) {
        auto it = c.find(k);
        if (it == c.end()) {
            if (!v.is_zero()) c.emplace(k, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    TypedCombo multiply_combo(const TypedCombo& x, const TypedCombo& y) const {
        TypedCombo out;
        for (auto& [ka, va] : x)
            for (auto& [kb, vb] : y)
                for (auto& [k, v] : multiply(ka, kb)) add(out, k, va * vb * v);
        return out;
    }

    MultTableAlgebra alg_;
    std::size_t n_;
    BaseRing ring_;
    std::vector<Coords> products_;
    std::map<TypedKey, Scalar> memo_, memo1_;
};

// Orbit coordinates of an S_n-invariant tensor as keys of full weight.
inline TypedCombo typed_coords(const TensorElement& t) {
    TypedCombo out;
    for (auto& [rep, v] : orbit_coords(t)) {
        TypedKey key(t.algebra().rank(), 0);
        for (auto i : rep) ++key[i];
        out.emplace(std::move(key), v);
    }
    return out;
}

inline ElementaryExpr express_in_elementary(const TensorElement& t, bool rho1_only = false) {
    const MultTableAlgebra& alg = t.algebra();
    const std::size_t n = t.n();
    if (rho1_only && !is_unit(from_int(alg.base(), factorial(static_cast<long>(n)))))
        throw InputError(std::to_string(n) + "! is not invertible in " + alg.base().describe() +
                         "; rho_1-only expression unavailable");
    ElementaryRewriter rw(alg, n);
    Scalar acc = zero(rw.ring());
    for (auto& [key, v] : typed_coords(t))
        acc += embed(v, rw.ring()) * (rho1_only ? rw.express_rho1(key) : rw.express(key));
    return ElementaryExpr{alg, n, acc};
}

// Substitutes R[k][e] := rho_k(e) and multiplies out in the tensor power.
inline TensorElement evaluate(const ElementaryExpr& e) {
    const MultTableAlgebra& alg = e.algebra;
    const std::size_t n = e.n, r = alg.rank();
    std::map<std::pair<std::size_t, std::uint32_t>, TensorElement> powers;  // (var, exponent)
    auto power = [&](std::size_t var, std::uint32_t p) -> TensorElement {
        auto key = std::make_pair(var, p);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        const std::size_t k = var / r + 1, label = var % r;
        TensorElement base = elem_sym(alg.basis(label), k, n);
        TensorElement acc = unit_tensor(alg, n);
        for (std::uint32_t i = 0; i < p; ++i) acc = tensor_mul(acc, base);
        return powers.emplace(key, acc).first->second;
    };
    TensorElement out(alg, n);
    for (auto& term : e.expr.terms()) {
        TensorElement m = unit_tensor(alg, n);
        for (std::size_t v = 0; v < term.exps.size(); ++v)
            if (term.exps[v]) m = tensor_mul(m, power(v, term.exps[v]));
        out = out + (term.coeff * m);
    }
    return out;
}

// Dimension of the subalgebra of S_n(B|A) generated by `gens`, over a field
// A.  Each new independent product is multiplied by every generator until
// the span stops growing.
inline std::size_t generated_dimension(const MultTableAlgebra& alg, std::size_t n, const std::vector<TensorElement>& gens) {
    const BaseRing& k = alg.base();
    const auto reps = sorted_tuples(alg.rank(), n);
    std::map<Tuple, std::size_t> pos;
    for (std::size_t i = 0; i < reps.size(); ++i) pos[reps[i]] = i;
    auto coords = [&](const TensorElement& t) {
        Vec v(reps.size(), zero(k));
        for (auto& [rep, c] : orbit_coords(t)) v[pos.at(rep)] = c;
        return v;
    };
    RowSpace span(k, reps.size());
    std::vector<TensorElement> queue{unit_tensor(alg, n)};
    span.insert(coords(queue[0]));
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (auto& g : gens) {
            TensorElement p = tensor_mul(queue[q], g);
            if (span.insert(coords(p))) queue.push_back(std::move(p));
        }
    return span.rank();
}

}  // namespace symalg
