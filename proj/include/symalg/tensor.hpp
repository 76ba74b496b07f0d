#pragma once
/// \file tensor.hpp
/// Sparse elements of the n-fold tensor power of an algebra B over A, the
/// slot-permutation action, symmetric tensors rho_k / rho_a, orbit-sum bases,
/// and the splitting maps sigma and tau.
///
/// A term is keyed by the tuple of basis indices in slots 0..n-1.  For the
/// full symmetric group the orbit of a tuple is represented by its sorted
/// rearrangement.

#include "algebra.hpp"
#include "permutation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace symalg {

using Tuple = std::vector<std::uint32_t>;

class TensorElement {
public:
    TensorElement(MultTableAlgebra alg, std::size_t n) : alg_(std::move(alg)), n_(n) {}
    TensorElement(MultTableAlgebra alg, std::size_t n, const std::map<Tuple, Scalar>& terms) : alg_(std::move(alg)), n_(n) {
        for (auto& [k, v] : terms) add_term(k, v);
    }

    const MultTableAlgebra& algebra() const { return alg_; }
    const BaseRing& base() const { return alg_.base(); }
    std::size_t n() const { return n_; }
    const std::map<Tuple, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(const Tuple& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? zero(base()) : it->second;
    }

    void add_term(const Tuple& t, const Scalar& c) {
        if (t.size() != n_) throw InputError("tuple length differs from the tensor degree");
        for (auto i : t)
            if (i >= alg_.rank()) throw InputError("basis index out of range in tuple");
        Scalar cc = c.ring() == base() ? c : embed(c, base());
        if (cc.is_zero()) return;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, std::move(cc));
        } else {
            it->second += cc;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const TensorElement& o) const {
        if (alg_ != o.alg_ || n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
        auto a = terms_.begin();
        for (auto b = o.terms_.begin(); b != o.terms_.end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
        return true;
    }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

private:
    MultTableAlgebra alg_;
    std::size_t n_;
    std::map<Tuple, Scalar> terms_;
};

namespace detail {
inline void require_compatible(const TensorElement& s, const TensorElement& t, const char* op) {
    if (s.algebra() != t.algebra() || s.n() != t.n())
        throw InputError(std::string("shape mismatch in ") + op + ": degree " + std::to_string(s.n()) + " vs " +
                         std::to_string(t.n()));
}
}  // namespace detail

inline TensorElement operator+(const TensorElement& s, const TensorElement& t) {
    detail::require_compatible(s, t, "+");
    TensorElement r = s;
    for (auto& [k, v] : t.terms()) r.add_term(k, v);
    return r;
}

inline TensorElement operator*(const Scalar& a, const TensorElement& t) {
    TensorElement r(t.algebra(), t.n());
    Scalar aa = embed(a, t.base());
    for (auto& [k, v] : t.terms()) r.add_term(k, aa * v);
    return r;
}

inline TensorElement operator-(const TensorElement& s, const TensorElement& t) {
    return s + (from_int(t.base(), -1) * t);
}

// Sum over all choices of one term from each factor (factor k = slot k).
inline TensorElement pure_tensor(const MultTableAlgebra& alg, const std::vector<Scalar>& factors) {
    const std::size_t n = factors.size();
    TensorElement out(alg, n);
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> nz(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (factors[s].ring() != alg.ring()) throw RingMismatch("tensor factor is not an element of the algebra");
        for (std::size_t i = 0; i < alg.rank(); ++i)
            if (!factors[s].coords()[i].is_zero()) nz[s].emplace_back(static_cast<std::uint32_t>(i), factors[s].coords()[i]);
        if (nz[s].empty()) return out;
    }
    Tuple tuple(n);
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t s, const Scalar& c) {
        if (s == n) {
            out.add_term(tuple, c);
            return;
        }
        for (auto& [i, v] : nz[s]) {
            tuple[s] = i;
            rec(s + 1, c * v);
        }
    };
    rec(0, one(alg.base()));
    return out;
}

inline TensorElement unit_tensor(const MultTableAlgebra& alg, std::size_t n) {
    return pure_tensor(alg, std::vector<Scalar>(n, alg.unit()));
}

inline TensorElement basis_tensor(const MultTableAlgebra& alg, const Tuple& t) {
    TensorElement out(alg, t.size());
    out.add_term(t, one(alg.base()));
    return out;
}

// Slotwise product, extended bilinearly.
inline TensorElement tensor_mul(const TensorElement& s, const TensorElement& t) {
    detail::require_compatible(s, t, "tensor_mul");
    const MultTableAlgebra& alg = s.algebra();
    const std::size_t r = alg.rank(), n = s.n();
    std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> prod(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k)
                if (!alg.c(i, j, k).is_zero()) prod[i * r + j].emplace_back(static_cast<std::uint32_t>(k), alg.c(i, j, k));
    TensorElement out(alg, n);
    Tuple tuple(n);
    for (auto& [ta, ca] : s.terms())
        for (auto& [tb, cb] : t.terms()) {
            std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t slot, const Scalar& c) {
                if (slot == n) {
                    out.add_term(tuple, c);
                    return;
                }
                for (auto& [k, v] : prod[ta[slot] * r + tb[slot]]) {
                    tuple[slot] = k;
                    rec(slot + 1, c * v);
                }
            };
            rec(0, ca * cb);
        }
    return out;
}

// Slot k moves to slot sigma(k).
inline TensorElement permute(const TensorElement& t, const Permutation& sigma) {
    if (sigma.size() != t.n()) throw InputError("permutation degree differs from the tensor degree");
    TensorElement out(t.algebra(), t.n());
    Tuple g(t.n());
    for (auto& [f, c] : t.terms()) {
        for (std::size_t k = 0; k < f.size(); ++k) g[sigma(k)] = f[k];
        out.add_term(g, c);
    }
    return out;
}

inline bool is_invariant(const TensorElement& t, const PermGroup& g) {
    if (g.degree() != t.n()) throw InputError("subgroup degree differs from the tensor degree");
    for (auto& p : g.generators())
        if (permute(t, p) != t) return false;
    return true;
}

class NotInvariant : public InputError {
public:
    using InputError::InputError;
};

class SymTensor {
public:
    explicit SymTensor(TensorElement t) : SymTensor(t, PermGroup::symmetric(t.n())) {}
    SymTensor(TensorElement t, PermGroup g) : t_(std::move(t)), g_(std::move(g)) {
        if (!is_invariant(t_, g_)) throw NotInvariant("tensor is not invariant under the given subgroup");
    }
    const TensorElement& tensor() const { return t_; }
    const PermGroup& group() const { return g_; }
    operator const TensorElement&() const { return t_; }

private:
    TensorElement t_;
    PermGroup g_;
};

// ---------------------------------------------------------------------------
// Conjugates and symmetric tensors

// b in slot k (1-based), 1 elsewhere.
inline TensorElement conjugate(const Scalar& b, std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw InputError("conjugate: slot " + std::to_string(k) + " out of range 1.." + std::to_string(n));
    MultTableAlgebra alg(b.ring());
    std::vector<Scalar> f(n, alg.unit());
    f[k - 1] = b;
    return pure_tensor(alg, f);
}

// Sum over f: [n] -> {0..r} with |f^{-1}(i)| = a_i of b_{f(1)} (x) ... (x) b_{f(n)}, b_0 = 1.
inline TensorElement typed_sym(const std::vector<std::size_t>& a, const std::vector<Scalar>& bs, std::size_t n,
                               const MultTableAlgebra& alg) {
    if (a.size() != bs.size()) throw InputError("typed_sym: type length differs from the number of elements");
    std::size_t w = 0;
    for (auto x : a) w += x;
    if (w > n) throw InputError("typed_sym: weight " + std::to_string(w) + " exceeds n = " + std::to_string(n));
    std::vector<std::uint32_t> word(n - w, 0);
    for (std::size_t i = 0; i < a.size(); ++i) word.insert(word.end(), a[i], static_cast<std::uint32_t>(i + 1));
    std::sort(word.begin(), word.end());
    std::vector<Scalar> elems{alg.unit()};
    for (auto& b : bs) {
        if (b.ring() != alg.ring()) throw RingMismatch("typed_sym: element of another algebra");
        elems.push_back(b);
    }
    TensorElement out(alg, n);
    std::vector<Scalar> f(n);
    do {
        for (std::size_t s = 0; s < n; ++s) f[s] = elems[word[s]];
        out = out + pure_tensor(alg, f);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

inline TensorElement typed_sym(const std::vector<std::size_t>& a, const std::vector<Scalar>& bs, std::size_t n) {
    if (bs.empty()) throw InputError("typed_sym with no elements needs an explicit algebra");
    return typed_sym(a, bs, n, MultTableAlgebra(bs[0].ring()));
}

inline TensorElement elem_sym(const Scalar& b, std::size_t k, std::size_t n) {
    if (k > n) throw InputError("elem_sym: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    return typed_sym({k}, {b}, n);
}

// ---------------------------------------------------------------------------
// Orbit-sum bases

// Sorted n-tuples over {0..r-1}, lexicographic.
inline std::vector<Tuple> sorted_tuples(std::size_t r, std::size_t n) {
    std::vector<Tuple> out;
    if (r == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    Tuple t(n, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = n;
        while (i > 0 && t[i - 1] == r - 1) --i;
        if (i == 0) break;
        std::uint32_t v = t[i - 1] + 1;
        for (std::size_t j = i - 1; j < n; ++j) t[j] = v;
    }
    return out;
}

inline std::vector<Tuple> symmetric_orbit(Tuple rep) {
    std::sort(rep.begin(), rep.end());
    std::vector<Tuple> out;
    do out.push_back(rep);
    while (std::next_permutation(rep.begin(), rep.end()));
    return out;
}

inline TensorElement orbit_sum(const MultTableAlgebra& alg, const Tuple& rep) {
    TensorElement out(alg, rep.size());
    for (auto& t : symmetric_orbit(rep)) out.add_term(t, one(alg.base()));
    return out;
}

struct OrbitBasis {
    std::vector<Tuple> reps;                 // lex-minimal tuple of each orbit
    std::vector<std::vector<Tuple>> orbits;  // members, sorted
    std::vector<TensorElement> sums;
};

// Orbit sums of basis tuples under a subgroup of S_n, ordered by representative.
inline OrbitBasis invariant_basis(const MultTableAlgebra& alg, std::size_t n, const PermGroup& g,
                                  std::size_t limit = 1u << 20) {
    if (g.degree() != n) throw InputError("subgroup degree differs from n");
    const std::size_t r = alg.rank();
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(r);
    if (total > static_cast<double>(limit)) throw ResourceLimit("rank^n exceeds the tuple limit");
    OrbitBasis out;
    std::set<Tuple> seen;
    Tuple t(n, 0);
    auto next = [&]() {
        std::size_t i = n;
        while (i > 0) {
            if (++t[i - 1] < r) return true;
            t[i - 1] = 0;
            --i;
        }
        return false;
    };
    if (r == 0 && n > 0) return out;
    do {
        if (seen.count(t)) continue;
        std::set<Tuple> orbit{t};
        std::deque<Tuple> queue{t};
        Tuple h(n);
        while (!queue.empty()) {
            Tuple f = queue.front();
            queue.pop_front();
            for (auto& p : g.generators()) {
                for (std::size_t k = 0; k < n; ++k) h[p(k)] = f[k];
                if (orbit.insert(h).second) queue.push_back(h);
            }
        }
        seen.insert(orbit.begin(), orbit.end());
        TensorElement sum(alg, n);
        for (auto& m : orbit) sum.add_term(m, one(alg.base()));
        out.reps.push_back(t);
        out.orbits.emplace_back(orbit.begin(), orbit.end());
        out.sums.push_back(std::move(sum));
    } while (n > 0 && next());
    return out;
}

inline OrbitBasis invariant_basis(const MultTableAlgebra& alg, std::size_t n) {
    OrbitBasis out;
    for (auto& rep : sorted_tuples(alg.rank(), n)) {
        out.reps.push_back(rep);
        out.orbits.push_back(symmetric_orbit(rep));
        out.sums.push_back(orbit_sum(alg, rep));
    }
    return out;
}

// Coordinates of an S_n-invariant tensor in the orbit-sum basis.
inline std::map<Tuple, Scalar> orbit_coords(const TensorElement& t) {
    if (!is_invariant(t, PermGroup::symmetric(t.n()))) throw NotInvariant("tensor is not S_n-invariant");
    std::map<Tuple, Scalar> out;
    for (auto& [k, v] : t.terms())
        if (std::is_sorted(k.begin(), k.end())) out.emplace(k, v);
    return out;
}

inline TensorElement from_orbit_coords(const MultTableAlgebra& alg, std::size_t n, const std::map<Tuple, Scalar>& c) {
    TensorElement out(alg, n);
    for (auto& [rep, v] : c)
        for (auto& t : symmetric_orbit(rep)) out.add_term(t, v);
    return out;
}

// S_n(B|A) as an algebra over A in its orbit-sum basis.
struct SymPower {
    MultTableAlgebra source;
    std::size_t n = 0;
    std::vector<Tuple> reps;
    std::map<Tuple, std::size_t> index;
    MultTableAlgebra algebra;

    std::size_t index_of(const Tuple& rep) const {
        auto it = index.find(rep);
        if (it == index.end()) throw InputError("tuple is not an orbit representative");
        return it->second;
    }
};

inline std::string tuple_label(const MultTableAlgebra& alg, const Tuple& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + alg.labels()[t[i]];
    return s + "]";
}

inline SymPower sym_power_algebra(const MultTableAlgebra& b, std::size_t n) {
    SymPower sp;
    sp.source = b;
    sp.n = n;
    sp.reps = sorted_tuples(b.rank(), n);
    for (std::size_t i = 0; i < sp.reps.size(); ++i) sp.index[sp.reps[i]] = i;
    const std::size_t N = sp.reps.size();
    std::vector<TensorElement> sums;
    for (auto& r : sp.reps) sums.push_back(orbit_sum(b, r));
    std::vector<Scalar> table(N * N * N, zero(b.base()));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
            auto c = orbit_coords(tensor_mul(sums[i], sums[j]));
            for (auto& [rep, v] : c) {
                std::size_t k = sp.index.at(rep);
                table[(i * N + j) * N + k] = v;
                table[(j * N + i) * N + k] = v;
            }
        }
    std::vector<Scalar> unit(N, zero(b.base()));
    for (auto& [rep, v] : orbit_coords(unit_tensor(b, n))) unit[sp.index.at(rep)] = v;
    std::vector<std::string> labels;
    for (auto& r : sp.reps) labels.push_back(tuple_label(b, r));
    sp.algebra = make_algebra(b.base(), labels, table, unit, "S" + std::to_string(n) + "(" + b.name() + ")", false);
    return sp;
}

// ---------------------------------------------------------------------------
// sigma: S_{n_1+...+n_r} -> S_{n_1} (x) ... (x) S_{n_r}

// Coordinates on tensor products of orbit sums, keyed by one sorted tuple per block.
struct SplitTensor {
    MultTableAlgebra algebra;
    std::vector<std::size_t> parts;
    std::map<std::vector<Tuple>, Scalar> terms;

    bool operator==(const SplitTensor& o) const {
        if (algebra != o.algebra || parts != o.parts || terms.size() != o.terms.size()) return false;
        auto a = terms.begin();
        for (auto b = o.terms.begin(); b != o.terms.end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
        return true;
    }
};

inline SplitTensor sigma_map(const TensorElement& t, const std::vector<std::size_t>& parts) {
    std::size_t total = 0;
    for (auto p : parts) total += p;
    if (total != t.n()) throw InputError("sigma_map: parts do not sum to the tensor degree");
    if (!is_invariant(t, PermGroup::symmetric(t.n()))) throw NotInvariant("sigma_map needs an S_n-invariant tensor");
    SplitTensor out{t.algebra(), parts, {}};
    for (auto& [k, v] : t.terms()) {
        std::vector<Tuple> blocks;
        std::size_t off = 0;
        bool canonical = true;
        for (auto p : parts) {
            Tuple b(k.begin() + off, k.begin() + off + p);
            canonical = canonical && std::is_sorted(b.begin(), b.end());
            blocks.push_back(std::move(b));
            off += p;
        }
        if (canonical) out.terms.emplace(std::move(blocks), v);
    }
    return out;
}

// The inclusion back into the full tensor power.
inline TensorElement sigma_unsplit(const SplitTensor& u) {
    std::size_t total = 0;
    for (auto p : u.parts) total += p;
    TensorElement out(u.algebra, total);
    for (auto& [blocks, v] : u.terms) {
        std::vector<std::vector<Tuple>> orbits;
        for (auto& b : blocks) orbits.push_back(symmetric_orbit(b));
        Tuple g;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == orbits.size()) {
                out.add_term(g, v);
                return;
            }
            for (auto& m : orbits[i]) {
                g.insert(g.end(), m.begin(), m.end());
                rec(i + 1);
                g.resize(g.size() - m.size());
            }
        };
        rec(0);
    }
    return out;
}

// Product in S_{n_1} (x) ... (x) S_{n_r}, computed blockwise in orbit coordinates.
inline SplitTensor split_mul(const SplitTensor& u, const SplitTensor& v) {
    if (u.algebra != v.algebra || u.parts != v.parts) throw InputError("split_mul shape mismatch");
    const MultTableAlgebra& alg = u.algebra;
    std::map<std::pair<Tuple, Tuple>, std::map<Tuple, Scalar>> memo;
    auto block_product = [&](const Tuple& a, const Tuple& b) -> const std::map<Tuple, Scalar>& {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        return memo.emplace(key, orbit_coords(tensor_mul(orbit_sum(alg, a), orbit_sum(alg, b)))).first->second;
    };
    SplitTensor out{alg, u.parts, {}};
    for (auto& [ka, ca] : u.terms)
        for (auto& [kb, cb] : v.terms) {
            std::vector<std::map<Tuple, Scalar>> factors;
            for (std::size_t i = 0; i < ka.size(); ++i) factors.push_back(block_product(ka[i], kb[i]));
            std::vector<Tuple> key(ka.size());
            std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
                if (i == factors.size()) {
                    auto it = out.terms.find(key);
                    if (it == out.terms.end())
                        out.terms.emplace(key, c);
                    else
                        it->second += c;
                    return;
                }
                for (auto& [t, x] : factors[i]) {
                    key[i] = t;
                    rec(i + 1, c * x);
                }
            };
            rec(0, ca * cb);
        }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// tau: S_{mn} -> S_m(S_n)

// Reads t under the wreath embedding (column x = slots x + m*y) and returns the
// corresponding degree-m tensor over the algebra S_n(B|A).
inline TensorElement tau_map(const TensorElement& t, std::size_t m, std::size_t n, const SymPower& sp) {
    if (t.n() != m * n) throw InputError("tau_map: degree is not m*n");
    if (sp.source != t.algebra() || sp.n != n) throw InputError("tau_map: wrong symmetric power");
    if (!is_invariant(t, PermGroup::symmetric(t.n()))) throw NotInvariant("tau_map needs an S_mn-invariant tensor");
    TensorElement out(sp.algebra, m);
    for (auto& [g, v] : t.terms()) {
        Tuple outer(m);
        bool canonical = true;
        for (std::size_t x = 0; x < m && canonical; ++x) {
            Tuple col(n);
            for (std::size_t y = 0; y < n; ++y) col[y] = g[x + m * y];
            canonical = std::is_sorted(col.begin(), col.end());
            if (canonical) outer[x] = static_cast<std::uint32_t>(sp.index_of(col));
        }
        if (!canonical || !std::is_sorted(outer.begin(), outer.end())) continue;
        for (auto& o : symmetric_orbit(outer)) out.add_term(o, v);
    }
    return out;
}

inline TensorElement tau_unmap(const TensorElement& s, std::size_t m, std::size_t n, const SymPower& sp) {
    if (s.n() != m || s.algebra() != sp.algebra) throw InputError("tau_unmap: shape mismatch");
    TensorElement out(sp.source, m * n);
    for (auto& [outer, v] : s.terms()) {
        std::vector<std::vector<Tuple>> cols;
        for (auto i : outer) cols.push_back(symmetric_orbit(sp.reps[i]));
        Tuple g(m * n);
        std::function<void(std::size_t)> rec = [&](std::size_t x) {
            if (x == m) {
                out.add_term(g, v);
                return;
            }
            for (auto& c : cols[x]) {
                for (std::size_t y = 0; y < n; ++y) g[x + m * y] = c[y];
                rec(x + 1);
            }
        };
        rec(0);
    }
    return out;
}

// Applies an algebra map f: B -> B' (images of basis elements) in every slot.
inline TensorElement tensor_power_map(const TensorElement& t, const MultTableAlgebra& target,
                                      const std::vector<Scalar>& images) {
    if (images.size() != t.algebra().rank()) throw InputError("one image per basis element required");
    TensorElement out(target, t.n());
    for (auto& [k, v] : t.terms()) {
        std::vector<Scalar> f;
        for (auto i : k) f.push_back(images[i]);
        out = out + (v * pure_tensor(target, f));
    }
    return out;
}

}  // namespace symalg
