#pragma once
/// \file multivalued.hpp
/// Multivalued morphisms between finite discrete sets.  A morphism X -o Y
/// sends each x to a finite multiset over Y; sum, composition and tensor are
/// computed by literally unfolding multisets, and the Lambda-linear
/// extensions are plain matrices.

#include "finset.hpp"
#include "rings.hpp"
#include "witness.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symalg {

using Counts = std::vector<std::uint64_t>;

struct Multiset {
    FinSet over;
    Counts counts;  // one entry per element, zero allowed

    std::uint64_t size() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
    // The multiset spelled out with repetitions, in index order.
    std::vector<std::size_t> unfold() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < counts.size(); ++i) out.insert(out.end(), counts[i], i);
        return out;
    }
    static Multiset fold(const FinSet& over, const std::vector<std::size_t>& elems) {
        Multiset m{over, Counts(over.size(), 0)};
        for (auto e : elems) ++m.counts.at(e);
        return m;
    }
    bool operator==(const Multiset& o) const { return over == o.over && counts == o.counts; }
};

class MultiMorphism {
public:
    MultiMorphism(FinSet source, FinSet target)
        : src_(std::move(source)), tgt_(std::move(target)), c_(src_.size() * tgt_.size(), 0) {}
    MultiMorphism(FinSet source, FinSet target, Counts counts)
        : src_(std::move(source)), tgt_(std::move(target)), c_(std::move(counts)) {
        if (c_.size() != src_.size() * tgt_.size()) throw InputError("count matrix has the wrong shape");
    }

    const FinSet& source() const { return src_; }
    const FinSet& target() const { return tgt_; }
    const Counts& counts() const { return c_; }

    std::uint64_t count(std::size_t x, std::size_t y) const { return c_[x * tgt_.size() + y]; }
    std::uint64_t& count(std::size_t x, std::size_t y) { return c_[x * tgt_.size() + y]; }

    Multiset assign(std::size_t x) const {
        const std::size_t m = tgt_.size();
        return Multiset{tgt_, Counts(c_.begin() + x * m, c_.begin() + (x + 1) * m)};
    }
    void set(std::size_t x, const Multiset& ms) {
        if (ms.over != tgt_) throw InputError("multiset over the wrong set");
        for (std::size_t y = 0; y < tgt_.size(); ++y) count(x, y) = ms.counts[y];
    }

    std::uint64_t degree_at(std::size_t x) const { return assign(x).size(); }
    // The common degree, if homogeneous.  Empty sources are homogeneous of every degree; 0 is reported.
    std::optional<std::uint64_t> degree() const {
        if (src_.size() == 0) return 0;
        const std::uint64_t d = degree_at(0);
        for (std::size_t x = 1; x < src_.size(); ++x)
            if (degree_at(x) != d) return std::nullopt;
        return d;
    }

    bool operator==(const MultiMorphism& o) const { return src_ == o.src_ && tgt_ == o.tgt_ && c_ == o.c_; }
    bool operator!=(const MultiMorphism& o) const { return !(*this == o); }

private:
    FinSet src_, tgt_;
    Counts c_;
};

inline MultiMorphism mv_zero(const FinSet& x, const FinSet& y) { return MultiMorphism(x, y); }

inline MultiMorphism mv_from_function(const FinSet& x, const FinSet& y, const std::vector<std::size_t>& f) {
    if (f.size() != x.size()) throw InputError("function must be defined on every source element");
    MultiMorphism out(x, y);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= y.size()) throw InputError("function sends " + x.label(i) + " outside the target");
        out.count(i, f[i]) = 1;
    }
    return out;
}

inline MultiMorphism mv_identity(const FinSet& x) {
    std::vector<std::size_t> f(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
    return mv_from_function(x, x, f);
}

inline MultiMorphism mv_add(const MultiMorphism& a, const MultiMorphism& b) {
    if (a.source() != b.source() || a.target() != b.target()) throw InputError("mv_add: shape mismatch");
    Counts c = a.counts();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.counts()[i];
    return MultiMorphism(a.source(), a.target(), std::move(c));
}

// (beta o alpha)(x): every y in alpha(x), with multiplicity, contributes beta(y).
inline MultiMorphism mv_compose(const MultiMorphism& beta, const MultiMorphism& alpha) {
    if (alpha.target() != beta.source()) throw InputError("mv_compose: target of the first is not the source of the second");
    const std::size_t ny = alpha.target().size(), nz = beta.target().size();
    MultiMorphism out(alpha.source(), beta.target());
    std::vector<std::size_t> flat;
    for (std::size_t x = 0; x < alpha.source().size(); ++x) {
        flat.clear();
        for (std::size_t y = 0; y < ny; ++y)
            for (std::uint64_t i = 0; i < alpha.count(x, y); ++i)
                for (std::size_t z = 0; z < nz; ++z) flat.insert(flat.end(), beta.count(y, z), z);
        for (auto z : flat) ++out.count(x, z);
    }
    return out;
}

// (a1 (x) a2)(x1, x2) = all pairs (y1, y2) with y_i in a_i(x_i).
inline MultiMorphism mv_tensor(const MultiMorphism& a1, const MultiMorphism& a2) {
    const FinSet src = FinSet::product(a1.source(), a2.source()), tgt = FinSet::product(a1.target(), a2.target());
    const std::size_t n2 = a2.source().size(), m1 = a1.target().size(), m2 = a2.target().size();
    MultiMorphism out(src, tgt);
    std::vector<std::size_t> f1, f2;
    for (std::size_t x1 = 0; x1 < a1.source().size(); ++x1)
        for (std::size_t x2 = 0; x2 < n2; ++x2) {
            f1.clear();
            f2.clear();
            for (std::size_t y = 0; y < m1; ++y) f1.insert(f1.end(), a1.count(x1, y), y);
            for (std::size_t y = 0; y < m2; ++y) f2.insert(f2.end(), a2.count(x2, y), y);
            for (auto y1 : f1)
                for (auto y2 : f2) ++out.count(x1 * n2 + x2, y1 * m2 + y2);
        }
    return out;
}

// X x Y -> Y x X
inline MultiMorphism mv_swap(const FinSet& x, const FinSet& y) {
    std::vector<std::size_t> f(x.size() * y.size());
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b) f[a * y.size() + b] = b * x.size() + a;
    return mv_from_function(FinSet::product(x, y), FinSet::product(y, x), f);
}

// (X x Y) x Z -> X x (Y x Z)
inline MultiMorphism mv_associator(const FinSet& x, const FinSet& y, const FinSet& z) {
    const std::size_t p = y.size(), q = z.size();
    std::vector<std::size_t> f(x.size() * p * q);
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < p; ++b)
            for (std::size_t c = 0; c < q; ++c) f[(a * p + b) * q + c] = a * (p * q) + (b * q + c);
    return mv_from_function(FinSet::product(FinSet::product(x, y), z), FinSet::product(x, FinSet::product(y, z)), f);
}

inline nlohmann::json morphism_json(const MultiMorphism& a) {
    nlohmann::json assign = nlohmann::json::array();
    for (std::size_t x = 0; x < a.source().size(); ++x) {
        nlohmann::json ms = nlohmann::json::array();
        for (std::size_t y = 0; y < a.target().size(); ++y)
            if (a.count(x, y)) ms.push_back({{"y", a.target().label(y)}, {"count", a.count(x, y)}});
        assign.push_back({{"x", a.source().label(x)}, {"multiset", ms}});
    }
    return {{"source", a.source().labels()}, {"target", a.target().labels()}, {"assign", assign}};
}

// ---------------------------------------------------------------------------
// Linear extensions: matrices indexed by (x, y)

class LinearMorphism {
public:
    LinearMorphism(FinSet source, FinSet target, BaseRing ring)
        : src_(std::move(source)), tgt_(std::move(target)), ring_(std::move(ring)),
          m_(src_.size() * tgt_.size(), zero(ring_)) {}

    const FinSet& source() const { return src_; }
    const FinSet& target() const { return tgt_; }
    const BaseRing& ring() const { return ring_; }
    const Scalar& at(std::size_t x, std::size_t y) const { return m_[x * tgt_.size() + y]; }
    void set(std::size_t x, std::size_t y, const Scalar& v) { m_[x * tgt_.size() + y] = embed(v, ring_); }

    bool operator==(const LinearMorphism& o) const {
        return src_ == o.src_ && tgt_ == o.tgt_ && ring_ == o.ring_ && m_ == o.m_;
    }
    bool operator!=(const LinearMorphism& o) const { return !(*this == o); }

private:
    FinSet src_, tgt_;
    BaseRing ring_;
    std::vector<Scalar> m_;
};

inline LinearMorphism lin_add(const LinearMorphism& a, const LinearMorphism& b) {
    if (a.source() != b.source() || a.target() != b.target() || a.ring() != b.ring()) throw InputError("lin_add: shape mismatch");
    LinearMorphism out(a.source(), a.target(), a.ring());
    for (std::size_t x = 0; x < a.source().size(); ++x)
        for (std::size_t y = 0; y < a.target().size(); ++y) out.set(x, y, a.at(x, y) + b.at(x, y));
    return out;
}

inline LinearMorphism lin_scale(const Scalar& s, const LinearMorphism& a) {
    LinearMorphism out(a.source(), a.target(), a.ring());
    const Scalar c = embed(s, a.ring());
    for (std::size_t x = 0; x < a.source().size(); ++x)
        for (std::size_t y = 0; y < a.target().size(); ++y) out.set(x, y, c * a.at(x, y));
    return out;
}

// (d o c)(x, z) = sum_y c(x, y) d(y, z)
inline LinearMorphism lin_compose(const LinearMorphism& d, const LinearMorphism& c) {
    if (c.target() != d.source() || c.ring() != d.ring()) throw InputError("lin_compose: chain mismatch");
    LinearMorphism out(c.source(), d.target(), c.ring());
    for (std::size_t x = 0; x < c.source().size(); ++x)
        for (std::size_t z = 0; z < d.target().size(); ++z) {
            Scalar acc = zero(c.ring());
            for (std::size_t y = 0; y < c.target().size(); ++y) acc += c.at(x, y) * d.at(y, z);
            out.set(x, z, acc);
        }
    return out;
}

inline LinearMorphism lin_tensor(const LinearMorphism& a, const LinearMorphism& b) {
    if (a.ring() != b.ring()) throw InputError("lin_tensor: different coefficient rings");
    LinearMorphism out(FinSet::product(a.source(), b.source()), FinSet::product(a.target(), b.target()), a.ring());
    const std::size_t n2 = b.source().size(), m2 = b.target().size();
    for (std::size_t x1 = 0; x1 < a.source().size(); ++x1)
        for (std::size_t x2 = 0; x2 < n2; ++x2)
            for (std::size_t y1 = 0; y1 < a.target().size(); ++y1)
                for (std::size_t y2 = 0; y2 < m2; ++y2) out.set(x1 * n2 + x2, y1 * m2 + y2, a.at(x1, y1) * b.at(x2, y2));
    return out;
}

inline LinearMorphism linearize(const MultiMorphism& a, const BaseRing& ring) {
    LinearMorphism out(a.source(), a.target(), ring);
    for (std::size_t x = 0; x < a.source().size(); ++x)
        for (std::size_t y = 0; y < a.target().size(); ++y)
            if (a.count(x, y)) out.set(x, y, from_int(ring, a.count(x, y)));
    return out;
}

inline LinearMorphism mv_to_corr(const MultiMorphism& a) { return linearize(a, BaseRing::integers()); }

inline MultiMorphism corr_to_mv(const LinearMorphism& c) {
    if (c.ring().kind() != RingKind::Integers) throw InputError("corr_to_mv needs integer coefficients");
    MultiMorphism out(c.source(), c.target());
    for (std::size_t x = 0; x < c.source().size(); ++x)
        for (std::size_t y = 0; y < c.target().size(); ++y) {
            const Integer& v = c.at(x, y).integer();
            if (v < 0) throw InputError("corr_to_mv: negative coefficient at (" + c.source().label(x) + ", " + c.target().label(y) + ")");
            out.count(x, y) = static_cast<std::uint64_t>(v);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition along partitions of source and target

using Partition = std::vector<std::vector<std::size_t>>;

inline void check_partition(const Partition& p, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (auto& block : p)
        for (auto i : block) {
            if (i >= n || seen[i]++) throw InputError("blocks do not form a partition");
        }
    for (auto s : seen)
        if (!s) throw InputError("blocks do not form a partition");
}

inline FinSet sub_set(const FinSet& x, const std::vector<std::size_t>& block) {
    std::vector<std::string> l;
    for (auto i : block) l.push_back(x.label(i));
    return FinSet(std::move(l));
}

struct Decomposition {
    Partition xs, ys;
    std::vector<std::vector<MultiMorphism>> blocks;  // [i][j]: X_i -o Y_j
};

inline Decomposition decompose_hom(const MultiMorphism& a, const Partition& xs, const Partition& ys) {
    check_partition(xs, a.source().size());
    check_partition(ys, a.target().size());
    Decomposition d{xs, ys, {}};
    for (auto& bx : xs) {
        std::vector<MultiMorphism> row;
        const FinSet sx = sub_set(a.source(), bx);
        for (auto& by : ys) {
            MultiMorphism m(sx, sub_set(a.target(), by));
            for (std::size_t i = 0; i < bx.size(); ++i)
                for (std::size_t j = 0; j < by.size(); ++j) m.count(i, j) = a.count(bx[i], by[j]);
            row.push_back(std::move(m));
        }
        d.blocks.push_back(std::move(row));
    }
    return d;
}

inline MultiMorphism merge_hom(const Decomposition& d, const FinSet& x, const FinSet& y) {
    check_partition(d.xs, x.size());
    check_partition(d.ys, y.size());
    MultiMorphism out(x, y);
    for (std::size_t bi = 0; bi < d.xs.size(); ++bi)
        for (std::size_t bj = 0; bj < d.ys.size(); ++bj) {
            const MultiMorphism& m = d.blocks.at(bi).at(bj);
            for (std::size_t i = 0; i < d.xs[bi].size(); ++i)
                for (std::size_t j = 0; j < d.ys[bj].size(); ++j) out.count(d.xs[bi][i], d.ys[bj][j]) = m.count(i, j);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Finite abelian groups and transfers

class GroupObject {
public:
    GroupObject(FinSet elements, std::vector<std::size_t> add, std::size_t zero, std::vector<std::size_t> neg)
        : el_(std::move(elements)), add_(std::move(add)), zero_(zero), neg_(std::move(neg)) {
        const std::size_t n = el_.size();
        if (add_.size() != n * n || neg_.size() != n || zero_ >= n) throw InputError("group tables have the wrong shape");
        for (auto v : add_)
            if (v >= n) throw InputError("addition table leaves the set");
        for (std::size_t a = 0; a < n; ++a) {
            if (neg_[a] >= n) throw InputError("negation leaves the set");
            if (plus(a, zero_) != a) throw InputError("zero is not neutral for " + el_.label(a));
            if (plus(a, neg_[a]) != zero_) throw InputError("negation fails at " + el_.label(a));
            for (std::size_t b = 0; b < n; ++b) {
                if (plus(a, b) != plus(b, a)) throw InputError("addition is not commutative");
                for (std::size_t c = 0; c < n; ++c)
                    if (plus(plus(a, b), c) != plus(a, plus(b, c))) throw InputError("addition is not associative");
            }
        }
    }

    static GroupObject cyclic(std::size_t n) {
        if (n == 0) throw InputError("cyclic group of order 0");
        std::vector<std::size_t> add(n * n), neg(n);
        for (std::size_t a = 0; a < n; ++a) {
            neg[a] = (n - a) % n;
            for (std::size_t b = 0; b < n; ++b) add[a * n + b] = (a + b) % n;
        }
        return GroupObject(FinSet::standard(n, "g"), add, 0, neg);
    }
    static GroupObject product(const GroupObject& g, const GroupObject& h) {
        const std::size_t n = g.size(), m = h.size(), N = n * m;
        std::vector<std::size_t> add(N * N), neg(N);
        for (std::size_t a = 0; a < N; ++a) {
            neg[a] = g.neg_[a / m] * m + h.neg_[a % m];
            for (std::size_t b = 0; b < N; ++b) add[a * N + b] = g.plus(a / m, b / m) * m + h.plus(a % m, b % m);
        }
        return GroupObject(FinSet::product(g.el_, h.el_), add, g.zero_ * m + h.zero_, neg);
    }

    std::size_t size() const { return el_.size(); }
    const FinSet& elements() const { return el_; }
    std::size_t zero() const { return zero_; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }
    std::size_t plus(std::size_t a, std::size_t b) const { return add_[a * size() + b]; }

private:
    FinSet el_;
    std::vector<std::size_t> add_;
    std::size_t zero_;
    std::vector<std::size_t> neg_;
};

// x |-> sum over alpha(x), with multiplicity, of f(y).
inline std::vector<std::size_t> transfer(const GroupObject& g, const MultiMorphism& alpha, const std::vector<std::size_t>& f) {
    if (f.size() != alpha.target().size()) throw InputError("transfer: f must be defined on the target");
    std::vector<std::size_t> out(alpha.source().size(), g.zero());
    for (std::size_t x = 0; x < out.size(); ++x)
        for (auto y : alpha.assign(x).unfold()) out[x] = g.plus(out[x], f[y]);
    return out;
}

// Groups of order at most 4.
inline std::vector<std::pair<std::string, GroupObject>> small_groups() {
    return {{"Z/1", GroupObject::cyclic(1)},
            {"Z/2", GroupObject::cyclic(2)},
            {"Z/3", GroupObject::cyclic(3)},
            {"Z/4", GroupObject::cyclic(4)},
            {"Z/2xZ/2", GroupObject::product(GroupObject::cyclic(2), GroupObject::cyclic(2))}};
}

// ---------------------------------------------------------------------------
// Enumeration and the category laws

// All count vectors of length n with sum <= d.
inline std::vector<Counts> bounded_multisets(std::size_t n, std::uint64_t d) {
    std::vector<Counts> out;
    Counts c(n, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i == n) {
            out.push_back(c);
            return;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            c[i] = k;
            rec(i + 1, left - k);
        }
        c[i] = 0;
    };
    rec(0, d);
    return out;
}

inline std::vector<MultiMorphism> all_morphisms(const FinSet& x, const FinSet& y, std::uint64_t max_degree) {
    const std::vector<Counts> per_point = bounded_multisets(y.size(), max_degree);
    std::vector<MultiMorphism> out;
    std::vector<std::size_t> choice(x.size(), 0);
    while (true) {
        MultiMorphism m(x, y);
        for (std::size_t i = 0; i < x.size(); ++i) m.set(i, Multiset{y, per_point[choice[i]]});
        out.push_back(std::move(m));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == per_point.size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return out;
}

inline MultiMorphism random_morphism(const FinSet& x, const FinSet& y, std::uint64_t max_degree, Rng& rng) {
    MultiMorphism m(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y.size() == 0) break;
        const std::uint64_t d = rng.below(max_degree + 1);
        for (std::uint64_t k = 0; k < d; ++k) ++m.count(i, rng.below(y.size()));
    }
    return m;
}

struct LawBounds {
    std::size_t max_size = 2;
    std::uint64_t max_degree = 2;
};

// Source of morphisms for the law checks: either every morphism between the
// standard sets of size 1..max_size, or random ones.
class MorphismSource {
public:
    explicit MorphismSource(LawBounds b) : b_(b) {
        for (std::size_t n = 1; n <= b_.max_size; ++n) sets_.push_back(FinSet::standard(n, "p"));
    }
    const std::vector<FinSet>& sets() const { return sets_; }
    const std::vector<MultiMorphism>& between(std::size_t i, std::size_t j) {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, all_morphisms(sets_[i], sets_[j], b_.max_degree)).first->second;
    }

private:
    LawBounds b_;
    std::vector<FinSet> sets_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<MultiMorphism>> cache_;
};

namespace detail {

inline nlohmann::json morphisms_json(std::initializer_list<const MultiMorphism*> ms) {
    nlohmann::json j = nlohmann::json::array();
    for (auto* m : ms) j.push_back(morphism_json(*m));
    return j;
}

}  // namespace detail

// The nine identities for concrete morphisms; each returns true when it holds.
namespace laws {

inline bool add_commutative(const MultiMorphism& a, const MultiMorphism& b) { return mv_add(a, b) == mv_add(b, a); }

inline bool add_associative(const MultiMorphism& a, const MultiMorphism& b, const MultiMorphism& c) {
    return mv_add(mv_add(a, b), c) == mv_add(a, mv_add(b, c));
}

inline bool compose_associative(const MultiMorphism& a, const MultiMorphism& b, const MultiMorphism& c) {
    return mv_compose(c, mv_compose(b, a)) == mv_compose(mv_compose(c, b), a);
}

// beta o (a1 + a2) = beta o a1 + beta o a2
inline bool left_distributive(const MultiMorphism& a1, const MultiMorphism& a2, const MultiMorphism& beta) {
    return mv_compose(beta, mv_add(a1, a2)) == mv_add(mv_compose(beta, a1), mv_compose(beta, a2));
}

// (b1 + b2) o alpha = b1 o alpha + b2 o alpha
inline bool right_distributive(const MultiMorphism& alpha, const MultiMorphism& b1, const MultiMorphism& b2) {
    return mv_compose(mv_add(b1, b2), alpha) == mv_add(mv_compose(b1, alpha), mv_compose(b2, alpha));
}

inline bool tensor_symmetric(const MultiMorphism& a1, const MultiMorphism& a2) {
    return mv_compose(mv_swap(a1.target(), a2.target()), mv_tensor(a1, a2)) ==
           mv_compose(mv_tensor(a2, a1), mv_swap(a1.source(), a2.source()));
}

inline bool tensor_associative(const MultiMorphism& a, const MultiMorphism& b, const MultiMorphism& c) {
    return mv_compose(mv_associator(a.target(), b.target(), c.target()), mv_tensor(mv_tensor(a, b), c)) ==
           mv_compose(mv_tensor(a, mv_tensor(b, c)), mv_associator(a.source(), b.source(), c.source()));
}

// a (x) (b1 + b2) = a (x) b1 + a (x) b2, and the mirror image
inline bool tensor_distributive(const MultiMorphism& a, const MultiMorphism& b1, const MultiMorphism& b2) {
    return mv_tensor(a, mv_add(b1, b2)) == mv_add(mv_tensor(a, b1), mv_tensor(a, b2)) &&
           mv_tensor(mv_add(b1, b2), a) == mv_add(mv_tensor(b1, a), mv_tensor(b2, a));
}

// (b1 o a1) (x) (b2 o a2) = (b1 (x) b2) o (a1 (x) a2)
inline bool tensor_functorial(const MultiMorphism& a1, const MultiMorphism& b1, const MultiMorphism& a2, const MultiMorphism& b2) {
    return mv_tensor(mv_compose(b1, a1), mv_compose(b2, a2)) == mv_compose(mv_tensor(b1, b2), mv_tensor(a1, a2));
}

}  // namespace laws

inline const std::vector<std::string>& category_law_names() {
    static const std::vector<std::string> names{
        "commutativity of addition",   "associativity of addition",      "associativity of composition",
        "left distributivity",         "right distributivity",           "symmetry of multiplication",
        "associativity of multiplication", "distributivity of addition and multiplication",
        "functoriality of multiplication"};
    return names;
}

// Runs the nine identities exhaustively over the bounds, then on `random`
// instances drawn with set sizes up to random_bounds.max_size.
inline std::vector<Witness> verify_category_laws(LawBounds bounds, std::size_t random, LawBounds random_bounds, Rng& rng) {
    const auto& names = category_law_names();
    std::vector<Witness> w;
    for (auto& n : names) w.push_back(Witness{n});
    using MM = MultiMorphism;
    auto rec2 = [&](std::size_t k, const MM& a, const MM& b, bool ok) {
        w[k].record(ok, [&] { return detail::morphisms_json({&a, &b}); });
    };
    auto rec3 = [&](std::size_t k, const MM& a, const MM& b, const MM& c, bool ok) {
        w[k].record(ok, [&] { return detail::morphisms_json({&a, &b, &c}); });
    };

    MorphismSource src(bounds);
    const std::size_t S = src.sets().size();
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j) {
            const auto& xy = src.between(i, j);
            for (auto& a : xy)
                for (auto& b : xy) {
                    rec2(0, a, b, laws::add_commutative(a, b));
                    for (auto& c : xy) rec3(1, a, b, c, laws::add_associative(a, b, c));
                }
            for (std::size_t k = 0; k < S; ++k) {
                const auto& yz = src.between(j, k);
                for (auto& a1 : xy)
                    for (auto& a2 : xy)
                        for (auto& beta : yz) rec3(3, a1, a2, beta, laws::left_distributive(a1, a2, beta));
                for (auto& alpha : xy)
                    for (auto& b1 : yz)
                        for (auto& b2 : yz) rec3(4, alpha, b1, b2, laws::right_distributive(alpha, b1, b2));
                for (std::size_t l = 0; l < S; ++l) {
                    const auto& zw = src.between(k, l);
                    for (auto& a : xy)
                        for (auto& b : yz)
                            for (auto& c : zw) rec3(2, a, b, c, laws::compose_associative(a, b, c));
                }
            }
        }
    // pairs of shapes for the tensor laws
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j) shapes.emplace_back(i, j);
    for (auto [i1, j1] : shapes)
        for (auto [i2, j2] : shapes) {
            const auto& m1 = src.between(i1, j1);
            const auto& m2 = src.between(i2, j2);
            for (auto& a : m1)
                for (auto& b : m2) {
                    rec2(5, a, b, laws::tensor_symmetric(a, b));
                    for (auto& b2 : m2) rec3(7, a, b, b2, laws::tensor_distributive(a, b, b2));
                }
            for (auto [i3, j3] : shapes) {
                const auto& m3 = src.between(i3, j3);
                for (auto& a : m1)
                    for (auto& b : m2)
                        for (auto& c : m3) rec3(6, a, b, c, laws::tensor_associative(a, b, c));
            }
        }
    for (std::size_t x1 = 0; x1 < S; ++x1)
        for (std::size_t y1 = 0; y1 < S; ++y1)
            for (std::size_t z1 = 0; z1 < S; ++z1)
                for (std::size_t x2 = 0; x2 < S; ++x2)
                    for (std::size_t y2 = 0; y2 < S; ++y2)
                        for (std::size_t z2 = 0; z2 < S; ++z2)
                            for (auto& a1 : src.between(x1, y1))
                                for (auto& b1 : src.between(y1, z1))
                                    for (auto& a2 : src.between(x2, y2))
                                        for (auto& b2 : src.between(y2, z2))
                                            w[8].record(laws::tensor_functorial(a1, b1, a2, b2), [&] {
                                                return detail::morphisms_json({&a1, &b1, &a2, &b2});
                                            });

    // random larger instances
    std::vector<FinSet> rsets;
    for (std::size_t n = 1; n <= random_bounds.max_size; ++n) rsets.push_back(FinSet::standard(n, "q"));
    auto pick = [&] { return rsets[rng.below(rsets.size())]; };
    const auto d = random_bounds.max_degree;
    for (std::size_t s = 0; s < random; ++s) {
        const FinSet x = pick(), y = pick(), z = pick(), v = pick(), x2 = pick(), y2 = pick(), z2 = pick();
        const MM a = random_morphism(x, y, d, rng), b = random_morphism(x, y, d, rng), c = random_morphism(x, y, d, rng);
        const MM g = random_morphism(y, z, d, rng), g2 = random_morphism(y, z, d, rng), h = random_morphism(z, v, d, rng);
        const MM p = random_morphism(x2, y2, d, rng), q = random_morphism(y2, z2, d, rng), p2 = random_morphism(x2, y2, d, rng);
        rec2(0, a, b, laws::add_commutative(a, b));
        rec3(1, a, b, c, laws::add_associative(a, b, c));
        rec3(2, a, g, h, laws::compose_associative(a, g, h));
        rec3(3, a, b, g, laws::left_distributive(a, b, g));
        rec3(4, a, g, g2, laws::right_distributive(a, g, g2));
        rec2(5, a, p, laws::tensor_symmetric(a, p));
        rec3(6, a, g, p, laws::tensor_associative(a, g, p));
        rec3(7, a, p, p2, laws::tensor_distributive(a, p, p2));
        w[8].record(laws::tensor_functorial(a, g, p, q), [&] { return detail::morphisms_json({&a, &g, &p, &q}); });
    }
    return w;
}

// deg(b o a) = deg b * deg a and deg(a1 (x) a2) = deg a1 * deg a2 on homogeneous inputs.
inline Witness check_degree_multiplicativity(LawBounds bounds) {
    Witness w{"degree multiplicativity"};
    MorphismSource src(bounds);
    const std::size_t S = src.sets().size();
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j)
            for (std::size_t k = 0; k < S; ++k)
                for (auto& a : src.between(i, j)) {
                    auto da = a.degree();
                    if (!da) continue;
                    for (auto& b : src.between(j, k)) {
                        auto db = b.degree();
                        if (!db) continue;
                        auto dc = mv_compose(b, a).degree();
                        w.record(dc && *dc == *da * *db, [&] { return detail::morphisms_json({&a, &b}); });
                        for (auto& t : src.between(k, i)) {
                            auto dt = t.degree();
                            if (!dt) continue;
                            auto dp = mv_tensor(a, t).degree();
                            w.record(dp && *dp == *da * *dt, [&] { return detail::morphisms_json({&a, &t}); });
                        }
                    }
                }
    return w;
}

// corr <-> mv: round trip, additivity, composition and tensor compatibility.
inline Witness check_correspondences(LawBounds bounds) {
    Witness w{"correspondences"};
    MorphismSource src(bounds);
    const std::size_t S = src.sets().size();
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j) {
            for (auto& a : src.between(i, j)) {
                w.record(corr_to_mv(mv_to_corr(a)) == a, [&] { return detail::morphisms_json({&a}); });
                auto d = a.degree();
                if (d) {
                    const LinearMorphism c = mv_to_corr(a);
                    bool ok = true;
                    for (std::size_t x = 0; x < a.source().size(); ++x) {
                        Integer row = 0;
                        for (std::size_t y = 0; y < a.target().size(); ++y) row += c.at(x, y).integer();
                        ok = ok && row == Integer(*d);
                    }
                    w.record(ok, [&] { return detail::morphisms_json({&a}); });
                }
                for (auto& b : src.between(i, j))
                    w.record(mv_to_corr(mv_add(a, b)) == lin_add(mv_to_corr(a), mv_to_corr(b)),
                             [&] { return detail::morphisms_json({&a, &b}); });
            }
            for (std::size_t k = 0; k < S; ++k)
                for (auto& a : src.between(i, j))
                    for (auto& b : src.between(j, k))
                        w.record(mv_to_corr(mv_compose(b, a)) == lin_compose(mv_to_corr(b), mv_to_corr(a)),
                                 [&] { return detail::morphisms_json({&a, &b}); });
        }
    for (std::size_t i1 = 0; i1 < S; ++i1)
        for (std::size_t j1 = 0; j1 < S; ++j1)
            for (std::size_t i2 = 0; i2 < S; ++i2)
                for (std::size_t j2 = 0; j2 < S; ++j2)
                    for (auto& a : src.between(i1, j1))
                        for (auto& b : src.between(i2, j2))
                            w.record(mv_to_corr(mv_tensor(a, b)) == lin_tensor(mv_to_corr(a), mv_to_corr(b)),
                                     [&] { return detail::morphisms_json({&a, &b}); });
    return w;
}

// transfer(b o a, f) = transfer(a, transfer(b, f)), transfer(id, f) = f, and
// additivity in alpha, for every group of order <= 4 and every f.
inline Witness check_transfer_functoriality(LawBounds bounds) {
    Witness w{"transfer functoriality"};
    MorphismSource src(bounds);
    const std::size_t S = src.sets().size();
    for (auto& [gname, g] : small_groups()) {
        auto all_functions = [&](std::size_t n) {
            std::vector<std::vector<std::size_t>> out;
            std::vector<std::size_t> f(n, 0);
            while (true) {
                out.push_back(f);
                std::size_t i = 0;
                while (i < n && ++f[i] == g.size()) f[i++] = 0;
                if (i == n) break;
            }
            return out;
        };
        for (std::size_t i = 0; i < S; ++i) {
            for (auto& f : all_functions(src.sets()[i].size()))
                w.record(transfer(g, mv_identity(src.sets()[i]), f) == f, [&] { return nlohmann::json{{"group", gname}}; });
            for (std::size_t j = 0; j < S; ++j)
                for (std::size_t k = 0; k < S; ++k) {
                    const auto fs = all_functions(src.sets()[k].size());
                    for (auto& a : src.between(i, j))
                        for (auto& b : src.between(j, k))
                            for (auto& f : fs) {
                                const auto lhs = transfer(g, mv_compose(b, a), f);
                                const auto rhs = transfer(g, a, transfer(g, b, f));
                                w.record(lhs == rhs, [&] {
                                    auto j = detail::morphisms_json({&a, &b});
                                    return nlohmann::json{{"group", gname}, {"morphisms", j}, {"f", f}};
                                });
                            }
                }
            for (std::size_t j = 0; j < S; ++j)
                for (auto& a : src.between(i, j))
                    for (auto& b : src.between(i, j))
                        for (auto& f : all_functions(src.sets()[j].size())) {
                        auto ta = transfer(g, a, f), tb = transfer(g, b, f), tab = transfer(g, mv_add(a, b), f);
                        bool ok = true;
                        for (std::size_t x = 0; x < ta.size(); ++x) ok = ok && tab[x] == g.plus(ta[x], tb[x]);
                        w.record(ok, [&] { return nlohmann::json{{"group", gname}, {"morphisms", detail::morphisms_json({&a, &b})}}; });
                    }
        }
    }
    return w;
}

}  // namespace symalg
