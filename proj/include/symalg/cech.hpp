#pragma once
/// \file cech.hpp
/// Cech complexes of covers of finite discrete sets, linearized over ZZ.
///
/// A cover is a family of maps f_i : U_i -> X.  Over a point x the
/// complexes split off the summand l_x spanned by tuples lying over x, and
/// every exactness question is answered one point at a time.  Residue-field
/// conditions are vacuous here, so unifibrancy only counts fibres.

#include "finset.hpp"
#include "permutation.hpp"
#include "rings.hpp"
#include "linalg.hpp"
#include "smith.hpp"
#include "witness.hpp"

#include <map>
#include <set>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

namespace symalg {

struct CoverPiece {
    FinSet elements;
    std::vector<std::size_t> map;  // index into the base
};

class Cover {
public:
    Cover(FinSet base, std::vector<CoverPiece> pieces) : base_(std::move(base)), pieces_(std::move(pieces)) {
        std::vector<bool> hit(base_.size(), false);
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            auto& p = pieces_[i];
            if (p.map.size() != p.elements.size())
                throw InputError("piece " + std::to_string(i) + ": map must assign a point to every element");
            for (auto x : p.map) {
                if (x >= base_.size()) throw InputError("piece " + std::to_string(i) + " maps outside the base");
                hit[x] = true;
            }
        }
        surjective_ = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    // a[i][x] = |f_i^{-1}(x)|; elements are labelled u<i>_<x>_<k>.
    static Cover from_fibres(const std::vector<std::vector<std::size_t>>& a, std::size_t base_size) {
        std::vector<CoverPiece> ps;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].size() != base_size) throw InputError("fibre vector length differs from the base size");
            std::vector<std::string> labels;
            std::vector<std::size_t> map;
            for (std::size_t x = 0; x < base_size; ++x)
                for (std::size_t k = 0; k < a[i][x]; ++k) {
                    labels.push_back("u" + std::to_string(i) + "_" + std::to_string(x) + "_" + std::to_string(k));
                    map.push_back(x);
                }
            ps.push_back({FinSet(std::move(labels)), std::move(map)});
        }
        return Cover(FinSet::standard(base_size, "x"), std::move(ps));
    }

    static Cover identity(const FinSet& x) {
        std::vector<std::size_t> id(x.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        return Cover(x, {{x, id}});
    }

    const FinSet& base() const { return base_; }
    const std::vector<CoverPiece>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }
    bool surjective() const { return surjective_; }

    std::vector<std::size_t> fibre(std::size_t i, std::size_t x) const {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < pieces_[i].map.size(); ++u)
            if (pieces_[i].map[u] == x) out.push_back(u);
        return out;
    }
    std::size_t fibre_size(std::size_t i, std::size_t x) const { return fibre(i, x).size(); }

    // Element label, prefixed with its piece when the bare label is ambiguous.
    std::string element_label(std::size_t i, std::size_t u) const {
        const std::string& l = pieces_[i].elements.label(u);
        for (std::size_t j = 0; j < pieces_.size(); ++j)
            for (std::size_t v = 0; v < pieces_[j].elements.size(); ++v)
                if ((j != i || v != u) && pieces_[j].elements.label(v) == l) return "U" + std::to_string(i) + "." + l;
        return l;
    }

private:
    FinSet base_;
    std::vector<CoverPiece> pieces_;
    bool surjective_ = false;
};

using CechPoint = std::pair<std::size_t, std::size_t>;  // (piece, element)
using CechTuple = std::vector<CechPoint>;

namespace detail {

inline std::vector<std::size_t> all_points(const Cover& c) {
    std::vector<std::size_t> xs(c.base().size());
    for (std::size_t x = 0; x < xs.size(); ++x) xs[x] = x;
    return xs;
}

inline std::string tuple_label(const Cover& c, const CechTuple& t) {
    std::string s = "(";
    for (std::size_t m = 0; m < t.size(); ++m) s += (m ? "," : "") + c.element_label(t[m].first, t[m].second);
    return s + ")";
}

// Bases of degrees lo..0 given as tuple lists (index 0 = degree lo), then the
// augmentation degree 1 spanned by the points.  d = sum_m (-1)^m pr_m.
inline ChainComplex assemble(const Cover& c, const std::vector<std::size_t>& points, std::vector<std::vector<CechTuple>> tuples) {
    const int lo = 1 - static_cast<int>(tuples.size());
    std::vector<std::vector<std::string>> bases;
    std::vector<std::map<CechTuple, std::size_t>> index(tuples.size());
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        std::vector<std::string> b;
        for (std::size_t t = 0; t < tuples[k].size(); ++t) {
            b.push_back(tuple_label(c, tuples[k][t]));
            index[k][tuples[k][t]] = t;
        }
        bases.push_back(std::move(b));
    }
    std::vector<std::string> top;
    std::map<std::size_t, std::size_t> point_index;
    for (auto x : points) {
        point_index[x] = top.size();
        top.push_back(c.base().label(x));
    }
    bases.push_back(top);

    std::vector<ZMatrix> d;
    for (std::size_t k = 0; k + 1 < tuples.size(); ++k) {
        ZMatrix m(tuples[k + 1].size(), tuples[k].size());
        for (std::size_t t = 0; t < tuples[k].size(); ++t) {
            const CechTuple& tup = tuples[k][t];
            for (std::size_t drop = 0; drop < tup.size(); ++drop) {
                CechTuple face = tup;
                face.erase(face.begin() + static_cast<long>(drop));
                m(index[k + 1].at(face), t) += drop % 2 ? -1 : 1;
            }
        }
        d.push_back(std::move(m));
    }
    ZMatrix aug(top.size(), tuples.back().size());
    for (std::size_t t = 0; t < tuples.back().size(); ++t) {
        auto [i, u] = tuples.back()[t][0];
        aug(point_index.at(c.pieces()[i].map[u]), t) = 1;
    }
    d.push_back(std::move(aug));
    return ChainComplex(lo, std::move(bases), std::move(d));
}

inline std::vector<std::size_t> checked_order(const Cover& c, std::vector<std::size_t> order) {
    if (order.empty() && c.piece_count() > 0) {
        order.resize(c.piece_count());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    }
    std::vector<bool> seen(c.piece_count(), false);
    if (order.size() != c.piece_count()) throw InputError("an order must list every piece exactly once");
    for (auto i : order) {
        if (i >= c.piece_count() || seen[i]) throw InputError("an order must list every piece exactly once");
        seen[i] = true;
    }
    return order;
}

}  // namespace detail

// Full augmented complex restricted to `points`, degrees -depth .. 1.
inline ChainComplex full_cech(const Cover& c, std::size_t depth, const std::vector<std::size_t>& points) {
    std::vector<std::vector<CechTuple>> by_len(depth + 1);  // by_len[n] = tuples of length n+1
    for (auto x : points) {
        CechTuple over;
        for (std::size_t i = 0; i < c.piece_count(); ++i)
            for (auto u : c.fibre(i, x)) over.emplace_back(i, u);
        std::vector<CechTuple> layer;
        for (auto& p : over) layer.push_back({p});
        for (std::size_t n = 0; n <= depth; ++n) {
            by_len[n].insert(by_len[n].end(), layer.begin(), layer.end());
            if (n == depth) break;
            std::vector<CechTuple> next;
            for (auto& t : layer)
                for (auto& p : over) {
                    next.push_back(t);
                    next.back().push_back(p);
                }
            layer = std::move(next);
        }
    }
    std::reverse(by_len.begin(), by_len.end());
    return detail::assemble(c, points, std::move(by_len));
}

inline ChainComplex full_cech(const Cover& c, std::size_t depth) { return full_cech(c, depth, detail::all_points(c)); }

// Strictly increasing piece tuples over `points`, lowest degree first.
inline std::vector<std::vector<CechTuple>> reduced_tuples(const Cover& c, const std::vector<std::size_t>& order,
                                                          const std::vector<std::size_t>& points) {
    const std::size_t p = c.piece_count();
    std::vector<std::vector<CechTuple>> by_len(std::max<std::size_t>(p, 1));
    for (auto x : points) {
        for (std::size_t mask = 1; mask < (std::size_t{1} << p); ++mask) {
            std::vector<std::size_t> js;
            for (std::size_t pos = 0; pos < p; ++pos)
                if (mask >> pos & 1) js.push_back(order[pos]);
            std::vector<CechTuple> acc{{}};
            for (auto j : js) {
                std::vector<CechTuple> next;
                for (auto& t : acc)
                    for (auto u : c.fibre(j, x)) {
                        next.push_back(t);
                        next.back().emplace_back(j, u);
                    }
                acc = std::move(next);
            }
            auto& bucket = by_len[js.size() - 1];
            bucket.insert(bucket.end(), acc.begin(), acc.end());
        }
    }
    // Canonical basis order: by point, then by piece positions and elements.
    std::vector<std::size_t> pos(p);
    for (std::size_t k = 0; k < p; ++k) pos[order[k]] = k;
    auto key = [&](const CechTuple& t) {
        std::vector<std::size_t> k{c.pieces()[t[0].first].map[t[0].second]};
        for (auto& [i, u] : t) k.push_back(pos[i]), k.push_back(u);
        return k;
    };
    for (auto& bucket : by_len)
        std::sort(bucket.begin(), bucket.end(), [&](const CechTuple& a, const CechTuple& b) { return key(a) < key(b); });
    std::reverse(by_len.begin(), by_len.end());
    return by_len;
}

// Augmented complex on strictly increasing piece tuples; order[0] is the
// smallest piece.  An empty order means 0 < 1 < ... .
inline ChainComplex reduced_cech(const Cover& c, std::vector<std::size_t> order, const std::vector<std::size_t>& points) {
    order = detail::checked_order(c, std::move(order));
    return detail::assemble(c, points, reduced_tuples(c, order, points));
}

inline ChainComplex reduced_cech(const Cover& c, std::vector<std::size_t> order = {}) {
    return reduced_cech(c, std::move(order), detail::all_points(c));
}

// Degreewise maps f^k : C^k -> D^k.
struct ChainMap {
    ChainComplex source, target;
    std::vector<ZMatrix> maps;  // maps[k - source.lo()]

    const ZMatrix& at(int k) const { return maps.at(static_cast<std::size_t>(k - source.lo())); }

    // First degree k where f^{k+1} d^k != d^k f^k, if any.
    std::optional<int> non_commuting_degree() const {
        for (int k = source.lo(); k < source.hi(); ++k)
            if (at(k + 1) * source.d(k) != target.d(k) * at(k)) return k;
        return std::nullopt;
    }
};

// Reorders each factor tuple from order1-increasing to order2-increasing and
// multiplies by the sign of that reordering.
inline ChainMap reorder_iso(const Cover& c, std::vector<std::size_t> order1, std::vector<std::size_t> order2) {
    order1 = detail::checked_order(c, std::move(order1));
    order2 = detail::checked_order(c, std::move(order2));
    const auto points = detail::all_points(c);
    const auto t1 = reduced_tuples(c, order1, points), t2 = reduced_tuples(c, order2, points);
    std::vector<std::size_t> pos2(c.piece_count());
    for (std::size_t k = 0; k < pos2.size(); ++k) pos2[order2[k]] = k;

    std::vector<ZMatrix> maps;
    for (std::size_t k = 0; k < t1.size(); ++k) {
        std::map<CechTuple, std::size_t> idx;
        for (std::size_t t = 0; t < t2[k].size(); ++t) idx[t2[k][t]] = t;
        ZMatrix f(t2[k].size(), t1[k].size());
        for (std::size_t t = 0; t < t1[k].size(); ++t) {
            const CechTuple& src = t1[k][t];
            std::vector<std::uint32_t> perm(src.size());
            for (std::size_t m = 0; m < src.size(); ++m) perm[m] = static_cast<std::uint32_t>(m);
            std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return pos2[src[a].first] < pos2[src[b].first]; });
            CechTuple dst;
            for (auto m : perm) dst.push_back(src[m]);
            f(idx.at(dst), t) = Permutation(perm).sign();
        }
        maps.push_back(std::move(f));
    }
    maps.push_back(ZMatrix::identity(c.base().size()));
    return {reduced_cech(c, order1), reduced_cech(c, order2), std::move(maps)};
}

struct UnifibrancyReport {
    std::vector<std::optional<std::size_t>> witness;  // least piece (in the given order) with a single preimage

    bool holds() const {
        return std::all_of(witness.begin(), witness.end(), [](const auto& w) { return w.has_value(); });
    }
    bool holds_at(std::size_t x) const { return witness.at(x).has_value(); }
};

inline UnifibrancyReport is_unifibrant(const Cover& c, std::vector<std::size_t> order = {}) {
    order = detail::checked_order(c, std::move(order));
    UnifibrancyReport r;
    for (std::size_t x = 0; x < c.base().size(); ++x) {
        std::optional<std::size_t> w;
        for (auto i : order)
            if (c.fibre_size(i, x) == 1) {
                w = i;
                break;
            }
        r.witness.push_back(w);
    }
    return r;
}

struct FinitisticReport {
    std::vector<std::vector<HomologyGroup>> per_point;  // homology of l_x, degrees lo..1

    bool exact_at(std::size_t x) const {
        return std::all_of(per_point.at(x).begin(), per_point.at(x).end(), [](const HomologyGroup& h) { return h.is_zero(); });
    }
    bool holds() const {
        for (std::size_t x = 0; x < per_point.size(); ++x)
            if (!exact_at(x)) return false;
        return true;
    }
};

// Exactness of the augmented reduced complex, one summand l_x at a time.
inline FinitisticReport is_finitistic(const Cover& c, std::vector<std::size_t> order = {}) {
    if (!c.surjective()) throw InputError("finitistic check needs a jointly surjective cover");
    FinitisticReport r;
    for (std::size_t x = 0; x < c.base().size(); ++x) r.per_point.push_back(homology(reduced_cech(c, order, {x})));
    return r;
}

struct Homotopy {
    ChainComplex complex;       // l_x of the reduced complex, witness piece first
    std::vector<ZMatrix> h;     // h[k - lo] : C^k -> C^{k-1}
    std::size_t piece;
    std::vector<std::size_t> order;

    ZMatrix at(int k) const {
        if (!complex.has_degree(k)) return ZMatrix(complex.rank(k - 1), 0);
        return h[static_cast<std::size_t>(k - complex.lo())];
    }
    // First degree where h d + d h != id.
    std::optional<int> failing_degree() const {
        for (int k = complex.lo(); k <= complex.hi(); ++k) {
            ZMatrix s = at(k + 1) * complex.d(k);
            ZMatrix t = complex.d(k - 1) * at(k);
            ZMatrix sum = ZMatrix(complex.rank(k), complex.rank(k));
            if (complex.has_degree(k + 1)) sum = sum + s;
            if (complex.has_degree(k - 1)) sum = sum + t;
            if (sum != ZMatrix::identity(complex.rank(k))) return k;
        }
        return std::nullopt;
    }
};

// h = 0 on tuples through the witness piece i, and the inverse of the
// projection forgetting the i-factor elsewhere; i is moved to the front of
// the order so that the inverse prepends the unique preimage.
inline Homotopy homotopy_witness(const Cover& c, std::size_t x, std::vector<std::size_t> order = {}) {
    order = detail::checked_order(c, std::move(order));
    auto uni = is_unifibrant(c, order);
    if (x >= c.base().size()) throw InputError("point index out of range");
    if (!uni.holds_at(x)) throw InputError("cover is not unifibrant at " + c.base().label(x));
    const std::size_t i = *uni.witness[x];
    std::vector<std::size_t> ord{i};
    for (auto j : order)
        if (j != i) ord.push_back(j);
    const CechPoint ui{i, c.fibre(i, x).front()};

    const auto tuples = reduced_tuples(c, ord, {x});
    ChainComplex cx = detail::assemble(c, {x}, tuples);
    std::vector<std::map<CechTuple, std::size_t>> idx(tuples.size());
    for (std::size_t k = 0; k < tuples.size(); ++k)
        for (std::size_t t = 0; t < tuples[k].size(); ++t) idx[k][tuples[k][t]] = t;

    std::vector<ZMatrix> h;
    h.emplace_back(0, cx.rank(cx.lo()));  // nothing below the lowest degree
    for (std::size_t k = 1; k < tuples.size(); ++k) {
        ZMatrix m(tuples[k - 1].size(), tuples[k].size());
        for (std::size_t t = 0; t < tuples[k].size(); ++t) {
            const CechTuple& tup = tuples[k][t];
            if (tup.front().first == i) continue;
            CechTuple up{ui};
            up.insert(up.end(), tup.begin(), tup.end());
            m(idx[k - 1].at(up), t) = 1;
        }
        h.push_back(std::move(m));
    }
    ZMatrix top(tuples.back().size(), 1);
    top(idx.back().at(CechTuple{ui}), 0) = 1;
    h.push_back(std::move(top));
    return {std::move(cx), std::move(h), i, std::move(ord)};
}

inline Integer euler_char(const Cover& c, std::size_t x) {
    Integer e = 1;
    for (std::size_t i = 0; i < c.piece_count(); ++i) e *= 1 - static_cast<long>(c.fibre_size(i, x));
    return e;
}

// sum_k (-1)^(1-k) rank C^k, so the augmentation term counts +1.
inline Integer alternating_rank_sum(const ChainComplex& cc) {
    Integer s = 0;
    for (int k = cc.lo(); k <= cc.hi(); ++k) s += ((1 - k) % 2 == 0 ? 1 : -1) * static_cast<long>(cc.rank(k));
    return s;
}

// Terms C^{i,j} for i0 <= i < i0+cols, j0 <= j < j0+rows; missing maps are zero.
struct DoubleComplex {
    int i0 = 0, j0 = 0;
    std::vector<std::vector<std::size_t>> ranks;  // ranks[i - i0][j - j0]
    std::map<std::pair<int, int>, ZMatrix> horizontal;  // C^{i,j} -> C^{i+1,j}
    std::map<std::pair<int, int>, ZMatrix> vertical;    // C^{i,j} -> C^{i,j+1}

    std::size_t width() const { return ranks.size(); }
    std::size_t height() const { return ranks.empty() ? 0 : ranks[0].size(); }
    std::size_t rank(int i, int j) const {
        if (i < i0 || j < j0 || i >= i0 + static_cast<int>(width()) || j >= j0 + static_cast<int>(height())) return 0;
        return ranks[static_cast<std::size_t>(i - i0)][static_cast<std::size_t>(j - j0)];
    }
    ZMatrix h(int i, int j) const {
        auto it = horizontal.find({i, j});
        return it != horizontal.end() ? it->second : ZMatrix(rank(i + 1, j), rank(i, j));
    }
    ZMatrix v(int i, int j) const {
        auto it = vertical.find({i, j});
        return it != vertical.end() ? it->second : ZMatrix(rank(i, j + 1), rank(i, j));
    }
};

// Total complex with delta = delta_v + (-1)^j delta_h.
inline ChainComplex total_complex(const DoubleComplex& dc) {
    const int i1 = dc.i0 + static_cast<int>(dc.width()), j1 = dc.j0 + static_cast<int>(dc.height());
    for (auto& [key, m] : dc.horizontal)
        if (m.rows() != dc.rank(key.first + 1, key.second) || m.cols() != dc.rank(key.first, key.second))
            throw InputError("horizontal map at (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") has the wrong shape");
    for (auto& [key, m] : dc.vertical)
        if (m.rows() != dc.rank(key.first, key.second + 1) || m.cols() != dc.rank(key.first, key.second))
            throw InputError("vertical map at (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") has the wrong shape");
    for (int i = dc.i0; i < i1; ++i)
        for (int j = dc.j0; j < j1; ++j) {
            const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (dc.v(i + 1, j) * dc.h(i, j) != dc.h(i, j + 1) * dc.v(i, j)) throw InputError("square at " + at + " does not commute");
            if (!(dc.h(i + 1, j) * dc.h(i, j)).is_zero()) throw InputError("row is not a complex at " + at);
            if (!(dc.v(i, j + 1) * dc.v(i, j)).is_zero()) throw InputError("column is not a complex at " + at);
        }
    if (dc.width() == 0 || dc.height() == 0) return ChainComplex(dc.i0 + dc.j0, {{}}, {});

    const int lo = dc.i0 + dc.j0, hi = i1 + j1 - 2;
    // offset of C^{i,j} inside Tot^{i+j}, bidegrees ordered by increasing i
    std::map<std::pair<int, int>, std::size_t> offset;
    std::vector<std::vector<std::string>> bases;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::string> b;
        for (int i = dc.i0; i < i1; ++i) {
            const int j = n - i;
            if (j < dc.j0 || j >= j1) continue;
            offset[{i, j}] = b.size();
            for (std::size_t e = 0; e < dc.rank(i, j); ++e)
                b.push_back("C" + std::to_string(i) + "," + std::to_string(j) + "[" + std::to_string(e) + "]");
        }
        bases.push_back(std::move(b));
    }
    std::vector<ZMatrix> d;
    for (int n = lo; n < hi; ++n) {
        ZMatrix m(bases[static_cast<std::size_t>(n + 1 - lo)].size(), bases[static_cast<std::size_t>(n - lo)].size());
        auto place = [&](const ZMatrix& blk, std::size_t r0, std::size_t c0, int sign) {
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t s = 0; s < blk.cols(); ++s) m(r0 + r, c0 + s) += sign * blk(r, s);
        };
        for (int i = dc.i0; i < i1; ++i) {
            const int j = n - i;
            if (j < dc.j0 || j >= j1) continue;
            const std::size_t c0 = offset.at({i, j});
            if (j + 1 < j1) place(dc.v(i, j), offset.at({i, j + 1}), c0, 1);
            if (i + 1 < i1) place(dc.h(i, j), offset.at({i + 1, j}), c0, j % 2 == 0 ? 1 : -1);
        }
        d.push_back(std::move(m));
    }
    return ChainComplex(lo, std::move(bases), std::move(d));
}

// Tensor product double complex A (rows) x B (columns): C^{i,j} = A^i (x) B^j,
// basis index a * rank(B^j) + b.
inline DoubleComplex tensor_double(const ChainComplex& a, const ChainComplex& b) {
    DoubleComplex dc;
    dc.i0 = a.lo();
    dc.j0 = b.lo();
    for (int i = a.lo(); i <= a.hi(); ++i) {
        dc.ranks.emplace_back();
        for (int j = b.lo(); j <= b.hi(); ++j) dc.ranks.back().push_back(a.rank(i) * b.rank(j));
    }
    auto kron = [](const ZMatrix& x, const ZMatrix& y) {
        ZMatrix k(x.rows() * y.rows(), x.cols() * y.cols());
        for (std::size_t r = 0; r < x.rows(); ++r)
            for (std::size_t s = 0; s < x.cols(); ++s)
                if (x(r, s) != 0)
                    for (std::size_t p = 0; p < y.rows(); ++p)
                        for (std::size_t q = 0; q < y.cols(); ++q) k(r * y.rows() + p, s * y.cols() + q) = x(r, s) * y(p, q);
        return k;
    };
    for (int i = a.lo(); i <= a.hi(); ++i)
        for (int j = b.lo(); j <= b.hi(); ++j) {
            if (i < a.hi()) dc.horizontal[{i, j}] = kron(a.d(i), ZMatrix::identity(b.rank(j)));
            if (j < b.hi()) dc.vertical[{i, j}] = kron(ZMatrix::identity(a.rank(i)), b.d(j));
        }
    return dc;
}

namespace detail {

// Random unimodular matrix as a product of elementary operations, with its inverse.
inline std::pair<ZMatrix, ZMatrix> random_unimodular(std::size_t n, Rng& rng, std::size_t steps) {
    ZMatrix g = ZMatrix::identity(n), gi = ZMatrix::identity(n);
    if (n < 2) return {g, gi};
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t i = rng.below(n), j = rng.below(n - 1);
        if (j >= i) ++j;
        const long q = rng.range(-2, 2);
        for (std::size_t c = 0; c < n; ++c) g(i, c) += q * g(j, c);   // row_i += q row_j
        for (std::size_t r = 0; r < n; ++r) gi(r, j) -= q * gi(r, i);  // inverse: col_j -= q col_i
    }
    return {g, gi};
}

}  // namespace detail

// Direct sum of elementary complexes Z -(m)-> Z and Z[k], hidden behind
// random unimodular base changes in every degree.  Also returns the
// homology it was built to have.
inline std::pair<ChainComplex, std::vector<HomologyGroup>> random_complex(Rng& rng, int lo, int hi, std::size_t max_pieces = 3) {
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::size_t> rank(len, 0);
    std::vector<HomologyGroup> expect(len);
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, long>>> blocks(len);  // (row, col, m) in d^k
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t free = rng.below(max_pieces);
        rank[k] += free;
        expect[k].free_rank += free;
        if (k + 1 < len) {
            const std::size_t pairs = rng.below(max_pieces);
            for (std::size_t p = 0; p < pairs; ++p) {
                const long m = rng.range(1, 4);
                blocks[k].emplace_back(rank[k + 1], rank[k], m);
                ++rank[k];
                ++rank[k + 1];
                if (m > 1) expect[k + 1].torsion.push_back(m);
            }
        }
    }
    std::vector<ZMatrix> g, gi;
    for (std::size_t k = 0; k < len; ++k) {
        auto [a, b] = detail::random_unimodular(rank[k], rng, 3 * rank[k]);
        g.push_back(a);
        gi.push_back(b);
    }
    std::vector<std::vector<std::string>> bases;
    for (std::size_t k = 0; k < len; ++k) {
        bases.emplace_back();
        for (std::size_t e = 0; e < rank[k]; ++e) bases.back().push_back("e" + std::to_string(e));
    }
    std::vector<ZMatrix> d;
    for (std::size_t k = 0; k + 1 < len; ++k) {
        ZMatrix m(rank[k + 1], rank[k]);
        for (auto [r, c, v] : blocks[k]) m(r, c) = v;
        d.push_back(g[k + 1] * m * gi[k]);
    }
    for (auto& h : expect) {
        std::sort(h.torsion.begin(), h.torsion.end());
        // Canonicalize to invariant factors: Z/2 + Z/3 is Z/6.
        std::vector<Integer> pr;
        for (auto& t : h.torsion) {
            // split into prime powers
            Integer n = t;
            for (Integer p = 2; n > 1; ++p) {
                Integer q = 1;
                while (n % p == 0) n /= p, q *= p;
                if (q > 1) pr.push_back(q);
            }
        }
        std::map<Integer, std::vector<Integer>> by_prime;
        for (auto& q : pr) {
            Integer p = 2;
            while (q % p != 0) ++p;
            by_prime[p].push_back(q);
        }
        std::size_t count = 0;
        for (auto& [p, v] : by_prime) {
            std::sort(v.begin(), v.end());
            count = std::max(count, v.size());
        }
        std::vector<Integer> inv(count, 1);
        for (auto& [p, v] : by_prime)
            for (std::size_t s = 0; s < v.size(); ++s) inv[count - v.size() + s] *= v[s];
        h.torsion = inv;
    }
    return {ChainComplex(lo, std::move(bases), std::move(d)), expect};
}

// A finite group given by all of its elements, acting by permutations.
class GroupAction {
public:
    GroupAction(std::size_t degree, std::vector<Permutation> elements) : n_(degree), g_(std::move(elements)) {
        std::set<Permutation> all(g_.begin(), g_.end());
        if (all.size() != g_.size()) throw InputError("group elements must be distinct");
        if (!all.count(Permutation::identity(n_))) throw InputError("group must contain the identity");
        for (auto& a : g_) {
            if (a.size() != n_) throw InputError("group element acts on the wrong set");
            for (auto& b : g_)
                if (!all.count(a * b)) throw InputError("group elements are not closed under composition");
        }
    }
    static GroupAction generated(std::size_t degree, std::vector<Permutation> gens) {
        return GroupAction(degree, PermGroup(degree, std::move(gens)).elements());
    }

    std::size_t degree() const { return n_; }
    const std::vector<Permutation>& elements() const { return g_; }
    bool transitive() const {
        if (n_ == 0) return false;
        for (std::size_t a = 0; a < n_; ++a) {
            bool reached = false;
            for (auto& g : g_) reached |= g(0) == a;
            if (!reached) return false;
        }
        return true;
    }

private:
    std::size_t n_;
    std::vector<Permutation> g_;
};

// q : L^A -> L^{A x G}, (l_a) |-> (l_a - l_{g a}); row (a, g) sits at a * |G| + g.
inline ZMatrix difference_matrix(const GroupAction& act) {
    const std::size_t n = act.degree(), m = act.elements().size();
    ZMatrix q(n * m, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t g = 0; g < m; ++g) {
            q(a * m + g, a) += 1;
            q(a * m + g, act.elements()[g](a)) -= 1;
        }
    return q;
}

struct TransitiveKernel {
    ZMatrix q;
    std::string ring;
    std::size_t kernel_rank = 0;
    bool kernel_is_diagonal = false;
    std::size_t image_rank = 0;
    std::size_t cokernel_free_rank = 0;
    std::vector<Integer> integer_factors;  // nonzero invariant factors of q over ZZ

    bool factors_trivial() const {
        return std::all_of(integer_factors.begin(), integer_factors.end(), [](const Integer& x) { return x == 1; });
    }
    bool holds() const { return kernel_rank == 1 && kernel_is_diagonal && factors_trivial(); }
};

// Kernel, image and cokernel of q over L in {ZZ, GF(p), QQ}.  Over ZZ the
// kernel comes from the Smith transform; over a field from row reduction.
inline TransitiveKernel transitive_kernel(const GroupAction& act, const BaseRing& lambda) {
    if (!act.transitive()) throw InputError("the kernel statement needs a transitive action");
    if (lambda.kind() != RingKind::Integers && !lambda.is_field()) throw InputError("coefficients must be ZZ, GF(p) or QQ");
    TransitiveKernel r;
    r.q = difference_matrix(act);
    r.ring = lambda.describe();
    const std::size_t n = act.degree();
    auto sm = smith(r.q);
    r.integer_factors = sm.factors;
    auto diagonal = [&](auto&& entry, auto&& zero) {
        for (std::size_t a = 0; a < n; ++a)
            if (zero(entry(a)) || entry(a) != entry(0)) return false;
        return true;
    };
    if (lambda.kind() == RingKind::Integers) {
        r.image_rank = sm.rank();
        ZMatrix k = integer_kernel(r.q);
        r.kernel_rank = k.cols();
        if (r.kernel_rank == 1) {
            const Integer s = k(0, 0) < 0 ? -1 : 1;
            r.kernel_is_diagonal = diagonal([&](std::size_t a) { return Integer(k(a, 0) * s); },
                                            [](const Integer& x) { return x != 1; });
        }
    } else {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < r.q.rows(); ++i) {
            Vec v;
            for (std::size_t j = 0; j < n; ++j) v.push_back(from_int(lambda, r.q(i, j)));
            rows.push_back(std::move(v));
        }
        r.image_rank = rank_over_field(lambda, rows, n);
        auto k = kernel_basis(lambda, rows, n);
        r.kernel_rank = k.size();
        if (k.size() == 1) r.kernel_is_diagonal = diagonal([&](std::size_t a) { return k[0][a]; }, [](const Scalar& x) { return x.is_zero(); });
    }
    r.cokernel_free_rank = r.q.rows() - r.image_rank;
    return r;
}

namespace detail {

// S_a as indices with a multiplication table, for subgroup enumeration.
struct SymmetricTable {
    std::vector<Permutation> elems;
    std::vector<std::vector<std::uint16_t>> mul;  // mul[x][y] = index of x * y
};

inline SymmetricTable symmetric_table(std::size_t a) {
    SymmetricTable t;
    std::vector<std::uint32_t> p(a);
    for (std::size_t i = 0; i < a; ++i) p[i] = static_cast<std::uint32_t>(i);
    do t.elems.emplace_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<Permutation, std::uint16_t> idx;
    for (std::size_t i = 0; i < t.elems.size(); ++i) idx[t.elems[i]] = static_cast<std::uint16_t>(i);
    t.mul.assign(t.elems.size(), std::vector<std::uint16_t>(t.elems.size()));
    for (std::size_t x = 0; x < t.elems.size(); ++x)
        for (std::size_t y = 0; y < t.elems.size(); ++y) t.mul[x][y] = idx.at(t.elems[x] * t.elems[y]);
    return t;
}

}  // namespace detail

// Every transitive subgroup of S_a with a <= max_degree and order <= max_order.
// Subgroups are grown one generator at a time, so each one is reached through
// a chain of smaller subgroups.
inline std::vector<GroupAction> transitive_actions(std::size_t max_degree, std::size_t max_order) {
    std::vector<GroupAction> out;
    for (std::size_t a = 1; a <= max_degree; ++a) {
        auto t = detail::symmetric_table(a);
        const std::size_t N = t.elems.size();
        using Set = std::vector<bool>;
        auto close = [&](const std::vector<std::uint16_t>& gens) -> std::optional<Set> {
            Set in(N, false);
            std::vector<std::uint16_t> list{0};  // index 0 is the identity
            in[0] = true;
            for (std::size_t k = 0; k < list.size(); ++k)
                for (auto g : gens) {
                    auto y = t.mul[g][list[k]];
                    if (!in[y]) {
                        in[y] = true;
                        list.push_back(y);
                        if (list.size() > max_order) return std::nullopt;
                    }
                }
            return in;
        };
        std::set<Set> seen;
        std::vector<std::pair<Set, std::vector<std::uint16_t>>> frontier;
        Set trivial(N, false);
        trivial[0] = true;
        seen.insert(trivial);
        frontier.push_back({trivial, {}});
        for (std::size_t k = 0; k < frontier.size(); ++k) {
            for (std::uint16_t g = 1; g < N; ++g) {
                if (frontier[k].first[g]) continue;
                auto gens = frontier[k].second;
                gens.push_back(g);
                auto h = close(gens);
                if (h && seen.insert(*h).second) frontier.push_back({*h, gens});
            }
        }
        for (auto& [set, gens] : frontier) {
            std::vector<Permutation> el;
            for (std::size_t x = 0; x < N; ++x)
                if (set[x]) el.push_back(t.elems[x]);
            GroupAction act(a, std::move(el));
            if (act.transitive()) out.push_back(std::move(act));
        }
    }
    return out;
}

// Every fibre matrix a[i][x] with |X| <= max_base, at most max_pieces pieces
// and every piece of size <= max_piece.  Covers of finite sets are determined
// up to isomorphism by these matrices.
inline std::vector<Cover> enumerate_covers(std::size_t max_base, std::size_t max_pieces, std::size_t max_piece) {
    std::vector<Cover> out;
    for (std::size_t nx = 1; nx <= max_base; ++nx) {
        std::vector<std::vector<std::size_t>> rows;  // fibre vectors of one piece
        std::vector<std::size_t> v(nx, 0);
        for (;;) {
            std::size_t s = 0;
            for (auto x : v) s += x;
            if (s <= max_piece) rows.push_back(v);
            std::size_t k = 0;
            while (k < nx && v[k] == max_piece) v[k++] = 0;
            if (k == nx) break;
            ++v[k];
        }
        for (std::size_t np = 1; np <= max_pieces; ++np) {
            std::vector<std::size_t> pick(np, 0);
            for (;;) {
                std::vector<std::vector<std::size_t>> a;
                for (auto r : pick) a.push_back(rows[r]);
                out.push_back(Cover::from_fibres(a, nx));
                std::size_t k = 0;
                while (k < np && pick[k] + 1 == rows.size()) pick[k++] = 0;
                if (k == np) break;
                ++pick[k];
            }
        }
    }
    return out;
}

inline nlohmann::json cover_json(const Cover& c) {
    nlohmann::json pieces = nlohmann::json::array();
    for (auto& p : c.pieces()) {
        nlohmann::json map = nlohmann::json::object();
        for (std::size_t u = 0; u < p.elements.size(); ++u) map[p.elements.label(u)] = c.base().label(p.map[u]);
        pieces.push_back({{"elements", p.elements.labels()}, {"map", map}});
    }
    return {{"base", c.base().labels()}, {"pieces", pieces}};
}

// Surjective cover with 1..max_base points, 1..max_pieces pieces and at most
// max_fibre elements over each point.
inline Cover random_cover(Rng& rng, std::size_t max_base, std::size_t max_pieces, std::size_t max_fibre) {
    for (;;) {
        const std::size_t nx = 1 + rng.below(max_base), np = 1 + rng.below(max_pieces);
        std::vector<std::vector<std::size_t>> a(np, std::vector<std::size_t>(nx, 0));
        bool ok = true;
        for (std::size_t x = 0; x < nx && ok; ++x) {
            const std::size_t total = 1 + rng.below(max_fibre);
            for (std::size_t k = 0; k < total; ++k) ++a[rng.below(np)][x];
        }
        if (ok) return Cover::from_fibres(a, nx);
    }
}

struct CechBounds {
    std::size_t max_base = 3, max_pieces = 3, max_piece = 4;
};

inline const std::vector<std::string>& cech_check_names() {
    static const std::vector<std::string> n{"finitistic iff unifibrant", "homotopy hd+dh=id", "euler characteristic",
                                            "per-point equals assembled", "reorder is a chain isomorphism",
                                            "non-surjective rejected"};
    return n;
}

// Exhaustive model-level checks over the fibre-matrix grid.
inline std::vector<Witness> check_cech_grid(const CechBounds& b) {
    std::vector<Witness> w;
    for (auto& n : cech_check_names()) w.push_back(Witness{n});
    for (const Cover& c : enumerate_covers(b.max_base, b.max_pieces, b.max_piece)) {
        auto cj = [&] { return cover_json(c); };
        if (!c.surjective()) {
            bool threw = false;
            try {
                is_finitistic(c);
            } catch (const InputError&) {
                threw = true;
            }
            w[5].record(threw, cj);
            continue;
        }
        auto uni = is_unifibrant(c);
        auto fin = is_finitistic(c);
        for (std::size_t x = 0; x < c.base().size(); ++x) {
            auto px = [&] {
                auto j = cj();
                j["point"] = c.base().label(x);
                return j;
            };
            w[0].record(uni.holds_at(x) == fin.exact_at(x), px);
            if (uni.holds_at(x)) {
                auto h = homotopy_witness(c, x);
                w[1].record(!h.failing_degree().has_value(), px);
            }
            const Integer e = euler_char(c, x);
            bool some_one = false;
            for (std::size_t i = 0; i < c.piece_count(); ++i) some_one |= c.fibre_size(i, x) == 1;
            w[2].record(e == alternating_rank_sum(reduced_cech(c, {}, {x})) && (e == 0) == some_one, px);
        }
        w[0].record(uni.holds() == fin.holds(), cj);
        if (c.base().size() <= 2 && c.piece_count() <= 2) w[3].record(is_exact(reduced_cech(c)) == fin.holds(), cj);
        if (c.piece_count() >= 2) {
            std::vector<std::size_t> fwd, rev;
            for (std::size_t i = 0; i < c.piece_count(); ++i) fwd.push_back(i), rev.insert(rev.begin(), i);
            auto there = reorder_iso(c, fwd, rev), back = reorder_iso(c, rev, fwd);
            bool ok = !there.non_commuting_degree() && !back.non_commuting_degree();
            for (int k = there.source.lo(); ok && k <= there.source.hi(); ++k)
                ok = back.at(k) * there.at(k) == ZMatrix::identity(there.source.rank(k));
            w[4].record(ok, cj);
        }
    }
    return w;
}

// The full augmented complex is exact in degrees -depth .. 1; it is built one
// step deeper so that degree -depth has an incoming differential.
inline Witness check_full_exactness(std::size_t count, std::size_t depth, std::size_t max_fibre, Rng& rng) {
    Witness w{"full complex exact"};
    for (std::size_t t = 0; t < count; ++t) {
        Cover c = random_cover(rng, 3, 3, max_fibre);
        for (std::size_t x = 0; x < c.base().size(); ++x) {
            auto cc = full_cech(c, depth + 1, {x});
            w.record(is_exact(cc, -static_cast<int>(depth)), [&] {
                auto j = cover_json(c);
                j["point"] = c.base().label(x);
                j["depth"] = depth;
                return j;
            });
        }
    }
    return w;
}

inline Witness check_total_complexes(std::size_t count, Rng& rng) {
    Witness w{"total complex d^2 = 0"};
    for (std::size_t t = 0; t < count; ++t) {
        auto a = random_complex(rng, 0, 2).first;
        auto b = random_complex(rng, -1, 1).first;
        bool ok = true;
        try {
            auto tot = total_complex(tensor_double(a, b));
            for (int k = tot.lo(); k + 1 < tot.hi(); ++k) ok &= (tot.d(k + 1) * tot.d(k)).is_zero();
        } catch (const InputError&) {
            ok = false;
        }
        w.record(ok, [&] { return nlohmann::json{{"trial", t}}; });
    }
    return w;
}

inline std::vector<Witness> check_transitive_kernels(std::size_t max_degree, std::size_t max_order) {
    const std::vector<BaseRing> rings{BaseRing::integers(), BaseRing::prime_field(2), BaseRing::prime_field(3),
                                      BaseRing::rationals()};
    std::vector<Witness> w;
    for (auto& r : rings) w.push_back(Witness{"transitive kernel over " + r.describe()});
    for (auto& act : transitive_actions(max_degree, max_order))
        for (std::size_t k = 0; k < rings.size(); ++k) {
            auto tk = transitive_kernel(act, rings[k]);
            w[k].record(tk.holds() && tk.cokernel_free_rank == tk.q.rows() - (act.degree() - 1), [&] {
                nlohmann::json g = nlohmann::json::array();
                for (auto& p : act.elements()) g.push_back(p.images());
                return nlohmann::json{{"degree", act.degree()}, {"group", g}};
            });
        }
    return w;
}

}  // namespace symalg
