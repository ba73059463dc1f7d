#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fclat/bitset.hpp"
#include "fclat/errors.hpp"

namespace fclat {

enum class Side { objects, attributes };

/// A formal context (G, M, I): named objects, named attributes and a dense
/// incidence bit-matrix. Rows are stored attribute-major and mirrored
/// column-major so that both derivation directions run on word-parallel
/// intersections. Immutable after construction.
class FormalContext {
public:
    FormalContext() = default;

    FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                  std::vector<Bitset> rows)
        : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
        if (rows_.size() != objects_.size())
            throw std::invalid_argument("incidence row count does not match object count");
        for (const Bitset& r : rows_)
            if (r.size() != attributes_.size())
                throw std::invalid_argument("incidence row width does not match attribute count");
        require_distinct(objects_, "object");
        require_distinct(attributes_, "attribute");
        build_columns();
    }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }

    const Bitset& row(std::size_t g) const { return rows_.at(g); }
    const Bitset& column(std::size_t m) const { return cols_.at(m); }
    const std::vector<Bitset>& rows() const { return rows_; }
    const std::vector<Bitset>& columns() const { return cols_; }

    bool incident(std::size_t g, std::size_t m) const { return rows_.at(g).test(m); }

    /// Prime operator. For Side::objects, S indexes objects and the result is
    /// the set of attributes common to all of them; dually for attributes.
    Bitset derive(Side side, const Bitset& s) const {
        if (side == Side::objects) {
            if (s.size() != object_count()) throw std::out_of_range("object set has wrong size");
            Bitset acc(attribute_count(), true);
            s.for_each_set([&](std::size_t g) { acc &= rows_[g]; });
            return acc;
        }
        if (s.size() != attribute_count()) throw std::out_of_range("attribute set has wrong size");
        Bitset acc(object_count(), true);
        s.for_each_set([&](std::size_t m) { acc &= cols_[m]; });
        return acc;
    }

    /// S'' on the given side.
    Bitset closure(Side side, const Bitset& s) const {
        Side other = side == Side::objects ? Side::attributes : Side::objects;
        return derive(other, derive(side, s));
    }

    /// Closure of an attribute set, reusing a scratch extent. The extent of
    /// the closed set is left in `extent`.
    Bitset attribute_closure(const Bitset& attrs, Bitset& extent) const {
        extent = derive(Side::attributes, attrs);
        return derive(Side::objects, extent);
    }

    FormalContext transpose() const {
        return FormalContext(attributes_, objects_, cols_);
    }

private:
    static void require_distinct(const std::vector<std::string>& names, const char* kind) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                throw std::invalid_argument(std::string("duplicate ") + kind + " name: " + n);
    }

    void build_columns() {
        cols_.assign(attributes_.size(), Bitset(objects_.size()));
        for (std::size_t g = 0; g < rows_.size(); ++g)
            rows_[g].for_each_set([&](std::size_t m) { cols_[m].set(g); });
    }

    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<Bitset> rows_;
    std::vector<Bitset> cols_;
};

struct ClarifyResult {
    FormalContext context;
    /// Original index -> original index of its representative (first
    /// occurrence of the identical row/column).
    std::vector<std::size_t> object_map;
    std::vector<std::size_t> attribute_map;
};

/// Merges duplicate rows and duplicate columns, keeping first occurrences.
inline ClarifyResult clarify(const FormalContext& ctx) {
    ClarifyResult res;
    std::vector<std::size_t> obj_keep, attr_keep;
    res.object_map.resize(ctx.object_count());
    res.attribute_map.resize(ctx.attribute_count());

    std::vector<std::size_t> attr_rep;  // representative per kept column
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
        std::size_t rep = m;
        for (std::size_t k : attr_keep)
            if (ctx.column(k) == ctx.column(m)) {
                rep = k;
                break;
            }
        res.attribute_map[m] = rep;
        if (rep == m) attr_keep.push_back(m);
    }
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        std::size_t rep = g;
        for (std::size_t k : obj_keep)
            if (ctx.row(k) == ctx.row(g)) {
                rep = k;
                break;
            }
        res.object_map[g] = rep;
        if (rep == g) obj_keep.push_back(g);
    }

    std::vector<std::string> objects, attributes;
    objects.reserve(obj_keep.size());
    attributes.reserve(attr_keep.size());
    for (std::size_t g : obj_keep) objects.push_back(ctx.objects()[g]);
    for (std::size_t m : attr_keep) attributes.push_back(ctx.attributes()[m]);

    std::vector<Bitset> rows;
    rows.reserve(obj_keep.size());
    for (std::size_t g : obj_keep) {
        Bitset r(attr_keep.size());
        for (std::size_t j = 0; j < attr_keep.size(); ++j)
            if (ctx.incident(g, attr_keep[j])) r.set(j);
        rows.push_back(std::move(r));
    }
    res.context = FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    return res;
}

namespace detail {

/// Column m is reducible iff m' equals the intersection of all columns
/// strictly containing it (a full column is the empty intersection, hence
/// reducible). Expects a clarified context.
inline std::vector<bool> reducible_attributes(const FormalContext& ctx) {
    std::vector<bool> red(ctx.attribute_count(), false);
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
        Bitset acc(ctx.object_count(), true);
        for (std::size_t n = 0; n < ctx.attribute_count(); ++n)
            if (n != m && ctx.column(m).is_proper_subset_of(ctx.column(n))) acc &= ctx.column(n);
        red[m] = acc == ctx.column(m);
    }
    return red;
}

inline std::vector<bool> reducible_objects(const FormalContext& ctx) {
    std::vector<bool> red(ctx.object_count(), false);
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        Bitset acc(ctx.attribute_count(), true);
        for (std::size_t h = 0; h < ctx.object_count(); ++h)
            if (h != g && ctx.row(g).is_proper_subset_of(ctx.row(h))) acc &= ctx.row(h);
        red[g] = acc == ctx.row(g);
    }
    return red;
}

inline FormalContext select(const FormalContext& ctx, const std::vector<std::size_t>& objs,
                            const std::vector<std::size_t>& attrs) {
    std::vector<std::string> on, an;
    for (std::size_t g : objs) on.push_back(ctx.objects()[g]);
    for (std::size_t m : attrs) an.push_back(ctx.attributes()[m]);
    std::vector<Bitset> rows;
    rows.reserve(objs.size());
    for (std::size_t g : objs) {
        Bitset r(attrs.size());
        for (std::size_t j = 0; j < attrs.size(); ++j)
            if (ctx.incident(g, attrs[j])) r.set(j);
        rows.push_back(std::move(r));
    }
    return FormalContext(std::move(on), std::move(an), std::move(rows));
}

}  // namespace detail

struct ReduceResult {
    FormalContext context;
    /// Names dropped from the input, whether merged away by the internal
    /// clarification or removed as reducible.
    std::vector<std::string> removed_objects;
    std::vector<std::string> removed_attributes;
};

/// Clarifies, then drops reducible rows and columns. The concept lattice of
/// the result is isomorphic to the input's.
inline ReduceResult reduce(const FormalContext& ctx) {
    ClarifyResult cl = clarify(ctx);
    ReduceResult res;
    for (std::size_t g = 0; g < ctx.object_count(); ++g)
        if (cl.object_map[g] != g) res.removed_objects.push_back(ctx.objects()[g]);
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
        if (cl.attribute_map[m] != m) res.removed_attributes.push_back(ctx.attributes()[m]);

    const FormalContext& c = cl.context;
    std::vector<bool> obj_red = detail::reducible_objects(c);
    std::vector<bool> attr_red = detail::reducible_attributes(c);
    std::vector<std::size_t> objs, attrs;
    for (std::size_t g = 0; g < c.object_count(); ++g)
        obj_red[g] ? void(res.removed_objects.push_back(c.objects()[g])) : objs.push_back(g);
    for (std::size_t m = 0; m < c.attribute_count(); ++m)
        attr_red[m] ? void(res.removed_attributes.push_back(c.attributes()[m])) : attrs.push_back(m);
    res.context = detail::select(c, objs, attrs);
    return res;
}

/// The three arrow relations, stored as row bitsets over the attributes.
/// Arrows live only on non-incident cells; dbl is the cellwise conjunction.
struct ArrowRelations {
    std::vector<Bitset> down;  // g swarrow m
    std::vector<Bitset> up;    // g nearrow m
    std::vector<Bitset> dbl;   // both
};

/// down(g,m): (g,m) not in I and every object row strictly above g's has m.
/// up(g,m) dually over columns.
inline ArrowRelations arrows(const FormalContext& ctx) {
    std::size_t gs = ctx.object_count(), ms = ctx.attribute_count();
    ArrowRelations a;
    a.down.assign(gs, Bitset(ms));
    a.up.assign(gs, Bitset(ms));
    a.dbl.assign(gs, Bitset(ms));

    for (std::size_t g = 0; g < gs; ++g) {
        Bitset common(ms, true);  // attributes shared by every proper super-row
        for (std::size_t h = 0; h < gs; ++h)
            if (ctx.row(g).is_proper_subset_of(ctx.row(h))) common &= ctx.row(h);
        a.down[g] = common & ctx.row(g).complement();
    }
    std::vector<Bitset> up_cols(ms);
    for (std::size_t m = 0; m < ms; ++m) {
        Bitset common(gs, true);  // objects shared by every proper super-column
        for (std::size_t n = 0; n < ms; ++n)
            if (ctx.column(m).is_proper_subset_of(ctx.column(n))) common &= ctx.column(n);
        up_cols[m] = common & ctx.column(m).complement();
    }
    for (std::size_t m = 0; m < ms; ++m)
        up_cols[m].for_each_set([&](std::size_t g) { a.up[g].set(m); });
    for (std::size_t g = 0; g < gs; ++g) a.dbl[g] = a.down[g] & a.up[g];
    return a;
}

}  // namespace fclat
