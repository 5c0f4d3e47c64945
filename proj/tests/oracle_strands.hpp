#pragma once

// Independent cross-check model for the strands algebra.  Every generator is
// expanded into the concrete strand diagrams it abbreviates (one pinned point
// per occupied class), and the product and differential are recomputed there
// from scratch: concatenation with inversion counting, and single-crossing
// resolution.  Nothing here shares logic with the library's class-level
// implementation, so agreement of the two paths is meaningful.

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "skein/algebra.hpp"

namespace oracle {

// A concrete diagram: sorted strands (s, e) with s <= e; (p, p) is a
// horizontal strand pinned at point p.
using Concrete = std::vector<std::pair<int, int>>;
// F2 sum of concrete diagrams: presence means coefficient 1.
using ConcreteSum = std::set<Concrete>;

inline void toggle(ConcreteSum& sum, const Concrete& c) {
    auto it = sum.find(c);
    if (it == sum.end())
        sum.insert(c);
    else
        sum.erase(it);
}

inline int inversions(const Concrete& c) {
    int inv = 0;
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j) {
            const long long ds = c[i].first - c[j].first;
            const long long de = c[i].second - c[j].second;
            if (ds * de < 0) ++inv;
        }
    return inv;
}

// All concrete diagrams a generator abbreviates: the moving chords stay, and
// each occupied class contributes a horizontal strand at either of its points.
inline ConcreteSum expand(const skein::ArcDiagram& d,
                          const skein::StrandsGenerator& g) {
    std::vector<Concrete> partial(1);
    for (auto [s, e] : g.moving) partial.front().push_back({s, e});
    for (int cls : g.occupied) {
        std::vector<Concrete> next;
        for (const auto& base : partial)
            for (int p : d.points_of_class(cls)) {
                Concrete c = base;
                c.push_back({p, p});
                next.push_back(std::move(c));
            }
        partial = std::move(next);
    }
    ConcreteSum out;
    for (auto& c : partial) {
        std::sort(c.begin(), c.end());
        out.insert(c);
    }
    return out;
}

inline ConcreteSum expand(const skein::ArcDiagram& d,
                          const skein::AlgebraElement& a) {
    ConcreteSum out;
    for (const auto& g : a.terms)
        for (const auto& c : expand(d, g)) toggle(out, c);
    return out;
}

// Concatenation: defined when the top points of a are exactly the bottom
// points of b; the joined diagram is zero when it loses inversions (some pair
// of strands crossed twice).
inline std::optional<Concrete> mul(const Concrete& a, const Concrete& b) {
    std::vector<int> ends, starts;
    ends.reserve(a.size());
    starts.reserve(b.size());
    for (auto [s, e] : a) ends.push_back(e);
    for (auto [s, e] : b) starts.push_back(s);
    std::sort(ends.begin(), ends.end());
    std::sort(starts.begin(), starts.end());
    if (ends != starts) return std::nullopt;
    Concrete c;
    for (auto [s, e] : a)
        for (auto [s2, e2] : b)
            if (e == s2) c.push_back({s, e2});
    std::sort(c.begin(), c.end());
    if (inversions(c) != inversions(a) + inversions(b)) return std::nullopt;
    return c;
}

inline ConcreteSum mul(const ConcreteSum& a, const ConcreteSum& b) {
    ConcreteSum out;
    for (const auto& x : a)
        for (const auto& y : b)
            if (auto p = mul(x, y)) toggle(out, *p);
    return out;
}

// Differential: resolve one crossing (swap the upper endpoints of a crossing
// pair), keeping only resolutions that lose exactly one inversion.
inline ConcreteSum diff(const Concrete& c) {
    ConcreteSum out;
    const int inv = inversions(c);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j) {
            if (i == j) continue;
            const auto [s1, e1] = c[i];
            const auto [s2, e2] = c[j];
            if (!(s1 < s2 && e1 > e2)) continue;  // one orientation per pair
            Concrete r;
            for (size_t t = 0; t < c.size(); ++t)
                if (t != i && t != j) r.push_back(c[t]);
            r.push_back({s1, e2});
            r.push_back({s2, e1});
            std::sort(r.begin(), r.end());
            if (inversions(r) == inv - 1) toggle(out, r);
        }
    return out;
}

inline ConcreteSum diff(const ConcreteSum& a) {
    ConcreteSum out;
    for (const auto& c : a)
        for (const auto& r : diff(c)) toggle(out, r);
    return out;
}

}  // namespace oracle
