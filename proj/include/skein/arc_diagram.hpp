#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skein {

// An arc diagram: a disjoint union of oriented arcs stacked in a column, each
// carrying marked points, together with a matching that partitions the points
// into two-element (or, degenerately, one-element) match classes.
//
// Points carry global ids 1..n, increasing along each arc and from one arc to
// the next, so the global id order is the vertical order of the column.
// Match classes carry ids 1..num_classes.
struct ArcDiagram {
    std::vector<std::vector<int>> arcs;  // point ids of each arc, in arc order
    std::vector<int> matching;           // matching[p-1] = class of point p
    int num_classes = 0;

    // Derived tables, filled by finalize().
    std::vector<int> arc_of;                     // arc_of[p-1]
    std::vector<int> pos_in_arc;                 // pos_in_arc[p-1]
    std::vector<std::pair<int, int>> elementary; // consecutive-point chords (s,e)
    std::vector<std::vector<int>> class_points;  // class_points[c-1] = its points

    void finalize();

    int num_points() const { return static_cast<int>(matching.size()); }
    int num_elementary() const { return static_cast<int>(elementary.size()); }
    int cls(int point) const { return matching.at(point - 1); }
    int arc(int point) const { return arc_of.at(point - 1); }
    bool same_arc(int p, int q) const { return arc(p) == arc(q); }
    const std::vector<int>& points_of_class(int c) const {
        return class_points.at(c - 1);
    }
    // The partner of a point inside its match class (the point itself for a
    // singleton class).
    int partner(int point) const;
};

// Integer vector over the elementary chords of a diagram: the first homology
// of the arcs relative to the marked points.
struct ChordClass {
    std::vector<long long> c;

    friend bool operator==(const ChordClass&, const ChordClass&) = default;
    ChordClass& operator+=(const ChordClass& o);
    ChordClass& operator-=(const ChordClass& o);
    friend ChordClass operator+(ChordClass a, const ChordClass& b) { return a += b; }
    friend ChordClass operator-(ChordClass a, const ChordClass& b) { return a -= b; }
    ChordClass operator-() const;
    bool is_zero() const;
};

ChordClass zero_class(const ArcDiagram& d);
// Homology class of the upward chord from point s to point e (same arc, s<e).
ChordClass chord_class(const ArcDiagram& d, int s, int e);

// The fixed diagram used throughout: four stacked arcs with points 1..12,
// match classes
//   1:{1,3}  2:{2,5}  3:{4,7}  4:{6,9}  5:{8,11}  6:{10,12},
// i.e. one isolated point on the first arc, four points on the second and
// third, three on the fourth.  Its eight elementary chords are numbered
// 1..8 from bottom to top.
ArcDiagram build_skein_arc_diagram();

// Shared singleton instance of the fixed diagram (stable address, so algebra
// elements built from it can be mixed freely).
const ArcDiagram& skein_diagram();

}  // namespace skein
