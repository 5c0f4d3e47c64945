#include "skein/arc_diagram.hpp"

#include <algorithm>

namespace skein {

void ArcDiagram::finalize() {
    const int n = num_points();
    arc_of.assign(n, -1);
    pos_in_arc.assign(n, -1);
    elementary.clear();
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
        const auto& pts = arcs[a];
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            const int p = pts[i];
            if (p < 1 || p > n) throw std::invalid_argument("arc point id out of range");
            arc_of[p - 1] = a;
            pos_in_arc[p - 1] = i;
            if (i + 1 < static_cast<int>(pts.size()))
                elementary.emplace_back(p, pts[i + 1]);
        }
    }
    for (int p = 1; p <= n; ++p)
        if (arc_of[p - 1] < 0) throw std::invalid_argument("point missing from all arcs");
    class_points.assign(num_classes, {});
    for (int p = 1; p <= n; ++p) {
        const int c = matching[p - 1];
        if (c < 1 || c > num_classes) throw std::invalid_argument("match class out of range");
        class_points[c - 1].push_back(p);
    }
    for (auto& v : class_points) {
        std::sort(v.begin(), v.end());
        if (v.empty() || v.size() > 2)
            throw std::invalid_argument("match classes must contain one or two points");
    }
    std::sort(elementary.begin(), elementary.end());
}

int ArcDiagram::partner(int point) const {
    const auto& v = points_of_class(cls(point));
    if (v.size() == 1) return point;
    return v[0] == point ? v[1] : v[0];
}

ChordClass& ChordClass::operator+=(const ChordClass& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("chord class size mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

ChordClass& ChordClass::operator-=(const ChordClass& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("chord class size mismatch");
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

ChordClass ChordClass::operator-() const {
    ChordClass r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

bool ChordClass::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
}

ChordClass zero_class(const ArcDiagram& d) {
    return ChordClass{std::vector<long long>(d.num_elementary(), 0)};
}

ChordClass chord_class(const ArcDiagram& d, int s, int e) {
    if (s >= e || !d.same_arc(s, e))
        throw std::invalid_argument("chord endpoints must be ordered points of one arc");
    ChordClass r = zero_class(d);
    for (int i = 0; i < d.num_elementary(); ++i) {
        const auto& [a, b] = d.elementary[i];
        if (a >= s && b <= e && d.same_arc(a, s)) r.c[i] = 1;
    }
    return r;
}

ArcDiagram build_skein_arc_diagram() {
    ArcDiagram d;
    d.arcs = {{1}, {2, 3, 4, 5}, {6, 7, 8, 9}, {10, 11, 12}};
    //             1  2  3  4  5  6  7  8  9 10 11 12
    d.matching = {1, 2, 1, 3, 2, 4, 3, 5, 4, 6, 5, 6};
    d.num_classes = 6;
    d.finalize();
    return d;
}

const ArcDiagram& skein_diagram() {
    static const ArcDiagram d = build_skein_arc_diagram();
    return d;
}

}  // namespace skein
