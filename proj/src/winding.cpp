#include "rz/winding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <string>

namespace rz {

namespace {

constexpr double kPi = std::numbers::pi;
// Arcs must fit in a sector narrower than a right angle by this much.
constexpr double kSectorSlack = 1e-6;

struct Sector {
    double centre;
    double half_width;
};

/// Smallest sector from the origin containing the rectangle, which must
/// exclude 0.
Sector sector_of(const ComplexBox& box) {
    const double cx = box.re.mid();
    const double cy = box.im.mid();
    const double ref = std::atan2(cy, cx);
    double lo = 0;
    double hi = 0;
    for (double x : {box.re.lo(), box.re.hi()}) {
        for (double y : {box.im.lo(), box.im.hi()}) {
            const double d = std::atan2(cx * y - cy * x, cx * x + cy * y);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    }
    return {ref + (lo + hi) / 2, (hi - lo) / 2};
}

double max_deviation(const ComplexBox& box, double angle) {
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    double dev = 0;
    for (double x : {box.re.lo(), box.re.hi()}) {
        for (double y : {box.im.lo(), box.im.hi()}) {
            dev = std::max(dev, std::abs(std::atan2(ux * y - uy * x, ux * x + uy * y)));
        }
    }
    return dev;
}

double turn(double from, double to) { return std::remainder(to - from, 2 * kPi); }

class ArcSearch {
public:
    ArcSearch(const TrigPolynomial& poly, int max_depth) : poly_(poly), max_depth_(max_depth) {}

    bool run(std::size_t k, const LoopPiece& piece, const Interval& s, int depth) {
        const ComplexBox enc = enclose(poly_, piece.frame, piece.params(s));
        if (enc.excludes_zero()) {
            const Sector sec = sector_of(enc);
            if (sec.half_width <= kPi / 4 - kSectorSlack) {
                arcs_.push_back({k, s, enc, sec.centre});
                return true;
            }
        }
        if (depth >= max_depth_ || s.is_point()) return false;
        const double m = s.mid();
        return run(k, piece, {s.lo(), m}, depth + 1) && run(k, piece, {m, s.hi()}, depth + 1);
    }

    std::vector<WindingCertificate::Arc> arcs_;

private:
    const TrigPolynomial& poly_;
    int max_depth_;
};

int count_turns(const std::vector<WindingCertificate::Arc>& arcs, bool& consistent) {
    double total = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        total += turn(arcs[i].witness, arcs[(i + 1) % arcs.size()].witness);
    }
    const double turns = total / (2 * kPi);
    const double rounded = std::round(turns);
    consistent = std::abs(turns - rounded) < 1e-6;
    return static_cast<int>(rounded);
}

IVec2 endpoint(const LoopPiece& piece, double s) {
    const Box2 p = piece.params(Interval(s));
    return piece.frame.origin + piece.frame.e1 * p.x + piece.frame.e2 * p.y;
}

}  // namespace

PolyPath::PolyPath(std::vector<Eigen::Vector2d> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
    if (vertices_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a path needs at least two vertices");
    for (std::size_t k = 0; k < segment_count(); ++k) {
        const auto& a = vertices_[k];
        const auto& b = vertices_[(k + 1) % vertices_.size()];
        if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, "path vertices must be finite");
        if (a == b) throw Error(ErrorCode::InvalidArgument, "consecutive path vertices coincide");
    }
}

PolyPath PolyPath::boundary(const Box2& box) {
    return PolyPath({{box.x.lo(), box.y.lo()},
                     {box.x.hi(), box.y.lo()},
                     {box.x.hi(), box.y.hi()},
                     {box.x.lo(), box.y.hi()}},
                    true);
}

Patch PolyPath::segment(std::size_t k) const {
    return Patch::segment(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
}

Eigen::Vector2d PolyPath::point(double t) const {
    const auto m = static_cast<double>(segment_count());
    const double scaled = std::clamp(t, 0.0, 1.0) * m;
    const auto k = std::min(static_cast<std::size_t>(scaled), segment_count() - 1);
    const double s = scaled - static_cast<double>(k);
    const auto& a = vertices_[k];
    const auto& b = vertices_[(k + 1) % vertices_.size()];
    return a + s * (b - a);
}

Box2 LoopPiece::params(const Interval& s) const {
    const IVec2 p = to_interval(from) + difference(to, from) * s;
    return {p.x(), p.y()};
}

std::vector<LoopPiece> loop_pieces(const PolyPath& path) {
    if (!path.closed()) throw Error(ErrorCode::InvalidArgument, "winding numbers need a closed path");
    std::vector<LoopPiece> loop;
    for (std::size_t k = 0; k < path.segment_count(); ++k) {
        loop.push_back({path.segment(k).frame, {0, 0}, {1, 0}});
    }
    return loop;
}

Outcome<WindingCertificate> winding_number(const TrigPolynomial& poly, std::vector<LoopPiece> loop, int max_depth) {
    require_planar(poly);
    if (loop.empty()) throw Error(ErrorCode::InvalidArgument, "empty loop");
    ArcSearch search(poly, max_depth);
    for (std::size_t k = 0; k < loop.size(); ++k) {
        if (!search.run(k, loop[k], {0.0, 1.0}, 0)) {
            return Inconclusive{"could not separate the loop image from 0 on piece " + std::to_string(k)};
        }
    }
    bool consistent = false;
    const int w = count_turns(search.arcs_, consistent);
    if (!consistent) return Inconclusive{"angle increments do not close up"};
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& arc : search.arcs_) floor = std::min(floor, arc.enclosure.abs_lower_bound());
    return WindingCertificate{poly, std::move(loop), w, floor, std::move(search.arcs_)};
}

Outcome<WindingCertificate> winding_number(const TrigPolynomial& poly, const PolyPath& path, int max_depth) {
    return winding_number(poly, loop_pieces(path), max_depth);
}

bool recheck(const WindingCertificate& cert) {
    if (cert.poly.dim() != 2 || cert.loop.empty() || cert.arcs.empty()) return false;

    for (std::size_t k = 0; k < cert.loop.size(); ++k) {
        const IVec2 end = endpoint(cert.loop[k], 1.0);
        const IVec2 start = endpoint(cert.loop[(k + 1) % cert.loop.size()], 0.0);
        if (!end.x().intersects(start.x()) || !end.y().intersects(start.y())) return false;
    }

    std::size_t piece = 0;
    double reached = 0;
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& arc : cert.arcs) {
        if (arc.piece != piece) {
            if (reached != 1.0 || arc.piece != piece + 1) return false;
            piece = arc.piece;
            reached = 0;
        }
        if (arc.param.lo() != reached || piece >= cert.loop.size()) return false;
        reached = arc.param.hi();
        const ComplexBox enc = enclose(cert.poly, cert.loop[piece].frame, cert.loop[piece].params(arc.param));
        if (!enc.excludes_zero() || max_deviation(enc, arc.witness) >= kPi / 4) return false;
        floor = std::min(floor, enc.abs_lower_bound());
    }
    if (piece + 1 != cert.loop.size() || reached != 1.0) return false;

    bool consistent = false;
    const int w = count_turns(cert.arcs, consistent);
    return consistent && w == cert.winding && cert.modulus_floor <= floor;
}

std::vector<ZeroCluster> zero_search(const TrigPolynomial& poly, const Box2& box, double tol, std::size_t max_boxes) {
    require_planar(poly);
    if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

    std::vector<Box2> kept;
    std::deque<Box2> pending{box};
    while (!pending.empty()) {
        const Box2 b = pending.front();
        pending.pop_front();
        if (enclose(poly, b).excludes_zero()) continue;
        const auto [first, second] = b.bisect();
        if (b.diameter() < tol || first == b) {
            kept.push_back(b);
        } else {
            pending.push_back(first);
            pending.push_back(second);
        }
        if (kept.size() + pending.size() > max_boxes) {
            throw Error(ErrorCode::BudgetExceeded,
                        "more than " + std::to_string(max_boxes) + " candidate boxes; zeros may not be isolated");
        }
    }

    // Union boxes that touch, including at a corner.
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return kept[a].x.lo() < kept[b].x.lo(); });
    std::vector<std::size_t> parent(kept.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size() && kept[order[j]].x.lo() <= kept[order[i]].x.hi(); ++j) {
            if (kept[order[i]].intersects(kept[order[j]])) parent[find(order[i])] = find(order[j]);
        }
    }

    std::vector<ZeroCluster> clusters;
    std::vector<std::size_t> slot(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const std::size_t r = find(i);
        if (slot[r] == kept.size()) {
            slot[r] = clusters.size();
            clusters.push_back({kept[i], 0});
        }
        auto& c = clusters[slot[r]];
        c.hull = hull(c.hull, kept[i]);
        ++c.boxes;
    }
    std::sort(clusters.begin(), clusters.end(), [](const ZeroCluster& a, const ZeroCluster& b) {
        return std::pair(a.hull.x.lo(), a.hull.y.lo()) < std::pair(b.hull.x.lo(), b.hull.y.lo());
    });
    return clusters;
}

Outcome<std::vector<SignCertificate>> verify_path_constraints(const TrigPolynomial& poly, const PolyPath& path,
                                                              const std::vector<PathConstraint>& constraints,
                                                              int max_depth) {
    require_planar(poly);

    std::vector<Interval> ranges;
    for (const auto& c : constraints) {
        if (c.range.lo() < 0 || c.range.hi() > 1) {
            throw Error(ErrorCode::InvalidConstraintCover, "constraint ranges must lie in [0, 1]");
        }
        ranges.push_back(c.range);
    }
    std::sort(ranges.begin(), ranges.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
    double covered = 0;
    for (const auto& r : ranges) {
        if (r.lo() > covered) break;
        covered = std::max(covered, r.hi());
    }
    if (ranges.empty() || ranges.front().lo() != 0 || covered != 1) {
        throw Error(ErrorCode::InvalidConstraintCover, "constraint ranges do not cover [0, 1]");
    }

    const auto m = static_cast<double>(path.segment_count());
    std::vector<SignCertificate> certs;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        std::vector<Patch> pieces;
        for (std::size_t k = 0; k < path.segment_count(); ++k) {
            const double k0 = static_cast<double>(k) / m;
            const double k1 = static_cast<double>(k + 1) / m;
            const double lo = std::max(c.range.lo(), k0);
            const double hi = std::min(c.range.hi(), k1);
            const bool overlaps = lo < hi || (c.range.is_point() && lo == hi);
            if (!overlaps) continue;
            // Local parameter s = t*m - k, rounded outward and clipped to the segment.
            const Interval s = Interval(lo, hi) * Interval(m) - Interval(static_cast<double>(k));
            const Interval local(std::max(0.0, s.lo()), std::min(1.0, s.hi()));
            pieces.push_back(path.segment(k).with_params({local, Interval(0.0)}));
        }
        auto out = certify_sign(poly, c.target, std::move(pieces), c.threshold, c.direction, max_depth);
        if (!certified(out)) {
            return Inconclusive{"constraint " + std::to_string(i) + ": " + std::get<Inconclusive>(out).reason};
        }
        certs.push_back(std::move(std::get<SignCertificate>(out)));
    }
    return certs;
}

}  // namespace rz
