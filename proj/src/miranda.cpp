#include "rz/miranda.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace rz {

namespace {

constexpr double kMinDeterminant = 1e-12;
constexpr int kMarginSteps = 20;

constexpr std::array<Edge, 4> kEdges{Edge::Bottom, Edge::Top, Edge::Left, Edge::Right};

Component other(Component c) { return c == Component::Re ? Component::Im : Component::Re; }

struct EdgeCondition {
    Component target;
    Direction direction;
    double threshold;
};

EdgeCondition condition(const MirandaOrientation& o, Edge e, double margin) {
    const bool y_pair = e == Edge::Bottom || e == Edge::Top;
    const int sign = y_pair ? o.y_sign : o.x_sign;
    const bool at_zero = e == Edge::Bottom || e == Edge::Left;
    // sign -1: negative at 0, positive at 1.
    const bool below = (sign < 0) == at_zero;
    return {y_pair ? o.y_component : other(o.y_component), below ? Direction::Below : Direction::Above,
            below ? -margin : margin};
}

bool same(const Interval& a, const Interval& b) { return a == b; }

bool same(const Frame& a, const Frame& b) {
    for (int i = 0; i < 2; ++i) {
        if (!same(a.origin(i), b.origin(i)) || !same(a.e1(i), b.e1(i)) || !same(a.e2(i), b.e2(i))) return false;
    }
    return true;
}

Outcome<MirandaCertificate> certify_with(const TrigPolynomial& poly, const AffineSquareMap& map, double margin,
                                         const MirandaOrientation& o, int max_depth) {
    std::vector<SignCertificate> edges;
    for (Edge e : kEdges) {
        const auto c = condition(o, e, margin);
        auto out = certify_sign(poly, c.target, map.edge(e), c.threshold, c.direction, max_depth);
        if (!certified(out)) {
            return Inconclusive{std::string(to_string(e)) + " edge: " + std::get<Inconclusive>(out).reason};
        }
        edges.push_back(std::move(std::get<SignCertificate>(out)));
    }
    return MirandaCertificate{poly, map, margin, o, {edges[0], edges[1], edges[2], edges[3]}};
}

}  // namespace

std::string_view to_string(Edge e) {
    switch (e) {
        case Edge::Bottom: return "y=0";
        case Edge::Top: return "y=1";
        case Edge::Left: return "x=0";
        case Edge::Right: return "x=1";
    }
    return "?";
}

Patch AffineSquareMap::edge(Edge e) const {
    const Interval unit(0.0, 1.0);
    switch (e) {
        case Edge::Bottom: return {frame(), {unit, Interval(0.0)}};
        case Edge::Top: return {frame(), {unit, Interval(1.0)}};
        case Edge::Left: return {frame(), {Interval(0.0), unit}};
        case Edge::Right: return {frame(), {Interval(1.0), unit}};
    }
    return image();
}

std::vector<LoopPiece> AffineSquareMap::boundary() const {
    const Frame f = frame();
    return {{f, {0, 0}, {1, 0}}, {f, {1, 0}, {1, 1}}, {f, {1, 1}, {0, 1}}, {f, {0, 1}, {0, 0}}};
}

AffineSquareMap make_affine_map(const Eigen::Vector2d& base, const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    if (!base.allFinite() || !u.allFinite() || !v.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "map coefficients must be finite");
    }
    AffineSquareMap map(base, u, v);
    if (!(std::abs(map.determinant()) > kMinDeterminant)) {
        throw Error(ErrorCode::DegenerateMap, "u and v are (nearly) collinear");
    }
    return map;
}

AffineSquareMap triangle_zero_map() {
    constexpr double pi = std::numbers::pi;
    return make_affine_map({5 * pi / 8, -7 * pi / 8}, {pi / 4, pi / 4}, {-pi / 2, pi / 2});
}

const std::array<MirandaOrientation, 8>& miranda_orientations() {
    static const std::array<MirandaOrientation, 8> all{{
        {Component::Re, -1, -1},
        {Component::Re, 1, 1},
        {Component::Re, -1, 1},
        {Component::Re, 1, -1},
        {Component::Im, -1, -1},
        {Component::Im, 1, 1},
        {Component::Im, -1, 1},
        {Component::Im, 1, -1},
    }};
    return all;
}

Outcome<MirandaCertificate> certify_miranda(const TrigPolynomial& poly, const AffineSquareMap& map, double margin,
                                            int max_depth) {
    require_planar(poly);
    if (!(margin > 0) || !std::isfinite(margin)) throw Error(ErrorCode::InvalidArgument, "margin must be positive");
    std::string reasons;
    for (const auto& o : miranda_orientations()) {
        auto out = certify_with(poly, map, margin, o, max_depth);
        if (certified(out)) return out;
        if (reasons.empty()) reasons = std::get<Inconclusive>(out).reason;
    }
    return Inconclusive{"no orientation certifies; first failure: " + reasons};
}

bool recheck(const MirandaCertificate& cert) {
    if (!(cert.margin > 0) || !(std::abs(cert.map.determinant()) > kMinDeterminant)) return false;
    bool known = false;
    for (const auto& o : miranda_orientations()) known = known || o == cert.orientation;
    if (!known) return false;

    for (std::size_t i = 0; i < kEdges.size(); ++i) {
        const auto& sc = cert.edges[i];
        const auto want = condition(cert.orientation, kEdges[i], cert.margin);
        const Patch edge = cert.map.edge(kEdges[i]);
        if (sc.target != want.target || sc.direction != want.direction || sc.threshold != want.threshold) return false;
        if (sc.pieces.size() != 1 || !same(sc.pieces[0].frame, edge.frame) || !(sc.pieces[0].params == edge.params)) {
            return false;
        }
        if (sc.poly.weights() != cert.poly.weights() || sc.poly.frequencies() != cert.poly.frequencies()) return false;
        if (!recheck(sc)) return false;
    }
    return true;
}

double certified_margin(const TrigPolynomial& poly, const AffineSquareMap& map, int max_depth) {
    require_planar(poly);
    double lo = 0;
    double hi = poly.abs_weight_sum();
    for (int step = 0; step < kMarginSteps; ++step) {
        const double mid = lo + (hi - lo) / 2;
        if (mid > 0 && certified(certify_miranda(poly, map, mid, max_depth))) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

Outcome<SearchResult> search_box(const TrigPolynomial& poly, const Box2& region, const SearchConfig& config) {
    require_planar(poly);
    constexpr double pi = std::numbers::pi;
    const auto clusters = zero_search(poly, region, config.zero_tol);

    std::optional<SearchResult> best;
    for (const auto& cluster : clusters) {
        const Eigen::Vector2d c = cluster.hull.center();
        for (int k = 0; k < config.rotations; ++k) {
            const double theta = k * pi / 8;
            const Eigen::Vector2d dir(std::cos(theta), std::sin(theta));
            const Eigen::Vector2d normal(-dir.y(), dir.x());
            for (int j : config.scale_exponents) {
                const double side = std::ldexp(pi, -j);
                for (double aspect : config.aspects) {
                    const Eigen::Vector2d u = side * dir;
                    const Eigen::Vector2d v = side * aspect * normal;
                    const auto map = make_affine_map(c - u / 2 - v / 2, u, v);
                    auto first = certify_miranda(poly, map, config.min_margin, config.max_depth);
                    if (!certified(first)) continue;
                    const double m = certified_margin(poly, map, config.max_depth);
                    if (best && m <= best->margin) continue;
                    auto cert = certify_miranda(poly, map, m, config.max_depth);
                    if (!certified(cert)) cert = std::move(first);
                    auto& mc = std::get<MirandaCertificate>(cert);
                    best = SearchResult{map, mc.margin, std::move(mc)};
                }
            }
        }
    }
    if (!best) return Inconclusive{"no candidate square certifies at margin " + std::to_string(config.min_margin)};
    return *best;
}

}  // namespace rz
