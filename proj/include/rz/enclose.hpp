#pragma once

// Certified range enclosures of planar trigonometric polynomials over boxes,
// segments and affine images of boxes, plus the bisection engines built on
// them.

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rz/charfn.hpp"
#include "rz/error.hpp"
#include "rz/interval.hpp"

namespace rz {

struct ComplexBox {
    Interval re;
    Interval im;

    bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }
    bool contains(const ComplexBox& o) const { return re.contains(o.re) && im.contains(o.im); }
    bool excludes_zero() const { return !re.contains(0.0) || !im.contains(0.0); }

    /// Lower bound on |z| over the rectangle.
    double abs_lower_bound() const;
};

struct Box2 {
    Interval x;
    Interval y;

    static Box2 square(double lo, double hi) { return {{lo, hi}, {lo, hi}}; }

    bool contains(const Eigen::Vector2d& p) const { return x.contains(p.x()) && y.contains(p.y()); }
    bool contains(const Box2& o) const { return x.contains(o.x) && y.contains(o.y); }
    bool intersects(const Box2& o) const { return x.intersects(o.x) && y.intersects(o.y); }
    Eigen::Vector2d center() const { return {x.mid(), y.mid()}; }
    double diameter() const { return std::hypot(x.hi() - x.lo(), y.hi() - y.lo()); }

    /// Midpoint split of the longer side, x on ties.
    std::pair<Box2, Box2> bisect() const;

    friend bool operator==(const Box2& a, const Box2& b) { return a.x == b.x && a.y == b.y; }
};

inline Box2 hull(const Box2& a, const Box2& b) { return {hull(a.x, b.x), hull(a.y, b.y)}; }

/// (s, r) -> origin + s*e1 + r*e2. The vectors are intervals so that a
/// difference of two exact points can be carried without rounding loss.
struct Frame {
    IVec2 origin;
    IVec2 e1;
    IVec2 e2;

    static Frame axes();
    static Frame affine(const Eigen::Vector2d& origin, const Eigen::Vector2d& e1, const Eigen::Vector2d& e2);
    /// s in [0, 1] walks from a to b.
    static Frame segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

    /// Nearest double point; for sampling only.
    Eigen::Vector2d point(double s, double r) const;
};

/// Image of a parameter box under a frame. Boxes use Frame::axes(); a
/// segment is a patch whose second parameter is degenerate.
struct Patch {
    Frame frame;
    Box2 params;

    static Patch box(const Box2& b) { return {Frame::axes(), b}; }
    static Patch segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return {Frame::segment(a, b), {Interval(0.0, 1.0), Interval(0.0)}};
    }

    Patch with_params(const Box2& p) const { return {frame, p}; }
    /// Upper bounds on the physical length along each parameter direction.
    std::pair<double, double> extents() const;
    /// Splits the physically longer parameter at its midpoint, x on ties.
    /// Returns false when both extents vanish.
    bool bisect(Patch& first, Patch& second) const;
};

ComplexBox enclose(const TrigPolynomial& poly, const Frame& frame, const Box2& params);
ComplexBox enclose(const TrigPolynomial& poly, const Patch& patch);
ComplexBox enclose(const TrigPolynomial& poly, const Box2& box);

enum class Component { Re, Im };

/// Strict inequality asserted by a sign certificate.
enum class Direction { Below, Above };

std::string_view to_string(Component c);
std::string_view to_string(Direction d);

inline Interval component(const ComplexBox& b, Component c) { return c == Component::Re ? b.re : b.im; }

inline bool satisfies(const Interval& enc, Direction d, double threshold) {
    return d == Direction::Below ? enc.hi() < threshold : enc.lo() > threshold;
}

/// Evidence that `target` of the polynomial is strictly below/above
/// `threshold` on every piece of a region. Each leaf names a piece and a
/// parameter sub-box; the leaves of a piece, in order, are the depth-first
/// leaves of its bisection tree.
struct SignCertificate {
    struct Leaf {
        std::size_t piece;
        Box2 params;
        Interval enclosure;
    };

    TrigPolynomial poly;
    Component target;
    Direction direction;
    double threshold;
    std::vector<Patch> pieces;
    std::vector<Leaf> leaves;
    int depth_used = 0;
};

Outcome<SignCertificate> certify_sign(const TrigPolynomial& poly, Component target, std::vector<Patch> pieces,
                                      double threshold, Direction direction, int max_depth);

inline Outcome<SignCertificate> certify_sign(const TrigPolynomial& poly, Component target, const Patch& region,
                                             double threshold, Direction direction, int max_depth) {
    return certify_sign(poly, target, std::vector<Patch>{region}, threshold, direction, max_depth);
}

inline Outcome<SignCertificate> certify_sign(const TrigPolynomial& poly, Component target, const Box2& region,
                                             double threshold, Direction direction, int max_depth) {
    return certify_sign(poly, target, Patch::box(region), threshold, direction, max_depth);
}

/// Re-validates a certificate without searching: the leaves must retile
/// every piece under the bisection rule and each recomputed enclosure must
/// satisfy the inequality.
bool recheck(const SignCertificate& cert);

/// Certified lower bound for |poly| on the box, refined by bisection down
/// to max_depth.
double modulus_lower_bound(const TrigPolynomial& poly, const Box2& box, int max_depth);

void require_planar(const TrigPolynomial& poly);

}  // namespace rz
