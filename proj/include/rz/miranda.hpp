#pragma once

// Poincare-Miranda certificates on affine images of the unit square.
//
// If one component of the polynomial is below -margin on one edge of a pair
// of opposite edges and above +margin on the other, and the other component
// does the same on the remaining pair, then every continuous g with
// |g - poly| < margin on the mapped square has a zero there.

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rz/enclose.hpp"
#include "rz/winding.hpp"

namespace rz {

enum class Edge { Bottom, Top, Left, Right };  // y = 0, y = 1, x = 0, x = 1

std::string_view to_string(Edge e);

/// (x, y) -> base + x*u + y*v on [0, 1]^2.
class AffineSquareMap {
public:
    const Eigen::Vector2d& base() const { return base_; }
    const Eigen::Vector2d& u() const { return u_; }
    const Eigen::Vector2d& v() const { return v_; }

    Eigen::Vector2d operator()(double x, double y) const { return base_ + x * u_ + y * v_; }
    double determinant() const { return u_.x() * v_.y() - u_.y() * v_.x(); }

    Frame frame() const { return Frame::affine(base_, u_, v_); }
    Patch image() const { return {frame(), Box2::square(0, 1)}; }
    Patch edge(Edge e) const;
    /// Image of the square's boundary, counterclockwise in (x, y).
    std::vector<LoopPiece> boundary() const;

    friend bool operator==(const AffineSquareMap&, const AffineSquareMap&) = default;

private:
    friend AffineSquareMap make_affine_map(const Eigen::Vector2d&, const Eigen::Vector2d&, const Eigen::Vector2d&);
    AffineSquareMap(Eigen::Vector2d base, Eigen::Vector2d u, Eigen::Vector2d v) : base_(base), u_(u), v_(v) {}

    Eigen::Vector2d base_;
    Eigen::Vector2d u_;
    Eigen::Vector2d v_;
};

AffineSquareMap make_affine_map(const Eigen::Vector2d& base, const Eigen::Vector2d& u, const Eigen::Vector2d& v);

/// (5pi/8, -7pi/8) + x (pi/4, pi/4) + y (-pi/2, pi/2): a square around the
/// zero (2pi/3, -2pi/3) of the triangle law's characteristic function.
AffineSquareMap triangle_zero_map();

/// Sign pattern on the edges. `y_component` changes sign between the
/// bottom and top edges and the other component between left and right.
/// A sign of -1 means negative on the edge at 0 and positive on the edge
/// at 1.
struct MirandaOrientation {
    Component y_component = Component::Re;
    int y_sign = -1;
    int x_sign = -1;

    friend bool operator==(const MirandaOrientation&, const MirandaOrientation&) = default;
};

/// All eight valid patterns, the (Re, -1, -1) one first.
const std::array<MirandaOrientation, 8>& miranda_orientations();

struct MirandaCertificate {
    TrigPolynomial poly;
    AffineSquareMap map;
    double margin;
    MirandaOrientation orientation;
    std::array<SignCertificate, 4> edges;  // indexed by Edge
};

Outcome<MirandaCertificate> certify_miranda(const TrigPolynomial& poly, const AffineSquareMap& map, double margin,
                                            int max_depth);

bool recheck(const MirandaCertificate& cert);

/// Largest margin found by a 20-step bisection on [0, sum |w_j|] for which
/// certify_miranda succeeds; 0 if none does.
double certified_margin(const TrigPolynomial& poly, const AffineSquareMap& map, int max_depth);

struct SearchConfig {
    double zero_tol = 1e-3;
    double min_margin = 0.01;
    int max_depth = 10;
    int rotations = 16;                          // angles k*pi/8
    std::vector<int> scale_exponents{2, 3, 4, 5, 6};  // side pi / 2^j
    std::vector<double> aspects{1.0, 2.0, 0.5};
};

struct SearchResult {
    AffineSquareMap map;
    double margin;
    MirandaCertificate certificate;
};

/// Heuristic: candidate zeros from zero_search, then a grid of rotated,
/// scaled squares around each; keeps the best certified margin.
Outcome<SearchResult> search_box(const TrigPolynomial& poly, const Box2& region, const SearchConfig& config = {});

}  // namespace rz
